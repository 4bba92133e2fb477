#include "seldark/gate.hpp"

#include "seldark/errors.hpp"
#include "seldark/optimize.hpp"
#include "seldark/parallel.hpp"

#include <cmath>
#include <sstream>

namespace seldark {

namespace {

constexpr double kPi = std::numbers::pi;

void require_4x4(const CMatrix& m, const char* what) {
  if (m.rows() != 4 || m.cols() != 4) {
    std::ostringstream os;
    os << what << ": expected a 4x4 matrix, got " << m.rows() << "x" << m.cols();
    throw ConfigError(os.str());
  }
}

Eigen::Matrix2cd rz(double a) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = std::polar(1.0, -a / 2);
  m(1, 1) = std::polar(1.0, a / 2);
  return m;
}

Eigen::Matrix2cd ry(double b) {
  Eigen::Matrix2cd m;
  m << std::cos(b / 2), -std::sin(b / 2), std::sin(b / 2), std::cos(b / 2);
  return m;
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Eigen::Matrix4cd zz(double a, double b) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = 1.0;
  m(1, 1) = std::polar(1.0, b);
  m(2, 2) = std::polar(1.0, a);
  m(3, 3) = std::polar(1.0, a + b);
  return m;
}

double overlap(const Eigen::Matrix4cd& m, const Eigen::Matrix4cd& t) {
  return std::abs((m.adjoint() * t).trace()) / 4.0;
}

} // namespace

double overlap_fidelity(const CMatrix& gate, const CMatrix& target) {
  if (gate.rows() != target.rows() || gate.cols() != target.cols())
    throw ConfigError("fidelity: dimension mismatch");
  return std::abs((gate.adjoint() * target).trace()) / static_cast<double>(gate.cols());
}

double fidelity(const CMatrix& gate, const CMatrix& target) {
  require_4x4(gate, "fidelity");
  require_4x4(target, "fidelity");
  const double dg = unitarity_defect(gate), dt = unitarity_defect(target);
  if (dg > 1e-6 || dt > 1e-6) {
    std::ostringstream os;
    os << "fidelity: non-unitary input (defects " << dg << ", " << dt << ")";
    throw ConfigError(os.str());
  }
  return std::min(1.0, overlap_fidelity(gate, target));
}

CMatrix cnot_matrix() {
  CMatrix c = CMatrix::Zero(4, 4);
  c(0, 0) = c(1, 1) = 1.0;
  c(2, 3) = c(3, 2) = 1.0;
  return c;
}

CMatrix ideal_cnot_target(double phi1) {
  CMatrix c = CMatrix::Zero(4, 4);
  c(0, 0) = c(1, 1) = 1.0;
  c(2, 3) = -kI * std::polar(1.0, -phi1);
  c(3, 2) = -kI * std::polar(1.0, phi1);
  return c;
}

MakhlinInvariants makhlin_invariants(const CMatrix& u) {
  require_4x4(u, "makhlin_invariants");
  const double s = 1.0 / std::sqrt(2.0);
  CMatrix q(4, 4);
  q << 1, 0, 0, kI, 0, kI, 1, 0, 0, kI, -1, 0, 1, 0, 0, -kI;
  q *= s;
  const CMatrix ub = q.adjoint() * u * q;
  const CMatrix m = ub.transpose() * ub;
  const cplx det = u.determinant();
  const cplx tr = m.trace();
  const cplx tr2 = (m * m).trace();
  MakhlinInvariants out;
  out.g1 = tr * tr / (16.0 * det);
  out.g2 = (tr * tr - tr2) / (4.0 * det);
  out.equivalent_to_cnot = std::abs(out.g1) < 1e-8 && std::abs(out.g2 - 1.0) < 1e-8;
  return out;
}

CorrectionEstimates correction_estimates(const SystemSpec& spec, const DriveSpec& drive) {
  validate(spec);
  validate(drive);
  if (spec.levels != 2) throw ConfigError("correction_estimates: requires levels = 2");
  const Eigensystem eig = exact_eigensystem(spec);
  const double e20 = eig.energies(2) - eig.energies(0);
  const double detuning = e20 - drive.omega;
  if (std::abs(detuning) < 1e-6)
    throw ConfigError("correction_estimates: drive is resonant with the control transition (E2 - E0 = omega)");
  CorrectionEstimates c;
  const double a2sq = drive.a1 * drive.a1;
  c.stark_shift = a2sq / (2.0 * detuning);
  c.bloch_siegert_shift = a2sq / (2.0 * (e20 + drive.omega));
  const double cp = std::cos(eig.theta_plus), sp = std::sin(eig.theta_plus), tm = std::tan(eig.theta_minus);
  const double c0 = cp + sp * tm, c1 = cp - sp * tm;
  c.cphase_ratio = c0 / c1;
  const double env2 = drive.envelope == Envelope::rect ? drive.t_gate : drive.t_gate / 2.0;
  c.cphase_angle = kTwoPi * c.stark_shift * (c0 * c0 - c1 * c1) * env2;
  return c;
}

double effective_coupling(double t_gate) {
  if (!(t_gate > 0.0)) throw ConfigError("effective_coupling: t_gate must be > 0");
  return (kPi / 2.0) / t_gate;
}

std::string to_string(CorrectionMode m) {
  switch (m) {
  case CorrectionMode::analytic: return "analytic";
  case CorrectionMode::phase: return "phase";
  case CorrectionMode::arbitrary: return "arbitrary";
  }
  return "analytic";
}

CorrectionMode correction_mode_from_string(const std::string& name) {
  if (name == "analytic") return CorrectionMode::analytic;
  if (name == "phase") return CorrectionMode::phase;
  if (name == "arbitrary") return CorrectionMode::arbitrary;
  throw ConfigError("correction_mode: expected analytic, phase or arbitrary, got \"" + name + "\"");
}

namespace {

cplx driven_element(const SystemSpec& spec, const Eigensystem& eig, const DriveSpec& drive, int target,
                    Polarity polarity) {
  const TransitionPair p = cnot_transition(target, polarity);
  return transition_element(spec, eig, drive.a1, drive.a2, drive.phi1, drive.phi2, p.upper, p.lower);
}

CMatrix target_from_element(cplx v, int target, Polarity polarity) {
  if (std::abs(v) == 0.0) throw ConfigError("driven_cnot_target: the driven transition has zero strength");
  const TransitionPair p = cnot_transition(target, polarity);
  const cplx phase = v / std::abs(v);
  CMatrix t = CMatrix::Identity(4, 4);
  t(p.upper, p.upper) = t(p.lower, p.lower) = 0.0;
  t(p.upper, p.lower) = -kI * phase;
  t(p.lower, p.upper) = -kI * std::conj(phase);
  return t;
}

} // namespace

CMatrix driven_cnot_target(const SystemSpec& spec, const DriveSpec& drive, int target_qubit, Polarity polarity) {
  const Eigensystem eig = exact_eigensystem(spec);
  return target_from_element(driven_element(spec, eig, drive, target_qubit, polarity), target_qubit, polarity);
}

double estimated_gate_time(const SystemSpec& spec, const DriveSpec& drive, int target_qubit, Polarity polarity) {
  const Eigensystem eig = exact_eigensystem(spec);
  const double v = std::abs(driven_element(spec, eig, drive, target_qubit, polarity));
  if (v == 0.0) throw ConfigError("estimated_gate_time: the driven transition has zero strength");
  const double t = 1.0 / (4.0 * v);
  return drive.envelope == Envelope::half_sine ? t * kPi / 2.0 : t;
}

CMatrix apply_phase_correction(const CMatrix& u, const std::vector<double>& p) {
  require_4x4(u, "apply_phase_correction");
  if (p.size() != 4) throw ConfigError("apply_phase_correction: expected 4 parameters");
  const Eigen::Matrix4cd uu = u;
  return CMatrix(zz(p[0], p[1]) * uu * zz(p[2], p[3]));
}

CMatrix apply_arbitrary_correction(const CMatrix& u, const std::vector<double>& p) {
  require_4x4(u, "apply_arbitrary_correction");
  if (p.size() != 12) throw ConfigError("apply_arbitrary_correction: expected 12 parameters");
  auto rot = [&](int k) { return Eigen::Matrix2cd(rz(p[3 * k]) * ry(p[3 * k + 1]) * rz(p[3 * k + 2])); };
  const Eigen::Matrix4cd uu = u;
  return CMatrix(kron2(rot(0), rot(1)) * uu * kron2(rot(2), rot(3)));
}

CMatrix apply_control_phase(const CMatrix& u, double phi) {
  require_4x4(u, "apply_control_phase");
  return CMatrix(zz(phi, 0.0) * Eigen::Matrix4cd(u));
}

double analytic_control_phase(const SystemSpec& spec, const DriveSpec& drive) {
  const CorrectionEstimates c = correction_estimates(spec, drive);
  const double env2 = drive.envelope == Envelope::rect ? drive.t_gate : drive.t_gate / 2.0;
  return kTwoPi * (c.stark_shift + c.bloch_siegert_shift) * env2;
}

GateEvaluation evaluate_gate(const InteractionModel& model, const DriveSpec& drive, const CMatrix& target,
                             const CalibrationOptions& opts, const PropagationOptions& prop) {
  const std::vector<int> columns{0, 1, 2, 3};
  const PropagationResult pr = propagate_interaction(model, drive, columns, prop);
  GateEvaluation ev;
  ev.raw = pr.unitary.topRows(4);
  ev.leakage = std::max(0.0, 1.0 - ev.raw.squaredNorm() / 4.0);
  const Eigen::Matrix4cd u = ev.raw;
  const Eigen::Matrix4cd t = target;

  if (opts.mode == CorrectionMode::analytic) {
    if (model.spec.levels != 2)
      throw ConfigError("correction_mode: analytic corrections are only available for levels = 2");
    if (opts.target_qubit != 2)
      throw ConfigError("correction_mode: analytic corrections assume qubit 2 is the target");
    const double phi = analytic_control_phase(model.spec, drive);
    ev.params = {phi};
    ev.corrected = apply_control_phase(ev.raw, phi);
    ev.fidelity = overlap_fidelity(ev.corrected, target);
    return ev;
  }

  RestartOptions ro;
  ro.restarts = opts.restarts;
  ro.size_tolerance = opts.optimizer_tolerance;
  ro.max_iterations = opts.optimizer_max_iterations;
  ro.seed = opts.seed;
  ro.jobs = 1;

  // Structured starting point: the analytic control phase when it is defined, otherwise zero.
  double phi0 = 0.0;
  if (model.spec.levels == 2 && opts.target_qubit == 2) phi0 = analytic_control_phase(model.spec, drive);
  auto phase_objective = [&](const std::vector<double>& p) {
    return 1.0 - overlap(zz(p[0], p[1]) * u * zz(p[2], p[3]), t);
  };
  const MinimizeResult phase = minimize_with_restarts(phase_objective, {phi0, 0.0, 0.0, 0.0}, ro);

  if (opts.mode == CorrectionMode::phase) {
    ev.params = phase.x;
    ev.corrected = apply_phase_correction(ev.raw, phase.x);
    ev.fidelity = overlap_fidelity(ev.corrected, target);
    return ev;
  }

  auto arbitrary_objective = [&](const std::vector<double>& p) {
    auto rot = [&](int k) { return Eigen::Matrix2cd(rz(p[3 * k]) * ry(p[3 * k + 1]) * rz(p[3 * k + 2])); };
    return 1.0 - overlap(kron2(rot(0), rot(1)) * u * kron2(rot(2), rot(3)), t);
  };
  // diag(1, e^{ia}) equals Rz(a) up to a global phase, so the phase optimum embeds exactly.
  const std::vector<double> start{phase.x[0], 0, 0, phase.x[1], 0, 0, phase.x[2], 0, 0, phase.x[3], 0, 0};
  const MinimizeResult arb = minimize_with_restarts(arbitrary_objective, start, ro);
  ev.params = arb.x;
  ev.corrected = apply_arbitrary_correction(ev.raw, arb.x);
  ev.fidelity = overlap_fidelity(ev.corrected, target);
  return ev;
}

GateResult calibrate_gate(const SystemSpec& spec, const DriveSpec& drive_template, const CalibrationOptions& opts) {
  validate(spec);
  DriveSpec drive = drive_template;
  validate(drive);
  if (drive.a1 <= 0.0) throw ConfigError("drive.a1: calibration needs a non-zero drive amplitude");
  if (opts.scan_points < opts.poly_degree + 1) throw ConfigError("calibration: too few scan points for the fit");
  if (opts.mode == CorrectionMode::analytic && spec.levels != 2)
    throw ConfigError("correction_mode: analytic corrections are only available for levels = 2");

  const InteractionModel model = make_interaction_model(spec);
  const CMatrix target = target_from_element(
      driven_element(spec, model.eig, drive, opts.target_qubit, opts.polarity), opts.target_qubit, opts.polarity);
  const double t_est = estimated_gate_time(spec, drive, opts.target_qubit, opts.polarity);

  GateResult result;
  result.t_estimate = t_est;
  result.correction_mode = opts.mode;

  auto scan = [&](double center, double half_width) {
    const int n = opts.scan_points;
    std::vector<double> times(n), fids(n);
    for (int i = 0; i < n; ++i) times[i] = center * (1.0 - half_width + 2.0 * half_width * i / (n - 1));
    parallel_for(static_cast<std::size_t>(n), opts.jobs, [&](std::size_t i) {
      DriveSpec d = drive;
      d.t_gate = times[i];
      fids[i] = evaluate_gate(model, d, target, opts, opts.scan_propagation).fidelity;
    });
    return std::make_pair(times, fids);
  };

  auto [times, fids] = scan(t_est, opts.window);
  Polynomial poly = fit_polynomial(times, fids, opts.poly_degree);
  PolyArgmax best = polynomial_argmax(poly, times.front(), times.back());
  if (best.on_boundary) {
    // Widen once, centred on the boundary the fit ran into.
    result.scan_times = times;
    result.scan_fidelities = fids;
    std::tie(times, fids) = scan(best.x, 2.0 * opts.window);
    poly = fit_polynomial(times, fids, opts.poly_degree);
    best = polynomial_argmax(poly, times.front(), times.back());
    if (best.on_boundary) {
      std::ostringstream os;
      os << "optimum outside scan: fitted fidelity still peaks at the scan boundary t = " << best.x
         << " ns after widening (estimate " << t_est << " ns, a1 = " << drive.a1 << " GHz)";
      throw CalibrationError(os.str());
    }
  }
  result.scan_times.insert(result.scan_times.end(), times.begin(), times.end());
  result.scan_fidelities.insert(result.scan_fidelities.end(), fids.begin(), fids.end());

  drive.t_gate = best.x;
  CalibrationOptions final_opts = opts;
  const GateEvaluation ev = evaluate_gate(model, drive, target, final_opts, opts.final_propagation);
  result.unitary = ev.corrected;
  result.fidelity = std::clamp(ev.fidelity, 0.0, 1.0);
  result.t_gate = best.x;
  result.j_eff = effective_coupling(best.x);
  result.correction_params = ev.params;
  result.leakage = ev.leakage;
  return result;
}

} // namespace seldark
