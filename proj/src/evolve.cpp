#include "seldark/evolve.hpp"

#include "seldark/errors.hpp"
#include "seldark/frame.hpp"

#include <cmath>
#include <sstream>

namespace seldark {

InteractionModel make_interaction_model(const SystemSpec& spec) {
  InteractionModel m;
  m.spec = spec;
  m.eig = exact_eigensystem(spec);
  const CMatrix x1 = m.eig.states.adjoint() * drive_operator(spec, 1) * m.eig.states;
  const CMatrix x2 = m.eig.states.adjoint() * drive_operator(spec, 2) * m.eig.states;
  const double imag = std::max(x1.imag().cwiseAbs().maxCoeff(), x2.imag().cwiseAbs().maxCoeff());
  if (imag > 1e-10) {
    std::ostringstream os;
    os << "make_interaction_model: drive operators are not real in the eigenbasis (max imaginary part " << imag << ")";
    throw ComputationError(os.str());
  }
  m.x1 = x1.real();
  m.x2 = x2.real();
  return m;
}

double interaction_max_frequency(const InteractionModel& model, const DriveSpec& drive) {
  const RMatrix c = drive.a1 * model.x1.cwiseAbs() + drive.a2 * model.x2.cwiseAbs();
  const double cmax = c.maxCoeff();
  double gap = 0.0;
  if (cmax > 0.0) {
    for (Eigen::Index k = 0; k < c.rows(); ++k)
      for (Eigen::Index l = 0; l < c.cols(); ++l)
        if (c(k, l) > 1e-3 * cmax) gap = std::max(gap, std::abs(model.eig.energies(k) - model.eig.energies(l)));
  }
  return std::max(gap + drive.omega, 1.0 / drive.t_gate);
}

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long kAnchorEvery = 16;

// Y' = -i 2pi P Xc(t) P^dagger Y with P = diag(exp(i 2pi E t)), split into real and imaginary parts.
template <int D, int C>
struct Rk4Kernel {
  using RM = Eigen::Matrix<double, D, D>;
  using RS = Eigen::Matrix<double, D, C>;
  using RA = Eigen::Array<double, D, 1>;

  RM x1, x2;
  RA e;
  DriveSpec drive;

  void derivative(const RA& pr, const RA& pi, double c1, double c2, const RS& yr, const RS& yi, RS& kr,
                  RS& ki) const {
    const RM xc = c1 * x1 + c2 * x2;
    RS zr = (yr.array().colwise() * pr + yi.array().colwise() * pi).matrix();
    RS zi = (yi.array().colwise() * pr - yr.array().colwise() * pi).matrix();
    const RS wr = xc * zr;
    const RS wi = xc * zi;
    kr = (kTwoPi * (wi.array().colwise() * pr + wr.array().colwise() * pi)).matrix();
    ki = (-kTwoPi * (wr.array().colwise() * pr - wi.array().colwise() * pi)).matrix();
  }

  struct Phasors {
    RA pr, pi;
    double qr, qi; // exp(i 2pi omega t)
    double sr, si; // exp(i pi t / t_gate), envelope phase
  };

  Phasors exact(double t) const {
    Phasors p;
    p.pr = (kTwoPi * t * e).cos();
    p.pi = (kTwoPi * t * e).sin();
    p.qr = std::cos(kTwoPi * drive.omega * t);
    p.qi = std::sin(kTwoPi * drive.omega * t);
    p.sr = std::cos(kPi * t / drive.t_gate);
    p.si = std::sin(kPi * t / drive.t_gate);
    return p;
  }

  static void advance(Phasors& p, const Phasors& r) {
    const RA pr = p.pr * r.pr - p.pi * r.pi;
    p.pi = p.pr * r.pi + p.pi * r.pr;
    p.pr = pr;
    const double qr = p.qr * r.qr - p.qi * r.qi;
    p.qi = p.qr * r.qi + p.qi * r.qr;
    p.qr = qr;
    const double sr = p.sr * r.sr - p.si * r.si;
    p.si = p.sr * r.si + p.si * r.sr;
    p.sr = sr;
  }

  void coefficients(const Phasors& p, double& c1, double& c2) const {
    const double env = drive.envelope == Envelope::rect ? 1.0 : p.si;
    c1 = env * drive.a1 * (p.qr * std::cos(drive.phi1) - p.qi * std::sin(drive.phi1));
    c2 = env * drive.a2 * (p.qr * std::cos(drive.phi2) - p.qi * std::sin(drive.phi2));
  }

  void run(double t0, double t1, long n, RS& yr, RS& yi) const {
    const double h = (t1 - t0) / static_cast<double>(n);
    const Phasors half = exact(0.5 * h);
    RS k1r, k1i, k2r, k2i, k3r, k3i, k4r, k4i, tr, ti;
    Phasors p = exact(t0);
    for (long step = 0; step < n; ++step) {
      if (step % kAnchorEvery == 0) p = exact(t0 + static_cast<double>(step) * h);
      double c1, c2;
      coefficients(p, c1, c2);
      derivative(p.pr, p.pi, c1, c2, yr, yi, k1r, k1i);

      Phasors mid = p;
      advance(mid, half);
      coefficients(mid, c1, c2);
      tr = yr + 0.5 * h * k1r;
      ti = yi + 0.5 * h * k1i;
      derivative(mid.pr, mid.pi, c1, c2, tr, ti, k2r, k2i);
      tr = yr + 0.5 * h * k2r;
      ti = yi + 0.5 * h * k2i;
      derivative(mid.pr, mid.pi, c1, c2, tr, ti, k3r, k3i);

      p = mid;
      advance(p, half);
      coefficients(p, c1, c2);
      tr = yr + h * k3r;
      ti = yi + h * k3i;
      derivative(p.pr, p.pi, c1, c2, tr, ti, k4r, k4i);

      yr += (h / 6.0) * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
      yi += (h / 6.0) * (k1i + 2.0 * k2i + 2.0 * k3i + k4i);
    }
  }
};

template <int D, int C>
CMatrix integrate_fixed(const InteractionModel& model, const DriveSpec& drive, const std::vector<int>& columns,
                        double t0, double t1, long steps) {
  Rk4Kernel<D, C> kernel;
  const Eigen::Index dim = model.x1.rows();
  const Eigen::Index cols = static_cast<Eigen::Index>(columns.size());
  kernel.x1 = model.x1;
  kernel.x2 = model.x2;
  kernel.e = model.eig.energies.array();
  kernel.drive = drive;
  typename Rk4Kernel<D, C>::RS yr = Rk4Kernel<D, C>::RS::Zero(dim, cols);
  typename Rk4Kernel<D, C>::RS yi = Rk4Kernel<D, C>::RS::Zero(dim, cols);
  for (Eigen::Index c = 0; c < cols; ++c) yr(columns[c], c) = 1.0;
  kernel.run(t0, t1, steps, yr, yi);
  CMatrix out(dim, cols);
  out.real() = yr;
  out.imag() = yi;
  return out;
}

double isometry_defect(const CMatrix& y) {
  return (y.adjoint() * y - CMatrix::Identity(y.cols(), y.cols())).cwiseAbs().maxCoeff();
}

} // namespace

CMatrix integrate_interaction(const InteractionModel& model, const DriveSpec& drive, const std::vector<int>& columns,
                              double t0, double t1, long steps) {
  validate(drive);
  if (steps <= 0) throw ConfigError("integrate_interaction: steps must be > 0");
  const Eigen::Index dim = model.x1.rows();
  for (int c : columns)
    if (c < 0 || c >= dim) throw ConfigError("integrate_interaction: column label out of range");
  const std::size_t cols = columns.size();
  if (dim == 4 && cols == 4) return integrate_fixed<4, 4>(model, drive, columns, t0, t1, steps);
  if (dim == 9 && cols == 4) return integrate_fixed<9, 4>(model, drive, columns, t0, t1, steps);
  if (dim == 9 && cols == 9) return integrate_fixed<9, 9>(model, drive, columns, t0, t1, steps);
  return integrate_fixed<Eigen::Dynamic, Eigen::Dynamic>(model, drive, columns, t0, t1, steps);
}

PropagationResult propagate_interaction(const InteractionModel& model, const DriveSpec& drive,
                                        const std::vector<int>& columns, const PropagationOptions& opts) {
  validate(drive);
  const double fmax = interaction_max_frequency(model, drive);
  long n = std::max<long>(16, static_cast<long>(std::ceil(drive.t_gate * opts.steps_per_period * fmax)));
  CMatrix prev = integrate_interaction(model, drive, columns, 0.0, drive.t_gate, n);
  double diff = 0.0, defect = 0.0;
  for (int halving = 1; halving <= opts.max_halvings; ++halving) {
    n *= 2;
    CMatrix cur = integrate_interaction(model, drive, columns, 0.0, drive.t_gate, n);
    diff = (cur - prev).cwiseAbs().maxCoeff();
    defect = isometry_defect(cur);
    if (diff < opts.tolerance && defect < opts.unitarity_tolerance) {
      PropagationResult r;
      r.unitary = std::move(cur);
      r.step_count = n;
      r.unitarity_defect = defect;
      r.frame = FrameChoice::lab;
      return r;
    }
    prev = std::move(cur);
  }
  std::ostringstream os;
  os << "stiff propagation: no convergence after " << opts.max_halvings << " step halvings (t_gate = " << drive.t_gate
     << " ns, f_max = " << fmax << " GHz, final steps = " << n << ", last refinement difference = " << diff
     << ", unitarity defect = " << defect << ")";
  throw StiffPropagationError(os.str());
}

CMatrix interaction_to_lab(const InteractionModel& model, const CMatrix& u_int, double t) {
  const Eigen::Index dim = model.eig.energies.size();
  CVector larmor(dim);
  for (Eigen::Index k = 0; k < dim; ++k) larmor(k) = std::polar(1.0, -kTwoPi * model.eig.energies(k) * t);
  return model.eig.states * larmor.asDiagonal() * u_int * model.eig.states.adjoint();
}

CMatrix rotating_to_lab(const SystemSpec& spec, double omega, const CMatrix& u_rot, double t) {
  const Eigensystem eig = exact_eigensystem(spec);
  const RotatingFrame frame = make_rotating_frame(omega);
  CVector back(4);
  for (int k = 0; k < 4; ++k) back(k) = std::polar(1.0, -kTwoPi * frame.u(k) * t);
  return eig.states * back.asDiagonal() * u_rot * eig.states.adjoint();
}

namespace {

PropagationResult propagate_rwa(const SystemSpec& spec, const DriveSpec& drive, const PropagationOptions& opts) {
  if (spec.levels != 2) throw ConfigError("propagate: rotating_rwa frame requires levels = 2");
  const RotatingFrameHamiltonian rf = to_rotating_frame(spec, drive, make_rotating_frame(drive.omega));
  const CMatrix& h0 = rf.h0;
  const CMatrix& v = rf.drive.v;
  const double width = h0.diagonal().real().maxCoeff() - h0.diagonal().real().minCoeff() + 2.0 * v.cwiseAbs().maxCoeff();
  const double fmax = std::max(width, 1.0 / drive.t_gate);

  auto run = [&](long n) {
    const double h = drive.t_gate / static_cast<double>(n);
    auto gen = [&](double t) -> Eigen::Matrix4cd {
      const double env = envelope_value(drive.envelope, t, drive.t_gate);
      return (-kI * kTwoPi) * (h0 + env * v);
    };
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
    for (long s = 0; s < n; ++s) {
      const double t = static_cast<double>(s) * h;
      const Eigen::Matrix4cd a0 = gen(t), am = gen(t + 0.5 * h), a1 = gen(t + h);
      const Eigen::Matrix4cd k1 = a0 * u;
      const Eigen::Matrix4cd k2 = am * (u + 0.5 * h * k1);
      const Eigen::Matrix4cd k3 = am * (u + 0.5 * h * k2);
      const Eigen::Matrix4cd k4 = a1 * (u + h * k3);
      u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return CMatrix(u);
  };

  long n = std::max<long>(16, static_cast<long>(std::ceil(drive.t_gate * opts.steps_per_period * fmax)));
  CMatrix prev = run(n);
  double diff = 0.0, defect = 0.0;
  for (int halving = 1; halving <= opts.max_halvings; ++halving) {
    n *= 2;
    CMatrix cur = run(n);
    diff = (cur - prev).cwiseAbs().maxCoeff();
    defect = unitarity_defect(cur);
    if (diff < opts.tolerance && defect < opts.unitarity_tolerance)
      return PropagationResult{std::move(cur), n, defect, FrameChoice::rotating_rwa};
    prev = std::move(cur);
  }
  std::ostringstream os;
  os << "stiff propagation (rotating frame): no convergence after " << opts.max_halvings
     << " step halvings (last refinement difference = " << diff << ", unitarity defect = " << defect << ")";
  throw StiffPropagationError(os.str());
}

} // namespace

PropagationResult propagate(const SystemSpec& spec, const DriveSpec& drive, FrameChoice frame,
                            const PropagationOptions& opts) {
  validate(spec);
  validate(drive);
  if (frame == FrameChoice::rotating_rwa) return propagate_rwa(spec, drive, opts);
  const InteractionModel model = make_interaction_model(spec);
  std::vector<int> all(dimension(spec));
  for (int k = 0; k < dimension(spec); ++k) all[k] = k;
  PropagationResult r = propagate_interaction(model, drive, all, opts);
  r.unitary = interaction_to_lab(model, r.unitary, drive.t_gate);
  r.unitarity_defect = unitarity_defect(r.unitary);
  return r;
}

} // namespace seldark
