#include "seldark/drive.hpp"

#include "seldark/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace seldark {

namespace {
constexpr double kPi = std::numbers::pi;
}

void validate(const DriveSpec& d) {
  for (double x : {d.omega, d.a1, d.a2, d.phi1, d.phi2, d.t_gate})
    if (!std::isfinite(x)) throw ConfigError("drive: all fields must be finite");
  if (d.a1 < 0.0) throw ConfigError("drive.a1: must be >= 0");
  if (d.a2 < 0.0) throw ConfigError("drive.a2: must be >= 0");
  if (d.omega < 0.0) throw ConfigError("drive.omega: must be >= 0");
  if (d.t_gate <= 0.0) throw ConfigError("drive.t_gate: must be > 0");
}

std::string to_string(Envelope e) { return e == Envelope::rect ? "rect" : "half_sine"; }

Envelope envelope_from_string(const std::string& name) {
  if (name == "rect") return Envelope::rect;
  if (name == "half_sine") return Envelope::half_sine;
  throw ConfigError("envelope: expected \"rect\" or \"half_sine\", got \"" + name + "\"");
}

double envelope_value(Envelope e, double t, double t_gate) {
  return e == Envelope::rect ? 1.0 : std::sin(kPi * t / t_gate);
}

double envelope_integral(Envelope e, double t_gate) {
  return e == Envelope::rect ? t_gate : 2.0 * t_gate / kPi;
}

CMatrix drive_hamiltonian(const SystemSpec& spec, const DriveSpec& drive, double t) {
  validate(spec);
  validate(drive);
  const double slack = 1e-12 * drive.t_gate;
  if (t < -slack || t > drive.t_gate + slack) {
    std::ostringstream os;
    os << "drive_hamiltonian: t = " << t << " outside the pulse window [0, " << drive.t_gate << "]";
    throw ConfigError(os.str());
  }
  const double env = envelope_value(drive.envelope, t, drive.t_gate);
  const double w = kTwoPi * drive.omega * t;
  return env * (drive.a1 * std::cos(w + drive.phi1) * drive_operator(spec, 1) +
                drive.a2 * std::cos(w + drive.phi2) * drive_operator(spec, 2));
}

TransitionPair darkened_transition(int target_qubit, Polarity polarity) {
  if (target_qubit == 2) return polarity == Polarity::cnot1 ? TransitionPair{1, 0} : TransitionPair{3, 2};
  if (target_qubit == 1) return polarity == Polarity::cnot1 ? TransitionPair{2, 0} : TransitionPair{3, 1};
  throw ConfigError("target_qubit: must be 1 or 2");
}

TransitionPair cnot_transition(int target_qubit, Polarity polarity) {
  if (target_qubit == 2) return polarity == Polarity::cnot1 ? TransitionPair{3, 2} : TransitionPair{1, 0};
  if (target_qubit == 1) return polarity == Polarity::cnot1 ? TransitionPair{3, 1} : TransitionPair{2, 0};
  throw ConfigError("target_qubit: must be 1 or 2");
}

cplx transition_element(const SystemSpec& spec, const Eigensystem& eig, double a1, double a2, double phi1,
                        double phi2, int k, int l) {
  const CMatrix op = 0.5 * a1 * std::polar(1.0, -phi1) * drive_operator(spec, 1) +
                     0.5 * a2 * std::polar(1.0, -phi2) * drive_operator(spec, 2);
  return eig.states.col(k).dot(op * eig.states.col(l));
}

namespace {

// Signed ratio r with a2 = |r| a1 and the phase flipped by pi when r < 0.
DarkeningCondition from_signed_ratio(double r, double base_phase, int target, Polarity polarity) {
  DarkeningCondition c;
  c.target_qubit = target;
  c.polarity = polarity;
  c.amplitude_ratio = std::abs(r);
  const bool flip = r < 0.0;
  const bool pi_phase = (base_phase != 0.0) != flip;
  c.phase_difference = pi_phase ? kPi : 0.0;
  return c;
}

} // namespace

DarkeningCondition darkening_condition(const SystemSpec& spec, int target, Polarity polarity, DarkeningMode mode) {
  validate(spec);
  if (target != 1 && target != 2) throw ConfigError("target_qubit: must be 1 or 2");
  // Phase difference that makes the two contributions cancel for a positive ratio.
  double base = 0.0;
  if (target == 2) base = polarity == Polarity::cnot1 ? 0.0 : kPi;
  else base = polarity == Polarity::cnot1 ? kPi : 0.0;

  const double dd = spec.delta1 - spec.delta2;
  if (mode == DarkeningMode::weak) {
    if (dd == 0.0) throw ConfigError("darkening_condition: weak mode is singular for delta1 == delta2");
    if (target == 2) return from_signed_ratio(spec.j / dd, base, target, polarity);
    if (spec.j == 0.0) throw ConfigError("darkening_condition: target 1 is singular for J = 0");
    return from_signed_ratio(dd / spec.j, base, target, polarity);
  }

  if (spec.levels == 2) {
    const MixingAngles m = mixing_angles(spec.delta1, spec.delta2, spec.j);
    if (target == 2) return from_signed_ratio(std::sin(m.theta_plus) / std::cos(m.theta_minus), base, target, polarity);
    if (std::abs(std::sin(m.theta_minus)) < 1e-15)
      throw ConfigError("darkening_condition: target 1 is singular (theta_minus = 0)");
    return from_signed_ratio(std::cos(m.theta_plus) / std::sin(m.theta_minus), base, target, polarity);
  }

  // Three levels: zero <k| X1 + r X2 |l> between exact eigenstates. Both elements are real
  // because the Hamiltonian is real and the phase rule keeps the eigenvectors real.
  const Eigensystem eig = exact_eigensystem(spec);
  const TransitionPair dark = darkened_transition(target, polarity);
  const cplx x1 = transition_element(spec, eig, 2.0, 0.0, 0.0, 0.0, dark.upper, dark.lower);
  const cplx x2 = transition_element(spec, eig, 0.0, 2.0, 0.0, 0.0, dark.upper, dark.lower);
  if (std::abs(x2) < 1e-15) throw ConfigError("darkening_condition: qubit-2 drive does not couple the darkened pair");
  const double r = -(x1 / x2).real();
  // With the signed ratio r the cancellation uses zero phase difference.
  return from_signed_ratio(r, 0.0, target, polarity);
}

DriveSpec apply_darkening(DriveSpec drive, const DarkeningCondition& cond) {
  drive.a2 = cond.amplitude_ratio * drive.a1;
  drive.phi2 = drive.phi1 + cond.phase_difference;
  return drive;
}

double default_drive_frequency(const SystemSpec& spec, int target_qubit) {
  const Eigensystem eig = exact_eigensystem(spec);
  if (target_qubit == 2) return eig.energies(1) - eig.energies(0);
  if (target_qubit == 1) return eig.energies(2) - eig.energies(0);
  throw ConfigError("target_qubit: must be 1 or 2");
}

TransitionStrengths transition_strengths(const SystemSpec& spec, double a1, double a2, double phi1, double phi2) {
  validate(spec);
  if (spec.levels != 2) throw ConfigError("transition_strengths: closed form requires levels = 2");
  if (a1 < 0.0 || a2 < 0.0) throw ConfigError("transition_strengths: amplitudes must be >= 0");
  const MixingAngles m = mixing_angles(spec.delta1, spec.delta2, spec.j);
  const cplx p1 = 0.5 * a1 * std::polar(1.0, -phi1);
  const cplx p2 = 0.5 * a2 * std::polar(1.0, -phi2);
  const double sp = std::sin(m.theta_plus), cp = std::cos(m.theta_plus);
  const double sm = std::sin(m.theta_minus), cm = std::cos(m.theta_minus);
  return {-p1 * sp + p2 * cm, p1 * cp + p2 * sm, p1 * sp + p2 * cm, p1 * cp - p2 * sm};
}

std::array<double, 4> normalized_strengths(const TransitionStrengths& t, double a1, double a2) {
  const double s = a1 + a2;
  if (s <= 0.0) throw ConfigError("normalized_strengths: a1 + a2 must be > 0");
  return {std::abs(t.t10) / s, std::abs(t.t20) / s, std::abs(t.t32) / s, std::abs(t.t31) / s};
}

double max_rabi_estimate(const SystemSpec& spec) {
  validate(spec);
  return 4.0 * std::abs(spec.j);
}

double double_resonance_residual(double omega1, double omega2, double delta1, double delta2, double a1, double a2,
                                 int sign1, int sign2) {
  if ((sign1 != 1 && sign1 != -1) || (sign2 != 1 && sign2 != -1))
    throw ConfigError("double_resonance_residual: signs must be +1 or -1");
  return sign1 * std::hypot(omega1 - delta1, a1) + sign2 * std::hypot(omega2 - delta2, a2) - (omega1 - omega2);
}

DoubleResonanceReport double_resonance_scan(double omega1, double omega2, double delta1, double delta2, double a1,
                                            double a2) {
  DoubleResonanceReport best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      const double r = double_resonance_residual(omega1, omega2, delta1, delta2, a1, a2, s1, s2);
      if (std::abs(r) < std::abs(best.residual)) best = {s1, s2, r};
    }
  return best;
}

} // namespace seldark
