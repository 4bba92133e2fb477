#pragma once

#include "seldark/numerics.hpp"
#include "seldark/system.hpp"

#include <array>
#include <string>

namespace seldark {

enum class Envelope { rect, half_sine };

// H_drive(t) = env(t) [a1 cos(2pi omega t + phi1) X1 + a2 cos(2pi omega t + phi2) X2].
struct DriveSpec {
  double omega = 0.0; // GHz
  double a1 = 0.0;    // GHz
  double a2 = 0.0;    // GHz
  double phi1 = 0.0;  // rad
  double phi2 = 0.0;  // rad
  Envelope envelope = Envelope::half_sine;
  double t_gate = 1.0; // ns
};

void validate(const DriveSpec& drive);

std::string to_string(Envelope e);
Envelope envelope_from_string(const std::string& name);

double envelope_value(Envelope e, double t, double t_gate);
// Integral of the envelope over [0, t_gate].
double envelope_integral(Envelope e, double t_gate);

CMatrix drive_hamiltonian(const SystemSpec& spec, const DriveSpec& drive, double t);

enum class Polarity { cnot1, cnot0 };
enum class DarkeningMode { weak, exact };

struct DarkeningCondition {
  double amplitude_ratio = 0.0;  // a2 / a1 >= 0
  double phase_difference = 0.0; // phi2 - phi1, 0 or pi
  int target_qubit = 2;
  Polarity polarity = Polarity::cnot1;
};

// Two-level exact mode uses the closed-form mixing angles. Three-level exact mode solves for
// the ratio that zeroes the darkened element between the numerically exact eigenstates.
DarkeningCondition darkening_condition(const SystemSpec& spec, int target_qubit, Polarity polarity,
                                       DarkeningMode mode);

// Sets a2 and phi2 from a1 and phi1.
DriveSpec apply_darkening(DriveSpec drive, const DarkeningCondition& cond);

// Resonance with the target qubit's transition pair: E1 - E0 (target 2) or E2 - E0 (target 1).
double default_drive_frequency(const SystemSpec& spec, int target_qubit = 2);

// Labels (upper, lower) of the darkened and of the driven CNOT transition.
struct TransitionPair {
  int upper, lower;
};
TransitionPair darkened_transition(int target_qubit, Polarity polarity);
TransitionPair cnot_transition(int target_qubit, Polarity polarity);

// Co-rotating elements <k| (a1/2 e^{-i phi1} X1 + a2/2 e^{-i phi2} X2) |l> for k > l.
struct TransitionStrengths {
  cplx t10, t20, t32, t31;
};

// Closed form in the mixing angles (levels == 2).
TransitionStrengths transition_strengths(const SystemSpec& spec, double a1, double a2, double phi1, double phi2);

// Same elements normalized by a1 + a2.
std::array<double, 4> normalized_strengths(const TransitionStrengths& t, double a1, double a2);

// Co-rotating element between exact eigenstates with labels k > l, any level count.
cplx transition_element(const SystemSpec& spec, const Eigensystem& eig, double a1, double a2, double phi1,
                        double phi2, int k, int l);

// Maximum CNOT Rabi frequency estimate 4J (levels == 2).
double max_rabi_estimate(const SystemSpec& spec);

// s1 sqrt((w1 - D1)^2 + a1^2) + s2 sqrt((w2 - D2)^2 + a2^2) - (w1 - w2), with s1, s2 = +-1.
double double_resonance_residual(double omega1, double omega2, double delta1, double delta2, double a1,
                                 double a2, int sign1, int sign2);

struct DoubleResonanceReport {
  int sign1 = 1, sign2 = 1;
  double residual = 0.0; // smallest |residual| over the four sign pairs, with its sign
};
DoubleResonanceReport double_resonance_scan(double omega1, double omega2, double delta1, double delta2,
                                            double a1, double a2);

} // namespace seldark
