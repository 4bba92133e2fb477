#pragma once

#include "seldark/numerics.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace seldark {

// Two transversely coupled qubits (or qutrits). Frequencies are linear, in GHz.
struct SystemSpec {
  double delta1 = 0.0; // qubit 1 splitting
  double delta2 = 0.0; // qubit 2 splitting
  double j = 0.0;      // sigma_x sigma_x coupling
  int levels = 2;
  std::optional<double> anharm1; // required iff levels == 3
  std::optional<double> anharm2;
};

// Throws ConfigError on an invalid spec.
void validate(const SystemSpec& spec);

inline int dimension(const SystemSpec& spec) { return spec.levels * spec.levels; }

// Single-site operators for a `levels`-state ladder.
CMatrix sigma_x(int levels);
CMatrix site_energies(int levels, double splitting, double anharm);

// sigma_x acting on qubit `qubit` (1 or 2) in the product basis, index = levels*q1 + q2.
CMatrix drive_operator(const SystemSpec& spec, int qubit);

CMatrix build_hamiltonian(const SystemSpec& spec);

// Product-basis index for each state label. Labels 0..3 are always the computational states
// |00>, |01>, |10>, |11>; for levels == 3 labels 4..8 are |02>, |20>, |12>, |21>, |22>.
const std::vector<int>& product_index_of_label(int levels);

struct Eigensystem {
  RVector energies;           // indexed by label, GHz
  CMatrix states;             // column k is the eigenstate with label k, in the product basis
  std::vector<int> labels;    // ascending-energy eigen-index -> label
  double theta1 = 0.0;        // mixing angles, levels == 2 only (NaN otherwise)
  double theta2 = 0.0;
  double theta_plus = 0.0;
  double theta_minus = 0.0;
};

// Mixing angles tan(theta1) = 2J/(D1+D2), tan(theta2) = 2J/(D1-D2) on the principal branch;
// theta2 = +-pi/2 when D1 == D2.
struct MixingAngles {
  double theta1, theta2, theta_plus, theta_minus;
};
MixingAngles mixing_angles(double delta1, double delta2, double j);

Eigensystem exact_eigensystem(const SystemSpec& spec);

struct WeakCouplingStates {
  CMatrix states;   // first-order (unnormalized) states, column per label
  RVector energies; // perturbative energies, indexed by label
  std::vector<std::pair<std::string, double>> amplitudes;
  bool coupling_warning = false; // J/|D1-D2| > 0.2
};

WeakCouplingStates weak_coupling_states(const SystemSpec& spec);

} // namespace seldark
