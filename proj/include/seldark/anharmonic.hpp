#pragma once

#include "seldark/system.hpp"

#include <string>
#include <vector>

namespace seldark {

// Perturbative figures for two coupled qutrits driven to darken the target-2 |0>-|1> pair
// (amplitude ratio J/dD, equal phases). dD = delta1 - delta2 throughout.
// Strength fields are matrix elements at the requested a1 (GHz); divide by a1 for the slope.
struct AnharmonicReport {
  double a1 = 0.0;
  double cnot_strength = 0.0;             // a1 (J/dD)(anharm1/dD + J^2/dD^2), linearized in the anharmonicity
  double cnot_strength_unexpanded = 0.0;  // same element before linearizing in anharm1/dD
  double darkened_residual = 0.0;         // <1|V|0>, cancels at the weak ratio
  double leakage_14 = 0.0;                // <4|V|1>
  double leakage_36 = 0.0;                // <6|V|3>
  double detuning_14 = 0.0;               // (E4 - E1) - (E1 - E0)
  double detuning_36 = 0.0;               // (E6 - E3) - (E3 - E2)
  double max_rabi = 0.0;                  // bound set by the |3>-|6> leakage transition
  double cphase_shift = 0.0;              // net always-on shift of E3
};

AnharmonicReport perturbative_report(const SystemSpec& spec, double a1);

struct DeviationRow {
  std::string name;
  double perturbative = 0.0;
  double exact = 0.0;
  double relative_deviation = 0.0; // |p - e| / |e|, or |p - e| when e == 0
};

// Every perturbative energy and matrix element of the report against the exact 9x9 model.
std::vector<DeviationRow> exact_vs_perturbative(const SystemSpec& spec, double a1);

} // namespace seldark
