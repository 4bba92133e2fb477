#pragma once

#include "seldark/system.hpp"

#include <array>

namespace seldark {

// One photon-number block of two coupled qubits plus a quantized drive field, over
// {|0,N+1>, |1,N>, |2,N>, |3,N-1>} (large N). C_i = sqrt(N) g_i in GHz; compared with a classical
// drive of amplitude a_i, C_i plays the role of a_i / 2. Target is qubit 2, drive phases zero.
struct DressedBlock {
  double c1 = 0.0;
  double c2 = 0.0;
  double omega = 0.0;
  SystemSpec base;
  CMatrix matrix;
};

DressedBlock dressed_block(const SystemSpec& spec, double c1, double c2, double omega);

// First-order treatment of the |0>-|2> and |1>-|3> couplings of the block.
struct FirstOrderCorrections {
  std::array<double, 4> energy_shifts{}; // dE0..dE3
  CMatrix states;                        // corrected (unnormalized) states, column per block index
  double e10 = 0.0;                      // E'1 - E'0 (lab energies, GHz)
  double e32 = 0.0;                      // E'3 - E'2
  double e20 = 0.0;                      // E'2 - E'0
  double e31 = 0.0;                      // E'3 - E'1
  double element_10 = 0.0;               // <1,N|' H0 |0,N+1>'
  double element_32 = 0.0;               // <3,N-1|' H0 |2,N>'
  bool coupling_warning = false;         // a coupling exceeds 0.3 of the detuning
};

FirstOrderCorrections first_order_corrections(const DressedBlock& block);

struct DarkeningSearchResult {
  double c2 = 0.0;
  double omega = 0.0;
  double residual_gap = 0.0; // splitting of the two levels spanning {|0,N+1>, |1,N>}
  int evaluations = 0;
};

// Holds omega on the centre of the bright |2>-|3> avoided crossing and minimizes the dark-pair
// splitting over c2. Requires 0 <= c1 <= 0.3 (E2 - E1), the single-block validity range.
DarkeningSearchResult strong_drive_darkening_search(const SystemSpec& spec, double c1);

struct ErrorDecomposition {
  double common_shift = 0.0;       // control-qubit ac-Stark shift
  double differential_shift = 0.0; // +/- shift of the control and target transitions
  double residual_brightness = 0.0; // corrected element that should vanish
};

ErrorDecomposition error_decomposition(const SystemSpec& spec, double c1, double c2, double omega);

// Splitting between the two block eigenvalues carrying the most weight on block states i and j.
double block_pair_gap(const CMatrix& block, int i, int j);

} // namespace seldark
