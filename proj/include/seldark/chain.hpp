#pragma once

#include "seldark/numerics.hpp"

#include <cstdint>
#include <vector>

namespace seldark {

// Open chain of transversely coupled qubits. Sites are 0-based; site 0 is the most significant
// bit of the product-basis index, matching the two-qubit convention.
struct ChainSpec {
  std::vector<double> deltas; // site splittings, GHz
  std::vector<double> js;     // nearest-neighbour couplings, GHz, size n - 1
  bool allow_degenerate = false;
};

constexpr int kMaxChainSites = 12;

void validate(const ChainSpec& spec);

// sum_i -(D_i/2) sz_i + sum_i J_i sx_i sx_{i+1}, dense 2^n matrix.
CMatrix build_chain(const ChainSpec& spec);
RMatrix build_chain_real(const ChainSpec& spec);

struct ModeAmplitudes {
  RMatrix psi; // psi(i, j): amplitude of mode i on site j
};

enum class JwMode { full, rwa };

struct SingleParticleSpectrum {
  RVector energies;   // mode energies, mode i ordered by the site it is localized on
  ModeAmplitudes modes; // full mode: particle (u) part of each Bogoliubov mode
  RMatrix holes;      // full mode: hole (v) part; zero in rwa mode
  double ground_energy = 0.0;
};

// Full mode diagonalizes the 2n x 2n Bogoliubov matrix and is exact. RWA mode keeps only the
// number-conserving hopping (D_i diagonal, J_i off-diagonal). Modes are ordered by their dominant
// site when that assignment is one-to-one, otherwise by energy; the dominant amplitude is positive.
SingleParticleSpectrum jw_single_particle(const ChainSpec& spec, JwMode mode = JwMode::full);

struct ConditionalElement {
  std::uint32_t spectators = 0; // bit s set: site s (s != flip site) in |1>, same bit layout as the basis index
  cplx element;
};

struct ConditionalRabi {
  std::vector<ConditionalElement> elements;
  double spread = 0.0; // (max - min) / mean of |element|
};

// <s, flip=1| sx_drive |s, flip=0> between exact chain eigenstates for every spectator
// configuration s, eigenstates labelled by their largest product-state overlap.
ConditionalRabi conditional_rabi_elements(const ChainSpec& spec, int drive_site, int flip_site);

// J_{i,i+1}/(D_i - D_{i+1}) ... J_{j-1,j}: perturbative hopping between sites i < j.
double effective_long_range_tunneling(const ChainSpec& spec, int i, int j);

} // namespace seldark
