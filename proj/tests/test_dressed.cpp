#include "oracles.hpp"
#include "seldark/dressed.hpp"
#include "seldark/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace seldark;

namespace {

const SystemSpec kRef{6.0, 5.0, 0.1};

struct Refs {
  double e10, e20, ratio, detuning;
};

Refs refs() {
  const auto e = exact_eigensystem(kRef);
  const double e10 = e.energies(1) - e.energies(0);
  return {e10, e.energies(2) - e.energies(0), std::sin(e.theta_plus) / std::cos(e.theta_minus),
          e.energies(2) - e.energies(1)};
}

// Eigenvalue carrying the most weight on block state k.
double level_of(const CMatrix& h, int k) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  Eigen::Index best;
  es.eigenvectors().row(k).cwiseAbs2().maxCoeff(&best);
  return es.eigenvalues()(best);
}

} // namespace

TEST(DressedBlock, UncoupledBlockIsDiagonal) {
  const Refs r = refs();
  const auto b = dressed_block(kRef, 0.0, 0.0, r.e10);
  EXPECT_LT(oracle::max_abs(b.matrix - CMatrix(b.matrix.diagonal().asDiagonal())), 1e-16);
  EXPECT_EQ(b.matrix(0, 0), cplx(0.0));
  EXPECT_NEAR(b.matrix(1, 1).real(), 0.0, 1e-15);
  EXPECT_NEAR(b.matrix(2, 2).real(), r.e20 - r.e10, 1e-14);
}

TEST(DressedBlock, HermitianWithOracleSpectrum) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> c(0.0, 0.5), w(4.5, 5.5);
  for (int n = 0; n < 50; ++n) {
    const auto b = dressed_block(kRef, c(rng), c(rng), w(rng));
    EXPECT_LT(max_asymmetry(b.matrix), 1e-16);
    const RVector mine = eig_hermitian(b.matrix).values;
    Eigen::ComplexEigenSolver<CMatrix> ces(b.matrix);
    std::vector<double> ref;
    for (int k = 0; k < 4; ++k) ref.push_back(ces.eigenvalues()(k).real());
    std::sort(ref.begin(), ref.end());
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(mine(k), ref[k], 1e-12);
  }
  EXPECT_THROW(dressed_block(kRef, -0.1, 0.0, 5.0), ConfigError);
}

TEST(DressedBlock, ReducedBlockDegenerateAtWeakCondition) {
  const Refs r = refs();
  const double c1 = 0.05;
  CMatrix h = dressed_block(kRef, c1, c1 * r.ratio, r.e10).matrix;
  h(0, 2) = h(2, 0) = 0.0;
  h(1, 3) = h(3, 1) = 0.0;
  EXPECT_LT(block_pair_gap(h, 0, 1), 1e-14);
  // away from the condition the pair splits
  CMatrix g = dressed_block(kRef, c1, 1.2 * c1 * r.ratio, r.e10).matrix;
  g(0, 2) = g(2, 0) = 0.0;
  g(1, 3) = g(3, 1) = 0.0;
  EXPECT_GT(block_pair_gap(g, 0, 1), 1e-4);
}

TEST(FirstOrder, ZeroFieldHasNoCorrections) {
  const auto f = first_order_corrections(dressed_block(kRef, 0.0, 0.0, refs().e10));
  for (double s : f.energy_shifts) EXPECT_EQ(s, 0.0);
  EXPECT_EQ(f.element_10, 0.0);
}

TEST(FirstOrder, ShiftsAreAntisymmetric) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> c(0.0, 0.3), w(4.5, 5.5);
  for (int n = 0; n < 20; ++n) {
    const auto f = first_order_corrections(dressed_block(kRef, c(rng), c(rng), w(rng)));
    EXPECT_DOUBLE_EQ(f.energy_shifts[0], -f.energy_shifts[2]);
    EXPECT_DOUBLE_EQ(f.energy_shifts[1], -f.energy_shifts[3]);
  }
}

TEST(FirstOrder, RejectsResonantDrive) {
  EXPECT_THROW(first_order_corrections(dressed_block(kRef, 0.1, 0.01, refs().e20)), ConfigError);
}

// Corrected pair splittings against the exact block at C/detuning = 0.02.
TEST(FirstOrder, PairDifferencesMatchExactBlock) {
  const Refs r = refs();
  const double omega = r.e10 - 0.05;
  const double d = r.e20 - omega;
  const double c1 = 0.02 * d;
  const auto b = dressed_block(kRef, c1, c1 * r.ratio, omega);
  const auto f = first_order_corrections(b);
  const double exact10 = level_of(b.matrix, 1) - level_of(b.matrix, 0) + omega;
  const double bound = std::pow(0.02, 4) * d * 10;
  EXPECT_NEAR(f.e10, exact10, bound);
}

TEST(FirstOrder, ResidualShrinksFasterThanShift) {
  const Refs r = refs();
  const double omega = r.e10 - 0.05, d = r.e20 - omega;
  double prev_ratio = 0.0;
  std::vector<double> res;
  for (double x : {0.04, 0.02, 0.01}) {
    const auto b = dressed_block(kRef, x * d, x * d * r.ratio, omega);
    const auto f = first_order_corrections(b);
    res.push_back(std::abs(f.e10 - (level_of(b.matrix, 1) - level_of(b.matrix, 0) + omega)));
  }
  prev_ratio = res[0] / res[2];
  EXPECT_GT(prev_ratio, 4.0 * 4.0 * 0.9); // at least third order in C
}

TEST(FirstOrder, StatesMatchExactAdmixture) {
  const Refs r = refs();
  const double omega = r.e10 - 0.05, d = r.e20 - omega;
  const double x = 0.02;
  const auto b = dressed_block(kRef, x * d, x * d * r.ratio, omega);
  const auto f = first_order_corrections(b);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(b.matrix);
  Eigen::Index k0;
  es.eigenvectors().row(0).cwiseAbs2().maxCoeff(&k0);
  const CVector v = es.eigenvectors().col(k0) / es.eigenvectors()(0, k0);
  EXPECT_NEAR(f.states(2, 0).real(), v(2).real(), std::abs(v(2)) * 4 * x * x * 10);
}

TEST(DarkeningSearch, ZeroFieldIsExactlyDegenerate) {
  const auto s = strong_drive_darkening_search(kRef, 0.0);
  EXPECT_EQ(s.residual_gap, 0.0);
  EXPECT_DOUBLE_EQ(s.omega, refs().e10);
}

TEST(DarkeningSearch, WeakLimitRecoversRatio) {
  const Refs r = refs();
  const double c1 = 1e-4 * r.detuning;
  const auto s = strong_drive_darkening_search(kRef, c1);
  EXPECT_NEAR(s.c2 / c1 / r.ratio, 1.0, 1e-3);
  EXPECT_NEAR(s.omega, r.e10, 1e-6);
}

TEST(DarkeningSearch, GapPositiveAndNondecreasing) {
  double prev = 0.0;
  for (double c1 : {0.001, 0.01, 0.05, 0.1, 0.2, 0.3}) {
    const auto s = strong_drive_darkening_search(kRef, c1);
    EXPECT_GT(s.residual_gap, 0.0) << c1;
    EXPECT_GE(s.residual_gap, prev) << c1;
    prev = s.residual_gap;
  }
}

TEST(DarkeningSearch, RejectsOutOfRangeField) {
  EXPECT_THROW(strong_drive_darkening_search(kRef, -1.0), ConfigError);
  EXPECT_THROW(strong_drive_darkening_search(kRef, 0.5 * refs().detuning), ConfigError);
}

TEST(ErrorDecomposition, LimitsAndScale) {
  const Refs r = refs();
  const double omega = r.e10;
  const double d = r.e20 - omega;
  const auto un = error_decomposition({6, 5, 1e-9}, 0.1, 0.01, omega);
  EXPECT_LT(std::abs(un.differential_shift), 1e-9);
  EXPECT_NEAR(un.common_shift, 2 * 0.01 / (6 - omega), 1e-8);
  const auto big = error_decomposition(kRef, 1.0, r.ratio, omega);
  EXPECT_GT(std::abs(big.differential_shift), 0.003);
  EXPECT_LT(std::abs(big.differential_shift), 0.1);
  // first-order element vanishes when the printed combination does
  const auto f = first_order_corrections(dressed_block(kRef, 0.1, 0.1 * r.ratio, omega));
  EXPECT_NEAR(error_decomposition(kRef, 0.1, 0.1 * r.ratio, omega).residual_brightness, f.element_10, 0.0);
  (void)d;
}
