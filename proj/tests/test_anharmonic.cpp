#include "seldark/anharmonic.hpp"
#include "seldark/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace seldark;

namespace {

SystemSpec qutrits(double j = 0.025, double d1 = -0.2, double d2 = -0.18) { return {6.0, 5.0, j, 3, d1, d2}; }

const DeviationRow& row(const std::vector<DeviationRow>& rows, const std::string& name) {
  for (const auto& r : rows)
    if (r.name == name) return r;
  throw std::runtime_error("missing row " + name);
}

double max_energy_deviation(const std::vector<DeviationRow>& rows) {
  double m = 0.0;
  for (const auto& r : rows)
    if (r.name.size() == 2 && r.name[0] == 'E') m = std::max(m, r.relative_deviation);
  return m;
}

} // namespace

TEST(PerturbativeReport, CnotStrength) {
  const auto r = perturbative_report(qutrits(), 1.0);
  EXPECT_NEAR(std::abs(r.cnot_strength), 4.98e-3, 1e-5);
  EXPECT_NEAR(r.cnot_strength, 0.025 * (-0.2 + 0.000625), 1e-15);
  // report fields scale with the drive amplitude
  EXPECT_NEAR(perturbative_report(qutrits(), 0.2).cnot_strength, 0.2 * r.cnot_strength, 1e-16);
}

TEST(PerturbativeReport, CphaseShift) {
  EXPECT_NEAR(perturbative_report(qutrits(), 1.0).cphase_shift, -4.75e-4, 1e-10);
}

TEST(PerturbativeReport, MaxRabi) {
  EXPECT_NEAR(perturbative_report(qutrits(), 1.0).max_rabi, 0.01326, 1e-5);
}

TEST(PerturbativeReport, LeakageAndResidual) {
  const auto r = perturbative_report(qutrits(), 0.5);
  EXPECT_EQ(r.darkened_residual, 0.0);
  EXPECT_NEAR(r.leakage_36, 0.5 * 0.025 * (1 + std::sqrt(2.0) / 4), 1e-15);
  EXPECT_NEAR(r.detuning_36, -0.18 - 3 * 0.025 * 0.025, 1e-15);
}

TEST(PerturbativeReport, HarmonicLimit) {
  const double x = 0.025;
  EXPECT_NEAR(perturbative_report(qutrits(x, 0.0, 0.0), 1.0).cnot_strength, x * x * x, 1e-18);
}

TEST(PerturbativeReport, RejectsEqualSplittingsAndQubits) {
  EXPECT_THROW(perturbative_report({5, 5, 0.02, 3, -0.2, -0.2}, 1.0), ConfigError);
  EXPECT_THROW(perturbative_report({6, 5, 0.02}, 1.0), ConfigError);
}

TEST(ExactVsPerturbative, EnergiesWithinOnePercent) {
  const auto rows = exact_vs_perturbative(qutrits(), 1.0);
  EXPECT_LT(max_energy_deviation(rows), 0.01);
}

TEST(ExactVsPerturbative, ZeroCouplingIsExact) {
  const auto rows = exact_vs_perturbative(qutrits(0.0), 1.0);
  EXPECT_LT(max_energy_deviation(rows), 1e-14);
}

TEST(ExactVsPerturbative, StrengthCloseToExactElement) {
  const auto rows = exact_vs_perturbative(qutrits(), 1.0);
  const auto& un = row(rows, "cnot_strength_unexpanded");
  EXPECT_LT(un.relative_deviation, 0.2);
  EXPECT_NEAR(row(rows, "cphase_shift").relative_deviation, 0.0, 0.1);
}

TEST(ExactVsPerturbative, EnergyDeviationScalesQuadratically) {
  std::vector<double> lx, ly;
  for (double j : {0.005, 0.01, 0.02, 0.05}) {
    lx.push_back(std::log(j));
    ly.push_back(std::log(max_energy_deviation(exact_vs_perturbative(qutrits(j), 1.0))));
  }
  const double slope = (ly.back() - ly.front()) / (lx.back() - lx.front());
  EXPECT_NEAR(slope, 2.0, 0.2);
}
