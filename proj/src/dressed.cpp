#include "seldark/dressed.hpp"

#include "seldark/errors.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace seldark {

namespace {

struct Angles {
  double sp, cp, sm, cm;
};

Angles angles_of(const SystemSpec& spec) {
  const MixingAngles m = mixing_angles(spec.delta1, spec.delta2, spec.j);
  return {std::sin(m.theta_plus), std::cos(m.theta_plus), std::sin(m.theta_minus), std::cos(m.theta_minus)};
}

void require_qubits(const SystemSpec& spec, const char* what) {
  validate(spec);
  if (spec.levels != 2) throw ConfigError(std::string(what) + ": requires levels = 2");
}

double control_detuning(const Eigensystem& eig, double omega) {
  return eig.energies(2) - eig.energies(0) - omega;
}

void require_off_resonant(double d, const char* what) {
  if (std::abs(d) < 1e-9) {
    std::ostringstream os;
    os << what << ": drive is resonant with E2 - E0 (detuning " << d << " GHz)";
    throw ConfigError(os.str());
  }
}

} // namespace

DressedBlock dressed_block(const SystemSpec& spec, double c1, double c2, double omega) {
  require_qubits(spec, "dressed_block");
  if (!(c1 >= 0.0) || !(c2 >= 0.0)) throw ConfigError("dressed_block: c1 and c2 must be >= 0");
  if (!std::isfinite(c1) || !std::isfinite(c2) || !std::isfinite(omega))
    throw ConfigError("dressed_block: parameters must be finite");
  const Eigensystem eig = exact_eigensystem(spec);
  const RVector& e = eig.energies;
  const Angles a = angles_of(spec);

  CMatrix h = CMatrix::Zero(4, 4);
  h(1, 1) = e(1) - e(0) - omega;
  h(2, 2) = e(2) - e(0) - omega;
  h(3, 3) = e(1) + e(2) - 2.0 * e(0) - 2.0 * omega;
  h(0, 1) = h(1, 0) = -c1 * a.sp + c2 * a.cm;
  h(0, 2) = h(2, 0) = c1 * a.cp + c2 * a.sm;
  h(1, 3) = h(3, 1) = c1 * a.cp - c2 * a.sm;
  h(2, 3) = h(3, 2) = c1 * a.sp + c2 * a.cm;
  return {c1, c2, omega, spec, h};
}

FirstOrderCorrections first_order_corrections(const DressedBlock& block) {
  const Eigensystem eig = exact_eigensystem(block.base);
  const RVector& e = eig.energies;
  const Angles a = angles_of(block.base);
  const double d = control_detuning(eig, block.omega);
  require_off_resonant(d, "first_order_corrections");

  const double u = block.c1 * a.cp + block.c2 * a.sm; // |0>-|2> coupling
  const double v = block.c1 * a.cp - block.c2 * a.sm; // |1>-|3> coupling
  FirstOrderCorrections f;
  f.energy_shifts = {-u * u / d, -v * v / d, u * u / d, v * v / d};
  f.states = CMatrix::Identity(4, 4);
  f.states(2, 0) = -u / d;
  f.states(3, 1) = -v / d;
  f.states(0, 2) = u / d;
  f.states(1, 3) = v / d;

  const double cross = 4.0 * block.c1 * block.c2 * a.cp * a.sm / d;
  f.e10 = e(1) - e(0) + cross;
  f.e32 = e(3) - e(2) - cross;
  f.e20 = e(2) - e(0) + 2.0 * u * u / d;
  f.e31 = e(3) - e(1) + 2.0 * v * v / d;

  const double dark = -block.c1 * a.sp + block.c2 * a.cm;
  const double bright = block.c1 * a.sp + block.c2 * a.cm;
  const double mix = (std::pow(block.c1 * a.cp, 2) - std::pow(block.c2 * a.sm, 2)) / (d * d);
  f.element_10 = dark + bright * mix;
  f.element_32 = bright + dark * mix;
  f.coupling_warning = std::max(std::abs(u), std::abs(v)) > 0.3 * std::abs(d);
  return f;
}

double block_pair_gap(const CMatrix& block, int i, int j) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(block);
  const RVector w = es.eigenvectors().row(i).cwiseAbs2() + es.eigenvectors().row(j).cwiseAbs2();
  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](int x, int y) { return w(x) > w(y) || (w(x) == w(y) && x < y); });
  return std::abs(es.eigenvalues()(order[0]) - es.eigenvalues()(order[1]));
}

DarkeningSearchResult strong_drive_darkening_search(const SystemSpec& spec, double c1) {
  require_qubits(spec, "strong_drive_darkening_search");
  const Eigensystem eig = exact_eigensystem(spec);
  const double detuning = eig.energies(2) - eig.energies(1);
  if (!(c1 >= 0.0) || !std::isfinite(c1)) throw ConfigError("strong_drive_darkening_search: c1 must be >= 0");
  if (c1 > 0.3 * std::abs(detuning)) {
    std::ostringstream os;
    os << "strong_drive_darkening_search: c1 = " << c1 << " GHz exceeds 0.3 (E2 - E1) = " << 0.3 * std::abs(detuning)
       << " GHz, outside the single-block range";
    throw ConfigError(os.str());
  }
  const double e10 = eig.energies(1) - eig.energies(0);
  DarkeningSearchResult r;
  if (c1 == 0.0) {
    r.omega = e10;
    return r;
  }
  const Angles a = angles_of(spec);
  const double c2_weak = c1 * a.sp / a.cm;
  const int bits = 52;

  auto bright_centre = [&](double c2) {
    const double w = 4.0 * (c1 + c2) + 1e-6;
    auto gap = [&](double om) {
      ++r.evaluations;
      return block_pair_gap(dressed_block(spec, c1, c2, om).matrix, 2, 3);
    };
    return boost::math::tools::brent_find_minima(gap, e10 - w, e10 + w, bits).first;
  };
  auto dark_gap = [&](double c2) { return block_pair_gap(dressed_block(spec, c1, c2, bright_centre(c2)).matrix, 0, 1); };

  const double lo = 0.5 * c2_weak, hi = 1.5 * c2_weak;
  const auto [c2, gap] = boost::math::tools::brent_find_minima(dark_gap, lo, hi, bits);
  const double span = hi - lo;
  if (c2 - lo < 1e-6 * span || hi - c2 < 1e-6 * span) {
    std::ostringstream os;
    os << "strong_drive_darkening_search: c2 search hit its bracket [" << lo << ", " << hi << "] at c1 = " << c1
       << " (c2 = " << c2 << ", gap = " << gap << ")";
    throw ComputationError(os.str());
  }
  r.c2 = c2;
  r.omega = bright_centre(c2);
  r.residual_gap = gap;
  return r;
}

ErrorDecomposition error_decomposition(const SystemSpec& spec, double c1, double c2, double omega) {
  const DressedBlock block = dressed_block(spec, c1, c2, omega);
  const Eigensystem eig = exact_eigensystem(spec);
  const double d = control_detuning(eig, omega);
  require_off_resonant(d, "error_decomposition");
  const Angles a = angles_of(spec);
  ErrorDecomposition out;
  out.common_shift = 2.0 * (std::pow(c1 * a.cp, 2) + std::pow(c2 * a.sm, 2)) / d;
  out.differential_shift = 4.0 * c1 * c2 * a.cp * a.sm / d;
  out.residual_brightness = first_order_corrections(block).element_10;
  return out;
}

} // namespace seldark
