#include "seldark/anharmonic.hpp"

#include "seldark/drive.hpp"
#include "seldark/errors.hpp"

#include <cmath>

namespace seldark {

namespace {

void require_qutrits(const SystemSpec& spec, const char* what) {
  validate(spec);
  if (spec.levels != 3) throw ConfigError(std::string(what) + ": requires levels = 3");
  if (spec.delta1 == spec.delta2)
    throw ConfigError(std::string(what) + ": delta1 = delta2 makes the perturbative expansion singular");
}

double relative(double p, double e) {
  const double d = std::abs(p - e);
  return e == 0.0 ? d : d / std::abs(e);
}

} // namespace

AnharmonicReport perturbative_report(const SystemSpec& spec, double a1) {
  require_qutrits(spec, "perturbative_report");
  if (!std::isfinite(a1)) throw ConfigError("perturbative_report: a1 must be finite");
  const double j = spec.j, dd = spec.delta1 - spec.delta2;
  const double d1 = *spec.anharm1, d2 = *spec.anharm2;
  const double x = j / dd, x2 = x * x;

  AnharmonicReport r;
  r.a1 = a1;
  r.cnot_strength = a1 * x * (d1 / dd + x2);
  r.cnot_strength_unexpanded = 0.5 * a1 * ((-2.0 * j / (dd + d1) + x) + x * (1.0 + 2.0 * x2));
  r.darkened_residual = 0.5 * a1 * (-x + x);
  r.leakage_14 = a1 * x / std::sqrt(2.0) * (-d2 / dd + x2);
  r.leakage_36 = a1 * x * (1.0 + std::sqrt(2.0) / 4.0);
  r.detuning_14 = d2 - 2.0 * x2 * d2;
  r.detuning_36 = d2 - 3.0 * j * j / dd;
  r.max_rabi = std::abs(d2) / (2.0 + std::sqrt(2.0) / 2.0) * std::abs(d1 / dd + x2);
  r.cphase_shift = 2.0 * j * j * (d1 + d2) / (dd * dd);
  return r;
}

std::vector<DeviationRow> exact_vs_perturbative(const SystemSpec& spec, double a1) {
  require_qutrits(spec, "exact_vs_perturbative");
  const AnharmonicReport rep = perturbative_report(spec, a1);
  const WeakCouplingStates weak = weak_coupling_states(spec);
  const Eigensystem eig = exact_eigensystem(spec);
  const double ratio = spec.j / (spec.delta1 - spec.delta2);

  std::vector<DeviationRow> rows;
  auto add = [&](std::string name, double p, double e) {
    rows.push_back({std::move(name), p, e, relative(p, e)});
  };
  for (int k = 0; k < 9; ++k) add("E" + std::to_string(k), weak.energies(k), eig.energies(k));

  // Real parts: with equal drive phases every element is real in the phase-fixed eigenbasis.
  auto element = [&](int k, int l) {
    return transition_element(spec, eig, a1, a1 * ratio, 0.0, 0.0, k, l).real();
  };
  const double e32 = element(3, 2);
  add("cnot_strength", rep.cnot_strength, e32);
  add("cnot_strength_unexpanded", rep.cnot_strength_unexpanded, e32);
  add("darkened_residual", rep.darkened_residual, element(1, 0));
  add("leakage_14", rep.leakage_14, element(4, 1));
  add("leakage_36", rep.leakage_36, element(6, 3));
  const RVector& e = eig.energies;
  add("detuning_14", rep.detuning_14, (e(4) - e(1)) - (e(1) - e(0)));
  add("detuning_36", rep.detuning_36, (e(6) - e(3)) - (e(3) - e(2)));
  add("cphase_shift", rep.cphase_shift, (e(3) - e(2)) - (e(1) - e(0)));
  return rows;
}

} // namespace seldark
