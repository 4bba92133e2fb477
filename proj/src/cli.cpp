#include "seldark/cli.hpp"

#include "seldark/anharmonic.hpp"
#include "seldark/dressed.hpp"
#include "seldark/errors.hpp"
#include "seldark/parallel.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace seldark::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError(field + ": " + what);
}

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) fail(where.empty() ? key : where + "." + key, "unknown field");
}

double get_number(const json& obj, const std::string& key, const std::string& field) {
  const json& v = obj.at(key);
  if (!v.is_number()) fail(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(field, "must be finite");
  return d;
}

double number_or(const json& obj, const std::string& key, const std::string& field, double fallback) {
  return obj.contains(key) ? get_number(obj, key, field) : fallback;
}

int int_or(const json& obj, const std::string& key, const std::string& field, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(field, "expected an integer");
  return v.get<int>();
}

std::string string_or(const json& obj, const std::string& key, const std::string& field, std::string fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) fail(field, "expected a string");
  return v.get<std::string>();
}

std::vector<double> number_list(const json& obj, const std::string& key, const std::string& field) {
  if (!obj.contains(key)) fail(field, "missing");
  const json& v = obj.at(key);
  if (!v.is_array() || v.empty()) fail(field, "expected a non-empty array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) fail(field, "expected a non-empty array of numbers");
    out.push_back(x.get<double>());
    if (!std::isfinite(out.back())) fail(field, "values must be finite");
  }
  return out;
}

// Rethrows a library ConfigError with the config section prefixed.
template <class F>
void validated(const std::string& section, F&& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    throw ConfigError(section + ": " + e.what());
  }
}

SystemSpec parse_system(const json& j) {
  check_keys(j, "system", {"delta1", "delta2", "j", "levels", "anharm1", "anharm2"});
  SystemSpec s;
  for (const char* k : {"delta1", "delta2", "j"})
    if (!j.contains(k)) fail(std::string("system.") + k, "missing");
  s.delta1 = get_number(j, "delta1", "system.delta1");
  s.delta2 = get_number(j, "delta2", "system.delta2");
  s.j = get_number(j, "j", "system.j");
  s.levels = int_or(j, "levels", "system.levels", 2);
  if (j.contains("anharm1")) s.anharm1 = get_number(j, "anharm1", "system.anharm1");
  if (j.contains("anharm2")) s.anharm2 = get_number(j, "anharm2", "system.anharm2");
  validate(s);
  return s;
}

DriveConfig parse_drive(const json& j) {
  check_keys(j, "drive", {"omega", "a1", "a2", "phi1", "phi2", "envelope", "darkening"});
  DriveConfig d;
  if (j.contains("omega")) {
    const json& om = j.at("omega");
    if (om.is_string()) {
      const std::string name = om.get<std::string>();
      if (name == "target_pair") d.frequency = DriveFrequency::target_pair;
      else if (name == "cnot_pair") d.frequency = DriveFrequency::cnot_pair;
      else fail("drive.omega", "expected a number, \"target_pair\" or \"cnot_pair\"");
    } else {
      d.frequency = DriveFrequency::explicit_value;
      d.omega = get_number(j, "omega", "drive.omega");
      if (d.omega <= 0.0) fail("drive.omega", "must be > 0");
    }
  }
  d.a1 = number_or(j, "a1", "drive.a1", 0.0);
  if (d.a1 < 0.0) fail("drive.a1", "must be >= 0");
  d.phi1 = number_or(j, "phi1", "drive.phi1", 0.0);
  const std::string dark = string_or(j, "darkening", "drive.darkening", "exact");
  if (dark == "weak") d.darkening = Darkening::weak;
  else if (dark == "exact") d.darkening = Darkening::exact;
  else if (dark == "none") d.darkening = Darkening::none;
  else fail("drive.darkening", "expected weak, exact or none");
  if (d.darkening == Darkening::none) {
    d.a2 = number_or(j, "a2", "drive.a2", 0.0);
    d.phi2 = number_or(j, "phi2", "drive.phi2", 0.0);
    if (d.a2 < 0.0) fail("drive.a2", "must be >= 0");
  } else if (j.contains("a2") || j.contains("phi2")) {
    fail("drive.a2", "set by the darkening condition; use \"darkening\": \"none\" to give it explicitly");
  }
  validated("drive.envelope", [&] { d.envelope = envelope_from_string(string_or(j, "envelope", "drive.envelope", "half_sine")); });
  return d;
}

void parse_calibration(const json& j, CalibrationOptions& c) {
  check_keys(j, "calibration", {"scan_points", "window", "poly_degree", "restarts", "optimizer_tolerance",
                                "optimizer_max_iterations", "scan_tolerance", "final_tolerance"});
  c.scan_points = int_or(j, "scan_points", "calibration.scan_points", c.scan_points);
  c.window = number_or(j, "window", "calibration.window", c.window);
  c.poly_degree = int_or(j, "poly_degree", "calibration.poly_degree", c.poly_degree);
  c.restarts = int_or(j, "restarts", "calibration.restarts", c.restarts);
  c.optimizer_tolerance = number_or(j, "optimizer_tolerance", "calibration.optimizer_tolerance", c.optimizer_tolerance);
  c.optimizer_max_iterations =
      int_or(j, "optimizer_max_iterations", "calibration.optimizer_max_iterations", c.optimizer_max_iterations);
  c.scan_propagation.tolerance = number_or(j, "scan_tolerance", "calibration.scan_tolerance", c.scan_propagation.tolerance);
  c.final_propagation.tolerance =
      number_or(j, "final_tolerance", "calibration.final_tolerance", c.final_propagation.tolerance);
  if (c.poly_degree < 1) fail("calibration.poly_degree", "must be >= 1");
  if (c.scan_points < c.poly_degree + 1) fail("calibration.scan_points", "must exceed poly_degree");
  if (!(c.window > 0.0 && c.window < 0.5)) fail("calibration.window", "must lie in (0, 0.5)");
  if (c.restarts < 1) fail("calibration.restarts", "must be >= 1");
  if (!(c.optimizer_tolerance > 0.0)) fail("calibration.optimizer_tolerance", "must be > 0");
  if (c.optimizer_max_iterations < 1) fail("calibration.optimizer_max_iterations", "must be >= 1");
  if (!(c.scan_propagation.tolerance > 0.0)) fail("calibration.scan_tolerance", "must be > 0");
  if (!(c.final_propagation.tolerance > 0.0)) fail("calibration.final_tolerance", "must be > 0");
}

ChainConfig parse_chain(const json& j) {
  check_keys(j, "chain", {"deltas", "j_over_ddelta", "cases"});
  ChainConfig c;
  c.deltas = number_list(j, "deltas", "chain.deltas");
  c.j_over_ddelta = number_list(j, "j_over_ddelta", "chain.j_over_ddelta");
  if (!j.contains("cases") || !j.at("cases").is_array() || j.at("cases").empty())
    fail("chain.cases", "expected a non-empty array of {drive_site, flip_site}");
  const int n = static_cast<int>(c.deltas.size());
  for (std::size_t i = 0; i < j.at("cases").size(); ++i) {
    const json& e = j.at("cases").at(i);
    const std::string where = "chain.cases[" + std::to_string(i) + "]";
    check_keys(e, where, {"drive_site", "flip_site"});
    if (!e.contains("drive_site") || !e.contains("flip_site")) fail(where, "needs drive_site and flip_site");
    ChainCase cc{int_or(e, "drive_site", where + ".drive_site", 0), int_or(e, "flip_site", where + ".flip_site", 0)};
    if (cc.drive_site < 0 || cc.drive_site >= n) fail(where + ".drive_site", "outside 0..n-1");
    if (cc.flip_site < 0 || cc.flip_site >= n) fail(where + ".flip_site", "outside 0..n-1");
    c.cases.push_back(cc);
  }
  for (double x : c.j_over_ddelta)
    if (!(x > 0.0)) fail("chain.j_over_ddelta", "values must be > 0");
  validated("chain", [&] { validate(ChainSpec{c.deltas, std::vector<double>(c.deltas.size() - 1, 0.0)}); });
  return c;
}

double typical_splitting_difference(const std::vector<double>& deltas) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < deltas.size(); ++i) s += std::abs(deltas[i] - deltas[i + 1]);
  return s / static_cast<double>(deltas.size() - 1);
}

json matrix_json(const CMatrix& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json rr = json::array(), ri = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return {{"re", re}, {"im", im}};
}

std::string polarity_name(Polarity p) { return p == Polarity::cnot1 ? "cnot1" : "cnot0"; }

} // namespace

RunConfig parse_config(const json& j) {
  check_keys(j, "", {"schema", "system", "drive", "target_qubit", "polarity", "correction_mode", "rng_seed",
                     "output_path", "sweep", "calibration", "chain", "dressed"});
  if (!j.contains("schema") || !j.at("schema").is_string() || j.at("schema").get<std::string>() != kSchema)
    fail("schema", std::string("expected \"") + kSchema + "\"");
  RunConfig c;
  if (j.contains("system")) c.system = parse_system(j.at("system"));
  if (j.contains("drive")) c.drive = parse_drive(j.at("drive"));
  c.target_qubit = int_or(j, "target_qubit", "target_qubit", 2);
  if (c.target_qubit != 1 && c.target_qubit != 2) fail("target_qubit", "must be 1 or 2");
  const std::string pol = string_or(j, "polarity", "polarity", "cnot1");
  if (pol == "cnot1") c.polarity = Polarity::cnot1;
  else if (pol == "cnot0") c.polarity = Polarity::cnot0;
  else fail("polarity", "expected cnot1 or cnot0");
  validated("correction_mode", [&] {
    c.correction_mode = correction_mode_from_string(string_or(j, "correction_mode", "correction_mode", "analytic"));
  });
  if (j.contains("rng_seed")) {
    const json& s = j.at("rng_seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0))
      fail("rng_seed", "expected a non-negative 64-bit integer");
    c.rng_seed = s.get<std::uint64_t>();
  }
  if (j.contains("output_path")) c.output_path = string_or(j, "output_path", "output_path", "");
  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    check_keys(s, "sweep", {"parameter", "values"});
    SweepConfig sw;
    sw.parameter = string_or(s, "parameter", "sweep.parameter", "a1");
    sw.values = number_list(s, "values", "sweep.values");
    RunConfig probe = c;
    validated("sweep.parameter", [&] { set_parameter(probe, sw.parameter, sw.values.front()); });
    c.sweep = sw;
  }
  if (j.contains("calibration")) parse_calibration(j.at("calibration"), c.calibration);
  if (j.contains("chain")) c.chain = parse_chain(j.at("chain"));
  if (j.contains("dressed")) {
    const json& d = j.at("dressed");
    check_keys(d, "dressed", {"c1_values"});
    c.dressed_c1 = number_list(d, "c1_values", "dressed.c1_values");
    for (double x : c.dressed_c1)
      if (x < 0.0) fail("dressed.c1_values", "values must be >= 0");
  }
  c.calibration.mode = c.correction_mode;
  c.calibration.seed = c.rng_seed;
  c.calibration.target_qubit = c.target_qubit;
  c.calibration.polarity = c.polarity;
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config: cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("--config: " + path + " is not valid JSON (" + e.what() + ")");
  }
  return parse_config(j);
}

void set_parameter(RunConfig& cfg, const std::string& name, double value) {
  if (name == "a1") cfg.drive.a1 = value;
  else if (name == "delta1") cfg.system.delta1 = value;
  else if (name == "delta2") cfg.system.delta2 = value;
  else if (name == "j") cfg.system.j = value;
  else if (name == "anharm1") cfg.system.anharm1 = value;
  else if (name == "anharm2") cfg.system.anharm2 = value;
  else if (name == "omega") {
    cfg.drive.frequency = DriveFrequency::explicit_value;
    cfg.drive.omega = value;
  } else {
    throw ConfigError("unknown parameter \"" + name + "\" (expected a1, delta1, delta2, j, anharm1, anharm2 or omega)");
  }
}

DriveSpec resolve_drive(const RunConfig& cfg) {
  validate(cfg.system);
  DriveSpec d;
  d.a1 = cfg.drive.a1;
  d.phi1 = cfg.drive.phi1;
  d.envelope = cfg.drive.envelope;
  switch (cfg.drive.frequency) {
  case DriveFrequency::target_pair: d.omega = default_drive_frequency(cfg.system, cfg.target_qubit); break;
  case DriveFrequency::cnot_pair: {
    const Eigensystem eig = exact_eigensystem(cfg.system);
    const TransitionPair p = cnot_transition(cfg.target_qubit, cfg.polarity);
    d.omega = eig.energies(p.upper) - eig.energies(p.lower);
    break;
  }
  case DriveFrequency::explicit_value: d.omega = cfg.drive.omega; break;
  }
  if (cfg.drive.darkening == Darkening::none) {
    d.a2 = cfg.drive.a2;
    d.phi2 = cfg.drive.phi2;
  } else {
    const DarkeningMode mode = cfg.drive.darkening == Darkening::weak ? DarkeningMode::weak : DarkeningMode::exact;
    d = apply_darkening(d, darkening_condition(cfg.system, cfg.target_qubit, cfg.polarity, mode));
  }
  return d;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

json cmd_conditions(const RunConfig& cfg) {
  const SystemSpec& s = cfg.system;
  validate(s);
  json out;
  out["schema"] = kSchema;
  out["system"] = {{"delta1", s.delta1}, {"delta2", s.delta2}, {"j", s.j}, {"levels", s.levels}};
  if (s.levels == 3) {
    out["system"]["anharm1"] = *s.anharm1;
    out["system"]["anharm2"] = *s.anharm2;
  }
  out["target_qubit"] = cfg.target_qubit;
  out["polarity"] = polarity_name(cfg.polarity);
  if (s.delta1 != s.delta2) {
    const DarkeningCondition weak = darkening_condition(s, cfg.target_qubit, cfg.polarity, DarkeningMode::weak);
    out["amplitude_ratio_weak"] = weak.amplitude_ratio;
  } else {
    out["amplitude_ratio_weak"] = nullptr;
  }
  const DarkeningCondition exact = darkening_condition(s, cfg.target_qubit, cfg.polarity, DarkeningMode::exact);
  out["amplitude_ratio_exact"] = exact.amplitude_ratio;
  out["phase_difference"] = exact.phase_difference;
  out["drive_frequency"] = default_drive_frequency(s, cfg.target_qubit);
  const Eigensystem eig = exact_eigensystem(s);
  const TransitionPair cp = cnot_transition(cfg.target_qubit, cfg.polarity);
  out["cnot_transition_frequency"] = eig.energies(cp.upper) - eig.energies(cp.lower);
  out["energies"] = std::vector<double>(eig.energies.data(), eig.energies.data() + eig.energies.size());
  if (s.levels == 2) {
    const MixingAngles m = mixing_angles(s.delta1, s.delta2, s.j);
    out["theta1"] = m.theta1;
    out["theta2"] = m.theta2;
    out["theta_plus"] = m.theta_plus;
    out["theta_minus"] = m.theta_minus;
    out["theta1_over_pi"] = m.theta1 / std::numbers::pi;
    out["theta2_over_pi"] = m.theta2 / std::numbers::pi;
    out["max_rabi_estimate"] = max_rabi_estimate(s);
  } else if (s.delta1 != s.delta2) {
    const AnharmonicReport r = perturbative_report(s, 1.0);
    out["anharmonic_per_unit_a1"] = {{"cnot_strength", r.cnot_strength},
                                     {"cnot_strength_unexpanded", r.cnot_strength_unexpanded},
                                     {"darkened_residual", r.darkened_residual},
                                     {"leakage_14", r.leakage_14},
                                     {"leakage_36", r.leakage_36}};
    out["detuning_14"] = r.detuning_14;
    out["detuning_36"] = r.detuning_36;
    out["max_rabi_estimate"] = r.max_rabi;
    out["cphase_shift"] = r.cphase_shift;
  }
  return out;
}

json cmd_gate(const RunConfig& cfg, int jobs) {
  const DriveSpec d = resolve_drive(cfg);
  CalibrationOptions opts = cfg.calibration;
  opts.jobs = jobs;
  const GateResult r = calibrate_gate(cfg.system, d, opts);
  json out;
  out["schema"] = kSchema;
  out["a1"] = d.a1;
  out["a2"] = d.a2;
  out["phi1"] = d.phi1;
  out["phi2"] = d.phi2;
  out["omega"] = d.omega;
  out["t_estimate_ns"] = r.t_estimate;
  out["t_gate_ns"] = r.t_gate;
  out["j_eff_ghz"] = r.j_eff;
  out["j_eff_over_j"] = r.j_eff / cfg.system.j;
  out["fidelity"] = r.fidelity;
  out["error"] = 1.0 - r.fidelity;
  out["leakage"] = r.leakage;
  out["correction_mode"] = to_string(r.correction_mode);
  out["correction_params"] = r.correction_params;
  out["seed"] = cfg.rng_seed;
  out["unitary"] = matrix_json(r.unitary);
  out["scan"] = {{"t_ns", r.scan_times}, {"fidelity", r.scan_fidelities}};
  return out;
}

json cmd_dressed(const RunConfig& cfg) {
  if (cfg.dressed_c1.empty()) throw ConfigError("dressed.c1_values: missing");
  const SystemSpec& s = cfg.system;
  validate(s);
  if (s.levels != 2) throw ConfigError("system.levels: the dressed-state analysis needs levels = 2");
  const MixingAngles m = mixing_angles(s.delta1, s.delta2, s.j);
  json rows = json::array();
  for (double c1 : cfg.dressed_c1) {
    const DarkeningSearchResult r = strong_drive_darkening_search(s, c1);
    json row;
    row["c1"] = c1;
    row["c2"] = r.c2;
    row["c2_over_c1"] = c1 > 0.0 ? json(r.c2 / c1) : json(nullptr);
    row["omega"] = r.omega;
    row["residual_gap"] = r.residual_gap;
    const ErrorDecomposition e = error_decomposition(s, c1, r.c2, r.omega);
    row["common_shift"] = e.common_shift;
    row["differential_shift"] = e.differential_shift;
    row["residual_brightness"] = e.residual_brightness;
    rows.push_back(row);
  }
  json out;
  out["schema"] = kSchema;
  out["weak_ratio"] = std::sin(m.theta_plus) / std::cos(m.theta_minus);
  out["rows"] = rows;
  return out;
}

void cmd_sweep(const RunConfig& cfg, int jobs, std::ostream& out) {
  if (!cfg.sweep) throw ConfigError("sweep: missing");
  const SweepConfig& sw = *cfg.sweep;
  const std::size_t n = sw.values.size();
  struct Point {
    bool ok = false;
    std::string message;
    RunConfig cfg;
    GateResult result;
  };
  std::vector<Point> points(n);
  for (std::size_t i = 0; i < n; ++i) {
    points[i].cfg = cfg;
    validated("sweep.values[" + std::to_string(i) + "]", [&] {
      set_parameter(points[i].cfg, sw.parameter, sw.values[i]);
      validate(points[i].cfg.system);
      if (points[i].cfg.drive.a1 <= 0.0) throw ConfigError("a1 must be > 0 for a calibration point");
    });
  }
  parallel_for(n, jobs, [&](std::size_t i) {
    try {
      const DriveSpec d = resolve_drive(points[i].cfg);
      points[i].result = calibrate_gate(points[i].cfg.system, d, points[i].cfg.calibration);
      points[i].ok = true;
    } catch (const std::exception& e) {
      points[i].message = e.what();
    }
  });

  out << "a1_ghz,t_gate_ns,j_eff_ghz,j_eff_over_j,fidelity,error,correction_mode,seed";
  if (sw.parameter != "a1") out << "," << sw.parameter;
  out << "\n";
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = points[i];
    if (!p.ok) {
      out << "# FAILED sweep index " << i << " (" << sw.parameter << " = " << format_number(sw.values[i])
          << "): " << p.message << "\n";
      out.flush();
      throw ComputationError("sweep point " + std::to_string(i) + " failed: " + p.message);
    }
    const GateResult& r = p.result;
    out << format_number(p.cfg.drive.a1) << "," << format_number(r.t_gate) << "," << format_number(r.j_eff) << ","
        << format_number(r.j_eff / p.cfg.system.j) << "," << format_number(r.fidelity) << ","
        << format_number(1.0 - r.fidelity) << "," << to_string(r.correction_mode) << "," << cfg.rng_seed;
    if (sw.parameter != "a1") out << "," << format_number(sw.values[i]);
    out << "\n";
  }
  out.flush();
}

void cmd_chain(const RunConfig& cfg, int jobs, std::ostream& out) {
  if (!cfg.chain) throw ConfigError("chain: missing");
  const ChainConfig& c = *cfg.chain;
  const double dd = typical_splitting_difference(c.deltas);
  if (!(dd > 0.0)) throw ConfigError("chain.deltas: splittings must differ");
  const std::size_t nx = c.j_over_ddelta.size();
  const std::size_t total = c.cases.size() * nx;
  std::vector<double> spread(total);
  std::vector<std::string> error(total);
  parallel_for(total, jobs, [&](std::size_t idx) {
    const ChainCase& cc = c.cases[idx / nx];
    const double x = c.j_over_ddelta[idx % nx];
    ChainSpec spec{c.deltas, std::vector<double>(c.deltas.size() - 1, x * dd)};
    try {
      spread[idx] = conditional_rabi_elements(spec, cc.drive_site, cc.flip_site).spread;
    } catch (const std::exception& e) {
      error[idx] = e.what();
    }
  });

  out << "n,i,k,J_over_ddelta,spread\n";
  const int n = static_cast<int>(c.deltas.size());
  for (std::size_t ci = 0; ci < c.cases.size(); ++ci) {
    const ChainCase& cc = c.cases[ci];
    std::vector<double> lx, ly;
    for (std::size_t xi = 0; xi < nx; ++xi) {
      const std::size_t idx = ci * nx + xi;
      if (!error[idx].empty()) {
        out << "# FAILED case " << ci << " at J_over_ddelta = " << format_number(c.j_over_ddelta[xi]) << ": "
            << error[idx] << "\n";
        out.flush();
        throw ComputationError(error[idx]);
      }
      out << n << "," << cc.drive_site << "," << cc.flip_site << "," << format_number(c.j_over_ddelta[xi]) << ","
          << format_number(spread[idx]) << "\n";
      lx.push_back(std::log(c.j_over_ddelta[xi]));
      ly.push_back(std::log(spread[idx]));
    }
    out << "# fit n=" << n << " i=" << cc.drive_site << " k=" << cc.flip_site << " exponent=";
    const bool usable = nx >= 2 && std::all_of(spread.begin() + ci * nx, spread.begin() + (ci + 1) * nx,
                                               [](double s) { return s > 1e-12; });
    if (usable) {
      const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / nx;
      const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / nx;
      double sxy = 0.0, sxx = 0.0;
      for (std::size_t k = 0; k < nx; ++k) {
        sxy += (lx[k] - mx) * (ly[k] - my);
        sxx += (lx[k] - mx) * (lx[k] - mx);
      }
      out << format_number(sxy / sxx) << "\n";
    } else {
      out << "undefined (spread below 1e-12)\n";
    }
  }
  out.flush();
}

} // namespace seldark::cli
