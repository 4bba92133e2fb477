#pragma once

#include "seldark/chain.hpp"
#include "seldark/drive.hpp"
#include "seldark/gate.hpp"
#include "seldark/system.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace seldark::cli {

inline constexpr const char* kSchema = "seldark/1";

enum class DriveFrequency { target_pair, cnot_pair, explicit_value };
enum class Darkening { weak, exact, none };

struct DriveConfig {
  DriveFrequency frequency = DriveFrequency::target_pair;
  double omega = 0.0; // used with explicit_value
  double a1 = 0.0;
  double a2 = 0.0; // used with Darkening::none
  double phi1 = 0.0;
  double phi2 = 0.0; // used with Darkening::none
  Envelope envelope = Envelope::half_sine;
  Darkening darkening = Darkening::exact;
};

struct SweepConfig {
  std::string parameter = "a1";
  std::vector<double> values;
};

struct ChainCase {
  int drive_site = 0;
  int flip_site = 0;
};

struct ChainConfig {
  std::vector<double> deltas;
  std::vector<double> j_over_ddelta;
  std::vector<ChainCase> cases;
};

struct RunConfig {
  SystemSpec system;
  DriveConfig drive;
  int target_qubit = 2;
  Polarity polarity = Polarity::cnot1;
  CorrectionMode correction_mode = CorrectionMode::analytic;
  std::uint64_t rng_seed = 0;
  std::optional<std::string> output_path;
  std::optional<SweepConfig> sweep;
  CalibrationOptions calibration;
  std::optional<ChainConfig> chain;
  std::vector<double> dressed_c1;
};

// Throws ConfigError naming the offending field.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// Drive for one calibration point: frequency and darkening resolved against the system.
DriveSpec resolve_drive(const RunConfig& cfg);

// Applies a named numeric parameter (a1, delta1, delta2, j, anharm1, anharm2, omega).
void set_parameter(RunConfig& cfg, const std::string& name, double value);

// 17 significant digits, general notation, locale independent.
std::string format_number(double v);

nlohmann::json cmd_conditions(const RunConfig& cfg);
nlohmann::json cmd_gate(const RunConfig& cfg, int jobs);
nlohmann::json cmd_dressed(const RunConfig& cfg);
// CSV writers return normally on success and throw ComputationError after flushing a failure row.
void cmd_sweep(const RunConfig& cfg, int jobs, std::ostream& out);
void cmd_chain(const RunConfig& cfg, int jobs, std::ostream& out);

} // namespace seldark::cli
