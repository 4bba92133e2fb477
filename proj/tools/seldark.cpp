#include "seldark/cli.hpp"
#include "seldark/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>

namespace {

int jobs_from_env() {
  const char* v = std::getenv("SELDARK_JOBS");
  if (!v || !*v) return 1;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1) throw seldark::ConfigError("SELDARK_JOBS: expected a positive integer");
  return static_cast<int>(n);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selective-darkening CNOT toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path, out_path;
  int jobs = 0;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "JSON run configuration (schema seldark/1)")->required();
  app.add_option("--out", out_path, "output file (default: output_path from the config, else stdout)");
  app.add_option("--jobs", jobs, "worker threads (default: SELDARK_JOBS, else 1)")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "optimizer seed, overrides rng_seed");
  for (const char* name : {"conditions", "sweep", "chain", "dressed", "gate"}) app.add_subcommand(name);
  app.get_subcommand("conditions")->description("darkening ratios, drive frequency and mixing angles");
  app.get_subcommand("sweep")->description("calibrated gate error and speed along a parameter sweep (CSV)");
  app.get_subcommand("chain")->description("spectator spread of conditional Rabi elements in a chain (CSV)");
  app.get_subcommand("dressed")->description("strong-drive darkening search in the dressed-state block");
  app.get_subcommand("gate")->description("single calibrated gate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    using namespace seldark::cli;
    RunConfig cfg = load_config(config_path);
    if (*seed_opt) {
      cfg.rng_seed = seed;
      cfg.calibration.seed = seed;
    }
    if (jobs == 0) jobs = jobs_from_env();
    if (out_path.empty() && cfg.output_path) out_path = *cfg.output_path;

    std::unique_ptr<std::ofstream> file;
    if (!out_path.empty()) {
      file = std::make_unique<std::ofstream>(out_path, std::ios::binary);
      if (!*file) throw seldark::ConfigError("--out: cannot write " + out_path);
    }
    std::ostream& out = file ? *file : std::cout;

    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "conditions") out << cmd_conditions(cfg).dump(2) << "\n";
    else if (cmd == "gate") out << cmd_gate(cfg, jobs).dump(2) << "\n";
    else if (cmd == "dressed") out << cmd_dressed(cfg).dump(2) << "\n";
    else if (cmd == "sweep") cmd_sweep(cfg, jobs, out);
    else if (cmd == "chain") cmd_chain(cfg, jobs, out);
    out.flush();
  } catch (const seldark::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
