#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "fockforge/acceptance.hpp"
#include "fockforge/experiment.hpp"

namespace {

constexpr int kExitTolerance = 1;
constexpr int kExitConfig = 2;

int run(const std::string& config_path, const fockforge::RawConfig& flags) {
  using namespace fockforge;
  ExperimentConfig config;
  try {
    const RawConfig file = config_path.empty() ? RawConfig{} : read_config_file(config_path);
    config = parse_config(file, flags);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  std::vector<ExperimentRow> rows;
  try {
    rows = run_experiment(config);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  auto emit = [&](std::ostream& out) {
    if (config.format == OutputFormat::json) {
      write_json(out, rows);
    } else {
      write_csv(out, rows);
    }
  };
  if (config.output) {
    std::ofstream out(*config.output);
    if (out) emit(out);
    if (!out) {
      std::cerr << "error: cannot write '" << config.output->string() << "'\n";
      return kExitConfig;
    }
  } else {
    emit(std::cout);
  }

  if (!all_passed(rows)) {
    std::size_t failed = 0;
    for (const auto& row : rows) failed += row.passed ? 0 : 1;
    std::cerr << failed << " of " << rows.size() << " rows exceed their tolerance\n";
    return kExitTolerance;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fockforge: truncated bosonic Fock space experiments"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run one experiment and emit CSV or JSON rows");
  std::string experiment, config_path, modes, cap, seed, out, format;
  run_cmd->add_option("--experiment", experiment, "gaussian-norm, cocycle, unitarity, intertwine, divergence, weyl-kernel");
  run_cmd->add_option("--config", config_path, "key=value config file");
  run_cmd->add_option("--modes", modes, "number of modes (1-8)");
  run_cmd->add_option("--cap", cap, "degree cap, or a comma-separated grid");
  run_cmd->add_option("--seed", seed, "random seed");
  run_cmd->add_option("--out", out, "output path (default stdout)");
  run_cmd->add_option("--format", format, "csv or json");

  auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*verify_cmd) {
    const auto results = fockforge::run_acceptance(std::cout);
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.passed ? 1 : 0;
    std::cout << passed << "/" << results.size() << " criteria passed\n";
    return passed == results.size() ? 0 : kExitTolerance;
  }

  fockforge::RawConfig flags;
  const std::pair<const char*, const std::string*> given[] = {
      {"experiment", &experiment}, {"modes", &modes}, {"cap", &cap}, {"seed", &seed}, {"out", &out}, {"format", &format}};
  for (const auto& [key, value] : given) {
    if (run_cmd->count(std::string("--") + key) > 0) flags[key] = *value;
  }
  return run(config_path, flags);
}
