#pragma once

// Experiment harness behind the `fockforge` command line tool.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fockforge/types.hpp"

namespace fockforge {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

struct ExperimentConfig {
  std::string experiment;
  std::size_t modes = 1;
  // A single cap or a grid of caps.
  std::vector<int> caps{20};
  std::uint64_t seed = 0;
  // Experiment parameters; every value may be a comma-separated grid.
  std::map<std::string, std::vector<double>> params;
  std::optional<std::filesystem::path> output;
  OutputFormat format = OutputFormat::csv;

  bool has_param(const std::string& name) const { return params.count(name) != 0; }
  double param(const std::string& name, double fallback) const;
  std::vector<double> grid(const std::string& name, std::vector<double> fallback) const;
};

using RawConfig = std::map<std::string, std::string>;

const std::vector<std::string>& experiment_names();

// Flat key=value text; blank lines and lines starting with '#' are skipped.
RawConfig read_config_text(const std::string& text);
RawConfig read_config_file(const std::filesystem::path& path);

// Merges file values with flags (flags win) and validates the result.
// Unknown keys and bad values raise ConfigError naming the key.
ExperimentConfig parse_config(const RawConfig& file_values, const RawConfig& flag_values);

struct ExperimentRow {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> params;
  Complex measured;
  Complex reference;
  double abs_error = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  double ms = 0.0;
};

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

bool all_passed(const std::vector<ExperimentRow>& rows);

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);
void write_json(std::ostream& out, const std::vector<ExperimentRow>& rows);

}  // namespace fockforge
