#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fockforge/experiment.hpp"

using namespace fockforge;

namespace {

ExperimentConfig config_for(const std::string& experiment, RawConfig extra = {}) {
  extra["experiment"] = experiment;
  return parse_config({}, extra);
}

std::string csv_of(const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  write_csv(out, rows);
  return out.str();
}

// Drops the last (runtime) column from every CSV line.
std::string strip_ms(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + '\n';
  return out;
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fockforge_test_" + name);
}

int run_tool(const std::string& args) {
  const std::string command = std::string(FOCKFORGE_TOOL) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config defaults") {
  const ExperimentConfig config = parse_config(read_config_text(""), {{"experiment", "cocycle"}});
  CHECK(config.modes == 1);
  CHECK(config.caps == std::vector<int>{20});
  CHECK(config.seed == 0);
  CHECK(config.format == OutputFormat::csv);
  CHECK_FALSE(config.output.has_value());
  CHECK(config.params.empty());
}

TEST_CASE("config file parsing") {
  const RawConfig raw = read_config_text("# comment\n\nexperiment = unitarity\ncap=10,20\n r = 0.25 \n");
  CHECK(raw.size() == 3);
  CHECK(raw.at("r") == "0.25");
  const ExperimentConfig config = parse_config(raw, {});
  CHECK(config.caps == std::vector<int>{10, 20});
  CHECK(config.param("r", 0.0) == 0.25);
  CHECK(config.param("spread", 0.7) == 0.7);

  CHECK_THROWS_AS(read_config_text("cap 10\n"), ConfigError);
  CHECK_THROWS_AS(read_config_text("=3\n"), ConfigError);
  CHECK_THROWS_AS(read_config_text("cap=1\ncap=2\n"), ConfigError);
  CHECK_THROWS_AS(read_config_file(scratch("missing.cfg")), ConfigError);
}

TEST_CASE("flags override file values") {
  const RawConfig file = read_config_text("experiment=gaussian-norm\ncap=16\nseed=3\n");
  const ExperimentConfig config = parse_config(file, {{"cap", "32"}});
  CHECK(config.caps == std::vector<int>{32});
  CHECK(config.seed == 3);
}

TEST_CASE("unknown keys are fatal and named") {
  try {
    parse_config(read_config_text("experiment=cocycle\nmodez=2\n"), {});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("'modez'") != std::string::npos);
  }
}

TEST_CASE("invalid values name their key") {
  auto message = [](RawConfig raw) {
    try {
      parse_config({}, raw);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message({{"experiment", "nope"}}).find("'experiment'") != std::string::npos);
  CHECK(message({}).find("'experiment'") != std::string::npos);
  CHECK(message({{"experiment", "cocycle"}, {"modes", "9"}}).find("'modes'") != std::string::npos);
  CHECK(message({{"experiment", "cocycle"}, {"modes", "two"}}).find("'modes'") != std::string::npos);
  CHECK(message({{"experiment", "cocycle"}, {"cap", "65"}}).find("'cap'") != std::string::npos);
  CHECK(message({{"experiment", "cocycle"}, {"format", "xml"}}).find("'format'") != std::string::npos);
  CHECK(message({{"experiment", "cocycle"}, {"tol", "0"}}).find("'tol'") != std::string::npos);
  CHECK(message({{"experiment", "cocycle"}, {"r", "0.3,x"}}).find("'r'") != std::string::npos);
  CHECK_THROWS_AS(run_experiment(config_for("gaussian-norm", {{"lambda", "1.0"}})), ConfigError);
}

TEST_CASE("gaussian-norm errors decrease with the cap") {
  const auto rows = run_experiment(config_for("gaussian-norm", {{"cap", "10,20,40"}}));
  REQUIRE(rows.size() == 27);
  for (std::size_t i = 0; i < rows.size(); i += 3) {
    CHECK(rows[i].params[1].first == "lambda");
    CHECK(rows[i + 1].abs_error <= rows[i].abs_error);
    CHECK(rows[i + 2].abs_error <= rows[i + 1].abs_error);
    CHECK(rows[i].reference.real() == doctest::Approx(1.0 / std::sqrt(1.0 - std::pow(0.1 * (1 + i / 3), 2))));
  }
  CHECK(all_passed(rows));

  const auto two_modes = run_experiment(config_for("gaussian-norm", {{"modes", "2"}, {"cap", "12,24"}, {"lambda", "0.3,0.6"}}));
  CHECK(all_passed(two_modes));
}

TEST_CASE("cocycle experiment at cap 24") {
  const auto rows = run_experiment(config_for("cocycle", {{"cap", "24"}}));
  REQUIRE(rows.size() == 9);
  for (const auto& row : rows) CHECK(row.abs_error < 1e-6);
  CHECK(all_passed(rows));
}

TEST_CASE("divergence reports infinity with growing partial norms") {
  const auto rows = run_experiment(config_for("divergence", {{"cap", "10,20,30,40"}}));
  REQUIRE(rows.size() == 8);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(std::isinf(rows[i].reference.real()));
    CHECK(std::isinf(rows[i].abs_error));
    if (i % 4 != 0) CHECK(rows[i].measured.real() > rows[i - 1].measured.real());
    CHECK(rows[i].passed);
  }
  CHECK(rows[0].measured.real() == doctest::Approx(2.70703125));
  CHECK(rows[7].measured.real() == doctest::Approx(8.88696358).epsilon(1e-8));

  const std::string csv = csv_of(rows);
  CHECK(csv.rfind("experiment,modes,series,lambda,cap,measured_re,measured_im,reference_re,reference_im,abs_error,ms\n", 0) == 0);
  CHECK(csv.find(",inf,0,inf,") != std::string::npos);

  // A single cap expands to a grid.
  CHECK(run_experiment(config_for("divergence")).size() == 8);
}

TEST_CASE("remaining experiments pass at their defaults") {
  CHECK(all_passed(run_experiment(config_for("intertwine", {{"modes", "2"}, {"cap", "10"}}))));
  CHECK(all_passed(run_experiment(config_for("weyl-kernel", {{"cap", "30"}, {"points", "5"}}))));
  const auto unit = run_experiment(config_for("unitarity", {{"cap", "40"}}));
  REQUIRE(unit.size() == 1);
  CHECK(unit[0].abs_error < 1e-7);
  CHECK(unit[0].passed);
  CHECK_FALSE(run_experiment(config_for("unitarity", {{"cap", "16"}}))[0].passed);
}

TEST_CASE("output is deterministic apart from the runtime column") {
  const auto config = config_for("weyl-kernel", {{"points", "4"}, {"seed", "7"}});
  const std::string first = csv_of(run_experiment(config));
  const std::string second = csv_of(run_experiment(config));
  CHECK(strip_ms(first) == strip_ms(second));
  CHECK(strip_ms(first) != strip_ms(csv_of(run_experiment(config_for("weyl-kernel", {{"points", "4"}, {"seed", "8"}})))));
}

TEST_CASE("json mirrors the csv keys") {
  const auto rows = run_experiment(config_for("divergence", {{"cap", "10,20"}, {"cubic", "0.2"}}));
  std::ostringstream out;
  write_json(out, rows);
  const auto parsed = nlohmann::json::parse(out.str());
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == rows.size());
  CHECK(parsed[0]["experiment"] == "divergence");
  CHECK(parsed[0]["series"] == "gaussian");
  CHECK(parsed[0]["cap"] == 10);
  CHECK(parsed[0]["reference_re"] == "inf");
  CHECK(parsed[3]["lambda"] == 0.2);
  CHECK(parsed[0].contains("ms"));
}

TEST_CASE("command line exit codes") {
  const auto cfg = scratch("bad.cfg");
  std::ofstream(cfg) << "experiment=cocycle\nmodez=2\n";
  CHECK(run_tool("run --config " + cfg.string()) == 2);
  CHECK(run_tool("run --experiment bogus") == 2);
  CHECK(run_tool("run --experiment cocycle --format yaml") == 2);

  const auto good = scratch("good.cfg");
  std::ofstream(good) << "experiment=gaussian-norm\ncap=16\nlambda=0.5\n";
  const auto out_path = scratch("out.json");
  CHECK(run_tool("run --config " + good.string() + " --cap 32 --format json --out " + out_path.string()) == 0);
  std::ifstream in(out_path);
  const auto parsed = nlohmann::json::parse(in);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0]["cap"] == 32);

  CHECK(run_tool("run --experiment unitarity --cap 16") == 1);
  CHECK(run_tool("run --experiment divergence --out /nonexistent-dir/x.csv") == 2);
  std::filesystem::remove(cfg);
  std::filesystem::remove(good);
  std::filesystem::remove(out_path);
}
