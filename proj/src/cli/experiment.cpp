#include "fockforge/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <set>
#include <sstream>

#include "fockforge/expstates.hpp"
#include "fockforge/implementer.hpp"
#include "fockforge/oracles.hpp"
#include "fockforge/symplectic.hpp"
#include "fockforge/weyl.hpp"

namespace fockforge {

namespace {

const std::set<std::string> kParamKeys = {"lambda", "cubic", "r", "spread", "block", "points", "tol"};
const std::set<std::string> kBaseKeys = {"experiment", "modes", "cap", "seed", "format", "out"};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw ConfigError("invalid value for '" + key + "': '" + text + "'");
  }
  return value;
}

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  if (x == 0.0) return "0";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string fmt_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

ExperimentRow make_row(const ExperimentConfig& config, std::vector<std::pair<std::string, std::string>> params,
                       Complex measured, Complex reference, double tol) {
  ExperimentRow row;
  row.experiment = config.experiment;
  row.params = std::move(params);
  row.measured = measured;
  row.reference = reference;
  row.abs_error = std::isinf(reference.real()) ? kInfinity : std::abs(measured - reference);
  row.tolerance = tol;
  row.passed = row.abs_error <= tol;
  return row;
}

SymAntilinear scalar_shale(std::size_t modes, double lambda) {
  return SymAntilinear(lambda * CMatrix::Identity(static_cast<Eigen::Index>(modes), static_cast<Eigen::Index>(modes)));
}

// exact - truncated for e^{lambda I}: the degree-2N mass is a_N t^N with
// t = lambda^2 and a_N the coefficients of (1 - t)^{-m/2}. Bounds the tail
// after the last kept N by a geometric series in the ratio a_{N+1}/a_N.
double gaussian_tail_bound(std::size_t modes, double lambda, int cap) {
  const double t = lambda * lambda;
  if (t == 0.0) return 0.0;
  const double h = 0.5 * static_cast<double>(modes);
  const double n0 = std::floor(cap / 2.0) + 1.0;
  const double ratio = std::max(1.0, (n0 + h) / (n0 + 1.0));
  if (t * ratio >= 1.0) return kInfinity;
  const double log_a = std::lgamma(n0 + h) - std::lgamma(h) - std::lgamma(n0 + 1.0);
  return std::exp(log_a + n0 * std::log(t)) / (1.0 - t * ratio);
}

std::vector<ExperimentRow> gaussian_norm(const ExperimentConfig& config) {
  std::vector<ExperimentRow> rows;
  for (double lambda : config.grid("lambda", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9})) {
    if (std::abs(lambda) >= 1.0) throw ConfigError("invalid value for 'lambda': gaussian-norm needs |lambda| < 1");
    const SymAntilinear z = scalar_shale(config.modes, lambda);
    for (int cap : config.caps) {
      const auto start = Clock::now();
      const double exact = gaussian_norm2_exact(z);
      const double measured = gaussian(z, cap).norm2();
      const double tol = gaussian_tail_bound(config.modes, lambda, cap) + 1e-12 * exact;
      ExperimentRow row = make_row(config, {{"modes", std::to_string(config.modes)}, {"lambda", fmt(lambda)}, {"cap", std::to_string(cap)}},
                                   measured, exact, config.param("tol", tol));
      row.ms = elapsed_ms(start);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<ExperimentRow> cocycle_rows(const ExperimentConfig& config) {
  const double r = config.param("r", 0.3);
  const std::vector<SympMap> gens = {make_squeeze(r, 0, config.modes), make_squeeze(2 * r, 0, config.modes),
                                     make_unitary(random_unitary(config.modes, config.seed))};
  const double tol = config.param("tol", 1e-6);
  std::vector<ExperimentRow> rows;
  for (int cap : config.caps) {
    std::vector<Implementer> imps;
    for (const auto& g : gens) imps.push_back(build_implementer(g, cap));
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (std::size_t j = 0; j < gens.size(); ++j) {
        const auto start = Clock::now();
        ExperimentRow row = make_row(config,
                                     {{"modes", std::to_string(config.modes)}, {"r", fmt(r)}, {"g", std::to_string(i)},
                                      {"h", std::to_string(j)}, {"cap", std::to_string(cap)}},
                                     cocycle_from_vacuum_entry(imps[i], imps[j]), cocycle(gens[i], gens[j]), tol);
        row.ms = elapsed_ms(start);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::vector<ExperimentRow> unitarity(const ExperimentConfig& config) {
  const double tol = config.param("tol", 1e-6);
  std::vector<ExperimentRow> rows;
  for (double r : config.grid("r", {0.4})) {
    const SympMap g = make_squeeze_diag(std::vector<double>(config.modes, r));
    for (int cap : config.caps) {
      const int block = static_cast<int>(config.param("block", std::min(8, cap)));
      if (block > cap) throw ConfigError("invalid value for 'block': must not exceed cap");
      const auto start = Clock::now();
      const double dev = unitarity_deviation(build_implementer(g, cap), block);
      ExperimentRow row = make_row(config,
                                   {{"modes", std::to_string(config.modes)}, {"r", fmt(r)}, {"block", std::to_string(block)},
                                    {"cap", std::to_string(cap)}},
                                   dev, 0.0, tol);
      row.ms = elapsed_ms(start);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<ExperimentRow> intertwine(const ExperimentConfig& config) {
  const double spread = config.param("spread", 0.5);
  const SympMap g = random_symplectic(config.modes, config.seed, spread);
  oracle::Sampler sampler(config.seed);
  const CVector v = sampler.vector(config.modes);
  const double tol = config.param("tol", 1e-8);
  std::vector<ExperimentRow> rows;
  for (int cap : config.caps) {
    const auto start = Clock::now();
    const Implementer imp = build_implementer(g, cap);
    const int block = static_cast<int>(config.param("block", std::max(0, cap - 2)));
    const IntertwiningReport report = intertwining_deviation(imp, v, block);
    const double ms = elapsed_ms(start);
    const std::pair<const char*, double> parts[] = {
        {"create", report.create}, {"annihilate", report.annihilate}, {"field", report.field}};
    for (const auto& [op, dev] : parts) {
      ExperimentRow row = make_row(config,
                                   {{"modes", std::to_string(config.modes)}, {"spread", fmt(spread)}, {"op", op},
                                    {"cap", std::to_string(cap)}},
                                   dev, 0.0, tol);
      row.ms = ms;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<int> divergence_caps(const std::vector<int>& caps) {
  if (caps.size() > 1) return caps;
  const int c = caps.front();
  std::vector<int> out;
  for (int q = 1; q <= 4; ++q) {
    const int value = c * q / 4;
    if (out.empty() || value > out.back()) out.push_back(value);
  }
  return out;
}

std::vector<ExperimentRow> divergence(const ExperimentConfig& config) {
  const std::vector<int> caps = divergence_caps(config.caps);
  const int top = *std::max_element(caps.begin(), caps.end());
  std::vector<ExperimentRow> rows;

  auto emit = [&](const char* series, double lambda, const FockVector& vec, double reference, auto tol_for) {
    const auto start = Clock::now();
    const std::vector<double> norms = partial_norms2(vec, caps);
    const bool increasing = strictly_increasing(norms);
    const double ms = elapsed_ms(start) / static_cast<double>(caps.size());
    for (std::size_t i = 0; i < caps.size(); ++i) {
      ExperimentRow row = make_row(config,
                                   {{"modes", std::to_string(config.modes)}, {"series", series}, {"lambda", fmt(lambda)},
                                    {"cap", std::to_string(caps[i])}},
                                   norms[i], reference, tol_for(caps[i]));
      // A divergent series passes when its partial norms keep growing.
      if (std::isinf(reference)) row.passed = increasing;
      row.ms = ms;
      rows.push_back(std::move(row));
    }
  };

  for (double lambda : config.grid("lambda", {1.0})) {
    const SymAntilinear z = scalar_shale(config.modes, lambda);
    const double exact = gaussian_norm2_exact(z);
    emit("gaussian", lambda, gaussian(z, top), exact, [&](int cap) {
      return config.param("tol", gaussian_tail_bound(config.modes, lambda, cap) + 1e-12 * exact);
    });
  }
  for (double lambda : config.grid("cubic", {0.1})) {
    FockVector cube(config.modes, top);
    std::vector<int> exps(config.modes, 0);
    exps[0] = 3;
    cube.add(MultiIndex(exps), lambda * std::sqrt(6.0));
    emit("cubic", lambda, exp_homogeneous(cube, top), kInfinity, [](int) { return kInfinity; });
  }
  return rows;
}

std::vector<ExperimentRow> weyl_kernel(const ExperimentConfig& config) {
  const int points = static_cast<int>(config.param("points", 20));
  if (points < 1) throw ConfigError("invalid value for 'points': must be positive");
  const double tol = config.param("tol", 1e-6);
  std::vector<ExperimentRow> rows;
  for (double r : config.grid("r", {0.4})) {
    const SympMap g = make_squeeze_diag(std::vector<double>(config.modes, r));
    for (int cap : config.caps) {
      const Implementer imp = build_implementer(j_conjugate(g), cap);
      oracle::Sampler sampler(config.seed);
      for (int p = 0; p < points; ++p) {
        CVector x = sampler.vector(config.modes), y = sampler.vector(config.modes);
        x *= sampler.uniform(0.0, 1.0) / x.norm();
        y *= sampler.uniform(0.0, 1.0) / y.norm();
        const auto start = Clock::now();
        ExperimentRow row = make_row(config,
                                     {{"modes", std::to_string(config.modes)}, {"r", fmt(r)}, {"point", std::to_string(p)},
                                      {"cap", std::to_string(cap)}},
                                     fock_kernel(imp, x, y), implementer_kernel(g, x, y), tol);
        row.ms = elapsed_ms(start);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

nlohmann::ordered_json json_value(const std::string& text) {
  if (text == "inf") return text;
  long long whole = 0;
  const auto [wptr, wec] = std::from_chars(text.data(), text.data() + text.size(), whole);
  if (!text.empty() && wec == std::errc{} && wptr == text.data() + text.size()) return whole;
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (!text.empty() && ec == std::errc{} && ptr == end) return value;
  return text;
}

std::vector<std::string> value_columns(const ExperimentRow& row) {
  return {fmt(row.measured.real()), fmt(row.measured.imag()), fmt(row.reference.real()),
          fmt(row.reference.imag()), fmt(row.abs_error),        fmt_ms(row.ms)};
}

const char* const kValueKeys[] = {"measured_re", "measured_im", "reference_re", "reference_im", "abs_error", "ms"};

}  // namespace

double ExperimentConfig::param(const std::string& name, double fallback) const {
  const auto it = params.find(name);
  return it == params.end() ? fallback : it->second.front();
}

std::vector<double> ExperimentConfig::grid(const std::string& name, std::vector<double> fallback) const {
  const auto it = params.find(name);
  return it == params.end() ? fallback : it->second;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"gaussian-norm", "cocycle",    "unitarity",
                                                 "intertwine",    "divergence", "weyl-kernel"};
  return names;
}

RawConfig read_config_text(const std::string& text) {
  RawConfig out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number) + ": expected key=value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(number) + ": empty key");
    if (out.count(key)) throw ConfigError("duplicate key '" + key + "'");
    out[key] = trim(std::string_view(body).substr(eq + 1));
  }
  return out;
}

RawConfig read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return read_config_text(buffer.str());
}

ExperimentConfig parse_config(const RawConfig& file_values, const RawConfig& flag_values) {
  RawConfig merged = file_values;
  for (const auto& [key, value] : flag_values) merged[key] = value;

  std::vector<std::string> unknown;
  for (const auto& [key, value] : merged) {
    if (!kBaseKeys.count(key) && !kParamKeys.count(key)) unknown.push_back(key);
  }
  if (!unknown.empty()) {
    std::string names;
    for (const auto& key : unknown) names += (names.empty() ? "'" : ", '") + key + "'";
    throw ConfigError("unknown config key " + names);
  }

  ExperimentConfig config;
  const auto experiment = merged.find("experiment");
  if (experiment == merged.end()) throw ConfigError("missing key 'experiment'");
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), experiment->second) == names.end()) {
    throw ConfigError("invalid value for 'experiment': unknown experiment '" + experiment->second + "'");
  }
  config.experiment = experiment->second;

  if (const auto it = merged.find("modes"); it != merged.end()) {
    const int modes = parse_number<int>("modes", it->second);
    if (modes < 1 || modes > 8) throw ConfigError("invalid value for 'modes': must be in [1, 8]");
    config.modes = static_cast<std::size_t>(modes);
  }
  if (const auto it = merged.find("cap"); it != merged.end()) {
    config.caps.clear();
    for (const auto& item : split_list(it->second)) {
      const int cap = parse_number<int>("cap", item);
      if (cap < 0 || cap > 64) throw ConfigError("invalid value for 'cap': must be in [0, 64]");
      config.caps.push_back(cap);
    }
  }
  if (const auto it = merged.find("seed"); it != merged.end()) config.seed = parse_number<std::uint64_t>("seed", it->second);
  if (const auto it = merged.find("format"); it != merged.end()) {
    if (it->second == "csv") {
      config.format = OutputFormat::csv;
    } else if (it->second == "json") {
      config.format = OutputFormat::json;
    } else {
      throw ConfigError("invalid value for 'format': expected csv or json");
    }
  }
  if (const auto it = merged.find("out"); it != merged.end() && !it->second.empty()) config.output = it->second;

  for (const auto& key : kParamKeys) {
    const auto it = merged.find(key);
    if (it == merged.end()) continue;
    std::vector<double> values;
    for (const auto& item : split_list(it->second)) values.push_back(parse_number<double>(key, item));
    if (values.empty()) throw ConfigError("invalid value for '" + key + "': empty");
    config.params[key] = std::move(values);
  }
  if (config.has_param("tol") && !(config.param("tol", 0.0) > 0.0)) throw ConfigError("invalid value for 'tol': must be positive");
  if (config.has_param("block") && config.param("block", 0.0) < 0.0) throw ConfigError("invalid value for 'block': must be non-negative");
  return config;
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
  const std::string& name = config.experiment;
  if (name == "gaussian-norm") return gaussian_norm(config);
  if (name == "cocycle") return cocycle_rows(config);
  if (name == "unitarity") return unitarity(config);
  if (name == "intertwine") return intertwine(config);
  if (name == "divergence") return divergence(config);
  if (name == "weyl-kernel") return weyl_kernel(config);
  throw ConfigError("invalid value for 'experiment': unknown experiment '" + name + "'");
}

bool all_passed(const std::vector<ExperimentRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const ExperimentRow& r) { return r.passed; });
}

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << "experiment";
  if (!rows.empty()) {
    for (const auto& [key, value] : rows.front().params) out << ',' << key;
  }
  for (const char* key : kValueKeys) out << ',' << key;
  out << '\n';
  for (const auto& row : rows) {
    out << row.experiment;
    for (const auto& [key, value] : row.params) out << ',' << value;
    for (const auto& value : value_columns(row)) out << ',' << value;
    out << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json obj;
    obj["experiment"] = row.experiment;
    for (const auto& [key, value] : row.params) obj[key] = json_value(value);
    const auto values = value_columns(row);
    for (std::size_t i = 0; i < values.size(); ++i) obj[kValueKeys[i]] = json_value(values[i]);
    array.push_back(std::move(obj));
  }
  out << array.dump(2) << '\n';
}

}  // namespace fockforge
