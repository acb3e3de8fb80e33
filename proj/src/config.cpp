#include "acorr/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace acorr {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

class KeyValues {
 public:
  explicit KeyValues(std::string source) : source_(std::move(source)) {}

  void set(const std::string& key, std::string value, int line) {
    if (values_.contains(key)) {
      throw UsageError(where(line) + "duplicate key '" + key + "'");
    }
    values_[key] = {std::move(value), line};
  }

  bool has(const std::string& key) const { return values_.contains(key); }

  std::optional<std::string> take(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    used_.insert(key);
    return it->second.first;
  }

  double real(const std::string& key) {
    const auto text = require(key);
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) bad(key, "a real number");
    return v;
  }

  std::uint64_t integer(const std::string& key) {
    const auto text = require(key);
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) bad(key, "a non-negative integer");
    return v;
  }

  std::vector<double> reals(const std::string& key) {
    std::vector<double> out;
    for (const auto& item : split_list(require(key))) {
      double v = 0.0;
      const auto* end = item.data() + item.size();
      auto [ptr, ec] = std::from_chars(item.data(), end, v);
      if (ec != std::errc() || ptr != end) bad(key, "a comma-separated list of reals");
      out.push_back(v);
    }
    return out;
  }

  std::string require(const std::string& key) {
    auto v = take(key);
    if (!v) throw UsageError(source_ + ": missing required key '" + key + "'");
    return *v;
  }

  void check_all_used() const {
    for (const auto& [key, entry] : values_) {
      if (!used_.contains(key)) throw UsageError(where(entry.second) + "unknown key '" + key + "'");
    }
  }

 private:
  std::string where(int line) const { return source_ + ":" + std::to_string(line) + ": "; }

  [[noreturn]] void bad(const std::string& key, const char* expected) const {
    const auto& entry = values_.at(key);
    throw UsageError(where(entry.second) + "'" + key + "' must be " + expected + ", got '" +
                     entry.first + "'");
  }

  std::string source_;
  std::map<std::string, std::pair<std::string, int>> values_;
  std::set<std::string> used_;
};

ComponentDist parse_component(KeyValues& kv, const std::string& prefix, ComponentDist fallback) {
  const auto kind = kv.take(prefix + ".kind");
  if (!kind) {
    // Parameters without a kind would otherwise be silently ignored; leave
    // them unconsumed so they are reported.
    return fallback;
  }
  if (*kind == "gaussian") {
    Gaussian g;
    if (kv.has(prefix + ".mean")) g.mean = kv.real(prefix + ".mean");
    g.variance = kv.real(prefix + ".variance");
    return g;
  }
  if (*kind == "split_gaussian") {
    return SplitGaussian{kv.real(prefix + ".var_neg"), kv.real(prefix + ".var_pos")};
  }
  if (*kind == "shifted_f") {
    return ShiftedF{static_cast<int>(kv.integer(prefix + ".d1")),
                    static_cast<int>(kv.integer(prefix + ".d2"))};
  }
  throw UsageError("'" + prefix + ".kind' must be gaussian, split_gaussian or shifted_f, got '" +
                   *kind + "'");
}

AlgorithmConfig parse_algorithm_section(KeyValues& kv, const std::string& label) {
  const auto kind_text = kv.take(label + ".kind").value_or(label);
  const auto kind = parse_algorithm(kind_text);
  if (!kind) {
    throw UsageError("algorithm '" + label + "': unknown kind '" + kind_text +
                     "' (expected macc, mcc, lms, sa, lmm or llad)");
  }
  const double mu = kv.real(label + ".mu");
  switch (*kind) {
    case Algorithm::MACC:
      return AlgorithmConfig::macc(
          mu, KernelBandwidths(kv.real(label + ".sigma_plus"), kv.real(label + ".sigma_minus")));
    case Algorithm::MCC: return AlgorithmConfig::mcc(mu, kv.real(label + ".sigma"));
    case Algorithm::LMS: return AlgorithmConfig::lms(mu);
    case Algorithm::SA: return AlgorithmConfig::sa(mu);
    case Algorithm::LMM:
      return AlgorithmConfig::lmm(mu, {kv.real(label + ".xi"), kv.real(label + ".delta1"),
                                       kv.real(label + ".delta2")});
    case Algorithm::LLAD: return AlgorithmConfig::llad(mu, kv.real(label + ".alpha"));
  }
  throw UsageError("unreachable algorithm kind");
}

const std::set<std::string> kReservedSections = {"system", "noise",  "run",       "output",
                                                 "sweep",  "theory", "algorithms"};

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  KeyValues kv(source);
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string text = trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw UsageError(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    if (key.empty()) throw UsageError(source + ":" + std::to_string(line_no) + ": empty key");
    kv.set(key, value, line_no);
  }

  ExperimentConfig cfg = emse_study_config();
  if (kv.has("system.true_weights")) {
    const auto w = kv.reals("system.true_weights");
    cfg.true_weights = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
  }
  if (kv.has("system.input_variance")) cfg.input_variance = kv.real("system.input_variance");
  if (kv.has("system.trace_rx")) cfg.trace_rx = kv.real("system.trace_rx");

  if (kv.has("noise.c")) cfg.noise.occurrence_prob = kv.real("noise.c");
  cfg.noise.main = parse_component(kv, "noise.main", cfg.noise.main);
  cfg.noise.outlier = parse_component(kv, "noise.outlier", cfg.noise.outlier);

  if (kv.has("run.runs")) cfg.num_runs = kv.integer("run.runs");
  if (kv.has("run.iterations")) cfg.num_iterations = kv.integer("run.iterations");
  if (kv.has("run.steady_state_window")) {
    cfg.steady_state_window = kv.integer("run.steady_state_window");
  }
  if (kv.has("run.decimation")) cfg.decimation = kv.integer("run.decimation");
  if (kv.has("run.seed")) cfg.base_seed = kv.integer("run.seed");
  if (kv.has("run.threads")) cfg.threads = static_cast<unsigned>(kv.integer("run.threads"));
  if (auto path = kv.take("output.path")) cfg.output_path = *path;
  if (kv.has("sweep.mu_grid")) cfg.mu_grid = kv.reals("sweep.mu_grid");
  if (kv.has("theory.abs_tol")) cfg.theory_abs_tol = kv.real("theory.abs_tol");

  if (auto labels = kv.take("algorithms")) {
    cfg.algorithms.clear();
    std::set<std::string> seen;
    for (const auto& label : split_list(*labels)) {
      if (kReservedSections.contains(label)) {
        throw UsageError("algorithm label '" + label + "' collides with a config section");
      }
      if (!seen.insert(label).second) throw UsageError("duplicate algorithm label '" + label + "'");
      try {
        cfg.algorithms.push_back({label, parse_algorithm_section(kv, label)});
      } catch (const UsageError& err) {
        throw UsageError(source + ": " + err.what());
      }
    }
  }

  kv.check_all_used();
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

}  // namespace acorr
