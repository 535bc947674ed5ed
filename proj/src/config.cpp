// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "basil/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace basil {

GreedyVariant ExperimentConfig::ResolvedVariant(SmiKind kind) const {
  if (greedy_variant == "auto") return DefaultGreedyVariant(kind);
  return *ParseGreedyVariant(greedy_variant);
}

void ExperimentConfig::Validate() const {
  if (rounds < 1) throw ConfigError("budget.rounds must be >= 1");
  if (total_budget < rounds) {
    throw ConfigError("budget.total must be at least budget.rounds");
  }
  if (greedy_variant != "auto" && !ParseGreedyVariant(greedy_variant)) {
    throw ConfigError("greedy.variant must be auto, naive, lazy or stochastic");
  }
  if (!(greedy_epsilon > 0.0 && greedy_epsilon < 1.0)) {
    throw ConfigError("greedy.epsilon must lie in (0, 1)");
  }
  if (surrogate.epochs < 0 || !(surrogate.learning_rate >= 0.0) ||
      !(surrogate.l2 >= 0.0)) {
    throw ConfigError("surrogate hyperparameters must be non-negative");
  }
  ssl.Validate();
  if (data.source == "synthetic") {
    data.imbalance.Validate();
    if (data.dims < 2) throw ConfigError("data.dims must be >= 2");
    if (!(data.spread > 0.0)) throw ConfigError("data.spread must be > 0");
    if (!(data.separation > 0.0)) {
      throw ConfigError("data.separation must be > 0");
    }
    if (data.test_per_class < 1) {
      throw ConfigError("data.test_per_class must be >= 1");
    }
    if (data.val_per_class < 0) {
      throw ConfigError("data.val_per_class must be >= 0");
    }
  } else if (data.source == "csv") {
    if (data.csv_path.empty()) throw ConfigError("data.csv_path is required");
    if (data.test_csv_path.empty() &&
        !(data.test_fraction > 0.0 && data.test_fraction < 1.0)) {
      throw ConfigError("data.test_fraction must lie in (0, 1)");
    }
  } else {
    throw ConfigError("data.source must be synthetic or csv");
  }
}

ExperimentConfig ProfileConfig(std::string_view name) {
  ExperimentConfig cfg;
  if (name == "pathlike") {
    cfg.profile = "pathlike";
    cfg.data.imbalance = PathlikeSpec();
    cfg.total_budget = 90;
    cfg.rounds = 10;
  } else if (name == "organlike") {
    cfg.profile = "organlike";
    cfg.data.imbalance = OrganlikeSpec();
    cfg.total_budget = 99;
    cfg.rounds = 9;
  } else {
    throw ConfigError("unknown profile '" + std::string(name) +
                      "' (expected pathlike or organlike)");
  }
  return cfg;
}

namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void Bad(std::string_view key, std::string_view value,
                      std::string_view expected) {
  throw ConfigError("'" + std::string(key) + "': '" + std::string(value) +
                    "' is not " + std::string(expected));
}

template <typename T>
T ParseNum(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    Bad(key, value, "a number");
  }
  return out;
}

bool ParseBool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  Bad(key, value, "a boolean");
}

std::vector<int> ParseIntList(std::string_view key, std::string_view value) {
  std::vector<int> out;
  std::string item;
  std::istringstream in{std::string(value)};
  while (std::getline(in, item, ',')) {
    item = Trim(item);
    if (item.empty()) continue;
    out.push_back(ParseNum<int>(key, item));
  }
  return out;
}

std::string JoinInts(const std::vector<int>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string FormatDouble(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

void ApplySetting(ExperimentConfig& cfg, std::string_view key,
                  std::string_view raw) {
  const std::string value = Trim(raw);
  const std::string_view v = value;
  if (key == "profile") {
    cfg.profile = value;
  } else if (key == "seed") {
    cfg.seed = ParseNum<std::uint64_t>(key, v);
  } else if (key == "strategy") {
    const auto s = ParseStrategy(v);
    if (!s) Bad(key, v, "one of random|entropy|badge|gcmi|flvmi|flqmi");
    cfg.strategy = *s;
  } else if (key == "budget.total") {
    cfg.total_budget = ParseNum<Index>(key, v);
  } else if (key == "budget.rounds") {
    cfg.rounds = ParseNum<int>(key, v);
  } else if (key == "greedy.variant") {
    cfg.greedy_variant = value;
  } else if (key == "greedy.epsilon") {
    cfg.greedy_epsilon = ParseNum<double>(key, v);
  } else if (key == "basil.empty_class_policy") {
    const auto p = ParseEmptyClassPolicy(v);
    if (!p) Bad(key, v, "explore or redistribute");
    cfg.empty_class_policy = *p;
  } else if (key == "surrogate.optimizer") {
    if (v == "adam") {
      cfg.surrogate.optimizer = Optimizer::kAdam;
    } else if (v == "gd") {
      cfg.surrogate.optimizer = Optimizer::kGradientDescent;
    } else {
      Bad(key, v, "adam or gd");
    }
  } else if (key == "surrogate.epochs") {
    cfg.surrogate.epochs = ParseNum<int>(key, v);
  } else if (key == "surrogate.learning_rate") {
    cfg.surrogate.learning_rate = ParseNum<double>(key, v);
  } else if (key == "surrogate.l2") {
    cfg.surrogate.l2 = ParseNum<double>(key, v);
  } else if (key == "ssl.enabled") {
    cfg.ssl_enabled = ParseBool(key, v);
  } else if (key == "ssl.threshold") {
    cfg.ssl.threshold = ParseNum<double>(key, v);
  } else if (key == "ssl.max_iterations") {
    cfg.ssl.max_iterations = ParseNum<int>(key, v);
  } else if (key == "metrics.rare_classes") {
    cfg.metric_rare_classes = ParseIntList(key, v);
  } else if (key == "output.dir") {
    cfg.output_dir = value;
  } else if (key == "output.dump_kernels") {
    cfg.dump_kernels = ParseBool(key, v);
  } else if (key == "data.source") {
    cfg.data.source = value;
  } else if (key == "data.csv_path") {
    cfg.data.csv_path = value;
  } else if (key == "data.test_csv_path") {
    cfg.data.test_csv_path = value;
  } else if (key == "data.label_column") {
    cfg.data.label_column = value;
  } else if (key == "data.test_fraction") {
    cfg.data.test_fraction = ParseNum<double>(key, v);
  } else if (key == "data.rare_classes") {
    cfg.data.imbalance.rare_classes = ParseIntList(key, v);
  } else if (key == "data.frequent_classes") {
    cfg.data.imbalance.frequent_classes = ParseIntList(key, v);
  } else if (key == "data.rare_count") {
    cfg.data.imbalance.rare_count = ParseNum<Index>(key, v);
  } else if (key == "data.frequent_count") {
    cfg.data.imbalance.frequent_count = ParseNum<Index>(key, v);
  } else if (key == "data.dims") {
    cfg.data.dims = ParseNum<Index>(key, v);
  } else if (key == "data.spread") {
    cfg.data.spread = ParseNum<double>(key, v);
  } else if (key == "data.separation") {
    cfg.data.separation = ParseNum<double>(key, v);
  } else if (key == "data.val_per_class") {
    cfg.data.val_per_class = ParseNum<Index>(key, v);
  } else if (key == "data.test_per_class") {
    cfg.data.test_per_class = ParseNum<Index>(key, v);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

std::vector<std::pair<std::string, std::string>> ParseKeyValues(
    std::string_view text, const std::string& origin) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (Trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    std::string key = Trim(std::string_view(line).substr(0, eq));
    if (key.empty()) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
    }
    out.emplace_back(std::move(key),
                     Trim(std::string_view(line).substr(eq + 1)));
  }
  return out;
}

ExperimentConfig ConfigFromKeyValues(
    const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string profile = "pathlike";
  for (const auto& [k, v] : kv) {
    if (k == "profile") profile = v;
  }
  ExperimentConfig cfg = ProfileConfig(profile);
  for (const auto& [k, v] : kv) {
    if (k != "profile") ApplySetting(cfg, k, v);
  }
  return cfg;
}

ExperimentConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return ConfigFromKeyValues(ParseKeyValues(buf.str(), path));
}

std::vector<std::pair<std::string, std::string>> ConfigToKeyValues(
    const ExperimentConfig& cfg) {
  const auto b = [](bool x) { return std::string(x ? "true" : "false"); };
  return {
      {"profile", cfg.profile},
      {"seed", std::to_string(cfg.seed)},
      {"strategy", std::string(StrategyName(cfg.strategy))},
      {"budget.total", std::to_string(cfg.total_budget)},
      {"budget.rounds", std::to_string(cfg.rounds)},
      {"greedy.variant", cfg.greedy_variant},
      {"greedy.epsilon", FormatDouble(cfg.greedy_epsilon)},
      {"basil.empty_class_policy",
       std::string(EmptyClassPolicyName(cfg.empty_class_policy))},
      {"surrogate.optimizer",
       cfg.surrogate.optimizer == Optimizer::kAdam ? "adam" : "gd"},
      {"surrogate.epochs", std::to_string(cfg.surrogate.epochs)},
      {"surrogate.learning_rate", FormatDouble(cfg.surrogate.learning_rate)},
      {"surrogate.l2", FormatDouble(cfg.surrogate.l2)},
      {"ssl.enabled", b(cfg.ssl_enabled)},
      {"ssl.threshold", FormatDouble(cfg.ssl.threshold)},
      {"ssl.max_iterations", std::to_string(cfg.ssl.max_iterations)},
      {"metrics.rare_classes", JoinInts(cfg.metric_rare_classes)},
      {"output.dir", cfg.output_dir},
      {"output.dump_kernels", b(cfg.dump_kernels)},
      {"data.source", cfg.data.source},
      {"data.csv_path", cfg.data.csv_path},
      {"data.test_csv_path", cfg.data.test_csv_path},
      {"data.label_column", cfg.data.label_column},
      {"data.test_fraction", FormatDouble(cfg.data.test_fraction)},
      {"data.rare_classes", JoinInts(cfg.data.imbalance.rare_classes)},
      {"data.frequent_classes", JoinInts(cfg.data.imbalance.frequent_classes)},
      {"data.rare_count", std::to_string(cfg.data.imbalance.rare_count)},
      {"data.frequent_count", std::to_string(cfg.data.imbalance.frequent_count)},
      {"data.dims", std::to_string(cfg.data.dims)},
      {"data.spread", FormatDouble(cfg.data.spread)},
      {"data.separation", FormatDouble(cfg.data.separation)},
      {"data.val_per_class", std::to_string(cfg.data.val_per_class)},
      {"data.test_per_class", std::to_string(cfg.data.test_per_class)},
  };
}

}  // namespace basil
