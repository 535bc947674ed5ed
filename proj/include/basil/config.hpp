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
#ifndef BASIL_CONFIG_HPP_
#define BASIL_CONFIG_HPP_

// Experiment configuration: a flat "key = value" text format with dotted
// section keys. Every key has a default; see README.md for the schema.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "basil/data_model.hpp"
#include "basil/greedy.hpp"
#include "basil/ssl.hpp"
#include "basil/strategies.hpp"
#include "basil/surrogate.hpp"

namespace basil {

struct DataConfig {
  std::string source = "synthetic";  // synthetic | csv
  std::string csv_path;
  std::string test_csv_path;  // empty: hold out test_fraction of csv_path
  std::string label_column = "label";
  double test_fraction = 0.2;
  ImbalanceSpec imbalance = PathlikeSpec();
  Index dims = 16;
  double spread = 1.0;
  double separation = kDefaultSeparation;
  Index val_per_class = 0;
  Index test_per_class = 20;
};

struct ExperimentConfig {
  std::string profile = "pathlike";
  std::uint64_t seed = 0;
  DataConfig data;
  Strategy strategy = Strategy::kFlqmi;
  Index total_budget = 90;
  int rounds = 10;
  std::string greedy_variant = "auto";  // auto | naive | lazy | stochastic
  double greedy_epsilon = 0.01;
  EmptyClassPolicy empty_class_policy = EmptyClassPolicy::kExplore;
  TrainConfig surrogate;
  bool ssl_enabled = true;
  PseudoLabelConfig ssl;
  // Empty: take the rare classes of the synthetic spec.
  std::vector<int> metric_rare_classes;
  std::string output_dir = "basil_out";
  bool dump_kernels = false;

  Index per_round_batch() const { return total_budget / rounds; }
  // Greedy variant for an SMI kind after resolving "auto".
  GreedyVariant ResolvedVariant(SmiKind kind) const;
  // Throws ConfigError on inconsistent values.
  void Validate() const;
};

// "pathlike" or "organlike"; throws ConfigError otherwise.
ExperimentConfig ProfileConfig(std::string_view name);

// Applies one key; throws ConfigError for unknown keys or bad values.
void ApplySetting(ExperimentConfig& cfg, std::string_view key,
                  std::string_view value);

// Parses "key = value" lines (# comments). A "profile" key, wherever it
// appears, selects the base profile; the remaining keys apply on top.
std::vector<std::pair<std::string, std::string>> ParseKeyValues(
    std::string_view text, const std::string& origin);
ExperimentConfig ConfigFromKeyValues(
    const std::vector<std::pair<std::string, std::string>>& kv);
ExperimentConfig LoadConfigFile(const std::string& path);

// Every key with its current value, in schema order.
std::vector<std::pair<std::string, std::string>> ConfigToKeyValues(
    const ExperimentConfig& cfg);

}  // namespace basil

#endif  // BASIL_CONFIG_HPP_
