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
#ifndef BASIL_HARNESS_HPP_
#define BASIL_HARNESS_HPP_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "basil/config.hpp"
#include "basil/data_model.hpp"
#include "basil/metrics.hpp"

namespace basil {

struct RoundRecord {
  int round = 0;
  std::string strategy;  // "seed" for the random first round
  std::string smi;       // empty unless an SMI strategy selected this round
  std::string greedy_variant;
  Index batch_size = 0;
  Index labeled_size = 0;
  std::optional<double> ir;
  double test_acc = 0;
  std::vector<Index> per_class_counts;  // labeled-set histogram
  std::vector<Index> quotas;            // SMI rounds: effective quotas
  std::vector<Index> selected_per_class;
  Index ground_kernels_built = 0;
  std::vector<std::string> warnings;
  std::map<std::string, double> seconds;  // wall clock per phase
};

struct FinalRecord {
  double supervised_test_acc = 0;
  std::optional<double> ssl_test_acc;
  std::optional<double> final_ir;
  std::vector<Index> pseudo_newly_labeled;
  std::vector<Index> pseudo_labeled;
  std::vector<std::optional<double>> per_class_recall;
  std::map<std::string, double> seconds;
};

struct ExperimentReport {
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<RoundRecord> rounds;
  FinalRecord final;
};

// Raised when a round fails; round() is 0 for setup failures.
class RunError : public std::runtime_error {
 public:
  RunError(int round, const std::string& what)
      : std::runtime_error("round " + std::to_string(round) + ": " + what),
        round_(round) {}
  int round() const { return round_; }

 private:
  int round_;
};

// The initial pool: synthetic or CSV-backed, with its metric spec.
struct ExperimentData {
  PoolState pool;
  MetricSpec metric;
  bool has_metric = false;
  std::vector<std::string> warnings;
};
ExperimentData PrepareData(const ExperimentConfig& cfg);

// Round 1 labels a random batch; rounds 2..N train the surrogate on L, select
// a batch with the configured strategy and label it. The last round also
// absorbs total_budget mod rounds. Afterwards the final model is trained
// supervised and, if enabled, by pseudo-label self-training.
ExperimentReport RunExperiment(const ExperimentConfig& cfg);

struct ComparisonRow {
  Strategy strategy;
  std::vector<std::uint64_t> seeds;
  std::vector<double> supervised_acc;
  std::vector<std::optional<double>> ssl_acc;
  std::vector<std::optional<double>> final_ir;
};

// Cross product of strategies and seeds; every cell uses cfg_base with the
// strategy and master seed replaced.
std::vector<ComparisonRow> CompareStrategies(
    const ExperimentConfig& cfg_base, const std::vector<Strategy>& strategies,
    const std::vector<std::uint64_t>& seeds);

struct Summary {
  double mean = 0;
  double stddev = 0;  // sample standard deviation; 0 for one value
};
// Mean and spread of the present values; +inf mean if any value is +inf.
std::optional<Summary> Summarize(const std::vector<std::optional<double>>& v);

}  // namespace basil

#endif  // BASIL_HARNESS_HPP_
