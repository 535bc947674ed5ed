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
#include "basil/metrics.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace basil {

void MetricSpec::Validate(int num_classes) const {
  std::vector<int> seen(static_cast<size_t>(num_classes), 0);
  for (const auto* set : {&rare_classes, &frequent_classes}) {
    if (set->empty()) {
      throw ConfigError("rare and frequent class sets must be non-empty");
    }
    for (int c : *set) {
      if (c < 0 || c >= num_classes) {
        throw ConfigError("class " + std::to_string(c) + " outside [0, " +
                          std::to_string(num_classes) + ")");
      }
      if (seen[size_t(c)]++) {
        throw ConfigError("class " + std::to_string(c) +
                          " is both rare and frequent");
      }
    }
  }
  for (int c = 0; c < num_classes; ++c) {
    if (!seen[size_t(c)]) {
      throw ConfigError("class " + std::to_string(c) +
                        " is neither rare nor frequent");
    }
  }
}

std::optional<double> ImbalanceRatio(std::span<const int> labels,
                                     const MetricSpec& spec, int num_classes) {
  spec.Validate(num_classes);
  std::vector<char> rare(static_cast<size_t>(num_classes), 0);
  for (int c : spec.rare_classes) rare[size_t(c)] = 1;
  double n_rare = 0, n_frequent = 0;
  for (int y : labels) {
    if (y < 0 || y >= num_classes) {
      throw std::invalid_argument("label " + std::to_string(y) +
                                  " outside [0, " +
                                  std::to_string(num_classes) + ")");
    }
    (rare[size_t(y)] ? n_rare : n_frequent) += 1;
  }
  if (n_rare == 0) {
    if (n_frequent == 0) return std::nullopt;
    return std::numeric_limits<double>::infinity();
  }
  return (n_frequent * static_cast<double>(spec.rare_classes.size())) /
         (n_rare * static_cast<double>(spec.frequent_classes.size()));
}

double Accuracy(const ModelParams<double>& model, const Dataset& data,
                const IndexList& rows) {
  if (rows.empty()) throw std::invalid_argument("empty evaluation split");
  const std::vector<int> pred =
      HypothesizedLabels(model, data.features(rows, Eigen::all));
  Index correct = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (pred[i] == data.labels[size_t(rows[i])]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(rows.size());
}

std::vector<std::optional<double>> PerClassRecall(
    const ModelParams<double>& model, const Dataset& data,
    const IndexList& rows) {
  if (rows.empty()) throw std::invalid_argument("empty evaluation split");
  const std::vector<int> pred =
      HypothesizedLabels(model, data.features(rows, Eigen::all));
  std::vector<Index> hits(static_cast<size_t>(data.num_classes), 0);
  std::vector<Index> totals(static_cast<size_t>(data.num_classes), 0);
  for (size_t i = 0; i < rows.size(); ++i) {
    const int y = data.labels[size_t(rows[i])];
    ++totals[size_t(y)];
    if (pred[i] == y) ++hits[size_t(y)];
  }
  std::vector<std::optional<double>> out(totals.size());
  for (size_t c = 0; c < totals.size(); ++c) {
    if (totals[c] > 0) {
      out[c] = static_cast<double>(hits[c]) / static_cast<double>(totals[c]);
    }
  }
  return out;
}

}  // namespace basil
