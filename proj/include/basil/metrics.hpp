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
#ifndef BASIL_METRICS_HPP_
#define BASIL_METRICS_HPP_

#include <optional>
#include <span>
#include <vector>

#include "basil/data_model.hpp"
#include "basil/surrogate.hpp"

namespace basil {

struct MetricSpec {
  std::vector<int> rare_classes;
  std::vector<int> frequent_classes;

  // Rare and frequent must be disjoint, non-empty and cover [0, C).
  void Validate(int num_classes) const;
  static MetricSpec FromImbalance(const ImbalanceSpec& spec) {
    return {spec.rare_classes, spec.frequent_classes};
  }
};

// IR(A) = (|A_F| |R|) / (|A_R| |F|). +infinity when A has frequent but no
// rare points; nullopt when it has neither.
std::optional<double> ImbalanceRatio(std::span<const int> labels,
                                     const MetricSpec& spec, int num_classes);

double Accuracy(const ModelParams<double>& model, const Dataset& data,
                const IndexList& rows);

// Recall per class; nullopt for classes absent from rows.
std::vector<std::optional<double>> PerClassRecall(
    const ModelParams<double>& model, const Dataset& data,
    const IndexList& rows);

}  // namespace basil

#endif  // BASIL_METRICS_HPP_
