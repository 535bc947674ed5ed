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
#ifndef BASIL_SSL_HPP_
#define BASIL_SSL_HPP_

#include <vector>

#include "basil/data_model.hpp"
#include "basil/surrogate.hpp"

namespace basil {

struct PseudoLabelConfig {
  double threshold = 0.95;
  int max_iterations = 10;
  TrainConfig train;

  void Validate() const;
};

struct PseudoLabelResult {
  ModelParams<double> model;
  ModelParams<double> supervised;  // trained on the labeled set only
  // Per pass: points newly above threshold, and total pseudo-labeled.
  std::vector<Index> newly_labeled;
  std::vector<Index> pseudo_labeled;
  IndexList pseudo_ids;  // final assignment
  std::vector<int> pseudo_labels;
  bool stopped_on_validation = false;
  std::vector<std::string> warnings;
};

// Self-training: train on L plus the current pseudo-labeled set, reassign
// pseudo-labels to every unlabeled point whose top class probability reaches
// the threshold, repeat until nothing new crosses it or max_iterations
// passes have run. With a non-empty validation split, stops early when
// validation accuracy drops and keeps the best model.
PseudoLabelResult PseudoLabelTrain(const PoolState& pool,
                                   const PseudoLabelConfig& cfg);

}  // namespace basil

#endif  // BASIL_SSL_HPP_
