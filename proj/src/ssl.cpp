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
#include "basil/ssl.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "basil/metrics.hpp"

namespace basil {

void PseudoLabelConfig::Validate() const {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ConfigError("pseudo-label threshold must lie in (0, 1)");
  }
  if (max_iterations < 0) {
    throw ConfigError("pseudo-label max_iterations must be >= 0");
  }
}

PseudoLabelResult PseudoLabelTrain(const PoolState& pool,
                                   const PseudoLabelConfig& cfg) {
  cfg.Validate();
  if (pool.labeled.empty()) throw std::invalid_argument("labeled set is empty");
  const Dataset& data = *pool.dataset;

  PseudoLabelResult out;
  if (static_cast<Index>(pool.labeled.size()) < data.num_classes) {
    out.warnings.push_back("fewer labeled points than classes");
  }

  const Index n_lab = static_cast<Index>(pool.labeled.size());
  const Matrix x_lab = data.features(pool.labeled, Eigen::all);
  const Matrix x_unl = data.features(pool.unlabeled, Eigen::all);
  std::vector<int> y_lab;
  for (Index i : pool.labeled) y_lab.push_back(data.labels[size_t(i)]);

  out.supervised = Train<double>(x_lab, y_lab, data.num_classes, cfg.train);
  out.model = out.supervised;
  if (x_unl.rows() == 0) return out;

  const bool use_val = !pool.validation.empty();
  double best_val = use_val ? Accuracy(out.model, data, pool.validation) : 0;

  // previous[k]: unlabeled row k was pseudo-labeled in the last pass.
  std::vector<char> previous(static_cast<size_t>(x_unl.rows()), 0);
  for (int pass = 0; pass < cfg.max_iterations; ++pass) {
    const Matrix p = PredictProbaRows(out.model, x_unl);
    std::vector<char> current(previous.size(), 0);
    IndexList rows;
    std::vector<int> labels;
    Index fresh = 0;
    for (Index k = 0; k < p.rows(); ++k) {
      const int y = ArgmaxLowest(p.row(k).transpose());
      if (p(k, y) >= cfg.threshold) {
        current[size_t(k)] = 1;
        rows.push_back(k);
        labels.push_back(y);
        if (!previous[size_t(k)]) ++fresh;
      }
    }
    if (fresh == 0) break;
    out.newly_labeled.push_back(fresh);
    out.pseudo_labeled.push_back(static_cast<Index>(rows.size()));

    Matrix x(n_lab + static_cast<Index>(rows.size()), data.dims());
    x.topRows(n_lab) = x_lab;
    x.bottomRows(static_cast<Index>(rows.size())) = x_unl(rows, Eigen::all);
    std::vector<int> y = y_lab;
    y.insert(y.end(), labels.begin(), labels.end());
    ModelParams<double> next = Train<double>(x, y, data.num_classes, cfg.train);

    if (use_val) {
      const double val = Accuracy(next, data, pool.validation);
      if (val < best_val) {
        out.stopped_on_validation = true;
        break;
      }
      best_val = val;
    }
    out.model = std::move(next);
    out.pseudo_ids.clear();
    for (Index k : rows) out.pseudo_ids.push_back(pool.unlabeled[size_t(k)]);
    out.pseudo_labels = std::move(labels);
    previous = std::move(current);
  }
  return out;
}

}  // namespace basil
