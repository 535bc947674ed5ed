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
#ifndef BASIL_STRATEGIES_HPP_
#define BASIL_STRATEGIES_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "basil/data_model.hpp"
#include "basil/greedy.hpp"
#include "basil/kernels.hpp"
#include "basil/smi.hpp"
#include "basil/surrogate.hpp"

namespace basil {

enum class Strategy { kRandom, kEntropy, kBadge, kGcmi, kFlvmi, kFlqmi };

std::string_view StrategyName(Strategy s);
std::optional<Strategy> ParseStrategy(std::string_view name);
std::optional<SmiKind> SmiKindOf(Strategy s);

// Per-round batch and its split into per-class quotas.
struct RoundPlan {
  Index batch = 0;
  std::vector<Index> quotas;

  // batch / C each, the remainder going one apiece to the lowest class ids.
  static RoundPlan EqualSplit(Index batch, int num_classes);
};

// Moves the quota of every class without a query point onto the classes
// that have one, split evenly with the remainder to the lowest ids.
std::vector<Index> RedistributeQuotas(const std::vector<Index>& quotas,
                                      const std::vector<bool>& has_query);

// What to do with the quota of a class that has no labeled point yet.
enum class EmptyClassPolicy {
  // Spend it on the unlabeled points least similar to the labeled set.
  kExplore,
  // Hand it to the classes that do have labeled points.
  kRedistribute,
};

std::string_view EmptyClassPolicyName(EmptyClassPolicy p);
std::optional<EmptyClassPolicy> ParseEmptyClassPolicy(std::string_view name);

// Modular score sum_{j in A} (1 - max_{l in L} s_lj) over the query kernel
// columns: how far each candidate is from everything already labeled.
class LabeledNovelty {
 public:
  explicit LabeledNovelty(const Matrix& query_kernel)
      : novelty_(1.0 - query_kernel.colwise().maxCoeff().transpose().array()),
        in_set_(static_cast<size_t>(query_kernel.cols()), 0) {
    if (query_kernel.rows() == 0) {
      throw std::invalid_argument("novelty needs at least one labeled point");
    }
  }

  double MarginalGain(Index j) const {
    if (in_set_.at(size_t(j))) {
      throw std::invalid_argument("candidate already selected");
    }
    return novelty_(j);
  }
  void Commit(Index j) {
    value_ += MarginalGain(j);
    in_set_[size_t(j)] = 1;
  }
  double Value() const { return value_; }

 private:
  Vector novelty_;
  std::vector<char> in_set_;
  double value_ = 0;
};

// Lazy greedy for the facility-location kinds, naive for the modular GCMI.
GreedyVariant DefaultGreedyVariant(SmiKind kind);

struct BasilSelection {
  IndexList batch;                   // point ids, class by class
  std::vector<IndexList> per_class;  // point ids chosen for each class
  std::vector<Index> quotas;         // effective quotas
  std::vector<bool> explored;        // class served by LabeledNovelty
  std::vector<std::string> warnings;
};

// Per-class SMI maximization. Class c uses the labeled points of class c as
// its query set; classes run in ascending order and ids chosen for one class
// are not candidates for later ones. greedy.budget is ignored (quotas rule).
BasilSelection BasilSelect(
    const PoolView& pool, const RoundKernels& kernels, SmiKind kind,
    const RoundPlan& plan, const GreedyConfig& greedy,
    EmptyClassPolicy empty_policy = EmptyClassPolicy::kExplore);

// Convenience form that builds this round's kernels from the model.
BasilSelection BasilSelect(
    const PoolView& pool, const ModelParams<double>& model, SmiKind kind,
    const RoundPlan& plan, const GreedyConfig& greedy,
    EmptyClassPolicy empty_policy = EmptyClassPolicy::kExplore);

IndexList RandomSelect(const PoolView& pool, Index batch, std::uint64_t seed);

// Top-batch unlabeled points by predictive entropy; ties by lowest id.
IndexList EntropySelect(const PoolView& pool, const ModelParams<double>& model,
                        Index batch);

// k-means++ seeding over hypothesized-label gradient embeddings. The first
// center is drawn with probability proportional to the squared norm.
IndexList BadgeSelect(const PoolView& pool, const ModelParams<double>& model,
                      Index batch, std::uint64_t seed);

}  // namespace basil

#endif  // BASIL_STRATEGIES_HPP_
