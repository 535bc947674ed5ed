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
#ifndef BASIL_GREEDY_HPP_
#define BASIL_GREEDY_HPP_

// Cardinality-constrained greedy maximization: naive, lazy (CELF) and
// stochastic. Ties are always broken toward the lowest candidate id, which
// makes lazy and naive produce identical sequences.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "basil/rng.hpp"
#include "basil/types.hpp"

namespace basil {

template <typename T>
concept IncrementalObjective = requires(T obj, const T cobj, Index j) {
  { cobj.MarginalGain(j) } -> std::convertible_to<double>;
  obj.Commit(j);
};

enum class GreedyVariant { kNaive, kLazy, kStochastic };

inline std::string_view GreedyVariantName(GreedyVariant v) {
  switch (v) {
    case GreedyVariant::kNaive: return "naive";
    case GreedyVariant::kLazy: return "lazy";
    case GreedyVariant::kStochastic: return "stochastic";
  }
  return "?";
}

inline std::optional<GreedyVariant> ParseGreedyVariant(std::string_view name) {
  if (name == "naive") return GreedyVariant::kNaive;
  if (name == "lazy") return GreedyVariant::kLazy;
  if (name == "stochastic") return GreedyVariant::kStochastic;
  return std::nullopt;
}

struct GreedyConfig {
  GreedyVariant variant = GreedyVariant::kLazy;
  Index budget = 1;
  double epsilon = 0.01;  // stochastic only
  std::uint64_t seed = 0;

  void Validate() const {
    if (budget < 1) throw ConfigError("greedy budget must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
      throw ConfigError("greedy epsilon must lie in (0, 1)");
    }
  }
};

struct GreedyResult {
  IndexList selection;
  std::vector<double> gains;  // committed marginal gain per step
};

// Per-step sample size of stochastic greedy: ceil((n / b) ln(1 / eps)).
inline Index StochasticSampleSize(Index n, Index budget, double epsilon) {
  const double s = std::ceil(static_cast<double>(n) /
                             static_cast<double>(budget) *
                             std::log(1.0 / epsilon));
  return std::max<Index>(1, static_cast<Index>(s));
}

namespace internal {

inline constexpr double kMinGain = -1e-9;

inline void CheckGain(double gain) {
  if (gain < kMinGain) {
    throw std::logic_error("greedy step with negative gain " +
                           std::to_string(gain) +
                           "; objective is not monotone");
  }
}

// True if (gain_a, id_a) should be preferred over (gain_b, id_b).
inline bool Better(double gain_a, Index id_a, double gain_b, Index id_b) {
  return gain_a > gain_b || (gain_a == gain_b && id_a < id_b);
}

template <IncrementalObjective Objective>
GreedyResult NaiveGreedy(Objective& obj, IndexList remaining, Index budget) {
  GreedyResult out;
  std::sort(remaining.begin(), remaining.end());
  for (Index step = 0; step < budget; ++step) {
    size_t best_pos = 0;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < remaining.size(); ++k) {
      const double g = static_cast<double>(obj.MarginalGain(remaining[k]));
      if (g > best_gain) {  // ascending ids: strict > keeps the lowest on ties
        best_gain = g;
        best_pos = k;
      }
    }
    CheckGain(best_gain);
    const Index pick = remaining[best_pos];
    obj.Commit(pick);
    out.selection.push_back(pick);
    out.gains.push_back(best_gain);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best_pos));
  }
  return out;
}

template <IncrementalObjective Objective>
GreedyResult LazyGreedy(Objective& obj, const IndexList& candidates,
                        Index budget) {
  struct Entry {
    double bound;
    Index id;
    Index evaluated_at;  // step at which bound was computed
  };
  const auto worse = [](const Entry& a, const Entry& b) {
    return Better(b.bound, b.id, a.bound, a.id);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  for (Index id : candidates) {
    heap.push({static_cast<double>(obj.MarginalGain(id)), id, 0});
  }
  GreedyResult out;
  for (Index step = 0; step < budget; ++step) {
    while (true) {
      Entry top = heap.top();
      heap.pop();
      if (top.evaluated_at == step) {
        CheckGain(top.bound);
        obj.Commit(top.id);
        out.selection.push_back(top.id);
        out.gains.push_back(top.bound);
        break;
      }
      top.bound = static_cast<double>(obj.MarginalGain(top.id));
      top.evaluated_at = step;
      heap.push(top);
    }
  }
  return out;
}

template <IncrementalObjective Objective>
GreedyResult StochasticGreedy(Objective& obj, IndexList remaining,
                              Index budget, double epsilon,
                              std::uint64_t seed) {
  const Index sample_size = StochasticSampleSize(
      static_cast<Index>(remaining.size()), budget, epsilon);
  std::sort(remaining.begin(), remaining.end());
  Rng rng(Mix64(seed));
  GreedyResult out;
  for (Index step = 0; step < budget; ++step) {
    const size_t n = remaining.size();
    const size_t s = std::min(static_cast<size_t>(sample_size), n);
    // Partial Fisher-Yates: the first s slots become the sample.
    for (size_t k = 0; k < s; ++k) {
      std::swap(remaining[k], remaining[k + UniformBelow(rng, n - k)]);
    }
    size_t best_pos = 0;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < s; ++k) {
      const double g = static_cast<double>(obj.MarginalGain(remaining[k]));
      if (Better(g, remaining[k], best_gain, remaining[best_pos]) || k == 0) {
        best_gain = g;
        best_pos = k;
      }
    }
    CheckGain(best_gain);
    const Index pick = remaining[best_pos];
    obj.Commit(pick);
    out.selection.push_back(pick);
    out.gains.push_back(best_gain);
    remaining[best_pos] = remaining.back();
    remaining.pop_back();
  }
  return out;
}

}  // namespace internal

// Selects cfg.budget distinct ids from candidates, committing each to obj.
// obj must start with nothing selected.
template <IncrementalObjective Objective>
GreedyResult Maximize(Objective& obj, std::span<const Index> candidates,
                      const GreedyConfig& cfg) {
  cfg.Validate();
  IndexList pool(candidates.begin(), candidates.end());
  {
    IndexList sorted = pool;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("duplicate candidate ids");
    }
  }
  if (cfg.budget > static_cast<Index>(pool.size())) {
    throw std::invalid_argument("budget " + std::to_string(cfg.budget) +
                                " exceeds " + std::to_string(pool.size()) +
                                " candidates");
  }
  switch (cfg.variant) {
    case GreedyVariant::kNaive:
      return internal::NaiveGreedy(obj, std::move(pool), cfg.budget);
    case GreedyVariant::kLazy:
      return internal::LazyGreedy(obj, pool, cfg.budget);
    case GreedyVariant::kStochastic:
      return internal::StochasticGreedy(obj, std::move(pool), cfg.budget,
                                        cfg.epsilon, cfg.seed);
  }
  return {};
}

}  // namespace basil

#endif  // BASIL_GREEDY_HPP_
