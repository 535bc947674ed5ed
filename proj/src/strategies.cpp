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
#include "basil/strategies.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "basil/rng.hpp"

namespace basil {

std::string_view StrategyName(Strategy s) {
  switch (s) {
    case Strategy::kRandom: return "random";
    case Strategy::kEntropy: return "entropy";
    case Strategy::kBadge: return "badge";
    case Strategy::kGcmi: return "gcmi";
    case Strategy::kFlvmi: return "flvmi";
    case Strategy::kFlqmi: return "flqmi";
  }
  return "?";
}

std::optional<Strategy> ParseStrategy(std::string_view name) {
  for (Strategy s : {Strategy::kRandom, Strategy::kEntropy, Strategy::kBadge,
                     Strategy::kGcmi, Strategy::kFlvmi, Strategy::kFlqmi}) {
    if (StrategyName(s) == name) return s;
  }
  return std::nullopt;
}

std::optional<SmiKind> SmiKindOf(Strategy s) {
  switch (s) {
    case Strategy::kGcmi: return SmiKind::kGcmi;
    case Strategy::kFlvmi: return SmiKind::kFlvmi;
    case Strategy::kFlqmi: return SmiKind::kFlqmi;
    default: return std::nullopt;
  }
}

std::string_view EmptyClassPolicyName(EmptyClassPolicy p) {
  return p == EmptyClassPolicy::kExplore ? "explore" : "redistribute";
}

std::optional<EmptyClassPolicy> ParseEmptyClassPolicy(std::string_view name) {
  if (name == "explore") return EmptyClassPolicy::kExplore;
  if (name == "redistribute") return EmptyClassPolicy::kRedistribute;
  return std::nullopt;
}

RoundPlan RoundPlan::EqualSplit(Index batch, int num_classes) {
  if (num_classes < 1) throw std::invalid_argument("need at least one class");
  if (batch < 0) throw std::invalid_argument("negative batch");
  RoundPlan plan;
  plan.batch = batch;
  plan.quotas.assign(static_cast<size_t>(num_classes), batch / num_classes);
  for (Index c = 0; c < batch % num_classes; ++c) ++plan.quotas[size_t(c)];
  return plan;
}

std::vector<Index> RedistributeQuotas(const std::vector<Index>& quotas,
                                      const std::vector<bool>& has_query) {
  if (quotas.size() != has_query.size()) {
    throw std::invalid_argument("one flag per class quota required");
  }
  std::vector<Index> out(quotas.size(), 0);
  Index orphaned = 0;
  std::vector<size_t> receivers;
  for (size_t c = 0; c < quotas.size(); ++c) {
    if (has_query[c]) {
      out[c] = quotas[c];
      receivers.push_back(c);
    } else {
      orphaned += quotas[c];
    }
  }
  if (receivers.empty()) {
    if (orphaned > 0) {
      throw std::invalid_argument("no class has a labeled query point");
    }
    return out;
  }
  const Index share = orphaned / static_cast<Index>(receivers.size());
  const Index extra = orphaned % static_cast<Index>(receivers.size());
  for (size_t k = 0; k < receivers.size(); ++k) {
    out[receivers[k]] += share + (static_cast<Index>(k) < extra ? 1 : 0);
  }
  return out;
}

GreedyVariant DefaultGreedyVariant(SmiKind kind) {
  return kind == SmiKind::kGcmi ? GreedyVariant::kNaive : GreedyVariant::kLazy;
}

BasilSelection BasilSelect(const PoolView& pool, const RoundKernels& kernels,
                           SmiKind kind, const RoundPlan& plan,
                           const GreedyConfig& greedy,
                           EmptyClassPolicy empty_policy) {
  const int num_classes = pool.num_classes();
  const IndexList& unlabeled = pool.unlabeled();
  const Index n = static_cast<Index>(unlabeled.size());
  if (static_cast<int>(plan.quotas.size()) != num_classes) {
    throw std::invalid_argument("round plan has the wrong number of classes");
  }
  if (kernels.query.rows() != static_cast<Index>(pool.labeled().size()) ||
      kernels.query.cols() != n) {
    throw std::invalid_argument("query kernel does not match the pool");
  }

  BasilSelection out;
  out.per_class.resize(static_cast<size_t>(num_classes));
  out.explored.assign(static_cast<size_t>(num_classes), false);
  if (n <= plan.batch) {
    out.batch = unlabeled;
    out.quotas.assign(static_cast<size_t>(num_classes), 0);
    out.warnings.push_back("unlabeled pool smaller than the batch; taking all " +
                           std::to_string(n) + " remaining points");
    return out;
  }

  std::vector<std::vector<Index>> query_rows(static_cast<size_t>(num_classes));
  for (Index r = 0; r < kernels.query.rows(); ++r) {
    query_rows[static_cast<size_t>(pool.labeled_label(r))].push_back(r);
  }
  std::vector<bool> has_query(static_cast<size_t>(num_classes));
  for (int c = 0; c < num_classes; ++c) {
    has_query[size_t(c)] = !query_rows[size_t(c)].empty();
    if (!has_query[size_t(c)] && plan.quotas[size_t(c)] > 0) {
      out.warnings.push_back(
          "class " + std::to_string(c) + " has no labeled points; quota " +
          (empty_policy == EmptyClassPolicy::kExplore ? "spent on exploration"
                                                      : "redistributed"));
    }
  }
  if (empty_policy == EmptyClassPolicy::kRedistribute) {
    out.quotas = RedistributeQuotas(plan.quotas, has_query);
  } else {
    out.quotas = plan.quotas;
  }

  std::shared_ptr<const Matrix> ground;
  if (kind == SmiKind::kFlvmi) {
    if (!kernels.ground) {
      throw ConfigError("FLVMI requires the ground-set kernel");
    }
    ground = std::shared_ptr<const Matrix>(kernels.ground,
                                           &kernels.ground->values);
  }

  std::vector<char> taken(static_cast<size_t>(n), 0);
  for (int c = 0; c < num_classes; ++c) {
    const Index quota = out.quotas[size_t(c)];
    if (quota == 0) continue;
    IndexList candidates;
    candidates.reserve(static_cast<size_t>(n));
    for (Index j = 0; j < n; ++j) {
      if (!taken[size_t(j)]) candidates.push_back(j);
    }
    GreedyConfig cfg = greedy;
    cfg.budget = quota;
    cfg.seed = DeriveSeed(greedy.seed, static_cast<std::uint64_t>(c), "class");

    GreedyResult result;
    if (!has_query[size_t(c)]) {
      out.explored[size_t(c)] = true;
      LabeledNovelty novelty(kernels.query.values);
      cfg.variant = GreedyVariant::kNaive;
      result = Maximize(novelty, candidates, cfg);
    } else {
      Matrix query_sim =
          kernels.query.values(query_rows[size_t(c)], Eigen::all).transpose();
      SmiObjective<double> obj =
          kind == SmiKind::kGcmi
              ? SmiObjective<double>::Gcmi(std::move(query_sim))
          : kind == SmiKind::kFlqmi
              ? SmiObjective<double>::Flqmi(std::move(query_sim))
              : SmiObjective<double>::Flvmi(ground, std::move(query_sim));
      result = Maximize(obj, candidates, cfg);
    }
    for (Index j : result.selection) {
      taken[size_t(j)] = 1;
      const Index id = unlabeled[size_t(j)];
      out.per_class[size_t(c)].push_back(id);
      out.batch.push_back(id);
    }
  }
  return out;
}

BasilSelection BasilSelect(const PoolView& pool,
                           const ModelParams<double>& model, SmiKind kind,
                           const RoundPlan& plan, const GreedyConfig& greedy,
                           EmptyClassPolicy empty_policy) {
  const RoundKernels kernels =
      BuildRoundKernels(pool, model, kind == SmiKind::kFlvmi);
  BasilSelection out =
      BasilSelect(pool, kernels, kind, plan, greedy, empty_policy);
  out.warnings.insert(out.warnings.begin(), kernels.warnings.begin(),
                      kernels.warnings.end());
  return out;
}

namespace {

void CheckBatch(const PoolView& pool, Index batch) {
  if (batch < 1) throw std::invalid_argument("batch must be >= 1");
  if (batch > static_cast<Index>(pool.unlabeled().size())) {
    throw std::invalid_argument("batch " + std::to_string(batch) +
                                " exceeds the unlabeled pool");
  }
}

}  // namespace

IndexList RandomSelect(const PoolView& pool, Index batch, std::uint64_t seed) {
  CheckBatch(pool, batch);
  IndexList ids = pool.unlabeled();
  Rng rng(Mix64(seed));
  for (Index i = 0; i < batch; ++i) {
    const auto j = static_cast<size_t>(i) +
                   UniformBelow(rng, ids.size() - static_cast<size_t>(i));
    std::swap(ids[size_t(i)], ids[j]);
  }
  ids.resize(static_cast<size_t>(batch));
  return ids;
}

IndexList EntropySelect(const PoolView& pool, const ModelParams<double>& model,
                        Index batch) {
  CheckBatch(pool, batch);
  const IndexList& ids = pool.unlabeled();
  const Matrix x = pool.features()(ids, Eigen::all);
  const Matrix p = PredictProbaRows(model, x);
  std::vector<std::pair<double, Index>> scored;
  scored.reserve(ids.size());
  for (Index i = 0; i < p.rows(); ++i) {
    scored.emplace_back(PredictiveEntropy(p.row(i).transpose()), ids[size_t(i)]);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    return a.first > b.first || (a.first == b.first && a.second < b.second);
  });
  IndexList out;
  for (Index k = 0; k < batch; ++k) out.push_back(scored[size_t(k)].second);
  return out;
}

IndexList BadgeSelect(const PoolView& pool, const ModelParams<double>& model,
                      Index batch, std::uint64_t seed) {
  CheckBatch(pool, batch);
  const auto emb =
      GradientEmbeddings(model, pool.features(), pool.unlabeled(), {},
                         EmbeddingSource::kHypothesizedLabel);
  const Index n = emb.size();
  // Squared distance to the nearest chosen center; the empty center set
  // measures from the origin.
  Vector dist2 = emb.vectors.rowwise().squaredNorm();
  std::vector<char> chosen(static_cast<size_t>(n), 0);
  Rng rng(Mix64(seed));
  IndexList out;
  for (Index step = 0; step < batch; ++step) {
    double total = 0;
    for (Index i = 0; i < n; ++i) {
      if (!chosen[size_t(i)]) total += dist2(i);
    }
    Index pick = -1;
    if (total > 0) {
      const double target = UniformUnit(rng) * total;
      double acc = 0;
      for (Index i = 0; i < n; ++i) {
        if (chosen[size_t(i)] || dist2(i) <= 0) continue;
        acc += dist2(i);
        pick = i;
        if (acc > target) break;
      }
    } else {
      // Every remaining point coincides with a center: uniform fallback.
      Index k = static_cast<Index>(
          UniformBelow(rng, static_cast<std::uint64_t>(n - step)));
      for (Index i = 0; i < n; ++i) {
        if (chosen[size_t(i)]) continue;
        if (k-- == 0) {
          pick = i;
          break;
        }
      }
    }
    chosen[size_t(pick)] = 1;
    dist2(pick) = 0;
    out.push_back(emb.ids[size_t(pick)]);
    const auto center = emb.vectors.row(pick);
    for (Index i = 0; i < n; ++i) {
      if (chosen[size_t(i)]) continue;
      dist2(i) = std::min(dist2(i), (emb.vectors.row(i) - center).squaredNorm());
    }
  }
  return out;
}

}  // namespace basil
