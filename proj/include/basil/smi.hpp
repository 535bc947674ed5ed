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
#ifndef BASIL_SMI_HPP_
#define BASIL_SMI_HPP_

// Submodular mutual information objectives I_f(A; Q) over a ground set of
// n candidates {0, ..., n-1} and a query set of q points.
//
//   query_sim(i, j)  similarity of candidate i to query point j   (n x q)
//   ground_sim(i, j) similarity of candidates i and j             (n x n)
//
// All similarities are assumed to lie in [0, 1], which makes "max over the
// empty set is 0" a consistent convention.

#include <algorithm>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "basil/types.hpp"

namespace basil {

enum class SmiKind { kGcmi, kFlvmi, kFlqmi };

inline std::string_view SmiKindName(SmiKind kind) {
  switch (kind) {
    case SmiKind::kGcmi: return "gcmi";
    case SmiKind::kFlvmi: return "flvmi";
    case SmiKind::kFlqmi: return "flqmi";
  }
  return "?";
}

inline std::optional<SmiKind> ParseSmiKind(std::string_view name) {
  if (name == "gcmi") return SmiKind::kGcmi;
  if (name == "flvmi") return SmiKind::kFlvmi;
  if (name == "flqmi") return SmiKind::kFlqmi;
  return std::nullopt;
}

template <typename Scalar>
using ConstMatrixRef = Eigen::Ref<const MatrixX<Scalar>>;

// 2 * sum_{i in A} sum_{j in Q} s_ij
template <typename Scalar>
Scalar EvaluateGcmi(std::span<const Index> selected,
                    const ConstMatrixRef<Scalar>& query_sim) {
  if (query_sim.cols() == 0) throw std::invalid_argument("empty query set");
  Scalar total = 0;
  for (Index i : selected) total += query_sim.row(i).sum();
  return Scalar(2) * total;
}

// sum_{i in V} min(max_{j in A} s_ij, max_{j in Q} s_ij)
template <typename Scalar>
Scalar EvaluateFlvmi(std::span<const Index> selected,
                     const ConstMatrixRef<Scalar>& ground_sim,
                     const ConstMatrixRef<Scalar>& query_sim) {
  if (query_sim.cols() == 0) throw std::invalid_argument("empty query set");
  if (ground_sim.rows() != query_sim.rows() ||
      ground_sim.cols() != ground_sim.rows()) {
    throw std::invalid_argument("ground kernel shape mismatch");
  }
  Scalar total = 0;
  for (Index i = 0; i < ground_sim.rows(); ++i) {
    Scalar cover = 0;
    for (Index j : selected) cover = std::max(cover, ground_sim(i, j));
    total += std::min(cover, query_sim.row(i).maxCoeff());
  }
  return total;
}

// sum_{i in Q} max_{j in A} s_ij + sum_{i in A} max_{j in Q} s_ij
template <typename Scalar>
Scalar EvaluateFlqmi(std::span<const Index> selected,
                     const ConstMatrixRef<Scalar>& query_sim) {
  if (query_sim.cols() == 0) throw std::invalid_argument("empty query set");
  Scalar total = 0;
  for (Index q = 0; q < query_sim.cols(); ++q) {
    Scalar best = 0;
    for (Index j : selected) best = std::max(best, query_sim(j, q));
    total += best;
  }
  for (Index j : selected) total += query_sim.row(j).maxCoeff();
  return total;
}

// I_f(.; Q) with incremental state so that a marginal gain costs
//   GCMI O(1), FLVMI O(n), FLQMI O(q).
template <typename Scalar = double>
class SmiObjective {
 public:
  static SmiObjective Gcmi(MatrixX<Scalar> query_sim) {
    SmiObjective obj(SmiKind::kGcmi, std::move(query_sim), nullptr);
    obj.relevance_ = Scalar(2) * obj.query_sim_.rowwise().sum();
    return obj;
  }

  static SmiObjective Flvmi(std::shared_ptr<const MatrixX<Scalar>> ground_sim,
                            MatrixX<Scalar> query_sim) {
    if (!ground_sim) {
      throw ConfigError("FLVMI requires the ground-set kernel");
    }
    if (ground_sim->rows() != query_sim.rows() ||
        ground_sim->cols() != ground_sim->rows()) {
      throw std::invalid_argument("ground kernel shape mismatch");
    }
    SmiObjective obj(SmiKind::kFlvmi, std::move(query_sim),
                     std::move(ground_sim));
    obj.relevance_ = obj.query_sim_.rowwise().maxCoeff();
    obj.cover_ = VectorX<Scalar>::Zero(obj.ground_size());
    return obj;
  }

  static SmiObjective Flqmi(MatrixX<Scalar> query_sim) {
    SmiObjective obj(SmiKind::kFlqmi, std::move(query_sim), nullptr);
    obj.relevance_ = obj.query_sim_.rowwise().maxCoeff();
    obj.cover_ = VectorX<Scalar>::Zero(obj.query_sim_.cols());
    return obj;
  }

  SmiKind kind() const { return kind_; }
  Index ground_size() const { return query_sim_.rows(); }
  Index query_size() const { return query_sim_.cols(); }
  const IndexList& selected() const { return selected_; }
  bool IsSelected(Index j) const { return in_set_[size_t(j)] != 0; }

  // Memoized I_f(A; Q) for the current A.
  Scalar Value() const { return value_; }

  Scalar MarginalGain(Index j) const {
    CheckCandidate(j);
    switch (kind_) {
      case SmiKind::kGcmi:
        return relevance_(j);
      case SmiKind::kFlvmi: {
        // sum_i min(max(cur_i, s_ij), qmax_i) - min(cur_i, qmax_i); terms with
        // cur_i >= s_ij vanish.
        const auto col = ground_sim_->col(j);
        Scalar gain = 0;
        for (Index i = 0; i < col.size(); ++i) {
          const Scalar s = col(i);
          const Scalar cur = cover_(i);
          if (s > cur) {
            gain += std::min(s, relevance_(i)) - std::min(cur, relevance_(i));
          }
        }
        return gain;
      }
      case SmiKind::kFlqmi: {
        Scalar gain = relevance_(j);
        const auto row = query_sim_.row(j);
        for (Index q = 0; q < row.size(); ++q) {
          if (row(q) > cover_(q)) gain += row(q) - cover_(q);
        }
        return gain;
      }
    }
    return 0;
  }

  void Commit(Index j) {
    const Scalar gain = MarginalGain(j);
    switch (kind_) {
      case SmiKind::kGcmi:
        break;
      case SmiKind::kFlvmi:
        cover_ = cover_.cwiseMax(ground_sim_->col(j));
        break;
      case SmiKind::kFlqmi:
        cover_ = cover_.cwiseMax(query_sim_.row(j).transpose());
        break;
    }
    value_ += gain;
    selected_.push_back(j);
    in_set_[size_t(j)] = 1;
  }

  Scalar EvaluateFromScratch() const {
    switch (kind_) {
      case SmiKind::kGcmi:
        return EvaluateGcmi<Scalar>(selected_, query_sim_);
      case SmiKind::kFlvmi:
        return EvaluateFlvmi<Scalar>(selected_, *ground_sim_, query_sim_);
      case SmiKind::kFlqmi:
        return EvaluateFlqmi<Scalar>(selected_, query_sim_);
    }
    return 0;
  }

  void Reset() {
    selected_.clear();
    std::fill(in_set_.begin(), in_set_.end(), 0);
    if (cover_.size() > 0) cover_.setZero();
    value_ = 0;
  }

 private:
  SmiObjective(SmiKind kind, MatrixX<Scalar> query_sim,
               std::shared_ptr<const MatrixX<Scalar>> ground_sim)
      : kind_(kind),
        query_sim_(std::move(query_sim)),
        ground_sim_(std::move(ground_sim)),
        in_set_(static_cast<size_t>(query_sim_.rows()), 0) {
    if (query_sim_.cols() == 0) throw std::invalid_argument("empty query set");
  }

  void CheckCandidate(Index j) const {
    if (j < 0 || j >= ground_size()) {
      throw std::out_of_range("candidate " + std::to_string(j) +
                              " outside the ground set");
    }
    if (in_set_[size_t(j)]) {
      throw std::invalid_argument("candidate " + std::to_string(j) +
                                  " is already selected");
    }
  }

  SmiKind kind_;
  MatrixX<Scalar> query_sim_;
  std::shared_ptr<const MatrixX<Scalar>> ground_sim_;
  // GCMI: 2 sum_q s_jq. FLVMI and FLQMI: max_q s_jq.
  VectorX<Scalar> relevance_;
  // FLVMI: max_{a in A} s_ia per ground point. FLQMI: per query point.
  VectorX<Scalar> cover_;
  IndexList selected_;
  std::vector<char> in_set_;
  Scalar value_ = 0;
};

}  // namespace basil

#endif  // BASIL_SMI_HPP_
