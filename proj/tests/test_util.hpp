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


#ifndef BASIL_TESTS_TEST_UTIL_HPP_
#define BASIL_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "basil/rng.hpp"
#include "basil/smi.hpp"
#include "basil/types.hpp"

namespace basil::testing {

// Entries uniform in [0, 1).
inline Matrix RandomKernel(Index rows, Index cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = UniformUnit(rng);
  }
  return m;
}

// Symmetric with unit diagonal.
inline Matrix RandomGroundKernel(Index n, Rng& rng) {
  Matrix m = RandomKernel(n, n, rng);
  m = (0.5 * (m + m.transpose())).eval();
  m.diagonal().setOnes();
  return m;
}

struct Instance {
  SmiKind kind;
  Matrix query;  // n x |Q|
  std::shared_ptr<const Matrix> ground;
};

inline Instance RandomInstance(SmiKind kind, Index n, Index q, Rng& rng) {
  Instance inst{kind, RandomKernel(n, q, rng), nullptr};
  if (kind == SmiKind::kFlvmi) {
    inst.ground = std::make_shared<const Matrix>(RandomGroundKernel(n, rng));
  }
  return inst;
}

inline SmiObjective<double> MakeObjective(const Instance& inst) {
  switch (inst.kind) {
    case SmiKind::kGcmi: return SmiObjective<double>::Gcmi(inst.query);
    case SmiKind::kFlvmi:
      return SmiObjective<double>::Flvmi(inst.ground, inst.query);
    case SmiKind::kFlqmi: return SmiObjective<double>::Flqmi(inst.query);
  }
  throw std::logic_error("unknown kind");
}

// Straight from the set-function definitions, one loop per term.
inline double OracleValue(const Instance& inst, const IndexList& a) {
  const Matrix& s = inst.query;
  double total = 0;
  switch (inst.kind) {
    case SmiKind::kGcmi:
      for (Index i : a) {
        for (Index q = 0; q < s.cols(); ++q) total += 2.0 * s(i, q);
      }
      return total;
    case SmiKind::kFlvmi:
      for (Index i = 0; i < inst.ground->rows(); ++i) {
        double best_a = 0, best_q = 0;
        for (Index j : a) best_a = std::max(best_a, (*inst.ground)(i, j));
        for (Index q = 0; q < s.cols(); ++q) best_q = std::max(best_q, s(i, q));
        total += std::min(best_a, best_q);
      }
      return total;
    case SmiKind::kFlqmi:
      for (Index q = 0; q < s.cols(); ++q) {
        double best = 0;
        for (Index j : a) best = std::max(best, s(j, q));
        total += best;
      }
      for (Index j : a) {
        double best = 0;
        for (Index q = 0; q < s.cols(); ++q) best = std::max(best, s(j, q));
        total += best;
      }
      return total;
  }
  return 0;
}

inline IndexList SubsetFromMask(std::uint64_t mask, Index n) {
  IndexList out;
  for (Index i = 0; i < n; ++i) {
    if (mask >> i & 1) out.push_back(i);
  }
  return out;
}

inline double BruteForceOptimum(const Instance& inst, Index budget) {
  const Index n = inst.query.rows();
  double best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (std::popcount(mask) != budget) continue;
    best = std::max(best, OracleValue(inst, SubsetFromMask(mask, n)));
  }
  return best;
}

}  // namespace basil::testing

#endif  // BASIL_TESTS_TEST_UTIL_HPP_
