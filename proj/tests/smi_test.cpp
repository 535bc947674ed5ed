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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <vector>

#include "basil/rng.hpp"
#include "basil/smi.hpp"
#include "test_util.hpp"

namespace basil {
namespace {

using testing::Instance;
using testing::MakeObjective;
using testing::OracleValue;
using testing::RandomInstance;

constexpr SmiKind kKinds[] = {SmiKind::kGcmi, SmiKind::kFlvmi, SmiKind::kFlqmi};

TEST_CASE("gcmi closed form") {
  Matrix q(3, 2);
  q << 1, 1, 0.2, 0.3, 0.5, 0.0;
  IndexList none;
  CHECK(EvaluateGcmi<double>(none, q) == 0.0);
  IndexList a = {0};
  CHECK(EvaluateGcmi<double>(a, q) == doctest::Approx(4.0));

  auto obj = SmiObjective<double>::Gcmi(q);
  const double g2 = obj.MarginalGain(2);
  obj.Commit(0);
  CHECK(obj.MarginalGain(2) == g2);
  CHECK(g2 == doctest::Approx(2 * 0.5));
}

TEST_CASE("flvmi small hand kernel") {
  // Ground set of three points, one query point.
  Matrix ground(3, 3);
  ground << 1.0, 0.2, 0.6,
            0.2, 1.0, 0.3,
            0.6, 0.3, 1.0;
  Matrix query(3, 1);
  query << 0.9, 0.1, 0.4;
  auto g = std::make_shared<const Matrix>(ground);
  Instance inst{SmiKind::kFlvmi, query, g};

  IndexList none;
  CHECK(EvaluateFlvmi<double>(none, ground, query) == 0.0);
  // A = {1}: min(.2,.9) + min(1,.1) + min(.3,.4) = 0.6.
  IndexList a1 = {1};
  CHECK(EvaluateFlvmi<double>(a1, ground, query) == doctest::Approx(0.6));
  for (std::uint64_t mask = 0; mask < 8; ++mask) {
    IndexList a = testing::SubsetFromMask(mask, 3);
    CHECK(EvaluateFlvmi<double>(a, ground, query) ==
          doctest::Approx(OracleValue(inst, a)).epsilon(1e-12));
  }
  // Saturation: the identity covers every query maximum.
  IndexList all = {0, 1, 2};
  CHECK(EvaluateFlvmi<double>(all, ground, query) ==
        doctest::Approx(query.sum()));
}

TEST_CASE("flqmi closed form") {
  Matrix q(4, 1);
  q << 0.3, 0.7, 0.1, 0.5;
  IndexList none;
  CHECK(EvaluateFlqmi<double>(none, q) == 0.0);
  IndexList a = {1};
  CHECK(EvaluateFlqmi<double>(a, q) == doctest::Approx(2 * 0.7));

  auto obj = SmiObjective<double>::Flqmi(q);
  CHECK(obj.MarginalGain(3) == doctest::Approx(2 * 0.5));

  Rng rng(7);
  Instance inst = RandomInstance(SmiKind::kFlqmi, 5, 3, rng);
  IndexList pair = {1, 4};
  CHECK(EvaluateFlqmi<double>(pair, inst.query) ==
        doctest::Approx(OracleValue(inst, pair)).epsilon(1e-12));
}

TEST_CASE("empty query and missing ground kernel are rejected") {
  Matrix empty(4, 0);
  CHECK_THROWS(SmiObjective<double>::Gcmi(empty));
  CHECK_THROWS(SmiObjective<double>::Flqmi(empty));
  Matrix q = Matrix::Constant(4, 1, 0.5);
  CHECK_THROWS_AS(SmiObjective<double>::Flvmi(nullptr, q), ConfigError);
}

TEST_CASE("double commit is rejected") {
  Matrix q = Matrix::Constant(4, 2, 0.5);
  auto obj = SmiObjective<double>::Flqmi(q);
  obj.Commit(2);
  CHECK_THROWS(obj.MarginalGain(2));
  CHECK_THROWS(obj.Commit(2));
  CHECK_THROWS(obj.MarginalGain(9));
}

TEST_CASE("memoized gains match from-scratch differences") {
  Rng rng(11);
  for (SmiKind kind : kKinds) {
    for (int trial = 0; trial < 20; ++trial) {
      Instance inst = RandomInstance(kind, 30, 1 + trial % 4, rng);
      auto obj = MakeObjective(inst);
      IndexList order(30);
      std::iota(order.begin(), order.end(), 0);
      for (Index k = 29; k > 0; --k) {
        std::swap(order[k], order[UniformBelow(rng, k + 1)]);
      }
      IndexList a;
      for (int step = 0; step < 20; ++step) {
        const Index j = order[step];
        const double before = OracleValue(inst, a);
        const double gain = obj.MarginalGain(j);
        a.push_back(j);
        CHECK(std::abs(gain - (OracleValue(inst, a) - before)) <= 1e-9);
        obj.Commit(j);
        CHECK(std::abs(obj.Value() - OracleValue(inst, a)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("flvmi memo is a running max") {
  Rng rng(5);
  Instance inst = RandomInstance(SmiKind::kFlvmi, 8, 2, rng);
  auto obj = MakeObjective(inst);
  obj.Commit(3);
  obj.Commit(5);
  // Gain of j equals the oracle computed with cover max(s_i3, s_i5).
  IndexList a = {3, 5};
  for (Index j : {0, 1, 7}) {
    IndexList b = a;
    b.push_back(j);
    CHECK(obj.MarginalGain(j) ==
          doctest::Approx(OracleValue(inst, b) - OracleValue(inst, a)));
  }
}

TEST_CASE("commit order does not change the value") {
  Rng rng(13);
  for (SmiKind kind : kKinds) {
    Instance inst = RandomInstance(kind, 10, 3, rng);
    auto forward = MakeObjective(inst);
    auto backward = MakeObjective(inst);
    for (Index j : {1, 4, 6, 9}) forward.Commit(j);
    for (Index j : {9, 6, 4, 1}) backward.Commit(j);
    CHECK(std::abs(forward.Value() - backward.Value()) <= 1e-12);
    CHECK(forward.EvaluateFromScratch() == backward.EvaluateFromScratch());
  }
}

// Facility location over U + Q with identity on U, unit diagonal on Q and the
// query kernel across the two blocks.
double FacilityLocation(const Matrix& block, const IndexList& set) {
  double total = 0;
  for (Index i = 0; i < block.rows(); ++i) {
    double best = 0;
    for (Index j : set) best = std::max(best, block(i, j));
    total += best;
  }
  return total;
}

TEST_CASE("flqmi equals mutual information of a block facility location") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 2 + static_cast<Index>(UniformBelow(rng, 7));  // <= 8
    const Index m = 1 + static_cast<Index>(UniformBelow(rng, 3));
    const Matrix x = testing::RandomKernel(n, m, rng);
    Matrix block = Matrix::Zero(n + m, n + m);
    block.topLeftCorner(n, n).setIdentity();
    block.bottomRightCorner(m, m).setIdentity();
    block.topRightCorner(n, m) = x;
    block.bottomLeftCorner(m, n) = x.transpose();
    IndexList q(static_cast<size_t>(m));
    std::iota(q.begin(), q.end(), n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const IndexList a = testing::SubsetFromMask(mask, n);
      IndexList joint = a;
      joint.insert(joint.end(), q.begin(), q.end());
      const double mi = FacilityLocation(block, a) + FacilityLocation(block, q) -
                        FacilityLocation(block, joint);
      CHECK(std::abs(EvaluateFlqmi<double>(a, x) - mi) <= 1e-9);
    }
  }
}

TEST_CASE("monotone and submodular on small ground sets") {
  Rng rng(19);
  for (SmiKind kind : kKinds) {
    for (int trial = 0; trial < 3; ++trial) {
      const Index n = 8;
      Instance inst = RandomInstance(kind, n, 1 + trial, rng);
      const std::uint64_t full = std::uint64_t{1} << n;
      std::vector<double> value(full);
      for (std::uint64_t mask = 0; mask < full; ++mask) {
        value[mask] = OracleValue(inst, testing::SubsetFromMask(mask, n));
      }
      for (std::uint64_t b = 0; b < full; ++b) {
        for (std::uint64_t a = b;; a = (a - 1) & b) {
          for (Index j = 0; j < n; ++j) {
            const std::uint64_t bit = std::uint64_t{1} << j;
            if (b & bit) continue;
            const double gain_a = value[a | bit] - value[a];
            const double gain_b = value[b | bit] - value[b];
            CHECK(gain_b >= -1e-12);
            CHECK(gain_a >= gain_b - 1e-12);
          }
          if (a == 0) break;
        }
      }
    }
  }
}

TEST_CASE("no drift after many commits") {
  Rng rng(23);
  for (SmiKind kind : kKinds) {
    Instance inst = RandomInstance(kind, 150, 4, rng);
    auto obj = MakeObjective(inst);
    IndexList order(150);
    std::iota(order.begin(), order.end(), 0);
    for (Index k = 149; k > 0; --k) {
      std::swap(order[k], order[UniformBelow(rng, k + 1)]);
    }
    for (int step = 0; step < 100; ++step) obj.Commit(order[step]);
    const double scratch = obj.EvaluateFromScratch();
    CHECK(std::abs(obj.Value() - scratch) <= 1e-9 * (1 + std::abs(scratch)));
  }
}

TEST_CASE("reset clears the selection") {
  Rng rng(29);
  Instance inst = RandomInstance(SmiKind::kFlvmi, 6, 2, rng);
  auto obj = MakeObjective(inst);
  const double g = obj.MarginalGain(4);
  obj.Commit(4);
  obj.Commit(1);
  obj.Reset();
  CHECK(obj.Value() == 0.0);
  CHECK(obj.selected().empty());
  CHECK(obj.MarginalGain(4) == g);
}

TEST_CASE("float objective agrees with double") {
  Rng rng(31);
  Instance inst = RandomInstance(SmiKind::kFlqmi, 20, 3, rng);
  auto d = MakeObjective(inst);
  auto f = SmiObjective<float>::Flqmi(inst.query.cast<float>());
  for (Index j : {2, 9, 15}) {
    CHECK(f.MarginalGain(j) == doctest::Approx(d.MarginalGain(j)).epsilon(1e-5));
    d.Commit(j);
    f.Commit(j);
  }
}

}  // namespace
}  // namespace basil
