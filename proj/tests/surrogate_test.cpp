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

#include <cmath>
#include <memory>
#include <vector>

#include "basil/data_model.hpp"
#include "basil/rng.hpp"
#include "basil/surrogate.hpp"
#include "test_util.hpp"

namespace basil {
namespace {

Matrix RandomMatrix(Index r, Index c, Rng& rng, double scale = 1.0) {
  Matrix m(r, c);
  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < c; ++j) m(i, j) = scale * StandardNormal(rng);
  }
  return m;
}

ModelParams<double> RandomModel(int c, Index d, Rng& rng) {
  ModelParams<double> m = ModelParams<double>::Zero(c, d);
  m.weights = RandomMatrix(c, d, rng, 0.7);
  m.bias = RandomMatrix(c, 1, rng, 0.3);
  return m;
}

double RelativeError(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / std::max(1e-12, b.norm());
}

TEST_CASE("loss gradient matches central differences") {
  Rng rng(1);
  const int c = 4;
  const Index d = 5, n = 12;
  const Matrix x = RandomMatrix(n, d, rng);
  std::vector<int> y(n);
  for (Index i = 0; i < n; ++i) y[size_t(i)] = int(UniformBelow(rng, c));
  const double l2 = 0.01, h = 1e-6;
  for (int point = 0; point < 10; ++point) {
    ModelParams<double> m = RandomModel(c, d, rng);
    const auto lg = TrainingLoss(m, x, y, l2);
    Matrix fd_w(c, d);
    for (int k = 0; k < c; ++k) {
      for (Index t = 0; t < d; ++t) {
        ModelParams<double> plus = m, minus = m;
        plus.weights(k, t) += h;
        minus.weights(k, t) -= h;
        fd_w(k, t) = (TrainingLoss(plus, x, y, l2).loss -
                      TrainingLoss(minus, x, y, l2).loss) / (2 * h);
      }
    }
    Vector fd_b(c);
    for (int k = 0; k < c; ++k) {
      ModelParams<double> plus = m, minus = m;
      plus.bias(k) += h;
      minus.bias(k) -= h;
      fd_b(k) = (TrainingLoss(plus, x, y, l2).loss -
                 TrainingLoss(minus, x, y, l2).loss) / (2 * h);
    }
    CHECK(RelativeError(lg.grad_weights, fd_w) < 1e-5);
    CHECK(RelativeError(lg.grad_bias, fd_b) < 1e-5);
  }
}

double PointLoss(const ModelParams<double>& m, const Vector& x, int label) {
  return -std::log(PredictProba(m, x)(label));
}

TEST_CASE("gradient embedding matches central differences") {
  Rng rng(2);
  const int c = 3;
  const Index d = 4;
  const double h = 1e-6;
  for (int point = 0; point < 10; ++point) {
    ModelParams<double> m = RandomModel(c, d, rng);
    const Vector x = RandomMatrix(d, 1, rng);
    const int label = int(UniformBelow(rng, c));
    const Vector g = GradientEmbedding(m, x, label);
    Vector fd(c * d);
    for (int k = 0; k < c; ++k) {
      for (Index t = 0; t < d; ++t) {
        ModelParams<double> plus = m, minus = m;
        plus.weights(k, t) += h;
        minus.weights(k, t) -= h;
        fd(k * d + t) =
            (PointLoss(plus, x, label) - PointLoss(minus, x, label)) / (2 * h);
      }
    }
    CHECK(RelativeError(g, fd) < 1e-5);
    Vector residual = PredictProba(m, x);
    residual(label) -= 1;
    CHECK(g.norm() == doctest::Approx(residual.norm() * x.norm()));
  }
}

TEST_CASE("embedding of the zero model") {
  auto m = ModelParams<double>::Zero(2, 2);
  Vector x(2);
  x << 1, 0;
  const Vector g = GradientEmbedding(m, x, 0);
  Vector expected(4);
  expected << -0.5, 0, 0.5, 0;
  CHECK((g - expected).norm() < 1e-15);
  CHECK_THROWS(GradientEmbedding(m, x, 2));
  CHECK_THROWS(GradientEmbedding(m, x, -1));
}

TEST_CASE("embedding vanishes at a confident correct prediction") {
  auto m = ModelParams<double>::Zero(2, 1);
  m.bias << 800, -800;  // softmax saturates to (1, denormal)
  Vector x(1);
  x << 1;
  CHECK(GradientEmbedding(m, x, 0).norm() < 1e-300);
  CHECK(GradientEmbedding(m, x, 1).norm() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("batch embeddings agree with the single-point form") {
  Rng rng(3);
  ModelParams<double> m = RandomModel(3, 4, rng);
  const Matrix features = RandomMatrix(10, 4, rng);
  IndexList ids = {1, 4, 7};
  std::vector<int> labels = {2, 0, 1};
  auto truth = GradientEmbeddings<double>(m, features, ids, labels,
                                          EmbeddingSource::kTrueLabel);
  auto hyp = GradientEmbeddings<double>(m, features, ids, {},
                                        EmbeddingSource::kHypothesizedLabel);
  for (size_t i = 0; i < ids.size(); ++i) {
    const Vector x = features.row(ids[i]).transpose();
    CHECK((truth.vectors.row(Index(i)).transpose() -
           GradientEmbedding(m, x, labels[i])).norm() < 1e-12);
    CHECK((hyp.vectors.row(Index(i)).transpose() -
           GradientEmbedding(m, x, HypothesizedLabel(m, x))).norm() < 1e-12);
  }
  CHECK(truth.source == EmbeddingSource::kTrueLabel);
  CHECK_THROWS(GradientEmbeddings<double>(m, features, ids, {},
                                          EmbeddingSource::kTrueLabel));
  CHECK_THROWS(GradientEmbeddings<double>(m, features, ids, labels,
                                          EmbeddingSource::kHypothesizedLabel));
}

TEST_CASE("softmax identities") {
  auto m = ModelParams<double>::Zero(4, 3);
  Vector x(3);
  x << 0.3, -1, 2;
  CHECK((PredictProba(m, x).array() - 0.25).abs().maxCoeff() < 1e-15);

  Matrix logits(1, 3);
  logits << 0.5, -2, 1.25;
  Matrix shifted = logits.array() + 37.0;
  CHECK((SoftmaxRows(logits) - SoftmaxRows(shifted)).norm() < 1e-14);

  Matrix pair(1, 2);
  pair << 1.7, 0.4;
  CHECK(SoftmaxRows(pair)(0, 0) ==
        doctest::Approx(1.0 / (1.0 + std::exp(-1.3))));

  Rng rng(4);
  ModelParams<double> r = RandomModel(5, 3, rng);
  const Vector p = PredictProba(r, x);
  CHECK((p.array() > 0).all());
  CHECK(std::abs(p.sum() - 1.0) < 1e-9);

  Vector wrong(2);
  wrong << 1, 2;
  CHECK_THROWS(PredictProba(r, wrong));
}

TEST_CASE("hypothesized label") {
  Vector p(3);
  p << 0.1, 0.7, 0.2;
  CHECK(ArgmaxLowest(p) == 1);
  auto m = ModelParams<double>::Zero(3, 2);
  Vector x(2);
  x << 1, 1;
  CHECK(HypothesizedLabel(m, x) == 0);
  m.bias << 0.1, 0.5, 0.5;
  CHECK(HypothesizedLabel(m, x) == 1);
  m.bias *= 3.0;
  CHECK(HypothesizedLabel(m, x) == 1);
}

TEST_CASE("predictive entropy") {
  CHECK(PredictiveEntropy(Vector::Constant(9, 1.0 / 9)) ==
        doctest::Approx(std::log(9.0)));
  Vector onehot = Vector::Zero(4);
  onehot(2) = 1;
  CHECK(PredictiveEntropy(onehot) == 0.0);
  CHECK(PredictiveEntropy(Vector::Constant(2, 0.5)) ==
        doctest::Approx(std::log(2.0)));
  Vector bad(2);
  bad << 0.5, 0.6;
  CHECK_THROWS(PredictiveEntropy(bad));
  bad << 1.2, -0.2;
  CHECK_THROWS(PredictiveEntropy(bad));
}

TEST_CASE("training memorizes one point") {
  Matrix x(1, 3);
  x << 0.4, -1.0, 2.0;
  std::vector<int> y = {2};
  TrainConfig cfg;
  cfg.epochs = 200;
  cfg.learning_rate = 0.05;
  auto m = Train<double>(x, y, 4, cfg);
  CHECK(HypothesizedLabel(m, Vector(x.row(0).transpose())) == 2);
}

TEST_CASE("zero learning rate keeps the zero model") {
  Matrix x(2, 2);
  x << 1, 0, 0, 1;
  std::vector<int> y = {0, 1};
  for (Optimizer opt : {Optimizer::kAdam, Optimizer::kGradientDescent}) {
    TrainConfig cfg;
    cfg.learning_rate = 0;
    cfg.optimizer = opt;
    auto m = Train<double>(x, y, 3, cfg);
    CHECK(m == ModelParams<double>::Zero(3, 2));
  }
}

TEST_CASE("separable toy problem is fit exactly") {
  // Separated by the direction (1, 1); checked against that closed-form
  // classifier before training.
  Matrix x(4, 2);
  x << 2, 1, 1, 2, -1, -2, -2, -1;
  std::vector<int> y = {1, 1, 0, 0};
  for (Index i = 0; i < 4; ++i) {
    CHECK((x(i, 0) + x(i, 1) > 0) == (y[size_t(i)] == 1));
  }
  for (Optimizer opt : {Optimizer::kAdam, Optimizer::kGradientDescent}) {
    TrainConfig cfg;
    cfg.optimizer = opt;
    cfg.learning_rate = opt == Optimizer::kAdam ? 0.05 : 0.5;
    auto m = Train<double>(x, y, 2, cfg);
    const Matrix p = PredictProbaRows(m, x);
    for (Index i = 0; i < 4; ++i) {
      CHECK(ArgmaxLowest(p.row(i).transpose()) == y[size_t(i)]);
    }
  }
}

TEST_CASE("training is deterministic and never worse than the start") {
  Rng rng(5);
  const Matrix x = RandomMatrix(40, 6, rng);
  std::vector<int> y(40);
  for (auto& v : y) v = int(UniformBelow(rng, 3));
  TrainConfig cfg;
  cfg.learning_rate = 0.5;  // deliberately large
  const auto a = Train<double>(x, y, 3, cfg);
  const auto b = Train<double>(x, y, 3, cfg);
  CHECK(a == b);
  const double start =
      TrainingLoss(ModelParams<double>::Zero(3, 6), x, y, cfg.l2).loss;
  CHECK(TrainingLoss(a, x, y, cfg.l2).loss <= start);
}

TEST_CASE("surrogate trains only on the labeled rows") {
  ImbalanceSpec spec{{0}, {1}, 5, 10};
  auto data = std::make_shared<const Dataset>(
      GenerateSynthetic(spec, 3, 1.0, 9));
  PoolState pool = MakePool(data, {}, {});
  CHECK_THROWS(TrainSurrogate(PoolView(pool), TrainConfig{}));
  pool = SeedRound(pool, 6, 1);
  const auto m = TrainSurrogate(PoolView(pool), TrainConfig{});
  Matrix x(6, 3);
  std::vector<int> y;
  for (Index i = 0; i < 6; ++i) {
    x.row(i) = data->features.row(pool.labeled[size_t(i)]);
    y.push_back(data->labels[size_t(pool.labeled[size_t(i)])]);
  }
  CHECK(m == Train<double>(x, y, 2, TrainConfig{}));
}

}  // namespace
}  // namespace basil
