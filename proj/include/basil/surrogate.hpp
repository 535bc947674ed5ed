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
#ifndef BASIL_SURROGATE_HPP_
#define BASIL_SURROGATE_HPP_

// Multinomial logistic regression: the trainable model whose last-layer
// gradients drive selection.

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "basil/data_model.hpp"
#include "basil/types.hpp"

namespace basil {

template <typename Scalar = double>
struct ModelParams {
  MatrixX<Scalar> weights;  // C x d
  VectorX<Scalar> bias;     // C

  static ModelParams Zero(int num_classes, Index dims) {
    return {MatrixX<Scalar>::Zero(num_classes, dims),
            VectorX<Scalar>::Zero(num_classes)};
  }
  int num_classes() const { return static_cast<int>(weights.rows()); }
  Index dims() const { return weights.cols(); }
  bool operator==(const ModelParams&) const = default;
};

enum class Optimizer { kGradientDescent, kAdam };

struct TrainConfig {
  int epochs = 300;
  double learning_rate = 3e-3;
  double l2 = 1e-3;
  Optimizer optimizer = Optimizer::kAdam;
};

template <typename Scalar>
struct LossAndGradient {
  Scalar loss;
  MatrixX<Scalar> grad_weights;
  VectorX<Scalar> grad_bias;
};

// Row-wise softmax of logits, shifted by the row max.
template <typename Derived>
MatrixX<typename Derived::Scalar> SoftmaxRows(
    const Eigen::MatrixBase<Derived>& logits) {
  using Scalar = typename Derived::Scalar;
  MatrixX<Scalar> p = logits.colwise() - logits.rowwise().maxCoeff();
  p = p.array().exp().matrix();
  const VectorX<Scalar> z = p.rowwise().sum();
  return z.cwiseInverse().asDiagonal() * p;
}

// Class probabilities for every row of x (n x d), returned n x C.
template <typename Scalar, typename Derived>
MatrixX<Scalar> PredictProbaRows(const ModelParams<Scalar>& model,
                                 const Eigen::MatrixBase<Derived>& x) {
  if (x.cols() != model.dims()) {
    throw std::invalid_argument("feature dimension " +
                                std::to_string(x.cols()) + " != model " +
                                std::to_string(model.dims()));
  }
  MatrixX<Scalar> logits = x * model.weights.transpose();
  logits.rowwise() += model.bias.transpose();
  return SoftmaxRows(logits);
}

template <typename Scalar, typename Derived>
VectorX<Scalar> PredictProba(const ModelParams<Scalar>& model,
                             const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != model.dims()) {
    throw std::invalid_argument("feature dimension " +
                                std::to_string(x.size()) + " != model " +
                                std::to_string(model.dims()));
  }
  return PredictProbaRows(model, x.derived().reshaped(1, x.size()))
      .transpose();
}

// First index of the maximum entry.
template <typename Derived>
int ArgmaxLowest(const Eigen::MatrixBase<Derived>& v) {
  int best = 0;
  for (Index k = 1; k < v.size(); ++k) {
    if (v(k) > v(best)) best = static_cast<int>(k);
  }
  return best;
}

template <typename Scalar, typename Derived>
int HypothesizedLabel(const ModelParams<Scalar>& model,
                      const Eigen::MatrixBase<Derived>& x) {
  return ArgmaxLowest(PredictProba(model, x));
}

template <typename Scalar, typename Derived>
std::vector<int> HypothesizedLabels(const ModelParams<Scalar>& model,
                                    const Eigen::MatrixBase<Derived>& x) {
  const MatrixX<Scalar> p = PredictProbaRows(model, x);
  std::vector<int> out(static_cast<size_t>(p.rows()));
  for (Index i = 0; i < p.rows(); ++i) {
    out[static_cast<size_t>(i)] = ArgmaxLowest(p.row(i).transpose());
  }
  return out;
}

// Entropy in nats; 0 ln 0 = 0. Rejects vectors off the simplex by more
// than 1e-6.
template <typename Derived>
typename Derived::Scalar PredictiveEntropy(
    const Eigen::MatrixBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  if (p.size() == 0 || (p.array() < Scalar(-1e-6)).any() ||
      std::abs(p.sum() - Scalar(1)) > Scalar(1e-6)) {
    throw std::invalid_argument("probability vector is not on the simplex");
  }
  Scalar h = 0;
  for (Index k = 0; k < p.size(); ++k) {
    if (p(k) > Scalar(0)) h -= p(k) * std::log(p(k));
  }
  return h;
}

// d(cross-entropy)/dW for one point, flattened row-major by class:
// block k holds (p_k - [k == label]) * x.
template <typename Scalar, typename Derived>
VectorX<Scalar> GradientEmbedding(const ModelParams<Scalar>& model,
                                  const Eigen::MatrixBase<Derived>& x,
                                  int label) {
  if (label < 0 || label >= model.num_classes()) {
    throw std::invalid_argument("label " + std::to_string(label) +
                                " out of range");
  }
  VectorX<Scalar> residual = PredictProba(model, x);
  residual(label) -= Scalar(1);
  const Index d = model.dims();
  VectorX<Scalar> g(model.num_classes() * d);
  for (int k = 0; k < model.num_classes(); ++k) {
    g.segment(k * d, d) = residual(k) * x;
  }
  return g;
}

enum class EmbeddingSource { kTrueLabel, kHypothesizedLabel };

template <typename Scalar = double>
struct GradientEmbeddingSet {
  MatrixX<Scalar> vectors;  // m x (C * d)
  IndexList ids;
  EmbeddingSource source = EmbeddingSource::kHypothesizedLabel;

  Index size() const { return vectors.rows(); }
};

// Embeddings for the given dataset rows. With kTrueLabel, labels supplies
// one label per id; with kHypothesizedLabel, labels must be empty and the
// model's argmax is used.
template <typename Scalar>
GradientEmbeddingSet<Scalar> GradientEmbeddings(
    const ModelParams<Scalar>& model, const MatrixX<Scalar>& features,
    const IndexList& ids, std::span<const int> labels,
    EmbeddingSource source) {
  const Index m = static_cast<Index>(ids.size());
  const Index d = model.dims();
  const int c = model.num_classes();
  if (features.cols() != d) {
    throw std::invalid_argument("feature dimension does not match model");
  }
  MatrixX<Scalar> x(m, d);
  for (Index i = 0; i < m; ++i) x.row(i) = features.row(ids[size_t(i)]);
  MatrixX<Scalar> residual = PredictProbaRows(model, x);

  if (source == EmbeddingSource::kTrueLabel) {
    if (static_cast<Index>(labels.size()) != m) {
      throw std::invalid_argument("one true label per embedded point required");
    }
  } else if (!labels.empty()) {
    throw std::invalid_argument("hypothesized embeddings take no labels");
  }
  for (Index i = 0; i < m; ++i) {
    const int y = source == EmbeddingSource::kTrueLabel
                      ? labels[size_t(i)]
                      : ArgmaxLowest(residual.row(i).transpose());
    if (y < 0 || y >= c) {
      throw std::invalid_argument("label " + std::to_string(y) +
                                  " out of range");
    }
    residual(i, y) -= Scalar(1);
  }

  GradientEmbeddingSet<Scalar> out;
  out.ids = ids;
  out.source = source;
  out.vectors.resize(m, c * d);
  for (int k = 0; k < c; ++k) {
    out.vectors.middleCols(k * d, d) = residual.col(k).asDiagonal() * x;
  }
  return out;
}

// Mean cross-entropy over (x, y) plus (l2 / 2) ||W||^2; bias unpenalized.
template <typename Scalar, typename Derived>
LossAndGradient<Scalar> TrainingLoss(const ModelParams<Scalar>& model,
                                     const Eigen::MatrixBase<Derived>& x,
                                     std::span<const int> y, Scalar l2) {
  const Index n = x.rows();
  MatrixX<Scalar> p = PredictProbaRows(model, x);
  Scalar nll = 0;
  for (Index i = 0; i < n; ++i) {
    const int yi = y[size_t(i)];
    nll -= std::log(std::max(p(i, yi), std::numeric_limits<Scalar>::min()));
    p(i, yi) -= Scalar(1);
  }
  const Scalar inv_n = Scalar(1) / static_cast<Scalar>(n);
  LossAndGradient<Scalar> out;
  out.loss = nll * inv_n + Scalar(0.5) * l2 * model.weights.squaredNorm();
  out.grad_weights = inv_n * (p.transpose() * x) + l2 * model.weights;
  out.grad_bias = inv_n * p.colwise().sum().transpose();
  return out;
}

// Full-batch descent from zero weights. Deterministic; returns the iterate
// with the lowest training loss seen, so the result never scores worse than
// the zero initialization.
template <typename Scalar, typename Derived>
ModelParams<Scalar> Train(const Eigen::MatrixBase<Derived>& x,
                          std::span<const int> y, int num_classes,
                          const TrainConfig& cfg) {
  if (x.rows() == 0) throw std::invalid_argument("empty training set");
  if (static_cast<Index>(y.size()) != x.rows()) {
    throw std::invalid_argument("one label per training row required");
  }
  for (int yi : y) {
    if (yi < 0 || yi >= num_classes) {
      throw std::invalid_argument("training label out of range");
    }
  }
  if (cfg.epochs < 0 || !(cfg.learning_rate >= 0.0) || !(cfg.l2 >= 0.0)) {
    throw std::invalid_argument("invalid training hyperparameters");
  }

  const Scalar lr = static_cast<Scalar>(cfg.learning_rate);
  const Scalar l2 = static_cast<Scalar>(cfg.l2);
  auto model = ModelParams<Scalar>::Zero(num_classes, x.cols());
  ModelParams<Scalar> best = model;
  Scalar best_loss = std::numeric_limits<Scalar>::infinity();

  // Adam moments.
  constexpr Scalar kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
  MatrixX<Scalar> m_w = MatrixX<Scalar>::Zero(num_classes, x.cols());
  MatrixX<Scalar> v_w = m_w;
  VectorX<Scalar> m_b = VectorX<Scalar>::Zero(num_classes);
  VectorX<Scalar> v_b = m_b;
  Scalar beta1_t = 1, beta2_t = 1;

  for (int epoch = 0; epoch <= cfg.epochs; ++epoch) {
    LossAndGradient<Scalar> lg = TrainingLoss(model, x, y, l2);
    if (lg.loss < best_loss) {
      best_loss = lg.loss;
      best = model;
    }
    if (epoch == cfg.epochs) break;
    if (cfg.optimizer == Optimizer::kGradientDescent) {
      model.weights -= lr * lg.grad_weights;
      model.bias -= lr * lg.grad_bias;
    } else {
      beta1_t *= kBeta1;
      beta2_t *= kBeta2;
      m_w = kBeta1 * m_w + (1 - kBeta1) * lg.grad_weights;
      m_b = kBeta1 * m_b + (1 - kBeta1) * lg.grad_bias;
      v_w = kBeta2 * v_w + (1 - kBeta2) * lg.grad_weights.cwiseAbs2();
      v_b = kBeta2 * v_b + (1 - kBeta2) * lg.grad_bias.cwiseAbs2();
      const Scalar step = lr * std::sqrt(1 - beta2_t) / (1 - beta1_t);
      model.weights.array() -=
          step * m_w.array() / (v_w.array().sqrt() + kEps);
      model.bias.array() -= step * m_b.array() / (v_b.array().sqrt() + kEps);
    }
  }
  return best;
}

// Trains on the labeled rows of a pool.
inline ModelParams<double> TrainSurrogate(const PoolView& pool,
                                          const TrainConfig& cfg) {
  const IndexList& labeled = pool.labeled();
  if (labeled.empty()) throw std::invalid_argument("labeled set is empty");
  Matrix x(static_cast<Index>(labeled.size()), pool.dims());
  for (size_t i = 0; i < labeled.size(); ++i) {
    x.row(static_cast<Index>(i)) = pool.features().row(labeled[i]);
  }
  const std::vector<int> y = pool.labeled_labels();
  return Train<double>(x, y, pool.num_classes(), cfg);
}

}  // namespace basil

#endif  // BASIL_SURROGATE_HPP_
