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
#ifndef BASIL_KERNELS_HPP_
#define BASIL_KERNELS_HPP_

#include <memory>
#include <string>
#include <vector>

#include "basil/data_model.hpp"
#include "basil/surrogate.hpp"
#include "basil/types.hpp"

namespace basil {

// Dense similarities in [0, 1] with the point ids of rows and columns.
template <typename Scalar = double>
struct SimilarityKernel {
  MatrixX<Scalar> values;
  IndexList row_ids;
  IndexList col_ids;
  // Embeddings with zero norm; their cosine is taken as 0.
  Index zero_norm_rows = 0;

  Index rows() const { return values.rows(); }
  Index cols() const { return values.cols(); }
};

namespace internal {

template <typename Scalar>
MatrixX<Scalar> NormalizedRows(const MatrixX<Scalar>& m, Index* zero_rows) {
  MatrixX<Scalar> out = m;
  for (Index i = 0; i < out.rows(); ++i) {
    const Scalar norm = out.row(i).norm();
    if (norm > Scalar(0)) {
      out.row(i) /= norm;
    } else {
      out.row(i).setZero();
      ++*zero_rows;
    }
  }
  return out;
}

}  // namespace internal

// Entry (i, j) = (1 + cos(g_i, g_j)) / 2. A zero-norm embedding has
// similarity 0.5 to every other point. Entries whose row and column name
// the same point are exactly 1, and a kernel over identical id lists is
// exactly symmetric.
template <typename Scalar>
SimilarityKernel<Scalar> CosineKernel(const GradientEmbeddingSet<Scalar>& rows,
                                      const GradientEmbeddingSet<Scalar>& cols) {
  if (rows.vectors.cols() != cols.vectors.cols()) {
    throw std::invalid_argument("embedding dimensions differ: " +
                                std::to_string(rows.vectors.cols()) + " vs " +
                                std::to_string(cols.vectors.cols()));
  }
  SimilarityKernel<Scalar> k;
  k.row_ids = rows.ids;
  k.col_ids = cols.ids;
  const bool same = rows.ids == cols.ids &&
                    rows.vectors.rows() == cols.vectors.rows() &&
                    rows.vectors == cols.vectors;

  Index zero_rows = 0;
  const MatrixX<Scalar> a = internal::NormalizedRows(rows.vectors, &zero_rows);
  if (same) {
    k.values = MatrixX<Scalar>::Zero(a.rows(), a.rows());
    k.values.template selfadjointView<Eigen::Lower>().rankUpdate(a);
    k.values.template triangularView<Eigen::StrictlyUpper>() =
        k.values.transpose();
  } else {
    Index zero_cols = 0;
    const MatrixX<Scalar> b = internal::NormalizedRows(cols.vectors, &zero_cols);
    zero_rows += zero_cols;
    k.values.noalias() = a * b.transpose();
  }
  k.zero_norm_rows = zero_rows;
  k.values = ((k.values.array() + Scalar(1)) * Scalar(0.5))
                 .cwiseMax(Scalar(0))
                 .cwiseMin(Scalar(1));

  if (same) {
    k.values.diagonal().setOnes();
  } else {
    for (Index i = 0; i < k.rows(); ++i) {
      for (Index j = 0; j < k.cols(); ++j) {
        if (k.row_ids[size_t(i)] == k.col_ids[size_t(j)]) k.values(i, j) = 1;
      }
    }
  }
  return k;
}

// Kernels for one selection round: labeled points (true-label embeddings)
// against unlabeled points (hypothesized-label embeddings), and optionally
// the unlabeled x unlabeled kernel.
struct RoundKernels {
  SimilarityKernel<double> query;                          // |L| x |U|
  std::shared_ptr<const SimilarityKernel<double>> ground;  // |U| x |U|
  Index ground_kernels_built = 0;
  std::vector<std::string> warnings;
};

RoundKernels BuildRoundKernels(const PoolView& pool,
                               const ModelParams<double>& model,
                               bool need_ground_kernel);

// Raw dump: uint64 rows, uint64 cols, then rows*cols float64 in row-major
// order, all in host byte order.
void WriteKernelBinary(const std::string& path,
                       const SimilarityKernel<double>& kernel);
Matrix ReadKernelBinary(const std::string& path);

}  // namespace basil

#endif  // BASIL_KERNELS_HPP_
