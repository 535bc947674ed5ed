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
#include "basil/kernels.hpp"

#include <cstdint>
#include <fstream>

namespace basil {

RoundKernels BuildRoundKernels(const PoolView& pool,
                               const ModelParams<double>& model,
                               bool need_ground_kernel) {
  const std::vector<int> labels = pool.labeled_labels();
  const auto labeled =
      GradientEmbeddings(model, pool.features(), pool.labeled(), labels,
                         EmbeddingSource::kTrueLabel);
  const auto unlabeled =
      GradientEmbeddings(model, pool.features(), pool.unlabeled(), {},
                         EmbeddingSource::kHypothesizedLabel);

  RoundKernels out;
  out.query = CosineKernel(labeled, unlabeled);
  if (out.query.zero_norm_rows > 0) {
    out.warnings.push_back(std::to_string(out.query.zero_norm_rows) +
                           " zero-norm gradient embeddings; cosine taken as 0");
  }
  if (need_ground_kernel) {
    out.ground = std::make_shared<const SimilarityKernel<double>>(
        CosineKernel(unlabeled, unlabeled));
    ++out.ground_kernels_built;
  }
  return out;
}

void WriteKernelBinary(const std::string& path,
                       const SimilarityKernel<double>& kernel) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  const std::uint64_t dims[2] = {static_cast<std::uint64_t>(kernel.rows()),
                                 static_cast<std::uint64_t>(kernel.cols())};
  out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
      row_major = kernel.values;
  out.write(reinterpret_cast<const char*>(row_major.data()),
            static_cast<std::streamsize>(row_major.size() * sizeof(double)));
  if (!out) throw DataError("write to '" + path + "' failed");
}

Matrix ReadKernelBinary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::uint64_t dims[2];
  if (!in.read(reinterpret_cast<char*>(dims), sizeof(dims))) {
    throw DataError("'" + path + "': truncated header");
  }
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> m(
      static_cast<Index>(dims[0]), static_cast<Index>(dims[1]));
  if (!in.read(reinterpret_cast<char*>(m.data()),
               static_cast<std::streamsize>(m.size() * sizeof(double)))) {
    throw DataError("'" + path + "': truncated payload");
  }
  return m;
}

}  // namespace basil
