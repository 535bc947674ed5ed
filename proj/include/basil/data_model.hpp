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
#ifndef BASIL_DATA_MODEL_HPP_
#define BASIL_DATA_MODEL_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "basil/types.hpp"

namespace basil {

// Feature matrix (one row per point) with an integer class id per row.
struct Dataset {
  Matrix features;
  std::vector<int> labels;
  int num_classes = 0;

  Index size() const { return features.rows(); }
  Index dims() const { return features.cols(); }

  // Throws DataError if labels are out of range, sizes disagree, or any
  // feature is non-finite.
  void Validate() const;
  std::vector<Index> ClassHistogram() const;
};

// Which classes are rare and how many points each class gets.
struct ImbalanceSpec {
  std::vector<int> rare_classes;
  std::vector<int> frequent_classes;
  Index rare_count = 0;
  Index frequent_count = 0;

  int num_classes() const {
    return static_cast<int>(rare_classes.size() + frequent_classes.size());
  }
  bool IsRare(int c) const;
  Index CountFor(int c) const { return IsRare(c) ? rare_count : frequent_count; }
  // Throws ConfigError unless rare and frequent partition [0, C) with C >= 2
  // and 1 <= rare_count < frequent_count.
  void Validate() const;
};

// Default desk-scale profile: 9 classes, {2,3,5,7} rare with 25 points,
// the other five with 500 points.
ImbalanceSpec PathlikeSpec();
// 11 classes, {0,1,2,3} rare with 15 points, the other seven with 300.
ImbalanceSpec OrganlikeSpec();

// Class-conditional isotropic Gaussians. Means sit at separation * (rotated
// standard basis vector); for C > d the negated basis vectors are used next.
class SyntheticGenerator {
 public:
  SyntheticGenerator(int num_classes, Index dims, double spread,
                     double separation, std::uint64_t seed);

  // counts[c] points of class c, rows shuffled, deterministic in seed.
  Dataset Sample(std::span<const Index> counts, std::uint64_t seed) const;

  const Matrix& means() const { return means_; }

 private:
  Matrix means_;  // C x d
  double spread_;
};

inline constexpr double kDefaultSeparation = 4.0;

// Pool drawn for the class counts of spec. Two calls with the same arguments
// return bit-identical data.
Dataset GenerateSynthetic(const ImbalanceSpec& spec, Index dims,
                          double cluster_spread, std::uint64_t seed,
                          double separation = kDefaultSeparation);

struct LoadedDataset {
  Dataset dataset;
  std::vector<std::string> warnings;
};

// Header row required. Every column except label_column is a feature, kept
// in file order. C = max label + 1; unpopulated classes produce warnings.
LoadedDataset LoadCsv(const std::string& path, const std::string& label_column);
void WriteCsv(const std::string& path, const Dataset& dataset,
              const std::string& label_column = "label");

// Labeled / unlabeled / validation / test partition over one dataset.
struct PoolState {
  std::shared_ptr<const Dataset> dataset;
  IndexList labeled;
  IndexList unlabeled;
  IndexList validation;
  IndexList test;

  // Throws std::logic_error if any two index sets intersect or an index is
  // out of range.
  void CheckPartition() const;
};

// Every row starts unlabeled except the given validation and test rows.
PoolState MakePool(std::shared_ptr<const Dataset> dataset,
                   IndexList validation, IndexList test);

// Synthetic pool plus balanced validation and test draws from the same
// class means. Rows [0, pool) are the unlabeled pool.
PoolState MakeSyntheticPool(const ImbalanceSpec& spec, Index dims,
                            double cluster_spread, double separation,
                            Index val_per_class, Index test_per_class,
                            std::uint64_t seed);

// Moves a uniform random batch from unlabeled to labeled.
PoolState SeedRound(const PoolState& pool, Index batch, std::uint64_t seed);

// Labeling oracle: moves batch (all ids in unlabeled) into labeled.
PoolState LabelBatch(const PoolState& pool, std::span<const Index> batch);

// Read access to a pool that hides the labels of unlabeled rows. All
// acquisition code works through this view.
class PoolView {
 public:
  explicit PoolView(const PoolState& pool) : pool_(&pool) {}

  const Matrix& features() const { return pool_->dataset->features; }
  int num_classes() const { return pool_->dataset->num_classes; }
  Index dims() const { return pool_->dataset->dims(); }
  const IndexList& labeled() const { return pool_->labeled; }
  const IndexList& unlabeled() const { return pool_->unlabeled; }

  // Label of the k-th labeled row.
  int labeled_label(Index k) const {
    return pool_->dataset->labels[static_cast<size_t>(pool_->labeled[k])];
  }
  std::vector<int> labeled_labels() const;

 private:
  const PoolState* pool_;
};

}  // namespace basil

#endif  // BASIL_DATA_MODEL_HPP_
