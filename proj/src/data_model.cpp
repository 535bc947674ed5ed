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
#include "basil/data_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "basil/rng.hpp"

namespace basil {

void Dataset::Validate() const {
  if (num_classes < 1) throw DataError("dataset has no classes");
  if (static_cast<Index>(labels.size()) != features.rows()) {
    throw DataError("label count does not match feature rows");
  }
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= num_classes) {
      throw DataError("row " + std::to_string(i) + ": label " +
                      std::to_string(labels[i]) + " outside [0, " +
                      std::to_string(num_classes) + ")");
    }
  }
  if (!features.allFinite()) throw DataError("non-finite feature value");
}

std::vector<Index> Dataset::ClassHistogram() const {
  std::vector<Index> hist(static_cast<size_t>(num_classes), 0);
  for (int y : labels) ++hist[static_cast<size_t>(y)];
  return hist;
}

bool ImbalanceSpec::IsRare(int c) const {
  return std::find(rare_classes.begin(), rare_classes.end(), c) !=
         rare_classes.end();
}

void ImbalanceSpec::Validate() const {
  const int c = num_classes();
  if (c < 2) throw ConfigError("need at least 2 classes");
  if (rare_count < 1 || frequent_count < 1) {
    throw ConfigError("class counts must be >= 1");
  }
  if (rare_count >= frequent_count) {
    throw ConfigError("rare_count must be smaller than frequent_count");
  }
  std::vector<int> seen(static_cast<size_t>(c), 0);
  for (const auto* set : {&rare_classes, &frequent_classes}) {
    for (int k : *set) {
      if (k < 0 || k >= c) {
        throw ConfigError("class id " + std::to_string(k) + " outside [0, " +
                          std::to_string(c) + ")");
      }
      if (seen[static_cast<size_t>(k)]++) {
        throw ConfigError("class id " + std::to_string(k) + " listed twice");
      }
    }
  }
}

ImbalanceSpec PathlikeSpec() {
  return {{2, 3, 5, 7}, {0, 1, 4, 6, 8}, 25, 500};
}

ImbalanceSpec OrganlikeSpec() {
  return {{0, 1, 2, 3}, {4, 5, 6, 7, 8, 9, 10}, 15, 300};
}

SyntheticGenerator::SyntheticGenerator(int num_classes, Index dims,
                                       double spread, double separation,
                                       std::uint64_t seed)
    : spread_(spread) {
  if (num_classes < 2) throw ConfigError("need at least 2 classes");
  if (dims < 2) throw ConfigError("need at least 2 feature dimensions");
  if (!(spread > 0.0)) throw ConfigError("cluster spread must be positive");
  if (!(separation > 0.0)) throw ConfigError("separation must be positive");

  Rng rng(Mix64(seed));
  Matrix gaussian(dims, dims);
  for (Index j = 0; j < dims; ++j) {
    for (Index i = 0; i < dims; ++i) gaussian(i, j) = StandardNormal(rng);
  }
  const Eigen::HouseholderQR<Matrix> qr(gaussian);
  const Matrix rotation = qr.householderQ();

  means_.resize(num_classes, dims);
  for (int c = 0; c < num_classes; ++c) {
    if (c < 2 * dims) {
      const double sign = c < dims ? 1.0 : -1.0;
      means_.row(c) = sign * separation * rotation.col(c % dims).transpose();
    } else {
      Vector direction(dims);
      for (Index i = 0; i < dims; ++i) direction(i) = StandardNormal(rng);
      means_.row(c) = separation * direction.normalized().transpose();
    }
  }
}

Dataset SyntheticGenerator::Sample(std::span<const Index> counts,
                                   std::uint64_t seed) const {
  if (static_cast<Index>(counts.size()) != means_.rows()) {
    throw ConfigError("one count per class required");
  }
  const Index total = std::accumulate(counts.begin(), counts.end(), Index{0});
  std::vector<int> order;
  order.reserve(static_cast<size_t>(total));
  for (size_t c = 0; c < counts.size(); ++c) {
    order.insert(order.end(), static_cast<size_t>(counts[c]),
                 static_cast<int>(c));
  }
  Rng rng(Mix64(seed ^ 0x5bd1e995ULL));
  for (size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[UniformBelow(rng, i)]);
  }

  Dataset out;
  out.num_classes = static_cast<int>(means_.rows());
  out.labels = order;
  out.features.resize(total, means_.cols());
  for (Index i = 0; i < total; ++i) {
    const int c = order[static_cast<size_t>(i)];
    for (Index j = 0; j < means_.cols(); ++j) {
      out.features(i, j) = means_(c, j) + spread_ * StandardNormal(rng);
    }
  }
  return out;
}

namespace {

std::vector<Index> SpecCounts(const ImbalanceSpec& spec) {
  std::vector<Index> counts(static_cast<size_t>(spec.num_classes()));
  for (int c = 0; c < spec.num_classes(); ++c) {
    counts[static_cast<size_t>(c)] = spec.CountFor(c);
  }
  return counts;
}

}  // namespace

Dataset GenerateSynthetic(const ImbalanceSpec& spec, Index dims,
                          double cluster_spread, std::uint64_t seed,
                          double separation) {
  spec.Validate();
  const SyntheticGenerator gen(spec.num_classes(), dims, cluster_spread,
                               separation, seed);
  return gen.Sample(SpecCounts(spec), DeriveSeed(seed, 0, "pool"));
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string Trim(std::string s) {
  const auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

template <typename T>
bool ParseNumber(const std::string& text, T& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && first != last;
}

std::string Where(size_t data_row, const std::string& column) {
  return "row " + std::to_string(data_row) + " (line " +
         std::to_string(data_row + 1) + "), column '" + column + "'";
}

}  // namespace

LoadedDataset LoadCsv(const std::string& path,
                      const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line) || Trim(line).empty()) {
    throw DataError("'" + path + "' is empty");
  }
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    line.erase(0, 3);
  }
  std::vector<std::string> header = SplitCsvLine(line);
  for (auto& h : header) h = Trim(h);
  const auto label_it = std::find(header.begin(), header.end(), label_column);
  if (label_it == header.end()) {
    throw DataError("'" + path + "': missing label column '" + label_column +
                    "'");
  }
  const size_t label_pos = static_cast<size_t>(label_it - header.begin());
  const size_t num_features = header.size() - 1;

  std::vector<double> values;
  std::vector<int> labels;
  size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    ++row;
    const std::vector<std::string> cells = SplitCsvLine(line);
    if (cells.size() != header.size()) {
      throw DataError("'" + path + "': row " + std::to_string(row) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(header.size()));
    }
    for (size_t j = 0; j < cells.size(); ++j) {
      const std::string cell = Trim(cells[j]);
      if (j == label_pos) {
        int y = 0;
        if (!ParseNumber(cell, y)) {
          throw DataError("'" + path + "': " + Where(row, header[j]) +
                          ": label '" + cell + "' is not an integer");
        }
        if (y < 0) {
          throw DataError("'" + path + "': " + Where(row, header[j]) +
                          ": negative label");
        }
        labels.push_back(y);
      } else {
        double v = 0.0;
        if (!ParseNumber(cell, v) || !std::isfinite(v)) {
          throw DataError("'" + path + "': " + Where(row, header[j]) +
                          ": '" + cell + "' is not a finite number");
        }
        values.push_back(v);
      }
    }
  }
  if (row == 0) throw DataError("'" + path + "' has no data rows");

  LoadedDataset out;
  Dataset& ds = out.dataset;
  ds.features = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic,
                                               Eigen::Dynamic, Eigen::RowMajor>>(
      values.data(), static_cast<Index>(row), static_cast<Index>(num_features));
  ds.labels = std::move(labels);
  ds.num_classes = *std::max_element(ds.labels.begin(), ds.labels.end()) + 1;
  const std::vector<Index> hist = ds.ClassHistogram();
  for (size_t c = 0; c < hist.size(); ++c) {
    if (hist[c] == 0) {
      out.warnings.push_back("class " + std::to_string(c) +
                             " has no rows in '" + path + "'");
    }
  }
  return out;
}

void WriteCsv(const std::string& path, const Dataset& dataset,
              const std::string& label_column) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  for (Index j = 0; j < dataset.dims(); ++j) out << 'x' << j << ',';
  out << label_column << '\n';
  char buf[32];
  for (Index i = 0; i < dataset.size(); ++i) {
    for (Index j = 0; j < dataset.dims(); ++j) {
      const auto res =
          std::to_chars(buf, buf + sizeof(buf), dataset.features(i, j));
      out.write(buf, res.ptr - buf);
      out << ',';
    }
    out << dataset.labels[static_cast<size_t>(i)] << '\n';
  }
  if (!out) throw DataError("write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------
// Pool state

void PoolState::CheckPartition() const {
  const Index n = dataset ? dataset->size() : 0;
  std::vector<char> owner(static_cast<size_t>(n), 0);
  const IndexList* sets[] = {&labeled, &unlabeled, &validation, &test};
  for (const IndexList* set : sets) {
    for (Index i : *set) {
      if (i < 0 || i >= n) {
        throw std::logic_error("pool index " + std::to_string(i) +
                               " out of range");
      }
      if (owner[static_cast<size_t>(i)]++) {
        throw std::logic_error("pool index " + std::to_string(i) +
                               " appears in more than one split");
      }
    }
  }
}

PoolState MakePool(std::shared_ptr<const Dataset> dataset, IndexList validation,
                   IndexList test) {
  PoolState pool;
  std::vector<char> held(static_cast<size_t>(dataset->size()), 0);
  for (Index i : validation) held.at(static_cast<size_t>(i)) = 1;
  for (Index i : test) held.at(static_cast<size_t>(i)) = 1;
  for (Index i = 0; i < dataset->size(); ++i) {
    if (!held[static_cast<size_t>(i)]) pool.unlabeled.push_back(i);
  }
  pool.dataset = std::move(dataset);
  pool.validation = std::move(validation);
  pool.test = std::move(test);
  pool.CheckPartition();
  return pool;
}

PoolState MakeSyntheticPool(const ImbalanceSpec& spec, Index dims,
                            double cluster_spread, double separation,
                            Index val_per_class, Index test_per_class,
                            std::uint64_t seed) {
  spec.Validate();
  if (val_per_class < 0 || test_per_class < 0) {
    throw ConfigError("split sizes must be non-negative");
  }
  const SyntheticGenerator gen(spec.num_classes(), dims, cluster_spread,
                               separation, seed);
  const Dataset pool = gen.Sample(SpecCounts(spec), DeriveSeed(seed, 0, "pool"));
  const std::vector<Index> val_counts(static_cast<size_t>(spec.num_classes()),
                                      val_per_class);
  const std::vector<Index> test_counts(static_cast<size_t>(spec.num_classes()),
                                       test_per_class);
  const Dataset val = gen.Sample(val_counts, DeriveSeed(seed, 0, "validation"));
  const Dataset test = gen.Sample(test_counts, DeriveSeed(seed, 0, "test"));

  auto all = std::make_shared<Dataset>();
  all->num_classes = spec.num_classes();
  all->features.resize(pool.size() + val.size() + test.size(), dims);
  all->features << pool.features, val.features, test.features;
  all->labels = pool.labels;
  all->labels.insert(all->labels.end(), val.labels.begin(), val.labels.end());
  all->labels.insert(all->labels.end(), test.labels.begin(), test.labels.end());

  IndexList val_idx(static_cast<size_t>(val.size()));
  std::iota(val_idx.begin(), val_idx.end(), pool.size());
  IndexList test_idx(static_cast<size_t>(test.size()));
  std::iota(test_idx.begin(), test_idx.end(), pool.size() + val.size());
  return MakePool(std::move(all), std::move(val_idx), std::move(test_idx));
}

PoolState SeedRound(const PoolState& pool, Index batch, std::uint64_t seed) {
  const Index available = static_cast<Index>(pool.unlabeled.size());
  if (batch < 0 || batch > available) {
    throw std::invalid_argument("seed batch " + std::to_string(batch) +
                                " exceeds unlabeled pool of " +
                                std::to_string(available));
  }
  IndexList shuffled = pool.unlabeled;
  Rng rng(Mix64(seed));
  for (Index i = 0; i < batch; ++i) {
    const Index j =
        i + static_cast<Index>(UniformBelow(rng, static_cast<std::uint64_t>(
                                                     available - i)));
    std::swap(shuffled[static_cast<size_t>(i)], shuffled[static_cast<size_t>(j)]);
  }
  return LabelBatch(pool, std::span<const Index>(shuffled.data(),
                                                 static_cast<size_t>(batch)));
}

PoolState LabelBatch(const PoolState& pool, std::span<const Index> batch) {
  std::unordered_set<Index> moving(batch.begin(), batch.end());
  if (moving.size() != batch.size()) {
    throw std::invalid_argument("batch contains duplicate ids");
  }
  PoolState next = pool;
  next.unlabeled.clear();
  for (Index i : pool.unlabeled) {
    if (!moving.erase(i)) next.unlabeled.push_back(i);
  }
  if (!moving.empty()) {
    throw std::invalid_argument("batch id " + std::to_string(*moving.begin()) +
                                " is not in the unlabeled set");
  }
  next.labeled.insert(next.labeled.end(), batch.begin(), batch.end());
  return next;
}

std::vector<int> PoolView::labeled_labels() const {
  std::vector<int> out;
  out.reserve(pool_->labeled.size());
  for (Index i : pool_->labeled) {
    out.push_back(pool_->dataset->labels[static_cast<size_t>(i)]);
  }
  return out;
}

}  // namespace basil
