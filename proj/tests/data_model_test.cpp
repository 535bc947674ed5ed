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
#include <filesystem>
#include <fstream>
#include <memory>
#include <set>
#include <string>

#include "basil/data_model.hpp"

namespace basil {
namespace {

class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             ("basil_data_test_" + std::to_string(counter++) + ".csv"))
                .string();
    std::ofstream(path_) << contents;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::string ErrorOf(const std::string& contents, const std::string& column) {
  TempFile f(contents);
  try {
    LoadCsv(f.path(), column);
  } catch (const DataError& e) {
    return e.what();
  }
  return "";
}

TEST_CASE("pathlike pool has the requested histogram") {
  const ImbalanceSpec spec = PathlikeSpec();
  CHECK(spec.num_classes() == 9);
  const Dataset d = GenerateSynthetic(spec, 16, 1.0, 0);
  CHECK(d.size() == 4 * 25 + 5 * 500);
  CHECK(d.dims() == 16);
  const auto hist = d.ClassHistogram();
  for (int c = 0; c < 9; ++c) {
    CHECK(hist[size_t(c)] == (spec.IsRare(c) ? 25 : 500));
  }
}

TEST_CASE("minimal two-point pool") {
  const ImbalanceSpec spec{{0}, {1}, 1, 2};
  const Dataset d = GenerateSynthetic(spec, 2, 1.0, 4);
  CHECK(d.ClassHistogram() == std::vector<Index>{1, 2});
  CHECK_THROWS_AS(GenerateSynthetic(ImbalanceSpec{{0}, {1}, 0, 2}, 2, 1.0, 4),
                  ConfigError);
  CHECK_THROWS_AS(GenerateSynthetic(ImbalanceSpec{{0}, {}, 1, 2}, 2, 1.0, 4),
                  ConfigError);
  CHECK_THROWS_AS(GenerateSynthetic(spec, 1, 1.0, 4), ConfigError);
  CHECK_THROWS_AS(GenerateSynthetic(spec, 2, 0.0, 4), ConfigError);
}

TEST_CASE("generation is deterministic in the seed") {
  const ImbalanceSpec spec = OrganlikeSpec();
  const Dataset a = GenerateSynthetic(spec, 8, 1.0, 42);
  const Dataset b = GenerateSynthetic(spec, 8, 1.0, 42);
  const Dataset c = GenerateSynthetic(spec, 8, 1.0, 43);
  CHECK(a.features == b.features);
  CHECK(a.labels == b.labels);
  CHECK(a.features != c.features);
}

TEST_CASE("class clusters are separable by their means") {
  const SyntheticGenerator gen(9, 16, 1.0, kDefaultSeparation, 1);
  const std::vector<Index> counts(9, 50);
  const Dataset d = gen.Sample(counts, 2);
  Index correct = 0;
  for (Index i = 0; i < d.size(); ++i) {
    Index best = 0;
    (gen.means().rowwise() - d.features.row(i)).rowwise().squaredNorm()
        .minCoeff(&best);
    correct += best == d.labels[size_t(i)];
  }
  CHECK(double(correct) / double(d.size()) > 0.95);
}

TEST_CASE("csv parse") {
  TempFile f("a,b,label\n0.5,1,0\n-2,3e1,1\n4,5,0\n");
  const LoadedDataset ld = LoadCsv(f.path(), "label");
  CHECK(ld.dataset.size() == 3);
  CHECK(ld.dataset.dims() == 2);
  CHECK(ld.dataset.num_classes == 2);
  CHECK(ld.dataset.features(1, 1) == 30.0);
  CHECK(ld.dataset.labels == std::vector<int>{0, 1, 0});
  CHECK(ld.warnings.empty());

  TempFile mid("label,x\n1,0.25\n0,0.5\n");
  CHECK(LoadCsv(mid.path(), "label").dataset.features(0, 0) == 0.25);
}

TEST_CASE("csv errors name the row and column") {
  const std::string bad_label = ErrorOf("a,label\n1,0\n2,x\n", "label");
  CHECK(bad_label.find("row 2") != std::string::npos);
  CHECK(bad_label.find("'label'") != std::string::npos);

  const std::string bad_cell = ErrorOf("a,b,label\n1,2,0\n3,4,1\nq,6,0\n", "label");
  CHECK(bad_cell.find("row 3") != std::string::npos);
  CHECK(bad_cell.find("'a'") != std::string::npos);

  const std::string missing = ErrorOf("a,b,y\n1,2,0\n", "label");
  CHECK(missing.find("missing label column") != std::string::npos);

  const std::string empty = ErrorOf("", "label");
  CHECK(empty.find("empty") != std::string::npos);

  CHECK(ErrorOf("a,label\n", "label").find("no data rows") != std::string::npos);
  CHECK(ErrorOf("a,label\n1,0,3\n", "label").find("row 1") != std::string::npos);
  CHECK_THROWS_AS(LoadCsv("/nonexistent/basil.csv", "label"), DataError);
}

TEST_CASE("csv with a missing class warns") {
  TempFile f("x,label\n1,0\n2,2\n");
  const LoadedDataset ld = LoadCsv(f.path(), "label");
  CHECK(ld.dataset.num_classes == 3);
  REQUIRE(ld.warnings.size() == 1);
  CHECK(ld.warnings[0].find("class 1") != std::string::npos);
}

TEST_CASE("csv round trip") {
  const Dataset d = GenerateSynthetic(ImbalanceSpec{{1}, {0, 2}, 3, 6}, 3, 1.0, 8);
  TempFile f("");
  WriteCsv(f.path(), d);
  const Dataset back = LoadCsv(f.path(), "label").dataset;
  CHECK(back.features == d.features);
  CHECK(back.labels == d.labels);
}

PoolState SmallPool() {
  auto data = std::make_shared<const Dataset>(
      GenerateSynthetic(ImbalanceSpec{{0}, {1}, 20, 80}, 2, 1.0, 1));
  return MakePool(data, {0, 1}, {2, 3, 4, 5});
}

TEST_CASE("pool partition") {
  PoolState p = SmallPool();
  CHECK(p.unlabeled.size() == 94);
  CHECK(p.labeled.empty());
  p.CheckPartition();
  PoolState broken = p;
  broken.labeled.push_back(p.test[0]);
  CHECK_THROWS_AS(broken.CheckPartition(), std::logic_error);
}

TEST_CASE("seed round moves a random batch") {
  const PoolState p = SmallPool();
  const PoolState a = SeedRound(p, 10, 7);
  CHECK(a.labeled.size() == 10);
  CHECK(a.unlabeled.size() == 84);
  a.CheckPartition();
  CHECK(SeedRound(p, 10, 7).labeled == a.labeled);
  CHECK(SeedRound(p, 10, 8).labeled != a.labeled);
  const PoolState all = SeedRound(p, 94, 1);
  CHECK(all.unlabeled.empty());
  CHECK_THROWS(SeedRound(p, 95, 1));
}

TEST_CASE("label batch") {
  const PoolState p = SmallPool();
  const IndexList batch = {p.unlabeled[3], p.unlabeled[0]};
  const PoolState q = LabelBatch(p, batch);
  CHECK(q.labeled == batch);
  CHECK(q.unlabeled.size() == p.unlabeled.size() - 2);
  q.CheckPartition();
  const IndexList dup = {p.unlabeled[1], p.unlabeled[1]};
  CHECK_THROWS(LabelBatch(p, dup));
  const IndexList outside = {p.test[0]};
  CHECK_THROWS(LabelBatch(p, outside));
}

TEST_CASE("pool view exposes labeled labels only") {
  const PoolState p = SeedRound(SmallPool(), 5, 2);
  const PoolView view(p);
  REQUIRE(view.labeled_labels().size() == 5);
  for (Index k = 0; k < 5; ++k) {
    CHECK(view.labeled_label(k) == p.dataset->labels[size_t(p.labeled[size_t(k)])]);
  }
  CHECK(view.unlabeled() == p.unlabeled);
}

TEST_CASE("synthetic pool keeps held-out splits apart") {
  const PoolState p = MakeSyntheticPool(PathlikeSpec(), 16, 1.0,
                                        kDefaultSeparation, 2, 20, 0);
  CHECK(p.unlabeled.size() == 2600);
  CHECK(p.validation.size() == 18);
  CHECK(p.test.size() == 180);
  p.CheckPartition();
  std::vector<Index> test_hist(9, 0);
  for (Index i : p.test) ++test_hist[size_t(p.dataset->labels[size_t(i)])];
  CHECK(std::all_of(test_hist.begin(), test_hist.end(),
                    [](Index n) { return n == 20; }));
}

}  // namespace
}  // namespace basil
