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
#include "basil/harness.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numeric>

#include "basil/kernels.hpp"
#include "basil/rng.hpp"
#include "basil/ssl.hpp"
#include "basil/strategies.hpp"
#include "basil/surrogate.hpp"

namespace basil {

namespace {

class Stopwatch {
 public:
  double Lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

MetricSpec ComplementSpec(const std::vector<int>& rare, int num_classes) {
  MetricSpec spec;
  spec.rare_classes = rare;
  for (int c = 0; c < num_classes; ++c) {
    if (std::find(rare.begin(), rare.end(), c) == rare.end()) {
      spec.frequent_classes.push_back(c);
    }
  }
  return spec;
}

ExperimentData PrepareCsvData(const ExperimentConfig& cfg) {
  ExperimentData out;
  LoadedDataset train = LoadCsv(cfg.data.csv_path, cfg.data.label_column);
  out.warnings = train.warnings;
  auto all = std::make_shared<Dataset>(std::move(train.dataset));
  IndexList test;
  if (!cfg.data.test_csv_path.empty()) {
    const LoadedDataset held =
        LoadCsv(cfg.data.test_csv_path, cfg.data.label_column);
    if (held.dataset.dims() != all->dims()) {
      throw DataError("test CSV has " + std::to_string(held.dataset.dims()) +
                      " features, training CSV has " +
                      std::to_string(all->dims()));
    }
    const Index n = all->size();
    Matrix features(n + held.dataset.size(), all->dims());
    features << all->features, held.dataset.features;
    all->features = std::move(features);
    all->labels.insert(all->labels.end(), held.dataset.labels.begin(),
                       held.dataset.labels.end());
    all->num_classes = std::max(all->num_classes, held.dataset.num_classes);
    test.resize(static_cast<size_t>(held.dataset.size()));
    std::iota(test.begin(), test.end(), n);
  } else {
    // Per-class holdout so every populated class reaches the test split.
    std::vector<IndexList> by_class(static_cast<size_t>(all->num_classes));
    for (Index i = 0; i < all->size(); ++i) {
      by_class[size_t(all->labels[size_t(i)])].push_back(i);
    }
    Rng rng(Mix64(DeriveSeed(cfg.seed, 0, "test-split")));
    for (IndexList& rows : by_class) {
      for (size_t k = rows.size(); k > 1; --k) {
        std::swap(rows[k - 1], rows[UniformBelow(rng, k)]);
      }
      const auto take = static_cast<size_t>(
          std::floor(cfg.data.test_fraction * static_cast<double>(rows.size())));
      test.insert(test.end(), rows.begin(),
                  rows.begin() + static_cast<std::ptrdiff_t>(take));
    }
    std::sort(test.begin(), test.end());
  }
  all->Validate();
  if (test.empty()) throw DataError("test split is empty");
  out.pool = MakePool(all, {}, std::move(test));
  if (!cfg.metric_rare_classes.empty()) {
    out.metric = ComplementSpec(cfg.metric_rare_classes, all->num_classes);
    out.metric.Validate(all->num_classes);
    out.has_metric = true;
  }
  return out;
}

}  // namespace

ExperimentData PrepareData(const ExperimentConfig& cfg) {
  if (cfg.data.source == "csv") return PrepareCsvData(cfg);
  ExperimentData out;
  out.pool = MakeSyntheticPool(cfg.data.imbalance, cfg.data.dims,
                               cfg.data.spread, cfg.data.separation,
                               cfg.data.val_per_class, cfg.data.test_per_class,
                               DeriveSeed(cfg.seed, 0, "data"));
  const int c = cfg.data.imbalance.num_classes();
  out.metric = cfg.metric_rare_classes.empty()
                   ? MetricSpec::FromImbalance(cfg.data.imbalance)
                   : ComplementSpec(cfg.metric_rare_classes, c);
  out.metric.Validate(c);
  out.has_metric = true;
  return out;
}

ExperimentReport RunExperiment(const ExperimentConfig& cfg) {
  cfg.Validate();
  ExperimentReport report;
  report.config = ConfigToKeyValues(cfg);

  ExperimentData data;
  try {
    data = PrepareData(cfg);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw RunError(0, e.what());
  }
  PoolState pool = std::move(data.pool);
  const Dataset& dataset = *pool.dataset;
  const int num_classes = dataset.num_classes;
  const std::optional<SmiKind> smi = SmiKindOf(cfg.strategy);
  const Index per_round = cfg.per_round_batch();
  const Index remainder = cfg.total_budget % cfg.rounds;

  if (cfg.dump_kernels) std::filesystem::create_directories(cfg.output_dir);

  const auto labeled_labels = [&] {
    std::vector<int> y;
    for (Index i : pool.labeled) y.push_back(dataset.labels[size_t(i)]);
    return y;
  };

  ModelParams<double> model;
  for (int round = 1; round <= cfg.rounds; ++round) {
    RoundRecord rec;
    rec.round = round;
    Stopwatch clock;
    try {
      Index batch = per_round + (round == cfg.rounds ? remainder : 0);
      batch = std::min(batch, static_cast<Index>(pool.unlabeled.size()));
      rec.batch_size = batch;
      const std::uint64_t select_seed =
          DeriveSeed(cfg.seed, static_cast<std::uint64_t>(round), "select");
      IndexList chosen;
      if (round == 1) {
        rec.strategy = "seed";
        pool = SeedRound(pool, batch, select_seed);
      } else if (batch == 0) {
        rec.strategy = std::string(StrategyName(cfg.strategy));
        rec.warnings.push_back("unlabeled pool exhausted");
      } else {
        rec.strategy = std::string(StrategyName(cfg.strategy));
        const PoolView view(pool);
        if (smi) {
          rec.smi = std::string(SmiKindName(*smi));
          const GreedyVariant variant = cfg.ResolvedVariant(*smi);
          rec.greedy_variant = std::string(GreedyVariantName(variant));
          const RoundKernels kernels =
              BuildRoundKernels(view, model, *smi == SmiKind::kFlvmi);
          rec.ground_kernels_built = kernels.ground_kernels_built;
          rec.warnings = kernels.warnings;
          rec.seconds["kernel"] = clock.Lap();
          if (cfg.dump_kernels) {
            const std::string stem = cfg.output_dir + "/round" +
                                     std::to_string(round);
            WriteKernelBinary(stem + "_query.bin", kernels.query);
            if (kernels.ground) {
              WriteKernelBinary(stem + "_ground.bin", *kernels.ground);
            }
          }
          GreedyConfig greedy;
          greedy.variant = variant;
          greedy.epsilon = cfg.greedy_epsilon;
          greedy.seed =
              DeriveSeed(cfg.seed, static_cast<std::uint64_t>(round), "greedy");
          BasilSelection sel = BasilSelect(
              view, kernels, *smi, RoundPlan::EqualSplit(batch, num_classes),
              greedy, cfg.empty_class_policy);
          chosen = std::move(sel.batch);
          rec.quotas = sel.quotas;
          for (const IndexList& ids : sel.per_class) {
            rec.selected_per_class.push_back(static_cast<Index>(ids.size()));
          }
          rec.warnings.insert(rec.warnings.end(), sel.warnings.begin(),
                              sel.warnings.end());
        } else if (cfg.strategy == Strategy::kRandom) {
          chosen = RandomSelect(view, batch, select_seed);
        } else if (cfg.strategy == Strategy::kEntropy) {
          chosen = EntropySelect(view, model, batch);
        } else {
          chosen = BadgeSelect(view, model, batch, select_seed);
        }
        rec.seconds["select"] = clock.Lap();
        pool = LabelBatch(pool, chosen);
      }
      pool.CheckPartition();

      model = TrainSurrogate(PoolView(pool), cfg.surrogate);
      rec.seconds["train"] = clock.Lap();
      const std::vector<int> y = labeled_labels();
      rec.labeled_size = static_cast<Index>(y.size());
      rec.per_class_counts.assign(static_cast<size_t>(num_classes), 0);
      for (int label : y) ++rec.per_class_counts[size_t(label)];
      if (data.has_metric) rec.ir = ImbalanceRatio(y, data.metric, num_classes);
      rec.test_acc = Accuracy(model, dataset, pool.test);
      rec.seconds["evaluate"] = clock.Lap();
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw RunError(round, e.what());
    }
    report.rounds.push_back(std::move(rec));
  }

  FinalRecord& fin = report.final;
  Stopwatch clock;
  try {
    fin.supervised_test_acc = Accuracy(model, dataset, pool.test);
    fin.final_ir = report.rounds.back().ir;
    fin.per_class_recall = PerClassRecall(model, dataset, pool.test);
    if (cfg.ssl_enabled) {
      PseudoLabelConfig ssl = cfg.ssl;
      ssl.train = cfg.surrogate;
      const PseudoLabelResult res = PseudoLabelTrain(pool, ssl);
      fin.ssl_test_acc = Accuracy(res.model, dataset, pool.test);
      fin.pseudo_newly_labeled = res.newly_labeled;
      fin.pseudo_labeled = res.pseudo_labeled;
      fin.seconds["ssl"] = clock.Lap();
    }
  } catch (const std::exception& e) {
    throw RunError(cfg.rounds + 1, e.what());
  }
  return report;
}

std::vector<ComparisonRow> CompareStrategies(
    const ExperimentConfig& cfg_base, const std::vector<Strategy>& strategies,
    const std::vector<std::uint64_t>& seeds) {
  std::vector<ComparisonRow> rows;
  for (Strategy s : strategies) {
    ComparisonRow row;
    row.strategy = s;
    for (std::uint64_t seed : seeds) {
      ExperimentConfig cfg = cfg_base;
      cfg.strategy = s;
      cfg.seed = seed;
      const ExperimentReport rep = RunExperiment(cfg);
      row.seeds.push_back(seed);
      row.supervised_acc.push_back(rep.final.supervised_test_acc);
      row.ssl_acc.push_back(rep.final.ssl_test_acc);
      row.final_ir.push_back(rep.final.final_ir);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::optional<Summary> Summarize(const std::vector<std::optional<double>>& v) {
  std::vector<double> xs;
  for (const auto& x : v) {
    if (x) xs.push_back(*x);
  }
  if (xs.empty()) return std::nullopt;
  for (double x : xs) {
    if (std::isinf(x)) {
      return Summary{std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::quiet_NaN()};
    }
  }
  Summary s;
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) /
           static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

}  // namespace basil
