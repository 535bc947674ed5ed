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
// basil: command-line harness.
//
//   basil generate --profile pathlike --out pool.csv [--test-out test.csv]
//   basil run      --config exp.cfg [--set key=value ...] [--out-dir DIR]
//   basil compare  --config exp.cfg --strategies random,flqmi --seeds 0,1,2
//   basil report   --in DIR/summary.json --out rounds.csv
//
// Exit codes: 0 success, 2 configuration error, 3 runtime failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "basil/config.hpp"
#include "basil/harness.hpp"
#include "basil/report.hpp"
#include "basil/rng.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct ConfigArgs {
  std::string config_path;
  std::string profile;
  std::vector<std::string> sets;
};

void AddConfigOptions(CLI::App* cmd, ConfigArgs& args) {
  cmd->add_option("-c,--config", args.config_path, "Config file (key = value)");
  cmd->add_option("-p,--profile", args.profile, "pathlike | organlike");
  cmd->add_option("-s,--set", args.sets, "Override: key=value (repeatable)");
}

basil::ExperimentConfig BuildConfig(const ConfigArgs& args) {
  std::vector<std::pair<std::string, std::string>> kv;
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in) throw basil::ConfigError("cannot open config '" +
                                      args.config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    kv = basil::ParseKeyValues(buf.str(), args.config_path);
  }
  if (!args.profile.empty()) kv.emplace_back("profile", args.profile);
  for (const std::string& s : args.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw basil::ConfigError("--set expects key=value, got '" + s + "'");
    }
    auto more = basil::ParseKeyValues(s, "--set");
    kv.insert(kv.end(), more.begin(), more.end());
  }
  basil::ExperimentConfig cfg = basil::ConfigFromKeyValues(kv);
  cfg.Validate();
  return cfg;
}

template <typename T>
std::vector<T> SplitList(const std::string& text) {
  std::vector<T> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int Generate(const ConfigArgs& args, const std::string& out_path,
             const std::string& test_path) {
  const basil::ExperimentConfig cfg = BuildConfig(args);
  if (cfg.data.source != "synthetic") {
    throw basil::ConfigError("generate needs data.source = synthetic");
  }
  const basil::PoolState pool = basil::MakeSyntheticPool(
      cfg.data.imbalance, cfg.data.dims, cfg.data.spread, cfg.data.separation,
      cfg.data.val_per_class, cfg.data.test_per_class,
      basil::DeriveSeed(cfg.seed, 0, "data"));
  const auto subset = [&](const basil::IndexList& rows) {
    basil::Dataset d;
    d.num_classes = pool.dataset->num_classes;
    d.features = pool.dataset->features(rows, Eigen::all);
    for (basil::Index i : rows) d.labels.push_back(pool.dataset->labels[size_t(i)]);
    return d;
  };
  basil::WriteCsv(out_path, subset(pool.unlabeled));
  if (!test_path.empty()) basil::WriteCsv(test_path, subset(pool.test));
  std::cerr << "wrote " << pool.unlabeled.size() << " rows to " << out_path
            << '\n';
  return 0;
}

int Run(const ConfigArgs& args, const std::string& out_dir) {
  basil::ExperimentConfig cfg = BuildConfig(args);
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  const basil::ExperimentReport report = basil::RunExperiment(cfg);
  std::filesystem::create_directories(cfg.output_dir);
  basil::WriteRoundCsv(cfg.output_dir + "/rounds.csv", report);
  basil::WriteSummaryJson(cfg.output_dir + "/summary.json", report);
  std::cout << basil::RoundCsv(report);
  const auto& f = report.final;
  std::cout << "supervised_test_acc=" << f.supervised_test_acc;
  if (f.ssl_test_acc) std::cout << " ssl_test_acc=" << *f.ssl_test_acc;
  std::cout << " final_ir=" << basil::FormatIrCell(f.final_ir) << '\n';
  for (const auto& r : report.rounds) {
    for (const auto& w : r.warnings) {
      std::cerr << "warning: round " << r.round << ": " << w << '\n';
    }
  }
  return 0;
}

int Compare(const ConfigArgs& args, const std::string& strategies,
            const std::string& seeds, const std::string& out_path) {
  const basil::ExperimentConfig cfg = BuildConfig(args);
  std::vector<basil::Strategy> parsed;
  for (const std::string& name : SplitList<std::string>(strategies)) {
    const auto s = basil::ParseStrategy(name);
    if (!s) throw basil::ConfigError("unknown strategy '" + name + "'");
    parsed.push_back(*s);
  }
  std::vector<std::uint64_t> seed_list;
  for (const std::string& s : SplitList<std::string>(seeds)) {
    try {
      seed_list.push_back(std::stoull(s));
    } catch (const std::exception&) {
      throw basil::ConfigError("bad seed '" + s + "'");
    }
  }
  if (parsed.empty() || seed_list.empty()) {
    throw basil::ConfigError("need at least one strategy and one seed");
  }
  const std::string table =
      basil::ComparisonCsv(basil::CompareStrategies(cfg, parsed, seed_list));
  std::cout << table;
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw basil::DataError("cannot write '" + out_path + "'");
    out << table;
  }
  return 0;
}

int Report(const std::string& in_path, const std::string& out_path) {
  const basil::ExperimentReport report = basil::ReadSummaryJson(in_path);
  if (out_path.empty()) {
    std::cout << basil::RoundCsv(report);
  } else {
    basil::WriteRoundCsv(out_path, report);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced active selection with submodular mutual information"};
  app.require_subcommand(1);

  ConfigArgs gen_args, run_args, cmp_args;
  std::string gen_out, gen_test_out, run_out_dir, cmp_strategies, cmp_seeds,
      cmp_out, rep_in, rep_out;

  CLI::App* gen = app.add_subcommand("generate", "Write a synthetic pool as CSV");
  AddConfigOptions(gen, gen_args);
  gen->add_option("-o,--out", gen_out, "Pool CSV path")->required();
  gen->add_option("--test-out", gen_test_out, "Balanced test split CSV path");

  CLI::App* run = app.add_subcommand("run", "Run one experiment");
  AddConfigOptions(run, run_args);
  run->add_option("-o,--out-dir", run_out_dir,
                  "Output directory (overrides output.dir)");

  CLI::App* cmp = app.add_subcommand("compare", "Strategy x seed sweep");
  AddConfigOptions(cmp, cmp_args);
  cmp->add_option("--strategies", cmp_strategies,
                  "Comma list of random|entropy|badge|gcmi|flvmi|flqmi")
      ->required();
  cmp->add_option("--seeds", cmp_seeds, "Comma list of master seeds")
      ->required();
  cmp->add_option("-o,--out", cmp_out, "Table CSV path");

  CLI::App* rep = app.add_subcommand("report", "Re-render summary JSON as CSV");
  rep->add_option("-i,--in", rep_in, "summary.json")->required();
  rep->add_option("-o,--out", rep_out, "Round CSV path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*gen) return Generate(gen_args, gen_out, gen_test_out);
    if (*run) return Run(run_args, run_out_dir);
    if (*cmp) return Compare(cmp_args, cmp_strategies, cmp_seeds, cmp_out);
    if (*rep) return Report(rep_in, rep_out);
  } catch (const basil::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const basil::RunError& e) {
    std::cerr << "run failed at " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
