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
#include "basil/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace basil {

namespace {

std::string Fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

nlohmann::json OptionalRatio(const std::optional<double>& v) {
  if (!v) return nullptr;
  if (std::isinf(*v)) return "inf";
  return *v;
}

std::optional<double> RatioFromJson(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") {
      return std::numeric_limits<double>::infinity();
    }
    throw DataError("unexpected ratio value '" + j.get<std::string>() + "'");
  }
  return j.get<double>();
}

nlohmann::json OptionalList(const std::vector<std::optional<double>>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(OptionalRatio(x));
  return out;
}

}  // namespace

std::string FormatIrCell(const std::optional<double>& ir) {
  if (!ir) return "";
  if (std::isinf(*ir)) return "inf";
  return Fixed6(*ir);
}

std::string RoundCsv(const ExperimentReport& report) {
  std::ostringstream out;
  out << kRoundCsvHeader << '\n';
  for (const RoundRecord& r : report.rounds) {
    out << r.round << ',' << r.strategy << ',' << r.smi << ','
        << r.labeled_size << ',' << FormatIrCell(r.ir) << ','
        << Fixed6(r.test_acc) << ',';
    for (size_t c = 0; c < r.per_class_counts.size(); ++c) {
      if (c) out << '|';
      out << r.per_class_counts[c];
    }
    out << '\n';
  }
  return out.str();
}

void WriteRoundCsv(const std::string& path, const ExperimentReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << RoundCsv(report);
}

nlohmann::json ReportToJson(const ExperimentReport& report) {
  nlohmann::json j;
  nlohmann::json config = nlohmann::json::object();
  for (const auto& [k, v] : report.config) config[k] = v;
  j["config"] = config;

  nlohmann::json rounds = nlohmann::json::array();
  for (const RoundRecord& r : report.rounds) {
    rounds.push_back({
        {"round", r.round},
        {"strategy", r.strategy},
        {"smi", r.smi},
        {"greedy_variant", r.greedy_variant},
        {"batch_size", r.batch_size},
        {"labeled_size", r.labeled_size},
        {"ir", OptionalRatio(r.ir)},
        {"test_acc", r.test_acc},
        {"per_class_counts", r.per_class_counts},
        {"quotas", r.quotas},
        {"selected_per_class", r.selected_per_class},
        {"ground_kernels_built", r.ground_kernels_built},
        {"warnings", r.warnings},
        {"seconds", r.seconds},
    });
  }
  j["rounds"] = rounds;

  const FinalRecord& f = report.final;
  j["final"] = {
      {"ssl_test_acc", f.ssl_test_acc ? nlohmann::json(*f.ssl_test_acc)
                                      : nlohmann::json(nullptr)},
      {"supervised_test_acc", f.supervised_test_acc},
      {"final_ir", OptionalRatio(f.final_ir)},
      {"pseudo_newly_labeled", f.pseudo_newly_labeled},
      {"pseudo_labeled", f.pseudo_labeled},
      {"per_class_recall", OptionalList(f.per_class_recall)},
      {"seconds", f.seconds},
  };
  return j;
}

ExperimentReport ReportFromJson(const nlohmann::json& j) {
  ExperimentReport report;
  try {
    for (const auto& [k, v] : j.at("config").items()) {
      report.config.emplace_back(k, v.get<std::string>());
    }
    for (const auto& r : j.at("rounds")) {
      RoundRecord rec;
      rec.round = r.at("round").get<int>();
      rec.strategy = r.at("strategy").get<std::string>();
      rec.smi = r.at("smi").get<std::string>();
      rec.greedy_variant = r.value("greedy_variant", std::string());
      rec.batch_size = r.value("batch_size", Index{0});
      rec.labeled_size = r.at("labeled_size").get<Index>();
      rec.ir = RatioFromJson(r.at("ir"));
      rec.test_acc = r.at("test_acc").get<double>();
      rec.per_class_counts = r.at("per_class_counts").get<std::vector<Index>>();
      rec.quotas = r.value("quotas", std::vector<Index>{});
      rec.selected_per_class =
          r.value("selected_per_class", std::vector<Index>{});
      rec.ground_kernels_built = r.value("ground_kernels_built", Index{0});
      rec.warnings = r.value("warnings", std::vector<std::string>{});
      report.rounds.push_back(std::move(rec));
    }
    const auto& f = j.at("final");
    report.final.supervised_test_acc = f.at("supervised_test_acc").get<double>();
    if (!f.at("ssl_test_acc").is_null()) {
      report.final.ssl_test_acc = f.at("ssl_test_acc").get<double>();
    }
    report.final.final_ir = RatioFromJson(f.at("final_ir"));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed report JSON: ") + e.what());
  }
  return report;
}

void WriteSummaryJson(const std::string& path, const ExperimentReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << ReportToJson(report).dump(2) << '\n';
}

ExperimentReport ReadSummaryJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("'" + path + "': " + e.what());
  }
  return ReportFromJson(j);
}

std::string ComparisonCsv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out << "strategy,runs,supervised_acc_mean,supervised_acc_std,ssl_acc_mean,"
         "ssl_acc_std,final_ir_mean,final_ir_std\n";
  const auto cell = [](const std::optional<Summary>& s, bool mean) {
    if (!s) return std::string();
    const double v = mean ? s->mean : s->stddev;
    if (std::isinf(v)) return std::string("inf");
    if (std::isnan(v)) return std::string();
    return Fixed6(v);
  };
  for (const ComparisonRow& r : rows) {
    std::vector<std::optional<double>> sup(r.supervised_acc.begin(),
                                           r.supervised_acc.end());
    const auto s_sup = Summarize(sup);
    const auto s_ssl = Summarize(r.ssl_acc);
    const auto s_ir = Summarize(r.final_ir);
    out << StrategyName(r.strategy) << ',' << r.seeds.size() << ','
        << cell(s_sup, true) << ',' << cell(s_sup, false) << ','
        << cell(s_ssl, true) << ',' << cell(s_ssl, false) << ','
        << cell(s_ir, true) << ',' << cell(s_ir, false) << '\n';
  }
  return out.str();
}

nlohmann::json ModelToJson(const ModelParams<double>& model) {
  nlohmann::json w = nlohmann::json::array();
  for (Index k = 0; k < model.weights.rows(); ++k) {
    for (Index j = 0; j < model.weights.cols(); ++j) {
      w.push_back(model.weights(k, j));
    }
  }
  std::vector<double> b(model.bias.data(), model.bias.data() + model.bias.size());
  return {{"num_classes", model.num_classes()},
          {"dims", model.dims()},
          {"weights", w},
          {"bias", b}};
}

}  // namespace basil
