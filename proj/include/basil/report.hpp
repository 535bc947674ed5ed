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
#ifndef BASIL_REPORT_HPP_
#define BASIL_REPORT_HPP_

#include <string>
#include <vector>

#include <json.hpp>

#include "basil/harness.hpp"
#include "basil/surrogate.hpp"

namespace basil {

// Header and column order of the per-round CSV.
inline constexpr const char* kRoundCsvHeader =
    "round,strategy,smi,labeled_size,ir,test_acc,per_class_counts";

// IR cell: fixed 6 decimals, "inf" for +infinity, empty when undefined.
std::string FormatIrCell(const std::optional<double>& ir);

std::string RoundCsv(const ExperimentReport& report);
void WriteRoundCsv(const std::string& path, const ExperimentReport& report);

nlohmann::json ReportToJson(const ExperimentReport& report);
// Inverse of ReportToJson for the fields the round CSV needs.
ExperimentReport ReportFromJson(const nlohmann::json& j);
void WriteSummaryJson(const std::string& path, const ExperimentReport& report);
ExperimentReport ReadSummaryJson(const std::string& path);

std::string ComparisonCsv(const std::vector<ComparisonRow>& rows);

// Weights row-major by class.
nlohmann::json ModelToJson(const ModelParams<double>& model);

}  // namespace basil

#endif  // BASIL_REPORT_HPP_
