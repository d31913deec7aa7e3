/*
 * Copyright 2026 The logshap Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LOGSHAP_REPORT_H_
#define LOGSHAP_REPORT_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "logshap/rational.h"

namespace logshap {

// Serializable result of one CLI invocation. Rationals are written as
// "p/q" strings so that parse(serialize(r)) == r holds exactly.

struct CgtDiagnostics {
  std::uint64_t samples = 0;
  Rational range;
  Rational epsilon;
  Rational alpha;
  std::uint64_t seed = 0;
  bool operator==(const CgtDiagnostics&) const = default;
};

struct ScoreEntry {
  std::string method;  // "<game>/<method>"
  std::vector<Rational> scores;
  std::optional<CgtDiagnostics> cgt;
  bool operator==(const ScoreEntry&) const = default;
};

struct RankingEntry {
  std::string method;
  std::string mode;  // "signed" | "absolute"
  std::vector<int> order;
  bool operator==(const RankingEntry&) const = default;
};

struct RboEntry {
  std::string first;
  std::string second;
  std::string mode;
  Rational value;
  bool operator==(const RboEntry&) const = default;
};

struct RboSummaryEntry {
  std::string first;
  std::string second;
  std::string mode;
  Rational min;
  Rational max;
  Rational mean;
  bool operator==(const RboSummaryEntry&) const = default;
};

struct RboSettings {
  Rational persistence;
  int depth = 0;  // as requested; clamped to m when applied
  Rational cap;   // 1 - p^k for the effective k
  bool operator==(const RboSettings&) const = default;
};

struct ComplianceEntry {
  std::string method;
  bool compliant = true;
  std::vector<int> misleading;
  bool operator==(const ComplianceEntry&) const = default;
};

struct ExplanationEntry {
  std::string kind;  // "axp" | "cxp"
  std::vector<int> features;
  bool vacuous = false;
  bool operator==(const ExplanationEntry&) const = default;
};

struct InstanceReport {
  std::vector<std::string> point;
  std::string prediction;
  std::optional<std::vector<int>> relevant;
  std::vector<ExplanationEntry> explanations;
  std::vector<ScoreEntry> scores;
  std::vector<RankingEntry> rankings;
  std::vector<RboEntry> rbo;
  std::vector<ComplianceEntry> compliance;
  bool operator==(const InstanceReport&) const = default;
};

struct ProblemSummary {
  std::string model_kind;
  std::string task;
  std::string value_kind;
  std::vector<std::string> features;
  std::optional<std::string> similarity;
  std::optional<Rational> delta;
  std::string universe = "model-aware";
  std::optional<std::uint64_t> sample_rows;
  bool operator==(const ProblemSummary&) const = default;
};

struct RunReport {
  int version = 1;
  std::string command;
  ProblemSummary problem;
  std::vector<InstanceReport> instances;
  std::optional<RboSettings> rbo_settings;
  std::vector<RboSummaryEntry> rbo_summary;
  std::vector<std::string> warnings;
  std::optional<double> timing_ms;
  bool operator==(const RunReport&) const = default;
};

nlohmann::json ToJson(const RunReport& report);
// Throws ParseError on schema violations.
RunReport ReportFromJson(const nlohmann::json& doc);

// Human-readable rendering; rationals as decimals with 6 places.
void WriteTable(const RunReport& report, std::ostream& out);

}  // namespace logshap

#endif  // LOGSHAP_REPORT_H_
