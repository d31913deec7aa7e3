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

#include "logshap/report.h"

#include <iomanip>

#include "logshap/errors.h"

namespace logshap {

using nlohmann::json;

void to_json(json& j, const CgtDiagnostics& d) {
  j = json{{"samples", d.samples},       {"range", ToString(d.range)},
           {"epsilon", ToString(d.epsilon)}, {"alpha", ToString(d.alpha)},
           {"seed", d.seed}};
}

namespace {

Rational Q(const json& j, const char* key) {
  return ParseRational(j.at(key).get<std::string>());
}

std::vector<std::string> Strings(const std::vector<Rational>& values) {
  std::vector<std::string> out;
  for (const auto& v : values) out.push_back(ToString(v));
  return out;
}

std::vector<Rational> Rationals(const json& j) {
  std::vector<Rational> out;
  for (const auto& s : j) out.push_back(ParseRational(s.get<std::string>()));
  return out;
}

CgtDiagnostics CgtFromJson(const json& j) {
  return CgtDiagnostics{j.at("samples").get<std::uint64_t>(), Q(j, "range"),
                        Q(j, "epsilon"), Q(j, "alpha"), j.at("seed").get<std::uint64_t>()};
}

json InstanceJson(const InstanceReport& r) {
  json j{{"point", r.point}, {"prediction", r.prediction}};
  if (r.relevant) j["relevant"] = *r.relevant;
  if (!r.explanations.empty()) {
    json list = json::array();
    for (const auto& e : r.explanations) {
      list.push_back({{"kind", e.kind}, {"features", e.features}, {"vacuous", e.vacuous}});
    }
    j["explanations"] = list;
  }
  if (!r.scores.empty()) {
    json list = json::array();
    for (const auto& s : r.scores) {
      json e{{"method", s.method}, {"scores", Strings(s.scores)}};
      if (s.cgt) e["cgt"] = *s.cgt;
      list.push_back(e);
    }
    j["scores"] = list;
  }
  if (!r.rankings.empty()) {
    json list = json::array();
    for (const auto& k : r.rankings) {
      list.push_back({{"method", k.method}, {"mode", k.mode}, {"order", k.order}});
    }
    j["rankings"] = list;
  }
  if (!r.rbo.empty()) {
    json list = json::array();
    for (const auto& e : r.rbo) {
      list.push_back({{"first", e.first}, {"second", e.second}, {"mode", e.mode},
                      {"value", ToString(e.value)}});
    }
    j["rbo"] = list;
  }
  if (!r.compliance.empty()) {
    json list = json::array();
    for (const auto& c : r.compliance) {
      list.push_back({{"method", c.method}, {"compliant", c.compliant},
                      {"misleading", c.misleading}});
    }
    j["compliance"] = list;
  }
  return j;
}

InstanceReport InstanceFromJson(const json& j) {
  InstanceReport r;
  r.point = j.at("point").get<std::vector<std::string>>();
  r.prediction = j.at("prediction").get<std::string>();
  if (j.contains("relevant")) r.relevant = j["relevant"].get<std::vector<int>>();
  for (const auto& e : j.value("explanations", json::array())) {
    r.explanations.push_back(ExplanationEntry{e.at("kind").get<std::string>(),
                                              e.at("features").get<std::vector<int>>(),
                                              e.at("vacuous").get<bool>()});
  }
  for (const auto& e : j.value("scores", json::array())) {
    ScoreEntry s{e.at("method").get<std::string>(), Rationals(e.at("scores")), {}};
    if (e.contains("cgt")) s.cgt = CgtFromJson(e["cgt"]);
    r.scores.push_back(std::move(s));
  }
  for (const auto& e : j.value("rankings", json::array())) {
    r.rankings.push_back(RankingEntry{e.at("method").get<std::string>(),
                                      e.at("mode").get<std::string>(),
                                      e.at("order").get<std::vector<int>>()});
  }
  for (const auto& e : j.value("rbo", json::array())) {
    r.rbo.push_back(RboEntry{e.at("first").get<std::string>(),
                             e.at("second").get<std::string>(),
                             e.at("mode").get<std::string>(), Q(e, "value")});
  }
  for (const auto& e : j.value("compliance", json::array())) {
    r.compliance.push_back(ComplianceEntry{e.at("method").get<std::string>(),
                                           e.at("compliant").get<bool>(),
                                           e.at("misleading").get<std::vector<int>>()});
  }
  return r;
}

std::string Join(const std::vector<int>& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(ids[i]);
  }
  return out + "}";
}

}  // namespace

json ToJson(const RunReport& report) {
  const ProblemSummary& p = report.problem;
  json problem{{"model_kind", p.model_kind}, {"task", p.task},
               {"value_kind", p.value_kind}, {"features", p.features},
               {"universe", p.universe}};
  if (p.similarity) problem["similarity"] = *p.similarity;
  if (p.delta) problem["delta"] = ToString(*p.delta);
  if (p.sample_rows) problem["sample_rows"] = *p.sample_rows;

  json j{{"version", report.version}, {"command", report.command}, {"problem", problem}};
  json instances = json::array();
  for (const auto& r : report.instances) instances.push_back(InstanceJson(r));
  j["instances"] = instances;
  if (report.rbo_settings) {
    j["rbo_settings"] = {{"persistence", ToString(report.rbo_settings->persistence)},
                         {"depth", report.rbo_settings->depth},
                         {"cap", ToString(report.rbo_settings->cap)}};
  }
  if (!report.rbo_summary.empty()) {
    json list = json::array();
    for (const auto& s : report.rbo_summary) {
      list.push_back({{"first", s.first}, {"second", s.second}, {"mode", s.mode},
                      {"min", ToString(s.min)}, {"max", ToString(s.max)},
                      {"mean", ToString(s.mean)}});
    }
    j["rbo_summary"] = list;
  }
  if (!report.warnings.empty()) j["warnings"] = report.warnings;
  if (report.timing_ms) j["timing_ms"] = *report.timing_ms;
  return j;
}

RunReport ReportFromJson(const json& j) {
  try {
    RunReport report;
    report.version = j.at("version").get<int>();
    report.command = j.at("command").get<std::string>();
    const json& p = j.at("problem");
    report.problem.model_kind = p.at("model_kind").get<std::string>();
    report.problem.task = p.at("task").get<std::string>();
    report.problem.value_kind = p.at("value_kind").get<std::string>();
    report.problem.features = p.at("features").get<std::vector<std::string>>();
    report.problem.universe = p.at("universe").get<std::string>();
    if (p.contains("similarity")) report.problem.similarity = p["similarity"].get<std::string>();
    if (p.contains("delta")) report.problem.delta = Q(p, "delta");
    if (p.contains("sample_rows")) {
      report.problem.sample_rows = p["sample_rows"].get<std::uint64_t>();
    }
    for (const auto& r : j.at("instances")) report.instances.push_back(InstanceFromJson(r));
    if (j.contains("rbo_settings")) {
      const json& s = j["rbo_settings"];
      report.rbo_settings =
          RboSettings{Q(s, "persistence"), s.at("depth").get<int>(), Q(s, "cap")};
    }
    for (const auto& s : j.value("rbo_summary", json::array())) {
      report.rbo_summary.push_back(RboSummaryEntry{
          s.at("first").get<std::string>(), s.at("second").get<std::string>(),
          s.at("mode").get<std::string>(), Q(s, "min"), Q(s, "max"), Q(s, "mean")});
    }
    if (j.contains("warnings")) {
      report.warnings = j["warnings"].get<std::vector<std::string>>();
    }
    if (j.contains("timing_ms")) report.timing_ms = j["timing_ms"].get<double>();
    return report;
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

void WriteTable(const RunReport& report, std::ostream& out) {
  const ProblemSummary& p = report.problem;
  out << report.command << ": " << p.model_kind << " " << p.task << " model, "
      << p.features.size() << " features, " << p.universe;
  if (p.sample_rows) out << " (" << *p.sample_rows << " sample rows)";
  if (p.similarity) {
    out << ", similarity " << *p.similarity;
    if (p.delta) out << " delta=" << ToDecimal(*p.delta);
  }
  out << "\n";
  for (const auto& r : report.instances) {
    out << "\ninstance (";
    for (std::size_t i = 0; i < r.point.size(); ++i) {
      out << (i ? "," : "") << r.point[i];
    }
    out << ") -> " << r.prediction << "\n";
    if (r.relevant) out << "  relevant features: " << Join(*r.relevant) << "\n";
    for (const auto& e : r.explanations) {
      out << "  " << e.kind << ": " << Join(e.features)
          << (e.vacuous ? "  (vacuous: no sample row matches)" : "") << "\n";
    }
    if (!r.scores.empty()) {
      out << "  " << std::left << std::setw(16) << "method";
      for (std::size_t i = 0; i < p.features.size(); ++i) {
        out << std::right << std::setw(12) << p.features[i];
      }
      out << "\n";
      for (const auto& s : r.scores) {
        out << "  " << std::left << std::setw(16) << s.method;
        for (const auto& v : s.scores) out << std::right << std::setw(12) << ToDecimal(v);
        if (s.cgt) out << "   [T=" << s.cgt->samples << ", r=" << ToDecimal(s.cgt->range) << "]";
        out << "\n";
      }
    }
    for (const auto& k : r.rankings) {
      out << "  ranking " << k.method << " (" << k.mode << "): ";
      for (std::size_t i = 0; i < k.order.size(); ++i) out << (i ? " > " : "") << k.order[i];
      out << "\n";
    }
    for (const auto& e : r.rbo) {
      out << "  rbo " << e.first << " vs " << e.second << " (" << e.mode
          << "): " << ToDecimal(e.value) << "\n";
    }
    for (const auto& c : r.compliance) {
      out << "  compliance " << c.method << ": "
          << (c.compliant ? "compliant" : "misleading on " + Join(c.misleading)) << "\n";
    }
  }
  if (report.rbo_settings) {
    out << "\nrbo persistence=" << ToDecimal(report.rbo_settings->persistence)
        << " depth=" << report.rbo_settings->depth
        << " cap=" << ToDecimal(report.rbo_settings->cap) << "\n";
  }
  if (!report.rbo_summary.empty()) {
    out << std::left << std::setw(34) << "pair" << std::setw(10) << "mode" << std::right
        << std::setw(10) << "min" << std::setw(10) << "max" << std::setw(10) << "mean"
        << "\n";
    for (const auto& s : report.rbo_summary) {
      out << std::left << std::setw(34) << (s.first + " vs " + s.second) << std::setw(10)
          << s.mode << std::right << std::setw(10) << ToDecimal(s.min) << std::setw(10)
          << ToDecimal(s.max) << std::setw(10) << ToDecimal(s.mean) << "\n";
    }
  }
  for (const auto& w : report.warnings) out << "warning: " << w << "\n";
  if (report.timing_ms) out << "time: " << *report.timing_ms << " ms\n";
}

}  // namespace logshap
