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

#include "logshap/cli.h"

#include <chrono>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "logshap/cgt.h"
#include "logshap/errors.h"
#include "logshap/explanations.h"
#include "logshap/games.h"
#include "logshap/io.h"
#include "logshap/ranking.h"
#include "logshap/report.h"

namespace logshap {
namespace {

struct Options {
  std::string model;
  std::vector<std::string> instances;
  std::string instances_file;
  std::optional<std::string> delta;
  bool agnostic = false;
  std::string sample;
  std::string output = "table";
  bool timing = false;

  // axp / cxp
  std::string from;
  // enumerate
  std::string kind = "cxp";
  // shap
  std::string game = "expected";
  std::string method = "exact";
  std::string epsilon = "1/20";
  std::string alpha = "1/20";
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> samples;
  std::optional<std::string> range;
  // compare
  std::string persistence = "1/2";
  int depth = kDefaultDepth;
  bool absolute = false;
  std::vector<std::string> methods{"expected/exact", "waxp/exact"};
};

void AddCommon(CLI::App* cmd, Options& o) {
  cmd->add_option("--model", o.model, "JSON model file")->required();
  cmd->add_option("--instance", o.instances,
                  "target point as comma-separated values (repeatable)");
  cmd->add_option("--instances", o.instances_file, "file with one target point per line");
  cmd->add_option("--delta", o.delta, "regression similarity threshold (p/q or decimal)");
  cmd->add_flag("--agnostic", o.agnostic, "quantify over --sample instead of the feature space");
  cmd->add_option("--sample", o.sample, "delimited sample file");
  cmd->add_option("--output", o.output, "table or json")
      ->check(CLI::IsMember({"table", "json"}));
  cmd->add_flag("--timing", o.timing, "include wall-clock time in the report");
}

void AddCgt(CLI::App* cmd, Options& o) {
  cmd->add_option("--epsilon", o.epsilon, "CGT additive error bound");
  cmd->add_option("--alpha", o.alpha, "CGT failure probability");
  cmd->add_option("--seed", o.seed, "CGT random seed");
  cmd->add_option("--samples", o.samples, "override the CGT permutation count");
  cmd->add_option("--range", o.range, "override the marginal-contribution range");
}

std::vector<int> Ids(const FeatureSet& s) { return s.ids(); }

FeatureSet ParseSet(const std::string& text, int m) {
  if (text.empty()) return FeatureSet::All(m);
  FeatureSet s;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    int id = 0;
    try {
      std::size_t used = 0;
      id = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("--from: '" + item + "' is not a feature id");
    }
    if (id < 1 || id > m) throw ValidationError("--from: feature " + item + " does not exist");
    s.insert(id);
  }
  return s;
}

std::vector<Point> CollectInstances(const Options& o, const FeatureSpace& space) {
  std::vector<Point> points;
  for (const auto& text : o.instances) points.push_back(ParsePoint(text, space));
  if (!o.instances_file.empty()) {
    std::ifstream in(o.instances_file);
    if (!in) throw ValidationError("cannot open '" + o.instances_file + "'");
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        points.push_back(ParsePoint(line, space));
      } catch (const DomainError&) {
        // A leading header line is allowed.
        if (!first) throw;
      }
      first = false;
    }
  }
  return points;
}

SimilarityConfig MakeSimilarity(const Options& o, const Model& model) {
  if (model.task() == Task::kClassification) {
    if (o.delta) throw ValidationError("--delta applies to regression models only");
    return SimilarityConfig::ClassEquality();
  }
  if (!o.delta) throw ValidationError("regression models require --delta");
  return SimilarityConfig::RegressionThreshold(ParseRational(*o.delta));
}

InstanceReport Describe(const ExplanationProblem& problem) {
  InstanceReport r;
  for (const auto& c : problem.instance().point) r.point.push_back(ToString(c));
  r.prediction = problem.instance().prediction.ToString();
  return r;
}

class Runner {
 public:
  Runner(const std::string& command, const Options& o) : command_(command), o_(o) {}

  RunReport Run() {
    const auto start = std::chrono::steady_clock::now();
    model_ = LoadModel(o_.model);
    const Model& model = *model_;
    report_.command = command_;
    ProblemSummary& p = report_.problem;
    p.model_kind = model.kind_name();
    p.task = model.task() == Task::kClassification ? "classification" : "regression";
    p.value_kind = model.value_kind() == ValueKind::kNumeric ? "numeric" : "categorical";
    for (const auto& f : model.space().features()) p.features.push_back(f.name);

    std::optional<Sample> sample;
    if (!o_.sample.empty()) sample = LoadSample(o_.sample, model);
    if (o_.agnostic && !sample) throw ValidationError("--agnostic requires --sample");
    if (o_.agnostic) {
      p.universe = "model-agnostic";
      p.sample_rows = sample->rows.size();
      universe_ = Universe::ModelAgnostic(*sample);
    } else if (sample && command_ != "validate") {
      report_.warnings.push_back("--sample is ignored without --agnostic");
    }

    const bool validate = command_ == "validate";
    if (!validate || o_.delta || model.task() == Task::kClassification) {
      similarity_ = MakeSimilarity(o_, model);
      p.similarity = similarity_->mode() == SimilarityConfig::Mode::kClassEquality
                         ? "class-equality"
                         : "regression-threshold";
      if (similarity_->mode() == SimilarityConfig::Mode::kRegressionThreshold) {
        p.delta = similarity_->delta();
      }
    }
    auto points = CollectInstances(o_, model.space());
    if (points.empty() && !validate) {
      throw ValidationError("no target instance given (--instance or --instances)");
    }
    std::vector<Comparison> batch;
    for (auto& point : points) {
      if (!similarity_) {
        // validate on a regression model without --delta: check the point only.
        InstanceReport r;
        Instance inst = MakeInstance(model, point);
        for (const auto& c : inst.point) r.point.push_back(ToString(c));
        r.prediction = inst.prediction.ToString();
        report_.instances.push_back(std::move(r));
        continue;
      }
      ExplanationProblem problem(model_, std::move(point), *similarity_);
      InstanceReport r = Describe(problem);
      if (!validate) Handle(problem, r, batch);
      report_.instances.push_back(std::move(r));
    }
    if (command_ == "compare") Summarize(batch);
    if (o_.timing) {
      report_.timing_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
    }
    return report_;
  }

 private:
  void Warn(const std::string& text) {
    if (std::find(report_.warnings.begin(), report_.warnings.end(), text) ==
        report_.warnings.end()) {
      report_.warnings.push_back(text);
    }
  }

  CgtConfig Cgt() const {
    CgtConfig c;
    c.epsilon = ParseRational(o_.epsilon);
    c.alpha = ParseRational(o_.alpha);
    c.seed = o_.seed;
    c.samples = o_.samples;
    if (o_.range) c.range = ParseRational(*o_.range);
    if (!(c.epsilon > 0)) throw ValidationError("--epsilon must be positive");
    if (!(c.alpha > 0 && c.alpha < 1)) throw ValidationError("--alpha must lie in (0, 1)");
    return c;
  }

  void Handle(const ExplanationProblem& problem, InstanceReport& r,
              std::vector<Comparison>& batch) {
    const Explainer explainer(problem, universe_);
    const int m = problem.num_features();
    if (explainer.ConstantOnUniverse()) {
      Warn("the model is constant on the universe; no CXp exists");
    }
    if (command_ == "relevancy") {
      r.relevant = Ids(explainer.RelevantFeatures());
    } else if (command_ == "axp" || command_ == "cxp") {
      const FeatureSet seed = ParseSet(o_.from, m);
      const bool abductive = command_ == "axp";
      FeatureSet x = abductive ? explainer.ExtractAxp(seed) : explainer.ExtractCxp(seed);
      ExplanationEntry e{command_, Ids(x), abductive && explainer.IsVacuous(x)};
      if (e.vacuous) Warn("vacuous WAXp: no sample row matches the instance on it");
      r.explanations.push_back(std::move(e));
    } else if (command_ == "enumerate") {
      std::vector<FeatureSet> family;
      if (o_.kind == "cxp") {
        family = explainer.EnumerateCxps();
      } else {
        auto cxps = explainer.EnumerateCxps();
        family = cxps.empty() ? explainer.EnumerateAxps() : AxpsFromCxps(cxps);
      }
      for (const auto& s : family) {
        ExplanationEntry e{o_.kind, Ids(s), o_.kind == "axp" && explainer.IsVacuous(s)};
        if (e.vacuous) Warn("vacuous WAXp: no sample row matches the instance on it");
        r.explanations.push_back(std::move(e));
      }
    } else if (command_ == "shap") {
      MethodSpec spec = ParseMethodSpec(o_.game + "/" + o_.method);
      spec.cgt = Cgt();
      Game game = spec.game == GameKind::kExpectedValue ? ExpectedValueGame(problem)
                                                        : WaxpGame(problem, universe_);
      ScoreEntry entry{spec.name(), {}, {}};
      ScoreVector scores;
      if (spec.method == ScoreMethod::kExact) {
        scores = ShapleyExact(game);
      } else {
        CgtResult res = CgtEstimate(game, spec.cgt);
        scores = res.scores;
        entry.cgt = CgtDiagnostics{res.samples, res.range, spec.cgt.epsilon,
                                   spec.cgt.alpha, spec.cgt.seed};
      }
      entry.scores = scores.scores;
      r.scores.push_back(entry);
      for (RankMode mode : {RankMode::kSigned, RankMode::kAbsolute}) {
        r.rankings.push_back(
            RankingEntry{spec.name(), ToString(mode), RankFeatures(scores, mode).order});
      }
      ComplianceReport c = CheckCompliance(explainer, scores);
      r.compliance.push_back(ComplianceEntry{spec.name(), c.compliant(), Ids(c.misleading())});
    } else if (command_ == "compare") {
      std::vector<MethodSpec> specs;
      for (const auto& text : o_.methods) {
        specs.push_back(ParseMethodSpec(text));
        specs.back().cgt = Cgt();
      }
      if (specs.size() < 2) throw ValidationError("--methods needs at least two entries");
      const Rational p = ParseRational(o_.persistence);
      Comparison c = CompareScores(problem, universe_, specs, p, o_.depth);
      const RankMode mode = o_.absolute ? RankMode::kAbsolute : RankMode::kSigned;
      for (std::size_t i = 0; i < specs.size(); ++i) {
        r.scores.push_back(ScoreEntry{c.methods[i], c.scores[i].scores, {}});
        const Ranking& k = o_.absolute ? c.absolute_rankings[i] : c.signed_rankings[i];
        r.rankings.push_back(RankingEntry{c.methods[i], ToString(mode), k.order});
        ComplianceReport comp = CheckCompliance(explainer, c.scores[i]);
        r.compliance.push_back(
            ComplianceEntry{c.methods[i], comp.compliant(), Ids(comp.misleading())});
      }
      for (const auto& pair : c.pairs) {
        r.rbo.push_back(RboEntry{pair.first, pair.second, ToString(mode),
                                 o_.absolute ? pair.rbo_absolute : pair.rbo_signed});
      }
      if (!report_.rbo_settings) {
        const int k = std::min(o_.depth, m);
        Rational cap = 1;
        Rational power = 1;
        for (int d = 0; d < k; ++d) power *= p;
        cap -= power;
        report_.rbo_settings = RboSettings{p, o_.depth, cap};
      }
      batch.push_back(std::move(c));
    }
  }

  void Summarize(const std::vector<Comparison>& batch) {
    const std::string mode = o_.absolute ? "absolute" : "signed";
    for (const auto& s : SummarizeBatch(batch)) {
      const Summary& v = o_.absolute ? s.rbo_absolute : s.rbo_signed;
      report_.rbo_summary.push_back(
          RboSummaryEntry{s.first, s.second, mode, v.min, v.max, v.mean});
    }
  }

  std::string command_;
  const Options& o_;
  std::shared_ptr<const Model> model_;
  Universe universe_ = Universe::ModelAware();
  std::optional<SimilarityConfig> similarity_;
  RunReport report_;
};

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and corrected SHAP scores, formal explanations and rankings"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "check a model (and sample/instances)");
  AddCommon(validate, o);

  auto* relevancy = app.add_subcommand("relevancy", "features occurring in some AXp");
  AddCommon(relevancy, o);

  auto* axp = app.add_subcommand("axp", "extract one abductive explanation");
  AddCommon(axp, o);
  axp->add_option("--from", o.from, "seed feature set, e.g. 1,2,3 (default: all)");

  auto* cxp = app.add_subcommand("cxp", "extract one contrastive explanation");
  AddCommon(cxp, o);
  cxp->add_option("--from", o.from, "seed feature set (default: all)");

  auto* enumerate = app.add_subcommand("enumerate", "all AXps or all CXps");
  AddCommon(enumerate, o);
  enumerate->add_option("--kind", o.kind, "axp or cxp")->check(CLI::IsMember({"axp", "cxp"}));

  auto* shap = app.add_subcommand("shap", "Shapley scores of the expected-value or WAXp game");
  AddCommon(shap, o);
  shap->add_option("--game", o.game, "expected or waxp")
      ->check(CLI::IsMember({"expected", "waxp"}));
  shap->add_option("--method", o.method, "exact or cgt")->check(CLI::IsMember({"exact", "cgt"}));
  AddCgt(shap, o);

  auto* compare = app.add_subcommand("compare", "rank-biased overlap between score rankings");
  AddCommon(compare, o);
  compare->add_option("--persistence", o.persistence, "RBO persistence p in (0,1)");
  compare->add_option("--depth", o.depth, "RBO evaluation depth k")->check(CLI::PositiveNumber);
  compare->add_flag("--abs", o.absolute, "rank by absolute score");
  compare->add_option("--methods", o.methods, "methods such as expected/exact waxp/cgt")
      ->delimiter(',');
  AddCgt(compare, o);

  std::vector<std::string> storage{"logshap"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitValidation;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    RunReport report = Runner(command, o).Run();
    for (const auto& w : report.warnings) err << "warning: " << w << "\n";
    if (o.output == "json") {
      out << ToJson(report).dump(2) << "\n";
    } else {
      WriteTable(report, out);
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ComputationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitComputation;
  }
}

}  // namespace logshap
