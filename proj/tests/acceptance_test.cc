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

// Acceptance suite. Runs each numbered criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. `--only N` runs a single one.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "logshap/cgt.h"
#include "logshap/games.h"
#include "logshap/ranking.h"
#include "logshap/report.h"
#include "test_util.h"

namespace logshap {
namespace {

using testing::AllPoints;
using testing::BruteMinimal;
using testing::BruteWaxp;
using testing::BruteWcxp;

struct Outcome {
  bool pass = true;
  std::string failure;
  std::ostringstream detail;

  void Check(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      failure = what;
    }
  }
};

using Vec = std::vector<Rational>;

std::string Str(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + ToString(v[i]);
  return s + ")";
}

Vec PermutationAverage(int m, const Game& game) {
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 1);
  Vec sum(m);
  Rational count = 0;
  do {
    FeatureSet s;
    for (int i : order) {
      sum[i - 1] += game(s.with(i)) - game(s);
      s.insert(i);
    }
    count += 1;
  } while (std::next_permutation(order.begin(), order.end()));
  for (auto& x : sum) x /= count;
  return sum;
}

ExplanationProblem E2Delta0() {
  return ExplanationProblem(testing::Load("e2_tabular.json"), {1, 1},
                            SimilarityConfig::RegressionThreshold(0));
}

// The shared random corpus for criteria 5 to 7.
const std::vector<testing::RandomProblem>& Corpus() {
  static const auto corpus = [] {
    std::mt19937_64 rng(20260101);
    std::vector<testing::RandomProblem> out;
    for (int k = 0; k < 100; ++k) out.push_back(testing::RandomTabular(rng, 5, 3));
    return out;
  }();
  return corpus;
}

ExplanationProblem ProblemOf(const testing::RandomProblem& rp) {
  return ExplanationProblem(rp.model, rp.instance, SimilarityConfig::ClassEquality());
}

void BoxExpectations(Outcome& o) {
  auto e3 = testing::E3();
  const Instance& inst = e3.instance();
  const std::vector<std::pair<FeatureSet, Rational>> expected{
      {{}, Rational(1, 2)}, {{1}, 1}, {{2}, Rational(3, 2)}, {{1, 2}, 1}};
  for (const auto& [s, want] : expected) {
    Rational got = ConditionalExpectation(e3.model(), inst, s);
    o.Check(got == want, s.ToString() + " -> " + ToString(got));
  }
  o.detail << "E[pi3 | x_S = (1,1)] = 1/2, 1, 3/2, 1";
}

void BoxScores(Outcome& o) {
  Vec sv = ShapleyExact(ExpectedValueGame(testing::E3())).scores;
  o.Check(sv == Vec{0, Rational(1, 2)}, "sv_e = " + Str(sv));
  o.detail << "sv_e(E3) = " << Str(sv);
}

void ExpectedScoresVsRelevancy(Outcome& o) {
  auto universe = Universe::ModelAware();
  for (auto [name, e, want] :
       {std::tuple{"E1", testing::E1(), Vec{0, Rational(1, 12), Rational(-1, 2)}},
        std::tuple{"E2", E2Delta0(), Vec{0, Rational(1, 4)}}}) {
    auto sv_e = ShapleyExact(ExpectedValueGame(e));
    auto sv_a = ShapleyExact(WaxpGame(e, universe));
    const int m = e.num_features();
    o.Check(sv_e.scores == want, std::string(name) + " sv_e = " + Str(sv_e.scores));
    o.Check(RelevantFeatures(e, universe) == FeatureSet{1}, std::string(name) + " relevancy");
    o.Check(CheckCompliance(e, universe, sv_e).misleading() == FeatureSet::All(m),
            std::string(name) + " nu_e misleading set");
    o.Check(CheckCompliance(e, universe, sv_a).compliant(),
            std::string(name) + " nu_a compliance");
    o.detail << name << " sv_e=" << Str(sv_e.scores) << " relevant={1}; ";
  }
}

void CorrectedScores(Outcome& o) {
  auto universe = Universe::ModelAware();
  for (auto [name, e, want] : {std::tuple{"E1", testing::E1(), Vec{1, 0, 0}},
                               std::tuple{"E2", E2Delta0(), Vec{1, 0}}}) {
    Game g = WaxpGame(e, universe);
    Vec sv = ShapleyExact(g).scores;
    o.Check(sv == want, std::string(name) + " sv_a = " + Str(sv));
    o.Check(sv == PermutationAverage(e.num_features(), g), std::string(name) + " oracle");
    Rational total = std::accumulate(sv.begin(), sv.end(), Rational(0));
    o.Check(total == 1 && g(FeatureSet::All(e.num_features())) - g({}) == 1,
            std::string(name) + " efficiency");
    o.detail << name << " sv_a=" << Str(sv) << "; ";
  }
}

void GameAxioms(Outcome& o) {
  long checks = 0;
  for (const auto& rp : Corpus()) {
    auto e = ProblemOf(rp);
    const int m = e.num_features();
    const std::uint64_t full = (std::uint64_t{1} << m) - 1;
    for (const Game& g : {ExpectedValueGame(e), WaxpGame(e, Universe::ModelAware())}) {
      Vec sv = ShapleyExact(g).scores;
      o.Check(sv == ShapleyViaPermutations(g).scores, "exact vs permutations");
      o.Check(std::accumulate(sv.begin(), sv.end(), Rational(0)) ==
                  g(FeatureSet::All(m)) - g({}),
              "efficiency");
      for (int i = 1; i <= m; ++i) {
        bool null = true;
        for (std::uint64_t mask = 0; mask <= full; ++mask) {
          auto s = FeatureSet::FromMask(mask);
          if (!s.contains(i) && g(s.with(i)) != g(s)) null = false;
        }
        if (null) {
          o.Check(sv[i - 1] == 0, "null player");
          ++checks;
        }
        for (int j = i + 1; j <= m; ++j) {
          bool symmetric = true;
          for (std::uint64_t mask = 0; mask <= full; ++mask) {
            auto s = FeatureSet::FromMask(mask);
            if (!s.contains(i) && !s.contains(j) && g(s.with(i)) != g(s.with(j))) {
              symmetric = false;
            }
          }
          if (symmetric) {
            o.Check(sv[i - 1] == sv[j - 1], "symmetry");
            ++checks;
          }
        }
      }
      checks += 2;
    }
  }
  o.detail << Corpus().size() << " models, both games, " << checks << " axiom checks";
}

void Duality(Outcome& o) {
  std::size_t families = 0;
  for (const auto& rp : Corpus()) {
    auto e = ProblemOf(rp);
    const int m = e.num_features();
    Explainer x(e, Universe::ModelAware());
    auto cxps = x.EnumerateCxps();
    auto brute_axps = BruteMinimal(m, [&](const FeatureSet& s) { return BruteWaxp(e, s); });
    o.Check(cxps == BruteMinimal(m, [&](const FeatureSet& s) { return BruteWcxp(e, s); }),
            "CXp enumeration");
    o.Check(AxpsFromCxps(cxps) == brute_axps, "MHS(CXps) vs brute-force AXps");
    o.Check(MinimalHittingSets(MinimalHittingSets(cxps)) == cxps, "double MHS on CXps");
    o.Check(MinimalHittingSets(MinimalHittingSets(brute_axps)) == brute_axps,
            "double MHS on AXps");
    families += 2;
  }
  std::mt19937_64 rng(77);
  for (int k = 0; k < 200; ++k) {
    const int m = 1 + static_cast<int>(rng() % 6);
    std::vector<FeatureSet> raw;
    for (int j = 0, n = 1 + static_cast<int>(rng() % 5); j < n; ++j) {
      raw.push_back(FeatureSet::FromMask(1 + rng() % ((std::uint64_t{1} << m) - 1)));
    }
    auto family = BruteMinimal(m, [&](const FeatureSet& s) {
      return std::find(raw.begin(), raw.end(), s) != raw.end();
    });
    o.Check(MinimalHittingSets(MinimalHittingSets(family)) == family, "double MHS random");
    ++families;
  }
  o.detail << families << " set families round-tripped";
}

void ZeroScoreIffIrrelevant(Outcome& o) {
  int counterexamples = 0;
  int features = 0;
  for (const auto& rp : Corpus()) {
    auto e = ProblemOf(rp);
    auto sv = ShapleyExact(WaxpGame(e, Universe::ModelAware()));
    FeatureSet relevant = RelevantFeatures(e, Universe::ModelAware());
    for (int i = 1; i <= e.num_features(); ++i) {
      ++features;
      if ((sv[i] == 0) != !relevant.contains(i)) ++counterexamples;
    }
  }
  o.Check(counterexamples == 0, std::to_string(counterexamples) + " counterexamples");
  o.detail << features << " features, " << counterexamples << " counterexamples";
}

void CgtCalibration(Outcome& o) {
  const int runs = 200;
  const Rational eps(1, 20);
  for (auto [name, game] : {std::pair{"E1 nu_a", WaxpGame(testing::E1(), Universe::ModelAware())},
                            std::pair{"E3 nu_e", ExpectedValueGame(testing::E3())}}) {
    auto exact = ShapleyExact(game);
    int failures = 0;
    std::uint64_t samples = 0;
    for (int r = 0; r < runs; ++r) {
      CgtConfig config;
      config.seed = 5000 + r;
      auto est = CgtEstimate(game, config);
      samples = est.samples;
      Rational worst = 0;
      for (std::size_t i = 0; i < exact.size(); ++i) {
        worst = std::max(worst, Abs(est.scores.scores[i] - exact.scores[i]));
      }
      if (worst > eps) ++failures;
    }
    const double rate = static_cast<double>(failures) / runs;
    o.Check(rate <= 0.09, std::string(name) + " failure rate " + std::to_string(rate));
    o.detail << name << ": T=" << samples << ", " << failures << "/" << runs << " failures; ";
  }
}

void Divergence(Outcome& o) {
  auto e1 = testing::E1();
  auto universe = Universe::ModelAware();
  auto cmp = CompareScores(e1, universe,
                           {ParseMethodSpec("expected/exact"), ParseMethodSpec("waxp/exact")},
                           Rational(1, 2), 3);
  const auto& a = cmp.signed_rankings[0];
  const auto& b = cmp.signed_rankings[1];
  o.Check(a != b, "signed rankings coincide");
  const Rational rbo = cmp.pairs[0].rbo_signed;
  o.Check(rbo == Rational(15, 32), "rbo(p=1/2, k=3) = " + ToDecimal(rbo, 5) + ", expected 0.46875");

  // Batch report shape: one summary per method pair with min/max/mean.
  std::vector<Comparison> batch;
  for (const Point& x : AllPoints(e1.model().space())) {
    ExplanationProblem e(e1.model_ptr(), x, SimilarityConfig::ClassEquality());
    batch.push_back(CompareScores(e, universe, {ParseMethodSpec("expected/exact"),
                                                ParseMethodSpec("waxp/exact")}));
  }
  auto summary = SummarizeBatch(batch);
  RunReport report;
  for (const auto& s : summary) {
    report.rbo_summary.push_back({s.first, s.second, "signed", s.rbo_signed.min,
                                  s.rbo_signed.max, s.rbo_signed.mean});
  }
  auto doc = ToJson(report);
  bool shaped = doc.contains("rbo_summary") && doc["rbo_summary"].size() == 1;
  for (const char* key : {"min", "max", "mean"}) {
    shaped = shaped && doc["rbo_summary"][0].contains(key);
  }
  o.Check(shaped, "batch summary lacks min/max/mean");
  o.detail << "signed [2,1,3] vs [1,2,3], rbo=" << ToString(rbo) << " ("
           << ToDecimal(rbo, 5) << "); batch of " << batch.size() << " summarised";
}

void AgnosticEquivalence(Outcome& o) {
  for (auto [name, e] : {std::pair{"E1", testing::E1()}, std::pair{"E2", E2Delta0()}}) {
    const int m = e.num_features();
    Explainer aware(e, Universe::ModelAware());
    Explainer agnostic(e, Universe::ModelAgnostic(SampleFromSpace(e.model())));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      auto s = FeatureSet::FromMask(mask);
      o.Check(aware.IsWaxp(s) == agnostic.IsWaxp(s), std::string(name) + " WAXp");
      o.Check(aware.IsWcxp(s) == agnostic.IsWcxp(s), std::string(name) + " WCXp");
    }
    o.Check(aware.EnumerateAxps() == agnostic.EnumerateAxps(), std::string(name) + " AXps");
    o.Check(aware.EnumerateCxps() == agnostic.EnumerateCxps(), std::string(name) + " CXps");
    Universe sample = Universe::ModelAgnostic(SampleFromSpace(e.model()));
    o.Check(ShapleyExact(WaxpGame(e, Universe::ModelAware())).scores ==
                ShapleyExact(WaxpGame(e, sample)).scores,
            std::string(name) + " nu_a scores");
  }
  o.detail << "E1 and E2 with the full feature space as sample";
}

void ValueIndependence(Outcome& o) {
  auto e1 = testing::E1();
  auto universe = Universe::ModelAware();
  const Vec sv_a = ShapleyExact(WaxpGame(e1, universe)).scores;
  const Vec sv_e = ShapleyExact(ExpectedValueGame(e1)).scores;
  std::mt19937_64 rng(4242);
  int changed = 0;
  for (int k = 0; k < 10; ++k) {
    std::vector<int> pool(41);
    std::iota(pool.begin(), pool.end(), -20);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::map<Value, Value> relabel;
    int j = 0;
    for (const Value& label : OutputValues(e1.model())) {
      relabel.emplace(label, Value(Rational(pool[j++])));
    }
    auto r = RelabelProblem(e1, relabel);
    o.Check(ShapleyExact(WaxpGame(r, universe)).scores == sv_a, "sv_a changed");
    o.Check(CheckValueIndependence(e1, relabel), "value independence check");
    if (ShapleyExact(ExpectedValueGame(r)).scores != sv_e) ++changed;
  }
  o.Check(changed > 0, "no relabelling changed sv_e");
  o.detail << "sv_a fixed under 10 maps; sv_e changed under " << changed;
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(Outcome&)> run;
  double budget_seconds;
};

}  // namespace
}  // namespace logshap

int main(int argc, char** argv) {
  using namespace logshap;
  const std::vector<Criterion> criteria{
      {1, "box expected values", BoxExpectations, 1},
      {2, "box Shapley scores", BoxScores, 0},
      {3, "expected-value scores vs relevancy", ExpectedScoresVsRelevancy, 0},
      {4, "WAXp game scores", CorrectedScores, 0},
      {5, "game axioms on random models", GameAxioms, 60},
      {6, "AXp/CXp duality", Duality, 0},
      {7, "zero score iff irrelevant", ZeroScoreIffIrrelevant, 0},
      {8, "CGT calibration", CgtCalibration, 120},
      {9, "ranking divergence on E1", Divergence, 0},
      {10, "model-agnostic equivalence", AgnosticEquivalence, 0},
      {11, "value independence", ValueIndependence, 0},
  };
  int only = 0;
  for (int k = 1; k < argc; ++k) {
    if (std::string(argv[k]) == "--only" && k + 1 < argc) only = std::atoi(argv[++k]);
  }
  int failed = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.Check(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0) {
      o.Check(seconds < c.budget_seconds, "over the time budget");
    }
    if (!o.pass) ++failed;
    std::ostringstream secs;
    secs.precision(2);
    secs << std::fixed << seconds;
    std::string detail = o.detail.str();
    while (!detail.empty() && (detail.back() == ' ' || detail.back() == ';')) detail.pop_back();
    std::cout << "criterion " << (c.id < 10 ? " " : "") << c.id << ": "
              << (o.pass ? "PASS" : "FAIL") << "  " << c.name << " [" << secs.str()
              << " s] " << detail;
    if (!o.pass) std::cout << " | failed: " << o.failure;
    std::cout << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
