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

#include <gtest/gtest.h>

#include <random>

#include "logshap/errors.h"
#include "logshap/explanations.h"
#include "logshap/io.h"
#include "test_util.h"

namespace logshap {
namespace {

using testing::BruteMhs;
using testing::BruteMinimal;
using testing::BruteWaxp;
using testing::BruteWcxp;
using testing::E1;
using testing::E2;
using testing::E3;

Explainer Aware(const ExplanationProblem& e) {
  return Explainer(e, Universe::ModelAware());
}

// Three-feature parity: flipping any single feature changes the class.
ExplanationProblem Parity() {
  std::vector<Feature> f;
  for (int id = 1; id <= 3; ++id) f.push_back({id, "b", DiscreteDomain{{0, 1}}});
  std::vector<Value> table;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) table.emplace_back(Rational((a + b + c) % 2));
  auto model = std::make_shared<const Model>(
      TabularModel(FeatureSpace(f), table, ValueKind::kNumeric), Task::kClassification);
  return ExplanationProblem(model, {0, 1, 1}, SimilarityConfig::ClassEquality());
}

TEST(SimilarityTest, Examples) {
  auto e3 = E3();
  EXPECT_TRUE(Similar(e3, {1, 1}));
  EXPECT_FALSE(Similar(e3, {0, 0}));
  EXPECT_TRUE(Similar(e3, {Rational(9, 10), 1}));
  EXPECT_THROW(SimilarityConfig::RegressionThreshold(-1), ValidationError);
}

TEST(SimilarityTest, SimilarSetGrowsWithDelta) {
  auto model = testing::Load("e3_box.json");
  std::vector<Point> probes;
  for (int a = -2; a <= 6; ++a)
    for (int b = -2; b <= 6; ++b) probes.push_back({Rational(a) / 4, Rational(b) / 4});
  const std::vector<Rational> deltas{0, Rational(1, 5), Rational(1, 2), 1, 3};
  for (std::size_t k = 0; k + 1 < deltas.size(); ++k) {
    ExplanationProblem lo(model, {1, 1}, SimilarityConfig::RegressionThreshold(deltas[k]));
    ExplanationProblem hi(model, {1, 1}, SimilarityConfig::RegressionThreshold(deltas[k + 1]));
    for (const Point& x : probes) {
      if (Similar(lo, x)) {
        EXPECT_TRUE(Similar(hi, x));
      }
    }
  }
}

TEST(SimilarityTest, ClassEqualitySurvivesInjectiveRelabelling) {
  auto e1 = E1();
  std::map<Value, Value> relabel{{Value(Rational(0)), Value(Rational(40))},
                                 {Value(Rational(1)), Value(Rational(-3))},
                                 {Value(Rational(7)), Value(Rational(0))}};
  auto relabelled = std::make_shared<const Model>(RelabelOutputs(e1.model(), relabel));
  ExplanationProblem r(relabelled, e1.instance().point, SimilarityConfig::ClassEquality());
  for (const Point& x : testing::AllPoints(e1.model().space())) {
    EXPECT_EQ(Similar(e1, x), Similar(r, x));
  }
}

TEST(ExplanationsTest, WeakExplanationExamples) {
  auto x1 = Aware(E1());
  EXPECT_TRUE(x1.IsWaxp({1}));
  EXPECT_TRUE(x1.IsWaxp({1, 2, 3}));
  EXPECT_FALSE(x1.IsWaxp({2, 3}));
  EXPECT_FALSE(x1.IsWaxp({}));
  EXPECT_TRUE(x1.IsWcxp({1}));
  EXPECT_FALSE(x1.IsWcxp({}));
  auto x2 = Aware(E2());
  EXPECT_FALSE(x2.IsWcxp({2}));
  EXPECT_FALSE(x2.IsWcxp({}));
  EXPECT_TRUE(x2.IsWaxp({1, 2}));
}

TEST(ExplanationsTest, ExtractionExamples) {
  auto x1 = Aware(E1());
  EXPECT_EQ(x1.ExtractAxp({1, 2, 3}), (FeatureSet{1}));
  EXPECT_EQ(x1.ExtractAxp({1}), (FeatureSet{1}));
  EXPECT_THROW(x1.ExtractAxp({2, 3}), PreconditionError);
  auto x2 = Aware(E2());
  EXPECT_EQ(x2.ExtractCxp({1, 2}), (FeatureSet{1}));
  EXPECT_EQ(x2.ExtractCxp({1}), (FeatureSet{1}));
  EXPECT_THROW(x2.ExtractCxp({2}), PreconditionError);
}

TEST(ExplanationsTest, EnumerationExamples) {
  const std::vector<FeatureSet> just1{{1}};
  EXPECT_EQ(Aware(E1()).EnumerateCxps(), just1);
  EXPECT_EQ(Aware(E2()).EnumerateCxps(), just1);
  EXPECT_EQ(Aware(E1()).EnumerateAxps(), just1);
  EXPECT_EQ(Aware(E1("e1_tree.json")).EnumerateCxps(), just1);
  EXPECT_EQ(Aware(E2("e2_tree.json")).EnumerateAxps(), just1);
  EXPECT_EQ(Aware(E1()).RelevantFeatures(), (FeatureSet{1}));
  EXPECT_EQ(Aware(E2()).RelevantFeatures(), (FeatureSet{1}));

  auto parity = Aware(Parity());
  EXPECT_EQ(parity.EnumerateCxps(), (std::vector<FeatureSet>{{1}, {2}, {3}}));
  EXPECT_EQ(parity.EnumerateAxps(), (std::vector<FeatureSet>{{1, 2, 3}}));
  EXPECT_EQ(parity.RelevantFeatures(), (FeatureSet{1, 2, 3}));
}

TEST(ExplanationsTest, MinimalHittingSetExamples) {
  EXPECT_EQ(MinimalHittingSets({{1}}), (std::vector<FeatureSet>{{1}}));
  EXPECT_EQ(MinimalHittingSets({{1}, {2}}), (std::vector<FeatureSet>{{1, 2}}));
  EXPECT_EQ(MinimalHittingSets({{1, 2}}), (std::vector<FeatureSet>{{1}, {2}}));
  EXPECT_THROW(MinimalHittingSets({}), PreconditionError);
  EXPECT_THROW(MinimalHittingSets({{}}), PreconditionError);
}

TEST(ExplanationsTest, BoxModelExplanations) {
  auto tight = Aware(E3(Rational(1, 5)));
  EXPECT_TRUE(tight.IsWaxp({1}));
  EXPECT_FALSE(tight.IsWaxp({2}));
  EXPECT_TRUE(tight.IsWcxp({1}));
  EXPECT_FALSE(tight.IsWcxp({2}));
  EXPECT_EQ(tight.EnumerateCxps(), (std::vector<FeatureSet>{{1}}));
  EXPECT_EQ(tight.EnumerateAxps(), (std::vector<FeatureSet>{{1}}));

  // With delta = 2 only the x2 - 2 piece (down to -5/2) is dissimilar.
  auto loose = Aware(E3(2));
  EXPECT_EQ(loose.EnumerateCxps(), (std::vector<FeatureSet>{{1, 2}}));
  EXPECT_EQ(loose.EnumerateAxps(), (std::vector<FeatureSet>{{1}, {2}}));

  // Fixing x2 = 1 leaves the x2 + 1 piece at distance exactly 1; the
  // threshold is inclusive.
  auto half = Aware(E3(Rational(1, 2)));
  EXPECT_FALSE(half.IsWaxp({2}));
  auto one = Aware(E3(1));
  EXPECT_TRUE(one.IsWaxp({2}));

  EXPECT_TRUE(Aware(E3(100)).ConstantOnUniverse());
  EXPECT_TRUE(Aware(E3(100)).EnumerateCxps().empty());
}

TEST(ExplanationsTest, WitnessesAreDissimilarAndAgreeOffTheFreedSet) {
  auto e3 = E3();
  auto x = Aware(e3);
  auto w = x.Witness({1});
  ASSERT_TRUE(w.has_value());
  EXPECT_FALSE(Similar(e3, *w));
  EXPECT_EQ((*w)[1], Rational(1));
  EXPECT_FALSE(x.Witness({2}).has_value());

  auto e1 = E1();
  auto w1 = Aware(e1).Witness({1});
  ASSERT_TRUE(w1.has_value());
  EXPECT_FALSE(Similar(e1, *w1));
  EXPECT_TRUE(testing::AgreesOn(*w1, e1.instance().point, {2, 3}));
}

TEST(ExplanationsTest, PredicatesMatchBruteForceOnRandomModels) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    auto rp = testing::RandomTabular(rng);
    ExplanationProblem e(rp.model, rp.instance, SimilarityConfig::ClassEquality());
    auto x = Aware(e);
    const int m = e.num_features();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      FeatureSet s = FeatureSet::FromMask(mask);
      ASSERT_EQ(x.IsWaxp(s), BruteWaxp(e, s));
      ASSERT_EQ(x.IsWcxp(s), BruteWcxp(e, s));
      // WAXp(S) iff F \ S is not a WCXp.
      ASSERT_EQ(x.IsWaxp(s), !x.IsWcxp(s.Complement(m)));
      // Both predicates are monotone.
      for (int i = 1; i <= m; ++i) {
        if (x.IsWaxp(s)) {
          ASSERT_TRUE(x.IsWaxp(s.with(i)));
        }
        if (x.IsWcxp(s)) {
          ASSERT_TRUE(x.IsWcxp(s.with(i)));
        }
      }
    }
    auto axps = BruteMinimal(m, [&](const FeatureSet& s) { return BruteWaxp(e, s); });
    auto cxps = BruteMinimal(m, [&](const FeatureSet& s) { return BruteWcxp(e, s); });
    EXPECT_EQ(x.EnumerateAxps(), axps);
    EXPECT_EQ(x.EnumerateCxps(), cxps);
    EXPECT_EQ(AxpsFromCxps(cxps), axps);
    EXPECT_EQ(MinimalHittingSets(axps), cxps);

    auto all = FeatureSet::All(m);
    FeatureSet axp = x.ExtractAxp(all);
    EXPECT_TRUE(std::find(axps.begin(), axps.end(), axp) != axps.end());
    FeatureSet cxp = x.ExtractCxp(all);
    EXPECT_TRUE(std::find(cxps.begin(), cxps.end(), cxp) != cxps.end());
  }
}

TEST(ExplanationsTest, DoubleHittingSetIsIdentityOnAntichains) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 5);
    std::vector<FeatureSet> family;
    const int count = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < count; ++k) {
      std::uint64_t mask = rng() & ((std::uint64_t{1} << m) - 1);
      if (mask == 0) mask = 1;
      family.push_back(FeatureSet::FromMask(mask));
    }
    // Reduce to its minimal members so the round trip is well defined.
    auto antichain = BruteMinimal(m, [&](const FeatureSet& s) {
      return std::find(family.begin(), family.end(), s) != family.end();
    });
    auto mhs = MinimalHittingSets(antichain);
    EXPECT_EQ(mhs, BruteMhs(antichain, m));
    EXPECT_EQ(MinimalHittingSets(mhs), antichain);
  }
}

TEST(ExplanationsTest, FullSampleAgnosticMatchesAware) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    auto rp = testing::RandomTabular(rng);
    ExplanationProblem e(rp.model, rp.instance, SimilarityConfig::ClassEquality());
    auto aware = Aware(e);
    Explainer agnostic(e, Universe::ModelAgnostic(SampleFromSpace(*rp.model)));
    const int m = e.num_features();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      FeatureSet s = FeatureSet::FromMask(mask);
      ASSERT_EQ(aware.IsWaxp(s), agnostic.IsWaxp(s));
      ASSERT_EQ(aware.IsWcxp(s), agnostic.IsWcxp(s));
      ASSERT_FALSE(agnostic.IsVacuous(s));
    }
    EXPECT_EQ(aware.EnumerateCxps(), agnostic.EnumerateCxps());
    EXPECT_EQ(aware.EnumerateAxps(), agnostic.EnumerateAxps());
  }
}

TEST(ExplanationsTest, PartialSampleFlagsVacuousExplanations) {
  auto e1 = E1();
  // Only rows with x1 = 0; nothing in the sample agrees with v on feature 1.
  Sample s;
  for (const Point& x : testing::AllPoints(e1.model().space())) {
    if (x[0] == 0) {
      s.rows.push_back(x);
      s.predictions.push_back(Predict(e1.model(), x));
    }
  }
  Explainer x(e1, Universe::ModelAgnostic(s));
  EXPECT_TRUE(x.IsWaxp({1}));
  EXPECT_TRUE(x.IsVacuous({1}));
  EXPECT_FALSE(x.IsVacuous({2}));
  EXPECT_THROW(Universe::ModelAgnostic(Sample{}), ValidationError);
}

}  // namespace
}  // namespace logshap
