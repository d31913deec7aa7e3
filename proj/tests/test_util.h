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

// Shared fixtures and brute-force oracles. The oracles here only use
// Predict() and their own enumeration, never the explanation or game code
// they are checking.

#ifndef LOGSHAP_TESTS_TEST_UTIL_H_
#define LOGSHAP_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "logshap/explanations.h"
#include "logshap/feature_set.h"
#include "logshap/io.h"
#include "logshap/models.h"
#include "logshap/similarity.h"

namespace logshap::testing {

inline std::string DataPath(const std::string& name) {
  return std::string(LOGSHAP_DATA_DIR) + "/" + name;
}

inline std::shared_ptr<const Model> Load(const std::string& name) {
  return LoadModel(DataPath(name));
}

inline ExplanationProblem E1(const std::string& file = "e1_tabular.json") {
  return ExplanationProblem(Load(file), {1, 1, 2}, SimilarityConfig::ClassEquality());
}

inline ExplanationProblem E2(const std::string& file = "e2_tabular.json") {
  return ExplanationProblem(Load(file), {1, 1}, SimilarityConfig::ClassEquality());
}

inline ExplanationProblem E3(Rational delta = Rational(1, 5)) {
  return ExplanationProblem(Load("e3_box.json"), {1, 1},
                            SimilarityConfig::RegressionThreshold(delta));
}

// All points of a discrete space, by an odometer independent of
// ForEachPoint.
inline std::vector<Point> AllPoints(const FeatureSpace& space) {
  std::vector<Point> points{Point{}};
  for (const Feature& f : space.features()) {
    std::vector<Point> next;
    for (const Point& p : points) {
      for (const Rational& v : std::get<DiscreteDomain>(f.domain).values) {
        Point q = p;
        q.push_back(v);
        next.push_back(q);
      }
    }
    points = std::move(next);
  }
  return points;
}

inline bool AgreesOn(const Point& x, const Point& v, const FeatureSet& s) {
  for (int id : s.ids()) {
    if (x[id - 1] != v[id - 1]) return false;
  }
  return true;
}

inline bool SimilarBrute(const ExplanationProblem& e, const Value& out) {
  const Value& p = e.instance().prediction;
  if (e.similarity().mode() == SimilarityConfig::Mode::kClassEquality) return out == p;
  Rational d = out.number() - p.number();
  if (d < 0) d = -d;
  return d <= e.similarity().delta();
}

inline bool BruteWaxp(const ExplanationProblem& e, const FeatureSet& s) {
  for (const Point& x : AllPoints(e.model().space())) {
    if (AgreesOn(x, e.instance().point, s) && !SimilarBrute(e, Predict(e.model(), x))) {
      return false;
    }
  }
  return true;
}

inline bool BruteWcxp(const ExplanationProblem& e, const FeatureSet& y) {
  const FeatureSet fixed = y.Complement(e.num_features());
  for (const Point& x : AllPoints(e.model().space())) {
    if (AgreesOn(x, e.instance().point, fixed) && !SimilarBrute(e, Predict(e.model(), x))) {
      return true;
    }
  }
  return false;
}

// Subset-minimal members of {S : pred(S)} by checking every subset.
template <typename Pred>
std::vector<FeatureSet> BruteMinimal(int m, Pred pred) {
  std::vector<FeatureSet> holds;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    if (pred(FeatureSet::FromMask(mask))) holds.push_back(FeatureSet::FromMask(mask));
  }
  std::vector<FeatureSet> minimal;
  for (const auto& s : holds) {
    bool has_smaller = std::any_of(holds.begin(), holds.end(), [&](const FeatureSet& t) {
      return t != s && t.IsSubsetOf(s);
    });
    if (!has_smaller) minimal.push_back(s);
  }
  Canonicalize(minimal);
  return minimal;
}

// Minimal hitting sets by brute force over subsets of the union.
inline std::vector<FeatureSet> BruteMhs(const std::vector<FeatureSet>& family, int m) {
  return BruteMinimal(m, [&](const FeatureSet& h) {
    return std::all_of(family.begin(), family.end(),
                       [&](const FeatureSet& s) { return s.Intersects(h); });
  });
}

// Random non-constant tabular classifier with m <= max_m features and
// |D_i| <= max_domain, numeric labels drawn from {0..labels-1}.
struct RandomProblem {
  std::shared_ptr<const Model> model;
  Point instance;
};

inline RandomProblem RandomTabular(std::mt19937_64& rng, int max_m = 5,
                                   int max_domain = 3, int labels = 3) {
  std::uniform_int_distribution<int> m_dist(1, max_m);
  std::uniform_int_distribution<int> d_dist(2, max_domain);
  std::uniform_int_distribution<int> label_dist(0, labels - 1);
  while (true) {
    const int m = m_dist(rng);
    std::vector<Feature> features;
    std::size_t n = 1;
    for (int id = 1; id <= m; ++id) {
      DiscreteDomain d;
      const int size = d_dist(rng);
      for (int k = 0; k < size; ++k) d.values.emplace_back(k);
      n *= static_cast<std::size_t>(size);
      features.push_back(Feature{id, "f" + std::to_string(id), d});
    }
    std::vector<Value> table;
    for (std::size_t i = 0; i < n; ++i) table.emplace_back(Rational(label_dist(rng)));
    if (std::all_of(table.begin(), table.end(),
                    [&](const Value& v) { return v == table.front(); })) {
      continue;
    }
    FeatureSpace space(features);
    auto points = AllPoints(space);
    Point instance = points[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)];
    auto model = std::make_shared<const Model>(
        TabularModel(space, std::move(table), ValueKind::kNumeric), Task::kClassification);
    return {model, instance};
  }
}

}  // namespace logshap::testing

#endif  // LOGSHAP_TESTS_TEST_UTIL_H_
