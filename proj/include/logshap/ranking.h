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

#ifndef LOGSHAP_RANKING_H_
#define LOGSHAP_RANKING_H_

#include <string>
#include <vector>

#include "logshap/cgt.h"
#include "logshap/explanations.h"
#include "logshap/games.h"
#include "logshap/rational.h"

namespace logshap {

enum class RankMode { kSigned, kAbsolute };

std::string ToString(RankMode mode);

struct Ranking {
  std::vector<int> order;  // feature ids, most important first.
  RankMode mode = RankMode::kSigned;

  bool operator==(const Ranking& other) const = default;
};

// Descending by score (or |score|), ties broken by ascending id.
Ranking RankFeatures(const std::vector<Rational>& scores, RankMode mode);
inline Ranking RankFeatures(const ScoreVector& scores, RankMode mode) {
  return RankFeatures(scores.scores, mode);
}

// Truncated rank-biased overlap:
//   (1 - p) sum_{d=1..k} p^{d-1} |top_d(a) & top_d(b)| / d,
// with k clamped to the ranking length. Lies in [0, 1 - p^k].
// Throws ValidationError when the rankings are not permutations of the same
// feature set, or p is outside (0, 1), or k < 1.
Rational Rbo(const Ranking& a, const Ranking& b, const Rational& persistence,
             int depth);

struct MethodSpec {
  GameKind game = GameKind::kExpectedValue;
  ScoreMethod method = ScoreMethod::kExact;
  CgtConfig cgt;

  std::string name() const;  // e.g. "expected/exact".
};

// Parses "expected", "waxp", "expected/cgt", "waxp/exact", ...
MethodSpec ParseMethodSpec(const std::string& text);

ScoreVector ComputeScores(const ExplanationProblem& problem,
                          const Universe& universe, const MethodSpec& method);

struct PairComparison {
  std::string first;
  std::string second;
  Rational rbo_signed;
  Rational rbo_absolute;
};

struct Comparison {
  std::vector<std::string> methods;
  std::vector<ScoreVector> scores;
  std::vector<Ranking> signed_rankings;
  std::vector<Ranking> absolute_rankings;
  std::vector<PairComparison> pairs;  // i < j, row-major.
};

inline const Rational kDefaultPersistence{1, 2};
inline constexpr int kDefaultDepth = 5;

Comparison CompareScores(const ExplanationProblem& problem,
                         const Universe& universe,
                         const std::vector<MethodSpec>& methods,
                         const Rational& persistence = kDefaultPersistence,
                         int depth = kDefaultDepth);

struct Summary {
  Rational min;
  Rational max;
  Rational mean;
};

struct PairSummary {
  std::string first;
  std::string second;
  Summary rbo_signed;
  Summary rbo_absolute;
};

// min/max/mean of each pairwise RBO over a batch of comparisons made with
// the same method list.
std::vector<PairSummary> SummarizeBatch(const std::vector<Comparison>& batch);

}  // namespace logshap

#endif  // LOGSHAP_RANKING_H_
