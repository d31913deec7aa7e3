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

#include "logshap/ranking.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "logshap/errors.h"

namespace logshap {

std::string ToString(RankMode mode) {
  return mode == RankMode::kSigned ? "signed" : "absolute";
}

Ranking RankFeatures(const std::vector<Rational>& scores, RankMode mode) {
  std::vector<Rational> key(scores);
  if (mode == RankMode::kAbsolute) {
    for (auto& k : key) k = Abs(k);
  }
  Ranking ranking;
  ranking.mode = mode;
  ranking.order.resize(scores.size());
  std::iota(ranking.order.begin(), ranking.order.end(), 1);
  std::stable_sort(ranking.order.begin(), ranking.order.end(),
                   [&](int a, int b) { return key[a - 1] > key[b - 1]; });
  return ranking;
}

Rational Rbo(const Ranking& a, const Ranking& b, const Rational& persistence,
             int depth) {
  if (!(persistence > 0 && persistence < 1)) {
    throw ValidationError("RBO persistence must lie in (0, 1)");
  }
  if (depth < 1) throw ValidationError("RBO depth must be at least 1");
  std::vector<int> sa(a.order);
  std::vector<int> sb(b.order);
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb || std::adjacent_find(sa.begin(), sa.end()) != sa.end()) {
    throw ValidationError("rankings are not over the same feature set");
  }
  const int k = std::min<int>(depth, static_cast<int>(a.order.size()));
  std::set<int> seen_a;
  std::set<int> seen_b;
  int overlap = 0;
  Rational weight = 1;  // p^{d-1}
  Rational sum = 0;
  for (int d = 1; d <= k; ++d) {
    const int x = a.order[d - 1];
    const int y = b.order[d - 1];
    if (x == y) {
      ++overlap;
    } else {
      if (seen_b.count(x)) ++overlap;
      if (seen_a.count(y)) ++overlap;
    }
    seen_a.insert(x);
    seen_b.insert(y);
    sum += weight * Rational(overlap) / d;
    weight *= persistence;
  }
  return (1 - persistence) * sum;
}

std::string MethodSpec::name() const {
  return ToString(game) + "/" + ToString(method);
}

MethodSpec ParseMethodSpec(const std::string& text) {
  MethodSpec spec;
  const auto slash = text.find('/');
  const std::string game = text.substr(0, slash);
  const std::string method = slash == std::string::npos ? "exact" : text.substr(slash + 1);
  if (game == "expected") {
    spec.game = GameKind::kExpectedValue;
  } else if (game == "waxp") {
    spec.game = GameKind::kWaxpBased;
  } else {
    throw ValidationError("unknown game '" + game + "' (expected|waxp)");
  }
  if (method == "exact") {
    spec.method = ScoreMethod::kExact;
  } else if (method == "cgt") {
    spec.method = ScoreMethod::kCgt;
  } else {
    throw ValidationError("unknown method '" + method + "' (exact|cgt)");
  }
  return spec;
}

ScoreVector ComputeScores(const ExplanationProblem& problem,
                          const Universe& universe, const MethodSpec& method) {
  Game game = method.game == GameKind::kExpectedValue
                  ? ExpectedValueGame(problem)
                  : WaxpGame(problem, universe);
  if (method.method == ScoreMethod::kExact) return ShapleyExact(game);
  return CgtEstimate(game, method.cgt).scores;
}

Comparison CompareScores(const ExplanationProblem& problem,
                         const Universe& universe,
                         const std::vector<MethodSpec>& methods,
                         const Rational& persistence, int depth) {
  Comparison out;
  for (const MethodSpec& method : methods) {
    out.methods.push_back(method.name());
    out.scores.push_back(ComputeScores(problem, universe, method));
    out.signed_rankings.push_back(RankFeatures(out.scores.back(), RankMode::kSigned));
    out.absolute_rankings.push_back(
        RankFeatures(out.scores.back(), RankMode::kAbsolute));
  }
  for (std::size_t i = 0; i < methods.size(); ++i) {
    for (std::size_t j = i + 1; j < methods.size(); ++j) {
      out.pairs.push_back(PairComparison{
          out.methods[i], out.methods[j],
          Rbo(out.signed_rankings[i], out.signed_rankings[j], persistence, depth),
          Rbo(out.absolute_rankings[i], out.absolute_rankings[j], persistence,
              depth)});
    }
  }
  return out;
}

namespace {

void Accumulate(Summary& s, const Rational& value, bool first) {
  if (first) {
    s.min = s.max = s.mean = value;
    return;
  }
  s.min = std::min(s.min, value);
  s.max = std::max(s.max, value);
  s.mean += value;
}

}  // namespace

std::vector<PairSummary> SummarizeBatch(const std::vector<Comparison>& batch) {
  std::vector<PairSummary> out;
  if (batch.empty()) return out;
  for (const Comparison& c : batch) {
    if (c.methods != batch.front().methods) {
      throw ValidationError("batch comparisons use different method lists");
    }
  }
  for (std::size_t p = 0; p < batch.front().pairs.size(); ++p) {
    PairSummary summary;
    summary.first = batch.front().pairs[p].first;
    summary.second = batch.front().pairs[p].second;
    for (std::size_t b = 0; b < batch.size(); ++b) {
      Accumulate(summary.rbo_signed, batch[b].pairs[p].rbo_signed, b == 0);
      Accumulate(summary.rbo_absolute, batch[b].pairs[p].rbo_absolute, b == 0);
    }
    const Rational n(static_cast<unsigned long>(batch.size()));
    summary.rbo_signed.mean /= n;
    summary.rbo_absolute.mean /= n;
    out.push_back(std::move(summary));
  }
  return out;
}

}  // namespace logshap
