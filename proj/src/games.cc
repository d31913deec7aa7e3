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

#include "logshap/games.h"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>

#include "logshap/errors.h"

namespace logshap {

struct Game::Memo {
  std::mutex mutex;
  std::unordered_map<std::uint64_t, Rational> values;
};

std::string ToString(GameKind kind) {
  switch (kind) {
    case GameKind::kExpectedValue: return "expected";
    case GameKind::kWaxpBased: return "waxp";
    case GameKind::kCustom: return "custom";
  }
  return "custom";
}

std::string ToString(ScoreMethod method) {
  return method == ScoreMethod::kExact ? "exact" : "cgt";
}

Game::Game(int players, CharFn charfn, GameKind kind,
           std::optional<Rational> marginal_range)
    : players_(players),
      charfn_(std::move(charfn)),
      kind_(kind),
      marginal_range_(std::move(marginal_range)),
      memo_(std::make_shared<Memo>()) {
  if (players_ < 1 || players_ > kMaxFeatures) {
    throw ValidationError("a game needs between 1 and " +
                          std::to_string(kMaxFeatures) + " players");
  }
}

Rational Game::operator()(const FeatureSet& coalition) const {
  {
    std::lock_guard<std::mutex> lock(memo_->mutex);
    auto it = memo_->values.find(coalition.mask());
    if (it != memo_->values.end()) return it->second;
  }
  Rational value = charfn_(coalition);
  std::lock_guard<std::mutex> lock(memo_->mutex);
  return memo_->values.emplace(coalition.mask(), std::move(value)).first->second;
}

Rational CfExpected(const ExplanationProblem& problem, const FeatureSet& fixed) {
  return ConditionalExpectation(problem.model(), problem.instance(), fixed);
}

int CfWaxp(const Explainer& explainer, const FeatureSet& fixed) {
  return explainer.IsWaxp(fixed) ? 1 : 0;
}

int CfWaxp(const ExplanationProblem& problem, const Universe& universe,
           const FeatureSet& fixed) {
  return CfWaxp(Explainer(problem, universe), fixed);
}

Game ExpectedValueGame(const ExplanationProblem& problem) {
  if (problem.model().value_kind() != ValueKind::kNumeric) {
    throw NumericRequired("the expected-value game needs numeric outputs");
  }
  auto [lo, hi] = OutputRange(problem.model());
  return Game(
      problem.num_features(),
      [problem](const FeatureSet& s) { return CfExpected(problem, s); },
      GameKind::kExpectedValue, Rational(2 * (hi - lo)));
}

Game WaxpGame(const ExplanationProblem& problem, const Universe& universe) {
  auto explainer = std::make_shared<const Explainer>(problem, universe);
  return Game(
      problem.num_features(),
      [explainer](const FeatureSet& s) { return Rational(CfWaxp(*explainer, s)); },
      GameKind::kWaxpBased, Rational(1));
}

int DefaultThreads() {
  if (const char* env = std::getenv("LOGSHAP_THREADS")) {
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

ScoreVector ShapleyExact(const Game& game, int threads) {
  const int m = game.players();
  if (m > kMaxExactPlayers) {
    throw SizeError("exact Shapley values support at most " +
                    std::to_string(kMaxExactPlayers) + " players");
  }
  const std::uint64_t count = std::uint64_t{1} << m;
  std::vector<Rational> nu(count);
  if (threads <= 0) threads = DefaultThreads();
  threads = static_cast<int>(std::min<std::uint64_t>(threads, count));
  {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::jthread> workers;
    for (int t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        try {
          for (std::uint64_t s = t; s < count; s += threads) {
            nu[s] = game(FeatureSet::FromMask(s));
          }
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    workers.clear();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // weight[k] = k! (m-k-1)! / m!
  std::vector<Rational> weight(m);
  const Rational total = Factorial(m);
  for (int k = 0; k < m; ++k) {
    weight[k] = Factorial(k) * Factorial(m - k - 1) / total;
  }
  ScoreVector out{std::vector<Rational>(m), game.kind(), ScoreMethod::kExact};
  for (std::uint64_t s = 0; s < count; ++s) {
    const int size = FeatureSet::FromMask(s).size();
    for (int i = 0; i < m; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (s & bit) continue;
      out.scores[i] += weight[size] * (nu[s | bit] - nu[s]);
    }
  }
  return out;
}

ScoreVector ShapleyViaPermutations(const Game& game) {
  const int m = game.players();
  if (m > kMaxPermutationPlayers) {
    throw SizeError("permutation enumeration supports at most " +
                    std::to_string(kMaxPermutationPlayers) + " players");
  }
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 1);
  ScoreVector out{std::vector<Rational>(m), game.kind(), ScoreMethod::kExact};
  const Rational empty = game(FeatureSet());
  do {
    FeatureSet coalition;
    Rational previous = empty;
    for (int id : order) {
      coalition.insert(id);
      Rational current = game(coalition);
      out.scores[id - 1] += current - previous;
      previous = std::move(current);
    }
  } while (std::next_permutation(order.begin(), order.end()));
  const Rational orders = Factorial(m);
  for (auto& s : out.scores) s /= orders;
  return out;
}

bool ComplianceReport::compliant() const {
  return std::none_of(features.begin(), features.end(),
                      [](const FeatureCompliance& f) { return f.misleading; });
}

FeatureSet ComplianceReport::misleading() const {
  FeatureSet out;
  for (const auto& f : features) {
    if (f.misleading) out.insert(f.feature);
  }
  return out;
}

ComplianceReport CheckCompliance(const Explainer& explainer,
                                 const ScoreVector& scores) {
  const int m = explainer.num_features();
  if (scores.size() != static_cast<std::size_t>(m)) {
    throw ValidationError("score vector length does not match the problem");
  }
  const FeatureSet relevant = explainer.RelevantFeatures();
  ComplianceReport report;
  for (int id = 1; id <= m; ++id) {
    FeatureCompliance f;
    f.feature = id;
    f.score = scores[id];
    f.relevant = relevant.contains(id);
    const bool zero = f.score == 0;
    f.misleading = f.relevant == zero;
    report.features.push_back(std::move(f));
  }
  return report;
}

ComplianceReport CheckCompliance(const ExplanationProblem& problem,
                                 const Universe& universe,
                                 const ScoreVector& scores) {
  return CheckCompliance(Explainer(problem, universe), scores);
}

ExplanationProblem RelabelProblem(const ExplanationProblem& problem,
                                  const std::map<Value, Value>& relabel) {
  auto model = std::make_shared<const Model>(RelabelOutputs(problem.model(), relabel));
  return ExplanationProblem(model, problem.instance().point, problem.similarity());
}

bool CheckValueIndependence(const ExplanationProblem& problem,
                            const std::map<Value, Value>& relabel) {
  if (problem.similarity().mode() != SimilarityConfig::Mode::kClassEquality) {
    throw PreconditionError("value independence is defined for class equality");
  }
  std::set<Value> images;
  for (const auto& [from, to] : relabel) {
    if (!images.insert(to).second) {
      throw ValidationError("relabelling map is not injective");
    }
  }
  ExplanationProblem relabelled = RelabelProblem(problem, relabel);
  const Universe universe = Universe::ModelAware();
  return ShapleyExact(WaxpGame(problem, universe)).scores ==
         ShapleyExact(WaxpGame(relabelled, universe)).scores;
}

}  // namespace logshap
