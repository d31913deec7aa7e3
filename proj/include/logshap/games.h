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

#ifndef LOGSHAP_GAMES_H_
#define LOGSHAP_GAMES_H_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "logshap/explanations.h"
#include "logshap/feature_set.h"
#include "logshap/rational.h"
#include "logshap/similarity.h"

namespace logshap {

enum class GameKind { kExpectedValue, kWaxpBased, kCustom };
enum class ScoreMethod { kExact, kCgt };

std::string ToString(GameKind kind);
std::string ToString(ScoreMethod method);

// Cooperative game (N, nu) over players 1..m. Characteristic-function values
// are memoised per game; copies share the memo, and concurrent evaluation
// is safe.
class Game {
 public:
  using CharFn = std::function<Rational(const FeatureSet&)>;

  // `marginal_range` is the width of an interval known to contain every
  // marginal contribution nu(S + i) - nu(S); sampling estimators need it.
  Game(int players, CharFn charfn, GameKind kind,
       std::optional<Rational> marginal_range = std::nullopt);

  int players() const { return players_; }
  GameKind kind() const { return kind_; }
  const std::optional<Rational>& marginal_range() const {
    return marginal_range_;
  }

  Rational operator()(const FeatureSet& coalition) const;

 private:
  struct Memo;

  int players_;
  CharFn charfn_;
  GameKind kind_;
  std::optional<Rational> marginal_range_;
  std::shared_ptr<Memo> memo_;
};

// nu_e(S) = E[pi(x) | x_S = v_S].
Rational CfExpected(const ExplanationProblem& problem, const FeatureSet& fixed);
// nu_a(S) = 1 if S is a WAXp, else 0.
int CfWaxp(const Explainer& explainer, const FeatureSet& fixed);
int CfWaxp(const ExplanationProblem& problem, const Universe& universe,
           const FeatureSet& fixed);

// Marginal range 2 (max - min) over the model outputs. Throws
// NumericRequired for categorical models.
Game ExpectedValueGame(const ExplanationProblem& problem);
// Simple game with marginal range 1.
Game WaxpGame(const ExplanationProblem& problem, const Universe& universe);

struct ScoreVector {
  std::vector<Rational> scores;  // scores[i-1] belongs to feature i.
  GameKind game = GameKind::kCustom;
  ScoreMethod method = ScoreMethod::kExact;

  std::size_t size() const { return scores.size(); }
  const Rational& operator[](int id) const { return scores.at(id - 1); }
  bool operator==(const ScoreVector& other) const = default;
};

inline constexpr int kMaxExactPlayers = 24;
inline constexpr int kMaxPermutationPlayers = 10;

// Sh(i) = sum_{S subset N\{i}} |S|!(m-|S|-1)!/m! (nu(S+i) - nu(S)).
// Evaluates nu on all 2^m coalitions (in parallel when threads > 1).
// Throws SizeError for m > kMaxExactPlayers.
ScoreVector ShapleyExact(const Game& game, int threads = 0);

// Average marginal contribution over all m! orderings. Independent oracle
// for ShapleyExact; throws SizeError for m > kMaxPermutationPlayers.
ScoreVector ShapleyViaPermutations(const Game& game);

struct FeatureCompliance {
  int feature = 0;
  Rational score;
  bool relevant = false;
  // relevant with a zero score, or irrelevant with a non-zero score.
  bool misleading = false;
};

struct ComplianceReport {
  std::vector<FeatureCompliance> features;

  bool compliant() const;
  FeatureSet misleading() const;
};

// Compares (score == 0) with irrelevancy for every feature.
ComplianceReport CheckCompliance(const Explainer& explainer,
                                 const ScoreVector& scores);
ComplianceReport CheckCompliance(const ExplanationProblem& problem,
                                 const Universe& universe,
                                 const ScoreVector& scores);

// Problem with every model output (and the instance prediction) mapped
// through `relabel`.
ExplanationProblem RelabelProblem(const ExplanationProblem& problem,
                                  const std::map<Value, Value>& relabel);

// Whether the WAXp-based scores are unchanged when outputs are relabelled.
// Requires class-equality similarity and an injective map.
bool CheckValueIndependence(const ExplanationProblem& problem,
                            const std::map<Value, Value>& relabel);

// Number of threads to use when the caller passes 0: LOGSHAP_THREADS if set,
// otherwise the hardware concurrency.
int DefaultThreads();

}  // namespace logshap

#endif  // LOGSHAP_GAMES_H_
