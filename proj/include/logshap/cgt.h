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

#ifndef LOGSHAP_CGT_H_
#define LOGSHAP_CGT_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "logshap/games.h"
#include "logshap/rational.h"

namespace logshap {

struct CgtConfig {
  Rational epsilon{1, 20};
  Rational alpha{1, 20};
  std::uint64_t seed = 0;
  // Overrides the Hoeffding sample count.
  std::optional<std::uint64_t> samples;
  // Overrides the game's marginal range.
  std::optional<Rational> range;
  int threads = 0;
};

struct CgtResult {
  ScoreVector scores;
  std::uint64_t samples = 0;
  Rational range;
};

// Uniform random permutations of {1..m}. Permutation t depends only on
// (seed, t), so any partition of the index range across workers reproduces
// the sequential stream.
class PermutationStream {
 public:
  PermutationStream(std::uint64_t seed, int m);

  std::vector<int> At(std::uint64_t index) const;
  std::vector<int> Next() { return At(next_++); }

 private:
  std::uint64_t seed_;
  int m_;
  std::uint64_t next_ = 0;
};

// T = ceil(r^2 ln(2m / alpha) / (2 eps^2)): Hoeffding per feature plus a
// union bound over the m features.
std::uint64_t CgtSampleCount(int m, const Rational& range,
                             const Rational& epsilon, const Rational& alpha);

// Permutation-sampling Shapley estimate with
// P(max_i |est_i - Sh_i| <= eps) >= 1 - alpha.
CgtResult CgtEstimate(const Game& game, const CgtConfig& config);

}  // namespace logshap

#endif  // LOGSHAP_CGT_H_
