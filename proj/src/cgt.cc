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

#include "logshap/cgt.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "logshap/errors.h"

namespace logshap {
namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-keyed generator: the stream for permutation t is a function of
// (seed, t) only.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t counter)
      : state_(SplitMix64(seed ^ SplitMix64(counter ^ 0x5851f42d4c957f2dULL))) {}

  std::uint64_t Next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return SplitMix64(state_);
  }

  // Uniform in [0, bound) without modulo bias (Lemire).
  std::uint64_t Below(std::uint64_t bound) {
    unsigned __int128 product =
        static_cast<unsigned __int128>(Next()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<unsigned __int128>(Next()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace

PermutationStream::PermutationStream(std::uint64_t seed, int m)
    : seed_(seed), m_(m) {
  if (m_ < 1) throw ValidationError("permutations need m >= 1");
}

std::vector<int> PermutationStream::At(std::uint64_t index) const {
  std::vector<int> perm(m_);
  for (int i = 0; i < m_; ++i) perm[i] = i + 1;
  CounterRng rng(seed_, index);
  for (int i = m_ - 1; i > 0; --i) {
    auto j = static_cast<int>(rng.Below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

std::uint64_t CgtSampleCount(int m, const Rational& range, const Rational& epsilon,
                             const Rational& alpha) {
  if (!(epsilon > 0)) throw ValidationError("epsilon must be positive");
  if (!(alpha > 0 && alpha < 1)) throw ValidationError("alpha must lie in (0, 1)");
  if (range < 0) throw ValidationError("range must be non-negative");
  const long double r = ToDouble(range);
  const long double eps = ToDouble(epsilon);
  const long double a = ToDouble(alpha);
  const long double t =
      std::ceil(r * r * std::log(2.0L * m / a) / (2.0L * eps * eps));
  if (t > 1e12L) throw SizeError("CGT sample count exceeds 10^12");
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(t));
}

CgtResult CgtEstimate(const Game& game, const CgtConfig& config) {
  const int m = game.players();
  CgtResult result;
  if (config.range) {
    result.range = *config.range;
  } else if (game.marginal_range()) {
    result.range = *game.marginal_range();
  } else {
    throw ComputationError(
        "game has no known marginal range; supply an explicit range");
  }
  result.samples = config.samples
                       ? *config.samples
                       : CgtSampleCount(m, result.range, config.epsilon, config.alpha);
  if (result.samples == 0) throw ValidationError("sample count must be positive");

  const PermutationStream stream(config.seed, m);
  int threads = config.threads > 0 ? config.threads : DefaultThreads();
  threads = static_cast<int>(std::min<std::uint64_t>(threads, result.samples));

  std::vector<std::vector<Rational>> partial(threads, std::vector<Rational>(m));
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    const std::uint64_t chunk = result.samples / threads;
    const std::uint64_t extra = result.samples % threads;
    std::uint64_t begin = 0;
    for (int t = 0; t < threads; ++t) {
      const std::uint64_t end = begin + chunk + (static_cast<std::uint64_t>(t) < extra);
      workers.emplace_back([&, t, begin, end] {
        try {
          const Rational empty = game(FeatureSet());
          for (std::uint64_t k = begin; k < end; ++k) {
            FeatureSet coalition;
            Rational previous = empty;
            for (int id : stream.At(k)) {
              coalition.insert(id);
              Rational current = game(coalition);
              partial[t][id - 1] += current - previous;
              previous = std::move(current);
            }
          }
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
      begin = end;
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  result.scores = ScoreVector{std::vector<Rational>(m), game.kind(), ScoreMethod::kCgt};
  for (int t = 0; t < threads; ++t) {
    for (int i = 0; i < m; ++i) result.scores.scores[i] += partial[t][i];
  }
  const Rational samples(std::to_string(result.samples));
  for (auto& s : result.scores.scores) s /= samples;
  return result;
}

}  // namespace logshap
