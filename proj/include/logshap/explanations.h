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

#ifndef LOGSHAP_EXPLANATIONS_H_
#define LOGSHAP_EXPLANATIONS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "logshap/feature_set.h"
#include "logshap/models.h"
#include "logshap/similarity.h"

namespace logshap {

// Finite record of model behaviour: rows d_j with predictions p_j.
struct Sample {
  std::vector<Point> rows;
  std::vector<Value> predictions;
};

// Domain of quantification for explanation predicates. Model-aware
// universes range over the whole feature space; model-agnostic ones over
// the rows of a sample.
class Universe {
 public:
  static Universe ModelAware() { return Universe(); }
  // Throws ValidationError on an empty sample or mismatched lengths.
  static Universe ModelAgnostic(Sample sample);

  bool model_aware() const { return !sample_.has_value(); }
  const Sample& sample() const { return *sample_; }

 private:
  Universe() = default;

  std::optional<Sample> sample_;
};

// Answers WAXp/WCXp queries for one problem over one universe.
//
// Discrete model-aware and all model-agnostic universes are reduced to the
// agreement masks of the dissimilar points: a point x "agrees" with v on
// the features where x_i = v_i. Then
//   WAXp(S)  <=>  no dissimilar x agrees with v on all of S,
//   WCXp(Y)  <=>  some dissimilar x agrees with v on all of F \ Y.
// Box-piecewise models are answered cell by cell from affine extremes at the
// box corners.
class Explainer {
 public:
  Explainer(const ExplanationProblem& problem, Universe universe);

  const ExplanationProblem& problem() const { return problem_; }
  const Universe& universe() const { return universe_; }
  int num_features() const { return m_; }

  bool IsWaxp(const FeatureSet& fixed) const;
  bool IsWcxp(const FeatureSet& freed) const;

  // True when a model-agnostic WAXp check for `fixed` holds only because no
  // sample row matches v on `fixed`.
  bool IsVacuous(const FeatureSet& fixed) const;

  // Deletion-based minimisation in ascending feature-id order. Throws
  // PreconditionError when the seed is not a WAXp (resp. WCXp).
  FeatureSet ExtractAxp(const FeatureSet& seed) const;
  FeatureSet ExtractCxp(const FeatureSet& seed) const;

  // All subset-minimal CXps, canonical order. Empty when the model is
  // constant on the universe (see ConstantOnUniverse).
  std::vector<FeatureSet> EnumerateCxps() const;
  // All subset-minimal AXps, found directly by lattice search on WAXp.
  std::vector<FeatureSet> EnumerateAxps() const;
  // Union of all CXps.
  FeatureSet RelevantFeatures() const;

  // No point of the universe is dissimilar to v.
  bool ConstantOnUniverse() const;

  // A dissimilar universe point that differs from v only on `freed`, if
  // one exists.
  std::optional<Point> Witness(const FeatureSet& freed) const;

 private:
  bool BoxAllSimilar(const FeatureSet& fixed) const;
  std::vector<FeatureSet> MinimalByLattice(bool contrastive) const;

  ExplanationProblem problem_;
  Universe universe_;
  int m_;
  bool box_ = false;
  // Agreement masks of dissimilar points (deduplicated).
  std::vector<std::uint64_t> dissimilar_;
  // Agreement masks of every universe point (model-agnostic only).
  std::vector<std::uint64_t> all_rows_;
};

// Free-function surface mirroring the explainer methods.
bool IsWaxp(const ExplanationProblem& problem, const Universe& universe,
            const FeatureSet& fixed);
bool IsWcxp(const ExplanationProblem& problem, const Universe& universe,
            const FeatureSet& freed);
FeatureSet ExtractAxp(const ExplanationProblem& problem,
                      const Universe& universe, const FeatureSet& seed);
FeatureSet ExtractCxp(const ExplanationProblem& problem,
                      const Universe& universe, const FeatureSet& seed);
std::vector<FeatureSet> EnumerateCxps(const ExplanationProblem& problem,
                                      const Universe& universe);
FeatureSet RelevantFeatures(const ExplanationProblem& problem,
                            const Universe& universe);

// Minimal hitting sets of a family of non-empty sets, canonical order.
// Throws PreconditionError on an empty family or an empty member.
std::vector<FeatureSet> MinimalHittingSets(
    const std::vector<FeatureSet>& family);

// AXps as the minimal hitting sets of the CXps.
inline std::vector<FeatureSet> AxpsFromCxps(
    const std::vector<FeatureSet>& cxps) {
  return MinimalHittingSets(cxps);
}

}  // namespace logshap

#endif  // LOGSHAP_EXPLANATIONS_H_
