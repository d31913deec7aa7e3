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

#include "logshap/similarity.h"

#include "logshap/errors.h"

namespace logshap {

SimilarityConfig SimilarityConfig::RegressionThreshold(Rational delta) {
  if (delta < 0) throw ValidationError("delta must be non-negative");
  SimilarityConfig config;
  config.mode_ = Mode::kRegressionThreshold;
  config.delta_ = std::move(delta);
  return config;
}

ExplanationProblem::ExplanationProblem(std::shared_ptr<const Model> model,
                                       Point point, SimilarityConfig similarity)
    : model_(std::move(model)),
      instance_(MakeInstance(*model_, std::move(point))),
      similarity_(std::move(similarity)) {
  if (similarity_.mode() == SimilarityConfig::Mode::kRegressionThreshold &&
      model_->value_kind() != ValueKind::kNumeric) {
    throw ValidationError("a regression threshold needs numeric outputs");
  }
}

bool SimilarOutput(const ExplanationProblem& problem, const Value& output) {
  const Value& target = problem.instance().prediction;
  if (problem.similarity().mode() == SimilarityConfig::Mode::kClassEquality) {
    return output == target;
  }
  return Abs(output.number() - target.number()) <= problem.similarity().delta();
}

bool Similar(const ExplanationProblem& problem, const Point& x) {
  return SimilarOutput(problem, Predict(problem.model(), x));
}

}  // namespace logshap
