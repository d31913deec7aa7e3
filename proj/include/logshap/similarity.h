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

#ifndef LOGSHAP_SIMILARITY_H_
#define LOGSHAP_SIMILARITY_H_

#include <memory>

#include "logshap/models.h"
#include "logshap/rational.h"

namespace logshap {

// Decides when an output is indistinguishable from the target's output:
// equal class for classification, |pi(x) - pi(v)| <= delta for regression.
class SimilarityConfig {
 public:
  enum class Mode { kClassEquality, kRegressionThreshold };

  static SimilarityConfig ClassEquality() { return SimilarityConfig(); }
  // Throws ValidationError when delta < 0.
  static SimilarityConfig RegressionThreshold(Rational delta);

  Mode mode() const { return mode_; }
  const Rational& delta() const { return delta_; }

 private:
  SimilarityConfig() = default;

  Mode mode_ = Mode::kClassEquality;
  Rational delta_;
};

// E = (M, I) together with its similarity predicate.
class ExplanationProblem {
 public:
  // Computes the instance prediction from the model. Throws DomainError
  // for out-of-domain points and ValidationError when a threshold is used
  // with categorical outputs.
  ExplanationProblem(std::shared_ptr<const Model> model, Point point,
                     SimilarityConfig similarity);

  const Model& model() const { return *model_; }
  const std::shared_ptr<const Model>& model_ptr() const { return model_; }
  const Instance& instance() const { return instance_; }
  const SimilarityConfig& similarity() const { return similarity_; }
  int num_features() const { return model_->space().size(); }

 private:
  std::shared_ptr<const Model> model_;
  Instance instance_;
  SimilarityConfig similarity_;
};

// sigma(x; E).
bool Similar(const ExplanationProblem& problem, const Point& x);

// sigma applied to an already computed output.
bool SimilarOutput(const ExplanationProblem& problem, const Value& output);

}  // namespace logshap

#endif  // LOGSHAP_SIMILARITY_H_
