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

#ifndef LOGSHAP_IO_H_
#define LOGSHAP_IO_H_

#include <memory>
#include <string>
#include <string_view>

#include <json.hpp>

#include "logshap/explanations.h"
#include "logshap/models.h"

namespace logshap {

inline constexpr int kModelFormatVersion = 1;

// Builds a validated model from the JSON model schema (docs/model_schema.md).
// Rational literals may be JSON numbers, "p/q" strings or decimal strings.
// Throws ParseError / ValidationError naming the offending entry.
Model ParseModel(const nlohmann::json& doc);
std::shared_ptr<const Model> LoadModel(const std::string& path);

// Inverse of ParseModel. Tabular tables are written in full.
nlohmann::json ModelToJson(const Model& model);

// Comma-separated feature values, e.g. "1,1,2" or "1/2,0.75".
Point ParsePoint(std::string_view text, const FeatureSpace& space);

// Header-bearing delimited text (comma, semicolon or tab). Columns are the
// features in order, optionally followed by a "prediction" column; missing
// predictions are computed from the model, given ones must match it.
Sample ParseSample(std::string_view text, const Model& model);
Sample LoadSample(const std::string& path, const Model& model);

// Full feature space of a discrete model as a sample.
Sample SampleFromSpace(const Model& model);

}  // namespace logshap

#endif  // LOGSHAP_IO_H_
