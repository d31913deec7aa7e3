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

#ifndef LOGSHAP_MODELS_H_
#define LOGSHAP_MODELS_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "logshap/feature_set.h"
#include "logshap/rational.h"

namespace logshap {

// Finite, ordered, duplicate-free set of values.
struct DiscreteDomain {
  std::vector<Rational> values;
};

// Closed real interval [lo, hi] with lo < hi.
struct IntervalDomain {
  Rational lo;
  Rational hi;
};

using Domain = std::variant<DiscreteDomain, IntervalDomain>;

struct Feature {
  int id = 0;  // 1-based.
  std::string name;
  Domain domain;

  bool discrete() const {
    return std::holds_alternative<DiscreteDomain>(domain);
  }
  bool Contains(const Rational& value) const;
  // Position of `value` in a discrete domain.
  std::optional<std::size_t> IndexOf(const Rational& value) const;
};

using Point = std::vector<Rational>;

// Cartesian product of the feature domains.
class FeatureSpace {
 public:
  // Validates ids (1..m, no gaps), non-empty duplicate-free discrete domains
  // and lo < hi for intervals. Throws ValidationError.
  explicit FeatureSpace(std::vector<Feature> features);

  int size() const { return static_cast<int>(features_.size()); }
  // 1-based access.
  const Feature& feature(int id) const { return features_.at(id - 1); }
  const std::vector<Feature>& features() const { return features_; }

  bool AllDiscrete() const;
  bool AllInterval() const;
  // Number of points of a fully discrete space.
  std::uint64_t Cardinality() const;

  // Throws DomainError when `point` has the wrong arity or a coordinate
  // falls outside its domain.
  void CheckPoint(const Point& point) const;

 private:
  std::vector<Feature> features_;
};

// Model output: a number or an opaque class label.
class Value {
 public:
  Value() = default;
  Value(Rational number) : data_(std::move(number)) {}  // NOLINT
  Value(std::string label) : data_(std::move(label)) {}  // NOLINT

  bool is_numeric() const { return std::holds_alternative<Rational>(data_); }
  const Rational& number() const;
  const std::string& label() const;
  std::string ToString() const;

  bool operator==(const Value& other) const { return data_ == other.data_; }
  bool operator<(const Value& other) const;

 private:
  std::variant<Rational, std::string> data_;
};

enum class ValueKind { kNumeric, kCategorical };
enum class Task { kClassification, kRegression };

// Total map from every point of a discrete space to an output.
class TabularModel {
 public:
  // `table` is indexed in lexicographic domain order (feature 1 varies
  // slowest). Validates totality, value kind and non-constancy.
  TabularModel(FeatureSpace space, std::vector<Value> table, ValueKind kind);

  const FeatureSpace& space() const { return space_; }
  ValueKind value_kind() const { return kind_; }
  const std::vector<Value>& table() const { return table_; }
  const Value& At(const std::vector<std::size_t>& index) const;

 private:
  FeatureSpace space_;
  std::vector<Value> table_;
  ValueKind kind_;
};

// Decision or regression tree over a discrete space. Each internal node
// tests one feature and routes every domain value to exactly one child.
class TreeModel {
 public:
  struct Node {
    int id = 0;
    int feature = 0;  // 0 for leaves.
    // child_of_value[k] is the node id taken when the tested feature holds
    // its k-th domain value.
    std::vector<int> child_of_value;
    Value leaf;
    bool is_leaf() const { return feature == 0; }
  };

  TreeModel(FeatureSpace space, std::vector<Node> nodes, int root,
            ValueKind kind);

  const FeatureSpace& space() const { return space_; }
  ValueKind value_kind() const { return kind_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  int root() const { return root_; }

  const Value& At(const std::vector<std::size_t>& index) const;

 private:
  const Node& node(int id) const { return nodes_[slot_.at(id)]; }
  void CheckPaths(int id, FeatureSet tested, int depth) const;

  FeatureSpace space_;
  std::vector<Node> nodes_;
  std::map<int, std::size_t> slot_;
  int root_;
  ValueKind kind_;
};

// Piecewise-affine regressor over a product of intervals. Each cell is an
// axis-aligned box; on each axis the cell covers [lo, hi), or [lo, hi] when
// hi is the domain's upper end. Cells must partition the space.
class BoxPiecewiseModel {
 public:
  struct Cell {
    std::vector<std::pair<Rational, Rational>> box;
    // a_0, a_1..a_m: output a_0 + sum_i a_i x_i.
    std::vector<Rational> affine;
  };

  BoxPiecewiseModel(FeatureSpace space, std::vector<Cell> cells);

  const FeatureSpace& space() const { return space_; }
  const std::vector<Cell>& cells() const { return cells_; }

  // Whether coordinate `x` of feature `id` lies in the cell's subinterval.
  bool AxisContains(const Cell& cell, int id, const Rational& x) const;
  bool CellContains(const Cell& cell, const Point& point) const;
  // Throws ValidationError if no cell contains the point.
  const Cell& CellAt(const Point& point) const;

 private:
  FeatureSpace space_;
  std::vector<Cell> cells_;
};

// Immutable model handle shared between problems, games and bindings.
class Model {
 public:
  using Variant = std::variant<TabularModel, TreeModel, BoxPiecewiseModel>;

  Model(Variant model, Task task);

  const Variant& get() const { return model_; }
  const FeatureSpace& space() const;
  ValueKind value_kind() const;
  Task task() const { return task_; }
  bool discrete() const { return space().AllDiscrete(); }
  std::string kind_name() const;

 private:
  Variant model_;
  Task task_;
};

// Target instance (v, p). Built through MakeInstance so that p = pi(v).
struct Instance {
  Point point;
  Value prediction;
};

Instance MakeInstance(const Model& model, Point point);

Value Predict(const Model& model, const Point& point);

// Partial assignment: constraint[i-1] fixes feature i when engaged.
using Constraint = std::vector<std::optional<Rational>>;

// Constraint fixing the features of `fixed` to the instance's values.
Constraint FixTo(const Point& point, const FeatureSet& fixed);

// Visits the points x with x_S = v_S in lexicographic domain order. The
// visitor returns false to stop early. Throws UnsupportedOperation on
// interval domains.
void ForEachPoint(const Model& model, const Constraint& constraint,
                  const std::function<bool(const Point&)>& visit);

std::vector<Point> EnumeratePoints(const Model& model,
                                   const Constraint& constraint);

// E[pi(x) | x_S = v_S] under the uniform product distribution on the free
// features. Exact for discrete and box-piecewise models.
Rational ConditionalExpectation(const Model& model, const Instance& instance,
                                const FeatureSet& fixed);

// Smallest interval containing every output (the supremum/infimum for
// box-piecewise cells).
std::pair<Rational, Rational> OutputRange(const Model& model);

// Exhaustive tabulation of a discrete model.
TabularModel Tabulate(const Model& model);

// Applies `relabel` to every output of a discrete model. Outputs missing
// from the map are kept. Throws ValidationError if the map is not injective
// on the outputs it touches.
Model RelabelOutputs(const Model& model, const std::map<Value, Value>& relabel);

// Distinct outputs of a discrete model in ascending order.
std::vector<Value> OutputValues(const Model& model);

}  // namespace logshap

#endif  // LOGSHAP_MODELS_H_
