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

#include "logshap/models.h"

#include <algorithm>
#include <set>
#include <string>

#include "logshap/errors.h"

namespace logshap {
namespace {

constexpr std::uint64_t kMaxPoints = std::uint64_t{1} << 40;

std::string FeatureLabel(const Feature& f) {
  return "feature " + std::to_string(f.id) +
         (f.name.empty() ? "" : " ('" + f.name + "')");
}

// Domain indices of a point in a discrete space.
std::vector<std::size_t> IndicesOf(const FeatureSpace& space,
                                   const Point& point) {
  space.CheckPoint(point);
  std::vector<std::size_t> index(point.size());
  for (int id = 1; id <= space.size(); ++id) {
    auto k = space.feature(id).IndexOf(point[id - 1]);
    if (!k) {
      throw UnsupportedOperation(FeatureLabel(space.feature(id)) +
                                 " is not discrete");
    }
    index[id - 1] = *k;
  }
  return index;
}

std::size_t FlatIndex(const FeatureSpace& space,
                      const std::vector<std::size_t>& index) {
  std::size_t flat = 0;
  for (int id = 1; id <= space.size(); ++id) {
    const auto& values = std::get<DiscreteDomain>(space.feature(id).domain).values;
    flat = flat * values.size() + index[id - 1];
  }
  return flat;
}

ValueKind KindOf(const std::vector<Value>& values) {
  bool numeric = false;
  bool categorical = false;
  for (const Value& v : values) {
    (v.is_numeric() ? numeric : categorical) = true;
  }
  if (numeric && categorical) {
    throw ValidationError("model mixes numeric and categorical outputs");
  }
  return categorical ? ValueKind::kCategorical : ValueKind::kNumeric;
}

void CheckKind(const Value& v, ValueKind kind, const std::string& where) {
  if (v.is_numeric() != (kind == ValueKind::kNumeric)) {
    throw ValidationError(where + ": output '" + v.ToString() +
                          "' does not match the declared value kind");
  }
}

const IntervalDomain& IntervalOf(const Feature& f) {
  return std::get<IntervalDomain>(f.domain);
}

// Extremes of a_0 + sum a_i x_i over a closed box given per-axis bounds.
std::pair<Rational, Rational> AffineRange(
    const std::vector<Rational>& affine,
    const std::vector<std::pair<Rational, Rational>>& bounds) {
  Rational lo = affine[0];
  Rational hi = affine[0];
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    Rational a = affine[i + 1] * bounds[i].first;
    Rational b = affine[i + 1] * bounds[i].second;
    lo += std::min(a, b);
    hi += std::max(a, b);
  }
  return {lo, hi};
}

}  // namespace

bool Feature::Contains(const Rational& value) const {
  if (std::holds_alternative<DiscreteDomain>(domain)) {
    return IndexOf(value).has_value();
  }
  const auto& iv = std::get<IntervalDomain>(domain);
  return iv.lo <= value && value <= iv.hi;
}

std::optional<std::size_t> Feature::IndexOf(const Rational& value) const {
  const auto* d = std::get_if<DiscreteDomain>(&domain);
  if (d == nullptr) return std::nullopt;
  for (std::size_t k = 0; k < d->values.size(); ++k) {
    if (d->values[k] == value) return k;
  }
  return std::nullopt;
}

FeatureSpace::FeatureSpace(std::vector<Feature> features)
    : features_(std::move(features)) {
  if (features_.empty()) {
    throw ValidationError("feature space needs at least one feature");
  }
  if (features_.size() > static_cast<std::size_t>(kMaxFeatures)) {
    throw ValidationError("at most " + std::to_string(kMaxFeatures) +
                          " features are supported");
  }
  for (std::size_t i = 0; i < features_.size(); ++i) {
    Feature& f = features_[i];
    if (f.id != static_cast<int>(i) + 1) {
      throw ValidationError("feature ids must be 1..m without gaps; found " +
                            std::to_string(f.id) + " at position " +
                            std::to_string(i + 1));
    }
    if (auto* d = std::get_if<DiscreteDomain>(&f.domain)) {
      if (d->values.empty()) {
        throw ValidationError(FeatureLabel(f) + " has an empty domain");
      }
      std::set<Rational> seen(d->values.begin(), d->values.end());
      if (seen.size() != d->values.size()) {
        throw ValidationError(FeatureLabel(f) + " has duplicate domain values");
      }
    } else {
      const auto& iv = std::get<IntervalDomain>(f.domain);
      if (!(iv.lo < iv.hi)) {
        throw ValidationError(FeatureLabel(f) + " interval needs lo < hi");
      }
    }
  }
}

bool FeatureSpace::AllDiscrete() const {
  return std::all_of(features_.begin(), features_.end(),
                     [](const Feature& f) { return f.discrete(); });
}

bool FeatureSpace::AllInterval() const {
  return std::none_of(features_.begin(), features_.end(),
                      [](const Feature& f) { return f.discrete(); });
}

std::uint64_t FeatureSpace::Cardinality() const {
  std::uint64_t n = 1;
  for (const Feature& f : features_) {
    const auto* d = std::get_if<DiscreteDomain>(&f.domain);
    if (d == nullptr) {
      throw UnsupportedOperation("feature space has interval domains");
    }
    if (n > kMaxPoints / d->values.size()) {
      throw SizeError("feature space too large to enumerate");
    }
    n *= d->values.size();
  }
  return n;
}

void FeatureSpace::CheckPoint(const Point& point) const {
  if (point.size() != features_.size()) {
    throw DomainError("point has " + std::to_string(point.size()) +
                      " coordinates, expected " +
                      std::to_string(features_.size()));
  }
  for (const Feature& f : features_) {
    if (!f.Contains(point[f.id - 1])) {
      throw DomainError("value " + ToString(point[f.id - 1]) +
                        " outside the domain of " + FeatureLabel(f));
    }
  }
}

const Rational& Value::number() const {
  if (!is_numeric()) throw NumericRequired("output '" + label() + "' is not numeric");
  return std::get<Rational>(data_);
}

const std::string& Value::label() const {
  if (is_numeric()) throw ValidationError("output is numeric, not a label");
  return std::get<std::string>(data_);
}

std::string Value::ToString() const {
  return is_numeric() ? logshap::ToString(std::get<Rational>(data_))
                      : std::get<std::string>(data_);
}

bool Value::operator<(const Value& other) const {
  if (is_numeric() != other.is_numeric()) return is_numeric();
  if (is_numeric()) return std::get<Rational>(data_) < std::get<Rational>(other.data_);
  return std::get<std::string>(data_) < std::get<std::string>(other.data_);
}

TabularModel::TabularModel(FeatureSpace space, std::vector<Value> table,
                           ValueKind kind)
    : space_(std::move(space)), table_(std::move(table)), kind_(kind) {
  if (!space_.AllDiscrete()) {
    throw ValidationError("tabular models need discrete domains");
  }
  if (table_.size() != space_.Cardinality()) {
    throw ValidationError("table has " + std::to_string(table_.size()) +
                          " entries, feature space has " +
                          std::to_string(space_.Cardinality()) + " points");
  }
  for (std::size_t i = 0; i < table_.size(); ++i) {
    CheckKind(table_[i], kind_, "table entry " + std::to_string(i));
  }
  if (std::all_of(table_.begin(), table_.end(),
                  [&](const Value& v) { return v == table_.front(); })) {
    throw ValidationError("model is constant; a non-constant prediction "
                          "function is required");
  }
}

const Value& TabularModel::At(const std::vector<std::size_t>& index) const {
  return table_[FlatIndex(space_, index)];
}

TreeModel::TreeModel(FeatureSpace space, std::vector<Node> nodes, int root,
                     ValueKind kind)
    : space_(std::move(space)), nodes_(std::move(nodes)), root_(root),
      kind_(kind) {
  if (!space_.AllDiscrete()) {
    throw ValidationError("tree models need discrete domains");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!slot_.emplace(nodes_[i].id, i).second) {
      throw ValidationError("duplicate tree node id " +
                            std::to_string(nodes_[i].id));
    }
  }
  if (!slot_.count(root_)) {
    throw ValidationError("tree root " + std::to_string(root_) + " is not a node");
  }
  for (const Node& n : nodes_) {
    std::string where = "tree node " + std::to_string(n.id);
    if (n.is_leaf()) {
      CheckKind(n.leaf, kind_, where);
      continue;
    }
    if (n.feature < 1 || n.feature > space_.size()) {
      throw ValidationError(where + " tests unknown feature " +
                            std::to_string(n.feature));
    }
    const auto& values =
        std::get<DiscreteDomain>(space_.feature(n.feature).domain).values;
    if (n.child_of_value.size() != values.size()) {
      throw ValidationError(where + " must route each of the " +
                            std::to_string(values.size()) +
                            " domain values to exactly one child");
    }
    for (int child : n.child_of_value) {
      if (!slot_.count(child)) {
        throw ValidationError(where + " references missing node " +
                              std::to_string(child));
      }
    }
  }
  CheckPaths(root_, FeatureSet(), 0);

  // Reachability and non-constancy.
  std::set<int> reached;
  std::vector<int> stack{root_};
  std::set<Value> leaves;
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    if (!reached.insert(id).second) continue;
    const Node& n = node(id);
    if (n.is_leaf()) {
      leaves.insert(n.leaf);
    } else {
      stack.insert(stack.end(), n.child_of_value.begin(), n.child_of_value.end());
    }
  }
  if (reached.size() != nodes_.size()) {
    throw ValidationError("tree has unreachable nodes");
  }
  if (leaves.size() < 2) {
    throw ValidationError("model is constant; a non-constant prediction "
                          "function is required");
  }
}

void TreeModel::CheckPaths(int id, FeatureSet tested, int depth) const {
  const Node& n = node(id);
  if (n.is_leaf()) return;
  if (tested.contains(n.feature) || depth > space_.size()) {
    throw ValidationError("tree path tests feature " + std::to_string(n.feature) +
                          " more than once (at node " + std::to_string(id) + ")");
  }
  std::set<int> children(n.child_of_value.begin(), n.child_of_value.end());
  for (int child : children) CheckPaths(child, tested.with(n.feature), depth + 1);
}

const Value& TreeModel::At(const std::vector<std::size_t>& index) const {
  const Node* n = &node(root_);
  while (!n->is_leaf()) n = &node(n->child_of_value[index[n->feature - 1]]);
  return n->leaf;
}

BoxPiecewiseModel::BoxPiecewiseModel(FeatureSpace space, std::vector<Cell> cells)
    : space_(std::move(space)), cells_(std::move(cells)) {
  if (!space_.AllInterval()) {
    throw ValidationError("box-piecewise models need interval domains");
  }
  if (cells_.empty()) throw ValidationError("box-piecewise model has no cells");
  const int m = space_.size();
  Rational total = 1;
  for (const Feature& f : space_.features()) total *= IntervalOf(f).hi - IntervalOf(f).lo;

  Rational covered = 0;
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    const Cell& cell = cells_[c];
    std::string where = "cell " + std::to_string(c);
    if (cell.box.size() != static_cast<std::size_t>(m) ||
        cell.affine.size() != static_cast<std::size_t>(m) + 1) {
      throw ValidationError(where + " needs " + std::to_string(m) +
                            " intervals and " + std::to_string(m + 1) +
                            " affine coefficients");
    }
    Rational volume = 1;
    for (int id = 1; id <= m; ++id) {
      const auto& [lo, hi] = cell.box[id - 1];
      const auto& dom = IntervalOf(space_.feature(id));
      if (!(lo < hi) || lo < dom.lo || hi > dom.hi) {
        throw ValidationError(where + " interval on feature " +
                              std::to_string(id) + " is empty or leaves the domain");
      }
      volume *= hi - lo;
    }
    covered += volume;
    for (std::size_t d = 0; d < c; ++d) {
      bool overlap = true;
      for (int i = 0; i < m && overlap; ++i) {
        overlap = std::max(cell.box[i].first, cells_[d].box[i].first) <
                  std::min(cell.box[i].second, cells_[d].box[i].second);
      }
      if (overlap) {
        throw ValidationError("cells " + std::to_string(d) + " and " +
                              std::to_string(c) + " overlap");
      }
    }
  }
  if (covered != total) {
    throw ValidationError("cells do not cover the feature space");
  }
  bool constant = std::all_of(cells_.begin(), cells_.end(), [&](const Cell& cell) {
    return cell.affine[0] == cells_[0].affine[0] &&
           std::all_of(cell.affine.begin() + 1, cell.affine.end(),
                       [](const Rational& a) { return a == 0; });
  });
  if (constant) {
    throw ValidationError("model is constant; a non-constant prediction "
                          "function is required");
  }
}

bool BoxPiecewiseModel::AxisContains(const Cell& cell, int id,
                                     const Rational& x) const {
  const auto& [lo, hi] = cell.box[id - 1];
  if (x < lo) return false;
  if (x < hi) return true;
  return x == hi && hi == IntervalOf(space_.feature(id)).hi;
}

bool BoxPiecewiseModel::CellContains(const Cell& cell, const Point& point) const {
  for (int id = 1; id <= space_.size(); ++id) {
    if (!AxisContains(cell, id, point[id - 1])) return false;
  }
  return true;
}

const BoxPiecewiseModel::Cell& BoxPiecewiseModel::CellAt(const Point& point) const {
  for (const Cell& cell : cells_) {
    if (CellContains(cell, point)) return cell;
  }
  throw ValidationError("no cell contains the point; partition violated");
}

Model::Model(Variant model, Task task) : model_(std::move(model)), task_(task) {
  if (task_ == Task::kRegression && value_kind() == ValueKind::kCategorical) {
    throw ValidationError("regression models need numeric outputs");
  }
}

const FeatureSpace& Model::space() const {
  return std::visit([](const auto& m) -> const FeatureSpace& { return m.space(); },
                    model_);
}

ValueKind Model::value_kind() const {
  if (const auto* t = std::get_if<TabularModel>(&model_)) return t->value_kind();
  if (const auto* t = std::get_if<TreeModel>(&model_)) return t->value_kind();
  return ValueKind::kNumeric;
}

std::string Model::kind_name() const {
  switch (model_.index()) {
    case 0: return "tabular";
    case 1: return "tree";
    default: return "box_piecewise";
  }
}

Value Predict(const Model& model, const Point& point) {
  const Model::Variant& m = model.get();
  if (const auto* t = std::get_if<TabularModel>(&m)) {
    return t->At(IndicesOf(t->space(), point));
  }
  if (const auto* t = std::get_if<TreeModel>(&m)) {
    return t->At(IndicesOf(t->space(), point));
  }
  const auto& box = std::get<BoxPiecewiseModel>(m);
  box.space().CheckPoint(point);
  const auto& cell = box.CellAt(point);
  Rational out = cell.affine[0];
  for (std::size_t i = 0; i < point.size(); ++i) out += cell.affine[i + 1] * point[i];
  return Value(out);
}

Instance MakeInstance(const Model& model, Point point) {
  Value prediction = Predict(model, point);
  return Instance{std::move(point), std::move(prediction)};
}

Constraint FixTo(const Point& point, const FeatureSet& fixed) {
  Constraint c(point.size());
  for (int id : fixed.ids()) {
    if (id > static_cast<int>(point.size())) {
      throw ValidationError("feature " + std::to_string(id) + " does not exist");
    }
    c[id - 1] = point[id - 1];
  }
  return c;
}

void ForEachPoint(const Model& model, const Constraint& constraint,
                  const std::function<bool(const Point&)>& visit) {
  const FeatureSpace& space = model.space();
  if (!space.AllDiscrete()) {
    throw UnsupportedOperation("point enumeration needs discrete domains");
  }
  const int m = space.size();
  if (constraint.size() != static_cast<std::size_t>(m)) {
    throw ValidationError("constraint arity does not match the feature space");
  }
  std::vector<const std::vector<Rational>*> choices(m);
  std::vector<Rational> pinned(m);
  for (int id = 1; id <= m; ++id) {
    const Feature& f = space.feature(id);
    if (constraint[id - 1]) {
      if (!f.Contains(*constraint[id - 1])) {
        throw DomainError("constraint value " + ToString(*constraint[id - 1]) +
                          " outside the domain of " + FeatureLabel(f));
      }
      pinned[id - 1] = *constraint[id - 1];
    } else {
      choices[id - 1] = &std::get<DiscreteDomain>(f.domain).values;
    }
  }
  std::vector<std::size_t> odometer(m, 0);
  Point x(m);
  for (int i = 0; i < m; ++i) x[i] = choices[i] ? (*choices[i])[0] : pinned[i];
  while (true) {
    if (!visit(x)) return;
    int i = m - 1;
    for (; i >= 0; --i) {
      if (!choices[i]) continue;
      if (++odometer[i] < choices[i]->size()) {
        x[i] = (*choices[i])[odometer[i]];
        break;
      }
      odometer[i] = 0;
      x[i] = (*choices[i])[0];
    }
    if (i < 0) return;
  }
}

std::vector<Point> EnumeratePoints(const Model& model, const Constraint& constraint) {
  std::vector<Point> out;
  ForEachPoint(model, constraint, [&](const Point& x) {
    out.push_back(x);
    return true;
  });
  return out;
}

Rational ConditionalExpectation(const Model& model, const Instance& instance,
                                const FeatureSet& fixed) {
  if (model.value_kind() != ValueKind::kNumeric) {
    throw NumericRequired("expected values need numeric outputs");
  }
  const int m = model.space().size();
  if (!fixed.IsSubsetOf(FeatureSet::All(m))) {
    throw ValidationError("fixed set " + fixed.ToString() + " names unknown features");
  }
  if (fixed == FeatureSet::All(m)) return instance.prediction.number();

  if (model.discrete()) {
    Rational sum = 0;
    std::uint64_t count = 0;
    ForEachPoint(model, FixTo(instance.point, fixed), [&](const Point& x) {
      sum += Predict(model, x).number();
      ++count;
      return true;
    });
    return sum / Rational(static_cast<unsigned long>(count));
  }

  const auto& box = std::get<BoxPiecewiseModel>(model.get());
  const Point& v = instance.point;
  Rational free_volume = 1;
  for (int id = 1; id <= m; ++id) {
    if (fixed.contains(id)) continue;
    const auto& dom = IntervalOf(box.space().feature(id));
    free_volume *= dom.hi - dom.lo;
  }
  Rational integral = 0;
  for (const auto& cell : box.cells()) {
    Rational weight = 1;
    Rational mean = cell.affine[0];
    bool hit = true;
    for (int id = 1; id <= m && hit; ++id) {
      const auto& [lo, hi] = cell.box[id - 1];
      if (fixed.contains(id)) {
        hit = box.AxisContains(cell, id, v[id - 1]);
        mean += cell.affine[id] * v[id - 1];
      } else {
        weight *= hi - lo;
        mean += cell.affine[id] * (lo + hi) / 2;
      }
    }
    if (hit) integral += weight * mean;
  }
  return integral / free_volume;
}

std::pair<Rational, Rational> OutputRange(const Model& model) {
  if (model.value_kind() != ValueKind::kNumeric) {
    throw NumericRequired("output range needs numeric outputs");
  }
  if (const auto* box = std::get_if<BoxPiecewiseModel>(&model.get())) {
    std::optional<std::pair<Rational, Rational>> range;
    for (const auto& cell : box->cells()) {
      auto r = AffineRange(cell.affine, cell.box);
      if (!range) {
        range = r;
      } else {
        range->first = std::min(range->first, r.first);
        range->second = std::max(range->second, r.second);
      }
    }
    return *range;
  }
  auto values = OutputValues(model);
  return {values.front().number(), values.back().number()};
}

TabularModel Tabulate(const Model& model) {
  std::vector<Value> table;
  ForEachPoint(model, Constraint(model.space().size()), [&](const Point& x) {
    table.push_back(Predict(model, x));
    return true;
  });
  return TabularModel(model.space(), std::move(table), model.value_kind());
}

std::vector<Value> OutputValues(const Model& model) {
  std::set<Value> values;
  if (const auto* t = std::get_if<TabularModel>(&model.get())) {
    values.insert(t->table().begin(), t->table().end());
  } else if (const auto* t = std::get_if<TreeModel>(&model.get())) {
    for (const auto& n : t->nodes()) {
      if (n.is_leaf()) values.insert(n.leaf);
    }
  } else {
    throw UnsupportedOperation("box-piecewise outputs are not enumerable");
  }
  return {values.begin(), values.end()};
}

Model RelabelOutputs(const Model& model, const std::map<Value, Value>& relabel) {
  auto outputs = OutputValues(model);
  std::map<Value, Value> full;
  std::set<Value> images;
  for (const Value& v : outputs) {
    auto it = relabel.find(v);
    const Value& image = it == relabel.end() ? v : it->second;
    if (!images.insert(image).second) {
      throw ValidationError("relabelling is not injective on the model outputs");
    }
    full.emplace(v, image);
  }
  std::vector<Value> image_list(images.begin(), images.end());
  ValueKind kind = KindOf(image_list);
  if (model.task() == Task::kRegression && kind != ValueKind::kNumeric) {
    throw ValidationError("regression models need numeric outputs");
  }
  if (const auto* t = std::get_if<TabularModel>(&model.get())) {
    std::vector<Value> table;
    table.reserve(t->table().size());
    for (const Value& v : t->table()) table.push_back(full.at(v));
    return Model(TabularModel(t->space(), std::move(table), kind), model.task());
  }
  const auto& tree = std::get<TreeModel>(model.get());
  auto nodes = tree.nodes();
  for (auto& n : nodes) {
    if (n.is_leaf()) n.leaf = full.at(n.leaf);
  }
  return Model(TreeModel(tree.space(), std::move(nodes), tree.root(), kind),
               model.task());
}

}  // namespace logshap
