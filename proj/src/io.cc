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

#include "logshap/io.h"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "logshap/errors.h"

namespace logshap {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

const json& Field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    Fail(where, std::string("missing field '") + key + "'");
  }
  return obj.at(key);
}

std::string AsString(const json& j, const std::string& where) {
  if (!j.is_string()) Fail(where, "expected a string");
  return j.get<std::string>();
}

Rational AsRational(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return ParseRational(j.get<std::string>());
    if (j.is_number()) return ParseRational(j.dump());
  } catch (const ParseError& e) {
    Fail(where, e.what());
  }
  Fail(where, "expected a rational (number or \"p/q\" string)");
}

int AsInt(const json& j, const std::string& where) {
  if (!j.is_number_integer()) Fail(where, "expected an integer");
  return j.get<int>();
}

Value AsValue(const json& j, ValueKind kind, const std::string& where) {
  if (kind == ValueKind::kNumeric) return Value(AsRational(j, where));
  if (j.is_string()) return Value(j.get<std::string>());
  if (j.is_number()) return Value(j.dump());
  Fail(where, "expected a class label");
}

json RationalJson(const Rational& r) { return ToString(r); }

json ValueJson(const Value& v) {
  return v.is_numeric() ? json(ToString(v.number())) : json(v.label());
}

std::string Loc(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

FeatureSpace ParseFeatures(const json& doc) {
  const json& list = Field(doc, "features", "model");
  if (!list.is_array()) Fail("features", "expected an array");
  std::vector<Feature> features;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const json& f = list[i];
    std::string where = Loc("features", i);
    Feature feature;
    feature.id = f.contains("id") ? AsInt(f["id"], where + ".id") : static_cast<int>(i) + 1;
    feature.name = f.contains("name") ? AsString(f["name"], where + ".name")
                                      : "x" + std::to_string(i + 1);
    if (f.contains("values") == f.contains("interval")) {
      Fail(where, "give exactly one of 'values' or 'interval'");
    }
    if (f.contains("values")) {
      const json& values = f["values"];
      if (!values.is_array()) Fail(where + ".values", "expected an array");
      DiscreteDomain d;
      for (std::size_t k = 0; k < values.size(); ++k) {
        d.values.push_back(AsRational(values[k], Loc(where + ".values", k)));
      }
      feature.domain = std::move(d);
    } else {
      const json& iv = f["interval"];
      if (!iv.is_array() || iv.size() != 2) Fail(where + ".interval", "expected [lo, hi]");
      feature.domain = IntervalDomain{AsRational(iv[0], where + ".interval[0]"),
                                      AsRational(iv[1], where + ".interval[1]")};
    }
    features.push_back(std::move(feature));
  }
  try {
    return FeatureSpace(std::move(features));
  } catch (const ValidationError& e) {
    Fail("features", e.what());
  }
}

std::vector<std::size_t> PointIndex(const json& point, const FeatureSpace& space,
                                    const std::string& where) {
  if (!point.is_array() || point.size() != static_cast<std::size_t>(space.size())) {
    Fail(where, "expected " + std::to_string(space.size()) + " coordinates");
  }
  std::vector<std::size_t> index;
  for (int id = 1; id <= space.size(); ++id) {
    auto k = space.feature(id).IndexOf(AsRational(point[id - 1], where));
    if (!k) Fail(where, "coordinate " + std::to_string(id) + " outside its domain");
    index.push_back(*k);
  }
  return index;
}

TabularModel ParseTabular(const json& doc, FeatureSpace space, ValueKind kind) {
  if (!space.AllDiscrete()) Fail("features", "tabular models need discrete domains");
  const json& table = Field(doc, "table", "model");
  const std::uint64_t n = space.Cardinality();
  std::vector<std::optional<Value>> cells(n);
  const json& entries = Field(table, "entries", "table");
  if (!entries.is_array()) Fail("table.entries", "expected an array");
  for (std::size_t e = 0; e < entries.size(); ++e) {
    std::string where = Loc("table.entries", e);
    auto index = PointIndex(Field(entries[e], "point", where), space, where + ".point");
    std::size_t flat = 0;
    for (int id = 1; id <= space.size(); ++id) {
      flat = flat * std::get<DiscreteDomain>(space.feature(id).domain).values.size() +
             index[id - 1];
    }
    if (cells[flat]) Fail(where, "duplicate entry for this point");
    cells[flat] = AsValue(Field(entries[e], "value", where), kind, where + ".value");
  }
  std::optional<Value> fallback;
  if (table.contains("default")) fallback = AsValue(table["default"], kind, "table.default");
  std::vector<Value> values;
  values.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (cells[i]) {
      values.push_back(*cells[i]);
    } else if (fallback) {
      values.push_back(*fallback);
    } else {
      Fail("table", "not total: point #" + std::to_string(i) +
                        " (lexicographic order) has no entry and no default is given");
    }
  }
  try {
    return TabularModel(std::move(space), std::move(values), kind);
  } catch (const ValidationError& e) {
    Fail("table", e.what());
  }
}

TreeModel ParseTree(const json& doc, FeatureSpace space, ValueKind kind) {
  if (!space.AllDiscrete()) Fail("features", "tree models need discrete domains");
  const json& tree = Field(doc, "tree", "model");
  const int root = AsInt(Field(tree, "root", "tree"), "tree.root");
  const json& list = Field(tree, "nodes", "tree");
  if (!list.is_array()) Fail("tree.nodes", "expected an array");
  std::vector<TreeModel::Node> nodes;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const json& n = list[i];
    std::string where = Loc("tree.nodes", i);
    TreeModel::Node node;
    node.id = AsInt(Field(n, "id", where), where + ".id");
    if (n.contains("value")) {
      node.leaf = AsValue(n["value"], kind, where + ".value");
      nodes.push_back(std::move(node));
      continue;
    }
    node.feature = AsInt(Field(n, "feature", where), where + ".feature");
    if (node.feature < 1 || node.feature > space.size()) {
      Fail(where + ".feature", "unknown feature");
    }
    const Feature& f = space.feature(node.feature);
    const auto size = std::get<DiscreteDomain>(f.domain).values.size();
    std::vector<int> child(size, 0);
    std::vector<bool> assigned(size, false);
    const json& branches = Field(n, "branches", where);
    if (!branches.is_array()) Fail(where + ".branches", "expected an array");
    for (std::size_t b = 0; b < branches.size(); ++b) {
      std::string bwhere = Loc(where + ".branches", b);
      const int target = AsInt(Field(branches[b], "child", bwhere), bwhere + ".child");
      const json& values = Field(branches[b], "values", bwhere);
      if (!values.is_array()) Fail(bwhere + ".values", "expected an array");
      for (std::size_t k = 0; k < values.size(); ++k) {
        auto index = f.IndexOf(AsRational(values[k], bwhere));
        if (!index) Fail(Loc(bwhere + ".values", k), "value outside the domain");
        if (assigned[*index]) Fail(Loc(bwhere + ".values", k), "value routed twice");
        assigned[*index] = true;
        child[*index] = target;
      }
    }
    for (std::size_t k = 0; k < size; ++k) {
      if (!assigned[k]) {
        Fail(where, "domain value " + ToString(std::get<DiscreteDomain>(f.domain).values[k]) +
                        " is not routed to any child");
      }
    }
    node.child_of_value = std::move(child);
    nodes.push_back(std::move(node));
  }
  try {
    return TreeModel(std::move(space), std::move(nodes), root, kind);
  } catch (const ValidationError& e) {
    Fail("tree", e.what());
  }
}

BoxPiecewiseModel ParseBox(const json& doc, FeatureSpace space) {
  if (!space.AllInterval()) Fail("features", "box-piecewise models need interval domains");
  const json& list = Field(doc, "cells", "model");
  if (!list.is_array()) Fail("cells", "expected an array");
  std::vector<BoxPiecewiseModel::Cell> cells;
  for (std::size_t c = 0; c < list.size(); ++c) {
    std::string where = Loc("cells", c);
    BoxPiecewiseModel::Cell cell;
    const json& box = Field(list[c], "box", where);
    if (!box.is_array()) Fail(where + ".box", "expected an array of [lo, hi]");
    for (std::size_t i = 0; i < box.size(); ++i) {
      std::string bwhere = Loc(where + ".box", i);
      if (!box[i].is_array() || box[i].size() != 2) Fail(bwhere, "expected [lo, hi]");
      cell.box.emplace_back(AsRational(box[i][0], bwhere), AsRational(box[i][1], bwhere));
    }
    const json& affine = Field(list[c], "affine", where);
    if (!affine.is_array()) Fail(where + ".affine", "expected an array");
    for (std::size_t i = 0; i < affine.size(); ++i) {
      cell.affine.push_back(AsRational(affine[i], Loc(where + ".affine", i)));
    }
    cells.push_back(std::move(cell));
  }
  try {
    return BoxPiecewiseModel(std::move(space), std::move(cells));
  } catch (const ValidationError& e) {
    Fail("cells", e.what());
  }
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> SplitCells(const std::string& line, char delimiter) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, delimiter)) {
    auto b = cell.find_first_not_of(" \t\r");
    auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == delimiter) cells.emplace_back();
  return cells;
}

}  // namespace

Model ParseModel(const json& doc) {
  if (!doc.is_object()) throw ParseError("model: expected a JSON object");
  const int version = AsInt(Field(doc, "version", "model"), "version");
  if (version != kModelFormatVersion) {
    Fail("version", "unsupported model format version " + std::to_string(version));
  }
  const std::string kind = AsString(Field(doc, "kind", "model"), "kind");
  const std::string task_name = AsString(Field(doc, "task", "model"), "task");
  Task task;
  if (task_name == "classification") {
    task = Task::kClassification;
  } else if (task_name == "regression") {
    task = Task::kRegression;
  } else {
    Fail("task", "expected 'classification' or 'regression'");
  }
  ValueKind value_kind = ValueKind::kNumeric;
  if (doc.contains("value_kind")) {
    const std::string vk = AsString(doc["value_kind"], "value_kind");
    if (vk == "categorical") {
      value_kind = ValueKind::kCategorical;
    } else if (vk != "numeric") {
      Fail("value_kind", "expected 'numeric' or 'categorical'");
    }
  }
  FeatureSpace space = ParseFeatures(doc);
  if (kind == "tabular") {
    return Model(ParseTabular(doc, std::move(space), value_kind), task);
  }
  if (kind == "tree") return Model(ParseTree(doc, std::move(space), value_kind), task);
  if (kind == "box_piecewise") {
    if (value_kind != ValueKind::kNumeric) {
      Fail("value_kind", "box-piecewise models are numeric");
    }
    return Model(ParseBox(doc, std::move(space)), task);
  }
  Fail("kind", "expected 'tabular', 'tree' or 'box_piecewise'");
}

std::shared_ptr<const Model> LoadModel(const std::string& path) {
  json doc;
  try {
    doc = json::parse(ReadFile(path));
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
  try {
    return std::make_shared<const Model>(ParseModel(doc));
  } catch (const ValidationError& e) {
    throw ValidationError("'" + path + "': " + e.what());
  }
}

json ModelToJson(const Model& model) {
  json doc;
  doc["version"] = kModelFormatVersion;
  doc["kind"] = model.kind_name();
  doc["task"] = model.task() == Task::kClassification ? "classification" : "regression";
  doc["value_kind"] =
      model.value_kind() == ValueKind::kNumeric ? "numeric" : "categorical";
  json features = json::array();
  for (const Feature& f : model.space().features()) {
    json jf{{"id", f.id}, {"name", f.name}};
    if (const auto* d = std::get_if<DiscreteDomain>(&f.domain)) {
      json values = json::array();
      for (const auto& v : d->values) values.push_back(RationalJson(v));
      jf["values"] = values;
    } else {
      const auto& iv = std::get<IntervalDomain>(f.domain);
      jf["interval"] = {RationalJson(iv.lo), RationalJson(iv.hi)};
    }
    features.push_back(jf);
  }
  doc["features"] = features;
  if (const auto* t = std::get_if<TabularModel>(&model.get())) {
    json entries = json::array();
    std::size_t i = 0;
    ForEachPoint(model, Constraint(model.space().size()), [&](const Point& x) {
      json point = json::array();
      for (const auto& c : x) point.push_back(RationalJson(c));
      entries.push_back({{"point", point}, {"value", ValueJson(t->table()[i++])}});
      return true;
    });
    doc["table"] = {{"entries", entries}};
  } else if (const auto* t = std::get_if<TreeModel>(&model.get())) {
    json nodes = json::array();
    for (const auto& n : t->nodes()) {
      if (n.is_leaf()) {
        nodes.push_back({{"id", n.id}, {"value", ValueJson(n.leaf)}});
        continue;
      }
      const auto& values =
          std::get<DiscreteDomain>(t->space().feature(n.feature).domain).values;
      std::map<int, json> by_child;
      for (std::size_t k = 0; k < values.size(); ++k) {
        auto& b = by_child[n.child_of_value[k]];
        if (b.is_null()) b = json::array();
        b.push_back(RationalJson(values[k]));
      }
      json branches = json::array();
      for (auto& [child, vals] : by_child) {
        branches.push_back({{"values", vals}, {"child", child}});
      }
      nodes.push_back({{"id", n.id}, {"feature", n.feature}, {"branches", branches}});
    }
    doc["tree"] = {{"root", t->root()}, {"nodes", nodes}};
  } else {
    const auto& box = std::get<BoxPiecewiseModel>(model.get());
    json cells = json::array();
    for (const auto& cell : box.cells()) {
      json jbox = json::array();
      for (const auto& [lo, hi] : cell.box) jbox.push_back({RationalJson(lo), RationalJson(hi)});
      json affine = json::array();
      for (const auto& a : cell.affine) affine.push_back(RationalJson(a));
      cells.push_back({{"box", jbox}, {"affine", affine}});
    }
    doc["cells"] = cells;
  }
  return doc;
}

Point ParsePoint(std::string_view text, const FeatureSpace& space) {
  Point point;
  for (const std::string& cell : SplitCells(std::string(text), ',')) {
    try {
      point.push_back(ParseRational(cell));
    } catch (const ParseError& e) {
      throw DomainError(std::string("instance: ") + e.what());
    }
  }
  space.CheckPoint(point);
  return point;
}

Sample ParseSample(std::string_view text, const Model& model) {
  const FeatureSpace& space = model.space();
  const auto m = static_cast<std::size_t>(space.size());
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> header;
  std::size_t line_no = 0;
  char delimiter = ',';
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.find('\t') != std::string::npos) {
      delimiter = '\t';
    } else if (line.find(';') != std::string::npos && line.find(',') == std::string::npos) {
      delimiter = ';';
    }
    header = SplitCells(line, delimiter);
  }
  if (header.empty()) throw ValidationError("sample: empty file");
  const bool has_prediction = header.size() == m + 1;
  if (header.size() != m && !has_prediction) {
    throw ValidationError("sample header: expected " + std::to_string(m) +
                          " feature columns and an optional 'prediction' column");
  }
  if (has_prediction && header.back() != "prediction") {
    throw ValidationError("sample header: last column must be named 'prediction'");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (header[i] != space.feature(static_cast<int>(i) + 1).name) {
      throw ValidationError("sample header: column " + std::to_string(i + 1) + " is '" +
                            header[i] + "', expected feature '" +
                            space.feature(static_cast<int>(i) + 1).name + "'");
    }
  }
  Sample sample;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "sample line " + std::to_string(line_no);
    auto cells = SplitCells(line, delimiter);
    if (cells.size() != header.size()) {
      throw ValidationError(where + ": expected " + std::to_string(header.size()) +
                            " columns, found " + std::to_string(cells.size()));
    }
    Point row;
    for (std::size_t i = 0; i < m; ++i) {
      try {
        row.push_back(ParseRational(cells[i]));
      } catch (const ParseError& e) {
        throw ValidationError(where + ": " + e.what());
      }
    }
    try {
      space.CheckPoint(row);
    } catch (const DomainError& e) {
      throw DomainError(where + ": " + e.what());
    }
    Value computed = Predict(model, row);
    if (has_prediction) {
      Value given;
      if (model.value_kind() == ValueKind::kNumeric) {
        try {
          given = Value(ParseRational(cells[m]));
        } catch (const ParseError& e) {
          throw ValidationError(where + ": " + e.what());
        }
      } else {
        given = Value(cells[m]);
      }
      if (!(given == computed)) {
        throw ValidationError(where + ": prediction " + given.ToString() +
                              " differs from the model's " + computed.ToString());
      }
    }
    sample.rows.push_back(std::move(row));
    sample.predictions.push_back(std::move(computed));
  }
  if (sample.rows.empty()) throw ValidationError("sample: no data rows");
  return sample;
}

Sample LoadSample(const std::string& path, const Model& model) {
  try {
    return ParseSample(ReadFile(path), model);
  } catch (const ValidationError& e) {
    throw ValidationError("'" + path + "': " + e.what());
  }
}

Sample SampleFromSpace(const Model& model) {
  Sample sample;
  ForEachPoint(model, Constraint(model.space().size()), [&](const Point& x) {
    sample.rows.push_back(x);
    sample.predictions.push_back(Predict(model, x));
    return true;
  });
  return sample;
}

}  // namespace logshap
