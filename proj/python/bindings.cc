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

// Python bindings. Rationals cross the boundary as "p/q" strings; the
// package wrapper turns them into fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <sstream>

#include "logshap/cgt.h"
#include "logshap/cli.h"
#include "logshap/errors.h"
#include "logshap/explanations.h"
#include "logshap/games.h"
#include "logshap/io.h"
#include "logshap/ranking.h"

namespace py = pybind11;

namespace logshap {
namespace {

std::vector<std::string> Strings(const std::vector<Rational>& values) {
  std::vector<std::string> out;
  for (const auto& v : values) out.push_back(ToString(v));
  return out;
}

std::vector<std::vector<int>> Ids(const std::vector<FeatureSet>& family) {
  std::vector<std::vector<int>> out;
  for (const auto& s : family) out.push_back(s.ids());
  return out;
}

class PyProblem {
 public:
  PyProblem(std::shared_ptr<const Model> model, const std::vector<std::string>& point,
            std::optional<std::string> delta, std::optional<std::string> sample)
      : problem_(model, ParsePoint(Join(point), model->space()), Similarity(*model, delta)),
        universe_(sample ? Universe::ModelAgnostic(LoadSample(*sample, *model))
                         : Universe::ModelAware()),
        explainer_(problem_, universe_) {}

  std::string prediction() const { return problem_.instance().prediction.ToString(); }
  int num_features() const { return problem_.num_features(); }
  bool IsWaxp(const std::vector<int>& s) const { return explainer_.IsWaxp(FeatureSet(s)); }
  bool IsWcxp(const std::vector<int>& s) const { return explainer_.IsWcxp(FeatureSet(s)); }
  std::vector<std::vector<int>> Axps() const { return Ids(explainer_.EnumerateAxps()); }
  std::vector<std::vector<int>> Cxps() const { return Ids(explainer_.EnumerateCxps()); }
  std::vector<int> Relevant() const { return explainer_.RelevantFeatures().ids(); }
  std::string Expectation(const std::vector<int>& s) const {
    return ToString(CfExpected(problem_, FeatureSet(s)));
  }

  std::vector<std::string> Shapley(const std::string& game, const std::string& method,
                                   const std::string& epsilon, const std::string& alpha,
                                   std::uint64_t seed, std::optional<std::uint64_t> samples) const {
    MethodSpec spec = ParseMethodSpec(game + "/" + method);
    spec.cgt.epsilon = ParseRational(epsilon);
    spec.cgt.alpha = ParseRational(alpha);
    spec.cgt.seed = seed;
    spec.cgt.samples = samples;
    py::gil_scoped_release release;
    return Strings(ComputeScores(problem_, universe_, spec).scores);
  }

  std::vector<int> Misleading(const std::vector<std::string>& scores) const {
    ScoreVector sv;
    for (const auto& s : scores) sv.scores.push_back(ParseRational(s));
    return CheckCompliance(explainer_, sv).misleading().ids();
  }

 private:
  static std::string Join(const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
    return s;
  }
  static SimilarityConfig Similarity(const Model& model, const std::optional<std::string>& delta) {
    if (delta) return SimilarityConfig::RegressionThreshold(ParseRational(*delta));
    if (model.task() == Task::kRegression) {
      throw ValidationError("regression models need a similarity threshold (delta)");
    }
    return SimilarityConfig::ClassEquality();
  }

  ExplanationProblem problem_;
  Universe universe_;
  Explainer explainer_;
};

Ranking ToRanking(const std::vector<int>& order) { return Ranking{order, RankMode::kSigned}; }

}  // namespace
}  // namespace logshap

PYBIND11_MODULE(_logshap, m) {
  using namespace logshap;
  auto validation = py::register_exception<ValidationError>(m, "ValidationError",
                                                            PyExc_ValueError);
  py::register_exception<ComputationError>(m, "ComputationError", PyExc_RuntimeError);
  (void)validation;

  py::class_<Model, std::shared_ptr<Model>>(m, "Model")
      .def_property_readonly("kind", &Model::kind_name)
      .def_property_readonly("num_features", [](const Model& model) {
        return model.space().size();
      })
      .def_property_readonly("feature_names", [](const Model& model) {
        std::vector<std::string> names;
        for (const auto& f : model.space().features()) names.push_back(f.name);
        return names;
      })
      .def("predict", [](const Model& model, const py::sequence& point) {
        // Accepts str, int or Fraction coordinates.
        std::string joined;
        for (std::size_t i = 0; i < point.size(); ++i) {
          joined += (i ? "," : "") + std::string(py::str(point[i]));
        }
        return Predict(model, ParsePoint(joined, model.space())).ToString();
      });

  m.def("load_model", [](const std::string& path) {
    return std::const_pointer_cast<Model>(LoadModel(path));
  });

  py::class_<PyProblem>(m, "Problem")
      .def(py::init([](std::shared_ptr<Model> model, const std::vector<std::string>& point,
                       std::optional<std::string> delta, std::optional<std::string> sample) {
             return std::make_unique<PyProblem>(model, point, delta, sample);
           }),
           py::arg("model"), py::arg("point"), py::arg("delta") = py::none(),
           py::arg("sample") = py::none())
      .def_property_readonly("prediction", &PyProblem::prediction)
      .def_property_readonly("num_features", &PyProblem::num_features)
      .def("is_waxp", &PyProblem::IsWaxp)
      .def("is_wcxp", &PyProblem::IsWcxp)
      .def("axps", &PyProblem::Axps)
      .def("cxps", &PyProblem::Cxps)
      .def("relevant_features", &PyProblem::Relevant)
      .def("conditional_expectation", &PyProblem::Expectation)
      .def("shapley", &PyProblem::Shapley, py::arg("game"), py::arg("method"),
           py::arg("epsilon"), py::arg("alpha"), py::arg("seed"), py::arg("samples"))
      .def("misleading", &PyProblem::Misleading);

  m.def("rank", [](const std::vector<std::string>& scores, bool absolute) {
    std::vector<Rational> values;
    for (const auto& s : scores) values.push_back(ParseRational(s));
    return RankFeatures(values, absolute ? RankMode::kAbsolute : RankMode::kSigned).order;
  });
  m.def("rbo", [](const std::vector<int>& a, const std::vector<int>& b,
                  const std::string& persistence, int depth) {
    return ToString(Rbo(ToRanking(a), ToRanking(b), ParseRational(persistence), depth));
  });
  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = RunCli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
