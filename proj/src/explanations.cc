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

#include "logshap/explanations.h"

#include <algorithm>
#include <set>
#include <string>

#include "logshap/errors.h"

namespace logshap {
namespace {

constexpr int kMaxLatticeFeatures = 24;

std::uint64_t AgreementMask(const Point& x, const Point& v) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (x[i] == v[i]) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

// Keeps only masks not strictly contained in another mask.
std::vector<std::uint64_t> MaximalMasks(const std::set<std::uint64_t>& masks) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t a : masks) {
    bool dominated = std::any_of(masks.begin(), masks.end(), [&](std::uint64_t b) {
      return a != b && (a & ~b) == 0;
    });
    if (!dominated) out.push_back(a);
  }
  return out;
}

// Next mask with the same popcount (Gosper's hack).
std::uint64_t NextSameSize(std::uint64_t x) {
  std::uint64_t c = x & (~x + 1);
  std::uint64_t r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

}  // namespace

Universe Universe::ModelAgnostic(Sample sample) {
  if (sample.rows.empty()) {
    throw ValidationError("a model-agnostic universe needs a non-empty sample");
  }
  if (sample.rows.size() != sample.predictions.size()) {
    throw ValidationError("sample rows and predictions differ in length");
  }
  Universe u;
  u.sample_ = std::move(sample);
  return u;
}

Explainer::Explainer(const ExplanationProblem& problem, Universe universe)
    : problem_(problem),
      universe_(std::move(universe)),
      m_(problem.num_features()) {
  const Point& v = problem_.instance().point;
  std::set<std::uint64_t> dissimilar;
  if (universe_.model_aware()) {
    if (!problem_.model().discrete()) {
      box_ = true;
      return;
    }
    ForEachPoint(problem_.model(), Constraint(m_), [&](const Point& x) {
      if (!SimilarOutput(problem_, Predict(problem_.model(), x))) {
        dissimilar.insert(AgreementMask(x, v));
      }
      return true;
    });
  } else {
    const Sample& sample = universe_.sample();
    std::set<std::uint64_t> rows;
    for (std::size_t j = 0; j < sample.rows.size(); ++j) {
      problem_.model().space().CheckPoint(sample.rows[j]);
      std::uint64_t mask = AgreementMask(sample.rows[j], v);
      rows.insert(mask);
      if (!SimilarOutput(problem_, sample.predictions[j])) dissimilar.insert(mask);
    }
    all_rows_ = MaximalMasks(rows);
  }
  dissimilar_ = MaximalMasks(dissimilar);
}

bool Explainer::BoxAllSimilar(const FeatureSet& fixed) const {
  const auto& box = std::get<BoxPiecewiseModel>(problem_.model().get());
  const Point& v = problem_.instance().point;
  const Rational& p = problem_.instance().prediction.number();
  Rational delta = problem_.similarity().mode() ==
                           SimilarityConfig::Mode::kRegressionThreshold
                       ? problem_.similarity().delta()
                       : Rational(0);
  for (const auto& cell : box.cells()) {
    Rational lo = cell.affine[0];
    Rational hi = cell.affine[0];
    bool hit = true;
    for (int id = 1; id <= m_ && hit; ++id) {
      const Rational& a = cell.affine[id];
      if (fixed.contains(id)) {
        hit = box.AxisContains(cell, id, v[id - 1]);
        lo += a * v[id - 1];
        hi += a * v[id - 1];
      } else {
        Rational x = a * cell.box[id - 1].first;
        Rational y = a * cell.box[id - 1].second;
        lo += std::min(x, y);
        hi += std::max(x, y);
      }
    }
    if (hit && (lo < p - delta || hi > p + delta)) return false;
  }
  return true;
}

bool Explainer::IsWaxp(const FeatureSet& fixed) const {
  if (!fixed.IsSubsetOf(FeatureSet::All(m_))) {
    throw ValidationError("set " + fixed.ToString() + " names unknown features");
  }
  if (box_) return BoxAllSimilar(fixed);
  return std::none_of(dissimilar_.begin(), dissimilar_.end(), [&](std::uint64_t d) {
    return (fixed.mask() & ~d) == 0;
  });
}

bool Explainer::IsWcxp(const FeatureSet& freed) const {
  if (!freed.IsSubsetOf(FeatureSet::All(m_))) {
    throw ValidationError("set " + freed.ToString() + " names unknown features");
  }
  FeatureSet fixed = freed.Complement(m_);
  if (box_) return !BoxAllSimilar(fixed);
  return std::any_of(dissimilar_.begin(), dissimilar_.end(), [&](std::uint64_t d) {
    return (fixed.mask() & ~d) == 0;
  });
}

bool Explainer::IsVacuous(const FeatureSet& fixed) const {
  if (universe_.model_aware()) return false;
  return std::none_of(all_rows_.begin(), all_rows_.end(), [&](std::uint64_t r) {
    return (fixed.mask() & ~r) == 0;
  });
}

FeatureSet Explainer::ExtractAxp(const FeatureSet& seed) const {
  if (!IsWaxp(seed)) {
    throw PreconditionError("seed " + seed.ToString() + " is not a WAXp");
  }
  FeatureSet current = seed;
  for (int id : seed.ids()) {
    if (IsWaxp(current.without(id))) current.erase(id);
  }
  return current;
}

FeatureSet Explainer::ExtractCxp(const FeatureSet& seed) const {
  if (!IsWcxp(seed)) {
    throw PreconditionError("seed " + seed.ToString() + " is not a WCXp");
  }
  FeatureSet current = seed;
  for (int id : seed.ids()) {
    if (IsWcxp(current.without(id))) current.erase(id);
  }
  return current;
}

std::vector<FeatureSet> Explainer::MinimalByLattice(bool contrastive) const {
  if (m_ > kMaxLatticeFeatures) {
    throw SizeError("exhaustive explanation enumeration supports at most " +
                    std::to_string(kMaxLatticeFeatures) + " features");
  }
  // Visiting subsets by increasing size, a set satisfying the (monotone)
  // predicate is minimal iff it contains no set found earlier.
  std::vector<FeatureSet> found;
  const std::uint64_t limit = std::uint64_t{1} << m_;
  for (int k = 0; k <= m_; ++k) {
    std::uint64_t mask = k == 0 ? 0 : (std::uint64_t{1} << k) - 1;
    while (mask < limit) {
      FeatureSet s = FeatureSet::FromMask(mask);
      bool pruned = std::any_of(found.begin(), found.end(), [&](const FeatureSet& f) {
        return f.IsSubsetOf(s);
      });
      if (!pruned && (contrastive ? IsWcxp(s) : IsWaxp(s))) found.push_back(s);
      if (k == 0) break;
      mask = NextSameSize(mask);
    }
  }
  Canonicalize(found);
  return found;
}

std::vector<FeatureSet> Explainer::EnumerateCxps() const {
  if (ConstantOnUniverse()) return {};
  return MinimalByLattice(true);
}

std::vector<FeatureSet> Explainer::EnumerateAxps() const {
  return MinimalByLattice(false);
}

FeatureSet Explainer::RelevantFeatures() const {
  FeatureSet relevant;
  for (const FeatureSet& cxp : EnumerateCxps()) relevant = relevant.Union(cxp);
  return relevant;
}

bool Explainer::ConstantOnUniverse() const {
  return box_ ? BoxAllSimilar(FeatureSet()) : dissimilar_.empty();
}

std::optional<Point> Explainer::Witness(const FeatureSet& freed) const {
  const Point& v = problem_.instance().point;
  FeatureSet fixed = freed.Complement(m_);
  if (!universe_.model_aware()) {
    const Sample& sample = universe_.sample();
    for (std::size_t j = 0; j < sample.rows.size(); ++j) {
      if ((fixed.mask() & ~AgreementMask(sample.rows[j], v)) == 0 &&
          !SimilarOutput(problem_, sample.predictions[j])) {
        return sample.rows[j];
      }
    }
    return std::nullopt;
  }
  if (!box_) {
    std::optional<Point> witness;
    ForEachPoint(problem_.model(), FixTo(v, fixed), [&](const Point& x) {
      if (Similar(problem_, x)) return true;
      witness = x;
      return false;
    });
    return witness;
  }
  // Box cells: try the corners of every compatible cell, then walk from a
  // corner towards the cell centre when the corner lies on an open face.
  const auto& box = std::get<BoxPiecewiseModel>(problem_.model().get());
  for (const auto& cell : box.cells()) {
    bool hit = true;
    for (int id : fixed.ids()) hit = hit && box.AxisContains(cell, id, v[id - 1]);
    if (!hit) continue;
    std::vector<int> free_ids = freed.ids();
    Point centre = v;
    for (int id : free_ids) {
      centre[id - 1] = (cell.box[id - 1].first + cell.box[id - 1].second) / 2;
    }
    for (std::uint64_t corner = 0; corner < (std::uint64_t{1} << free_ids.size());
         ++corner) {
      Point x = v;
      for (std::size_t k = 0; k < free_ids.size(); ++k) {
        const auto& [lo, hi] = cell.box[free_ids[k] - 1];
        x[free_ids[k] - 1] = (corner >> k) & 1 ? hi : lo;
      }
      // Fractions 0, 1/2, 1/4, ... of the way to the centre.
      Rational frac = 0;
      for (int step = 0; step < 64; ++step) {
        Point y = x;
        for (int id : free_ids) {
          y[id - 1] = x[id - 1] + frac * (centre[id - 1] - x[id - 1]);
        }
        if (box.CellContains(cell, y) && !Similar(problem_, y)) return y;
        frac = step == 0 ? Rational(1, 2) : Rational(frac / 2);
      }
    }
  }
  return std::nullopt;
}

bool IsWaxp(const ExplanationProblem& problem, const Universe& universe,
            const FeatureSet& fixed) {
  return Explainer(problem, universe).IsWaxp(fixed);
}

bool IsWcxp(const ExplanationProblem& problem, const Universe& universe,
            const FeatureSet& freed) {
  return Explainer(problem, universe).IsWcxp(freed);
}

FeatureSet ExtractAxp(const ExplanationProblem& problem, const Universe& universe,
                      const FeatureSet& seed) {
  return Explainer(problem, universe).ExtractAxp(seed);
}

FeatureSet ExtractCxp(const ExplanationProblem& problem, const Universe& universe,
                      const FeatureSet& seed) {
  return Explainer(problem, universe).ExtractCxp(seed);
}

std::vector<FeatureSet> EnumerateCxps(const ExplanationProblem& problem,
                                      const Universe& universe) {
  return Explainer(problem, universe).EnumerateCxps();
}

FeatureSet RelevantFeatures(const ExplanationProblem& problem,
                            const Universe& universe) {
  return Explainer(problem, universe).RelevantFeatures();
}

namespace {

void HittingSetSearch(const std::vector<FeatureSet>& family, FeatureSet current,
                      std::vector<FeatureSet>& hits) {
  auto unhit = std::find_if(family.begin(), family.end(), [&](const FeatureSet& s) {
    return !s.Intersects(current);
  });
  if (unhit == family.end()) {
    hits.push_back(current);
    return;
  }
  for (int id : unhit->ids()) {
    FeatureSet next = current.with(id);
    bool covered = std::any_of(hits.begin(), hits.end(), [&](const FeatureSet& h) {
      return h.IsSubsetOf(next);
    });
    if (!covered) HittingSetSearch(family, next, hits);
  }
}

}  // namespace

std::vector<FeatureSet> MinimalHittingSets(const std::vector<FeatureSet>& family) {
  if (family.empty()) {
    throw PreconditionError("minimal hitting sets of an empty family are undefined");
  }
  for (const FeatureSet& s : family) {
    if (s.empty()) {
      throw PreconditionError("family contains the empty set; nothing hits it");
    }
  }
  std::vector<FeatureSet> hits;
  HittingSetSearch(family, FeatureSet(), hits);
  std::vector<FeatureSet> minimal;
  for (const FeatureSet& h : hits) {
    bool dominated = std::any_of(hits.begin(), hits.end(), [&](const FeatureSet& g) {
      return g != h && g.IsSubsetOf(h);
    });
    if (!dominated) minimal.push_back(h);
  }
  Canonicalize(minimal);
  return minimal;
}

}  // namespace logshap
