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

#include "logshap/feature_set.h"

#include <algorithm>
#include <bit>
#include <string>

#include "logshap/errors.h"

namespace logshap {
namespace {

std::uint64_t Bit(int id) {
  if (id < 1 || id > kMaxFeatures) {
    throw ValidationError("feature id " + std::to_string(id) +
                          " out of range 1.." + std::to_string(kMaxFeatures));
  }
  return std::uint64_t{1} << (id - 1);
}

}  // namespace

FeatureSet::FeatureSet(std::initializer_list<int> ids) {
  for (int id : ids) insert(id);
}

FeatureSet::FeatureSet(const std::vector<int>& ids) {
  for (int id : ids) insert(id);
}

FeatureSet FeatureSet::All(int m) {
  if (m < 0 || m > kMaxFeatures) {
    throw ValidationError("feature count out of range");
  }
  return FromMask(m == kMaxFeatures ? ~std::uint64_t{0}
                                    : (std::uint64_t{1} << m) - 1);
}

int FeatureSet::size() const { return std::popcount(mask_); }

bool FeatureSet::contains(int id) const {
  return id >= 1 && id <= kMaxFeatures && (mask_ & (std::uint64_t{1} << (id - 1)));
}

void FeatureSet::insert(int id) { mask_ |= Bit(id); }
void FeatureSet::erase(int id) { mask_ &= ~Bit(id); }

FeatureSet FeatureSet::with(int id) const {
  FeatureSet s = *this;
  s.insert(id);
  return s;
}

FeatureSet FeatureSet::without(int id) const {
  FeatureSet s = *this;
  s.erase(id);
  return s;
}

FeatureSet FeatureSet::Complement(int m) const {
  return FromMask(All(m).mask_ & ~mask_);
}

std::vector<int> FeatureSet::ids() const {
  std::vector<int> out;
  for (std::uint64_t rest = mask_; rest != 0; rest &= rest - 1) {
    out.push_back(std::countr_zero(rest) + 1);
  }
  return out;
}

std::string FeatureSet::ToString() const {
  std::string out = "{";
  bool first = true;
  for (int id : ids()) {
    if (!first) out += ",";
    out += std::to_string(id);
    first = false;
  }
  return out + "}";
}

std::strong_ordering FeatureSet::operator<=>(const FeatureSet& other) const {
  if (mask_ == other.mask_) return std::strong_ordering::equal;
  // Lexicographic on ascending ids: the lowest differing bit decides, and
  // a proper prefix sorts first.
  std::uint64_t diff = mask_ ^ other.mask_;
  std::uint64_t low = diff & (~diff + 1);
  std::uint64_t below = low - 1;
  bool mine = (mask_ & low) != 0;
  // The set holding the lowest differing id is smaller, unless the other
  // set has no ids above the shared prefix at all (it is a prefix).
  if (mine) {
    return (other.mask_ & ~below) == 0 ? std::strong_ordering::greater
                                       : std::strong_ordering::less;
  }
  return (mask_ & ~below) == 0 ? std::strong_ordering::less
                               : std::strong_ordering::greater;
}

void Canonicalize(std::vector<FeatureSet>& family) {
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
}

std::string ToString(const std::vector<FeatureSet>& family) {
  std::string out = "{";
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (i > 0) out += ",";
    out += family[i].ToString();
  }
  return out + "}";
}

}  // namespace logshap
