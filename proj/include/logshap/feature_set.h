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

#ifndef LOGSHAP_FEATURE_SET_H_
#define LOGSHAP_FEATURE_SET_H_

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace logshap {

// Maximum number of features supported by FeatureSet.
inline constexpr int kMaxFeatures = 64;

// A set of 1-based feature ids, stored as a bitmask (bit i-1 <-> feature i).
//
// Ordering is canonical: sets compare by their ascending id sequences,
// lexicographically, so {1} < {1,2} < {2}. Families of sets are always
// reported in this order.
class FeatureSet {
 public:
  FeatureSet() = default;
  FeatureSet(std::initializer_list<int> ids);
  explicit FeatureSet(const std::vector<int>& ids);

  static FeatureSet FromMask(std::uint64_t mask) {
    FeatureSet s;
    s.mask_ = mask;
    return s;
  }
  // {1, ..., m}.
  static FeatureSet All(int m);

  std::uint64_t mask() const { return mask_; }
  bool empty() const { return mask_ == 0; }
  int size() const;

  bool contains(int id) const;
  void insert(int id);
  void erase(int id);
  FeatureSet with(int id) const;
  FeatureSet without(int id) const;

  bool IsSubsetOf(const FeatureSet& other) const {
    return (mask_ & ~other.mask_) == 0;
  }
  bool Intersects(const FeatureSet& other) const {
    return (mask_ & other.mask_) != 0;
  }
  // {1..m} \ this.
  FeatureSet Complement(int m) const;
  FeatureSet Union(const FeatureSet& other) const {
    return FromMask(mask_ | other.mask_);
  }

  std::vector<int> ids() const;
  // "{1,3}"; the empty set renders as "{}".
  std::string ToString() const;

  bool operator==(const FeatureSet& other) const = default;
  std::strong_ordering operator<=>(const FeatureSet& other) const;

 private:
  std::uint64_t mask_ = 0;
};

// Sorts into canonical order and removes duplicates.
void Canonicalize(std::vector<FeatureSet>& family);

std::string ToString(const std::vector<FeatureSet>& family);

}  // namespace logshap

#endif  // LOGSHAP_FEATURE_SET_H_
