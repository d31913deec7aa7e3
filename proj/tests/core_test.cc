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

#include <gtest/gtest.h>

#include "logshap/errors.h"
#include "logshap/feature_set.h"
#include "logshap/rational.h"

namespace logshap {
namespace {

TEST(RationalTest, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(ParseRational("3/6"), Rational(1, 2));
  EXPECT_EQ(ParseRational("-1/2"), Rational(-1, 2));
  EXPECT_EQ(ParseRational(" 7 "), Rational(7));
  EXPECT_EQ(ParseRational("0.25"), Rational(1, 4));
  EXPECT_EQ(ParseRational("-1.5e-2"), Rational(-3, 200));
  EXPECT_EQ(ParseRational("2E3"), Rational(2000));
  EXPECT_EQ(ParseRational(".5"), Rational(1, 2));
}

TEST(RationalTest, RejectsMalformedLiterals) {
  for (const char* bad : {"", "1/0", "a", "1/2/3", "1.2.3", "--1", "1/-2", "e5"}) {
    EXPECT_THROW(ParseRational(bad), ParseError) << bad;
  }
}

TEST(RationalTest, RendersCanonicalAndDecimalForms) {
  EXPECT_EQ(ToString(ParseRational("2/4")), "1/2");
  EXPECT_EQ(ToString(Rational(-3)), "-3");
  EXPECT_EQ(ToDecimal(Rational(1, 12)), "0.083333");
  EXPECT_EQ(ToDecimal(Rational(-1, 2)), "-0.500000");
  EXPECT_EQ(ToDecimal(Rational(2, 3), 2), "0.67");
  EXPECT_EQ(ToDecimal(Rational(-1, 10000000)), "0.000000");
  EXPECT_EQ(ToDecimal(Rational(5), 0), "5");
}

TEST(RationalTest, FactorialIsExact) {
  EXPECT_EQ(Factorial(0), Rational(1));
  EXPECT_EQ(Factorial(5), Rational(120));
  EXPECT_EQ(Factorial(24), Rational(mpz_class("620448401733239439360000")));
}

TEST(FeatureSetTest, BasicMembership) {
  FeatureSet s{3, 1};
  EXPECT_TRUE(s.contains(1));
  EXPECT_FALSE(s.contains(2));
  EXPECT_EQ(s.size(), 2);
  EXPECT_EQ(s.ids(), (std::vector<int>{1, 3}));
  EXPECT_EQ(s.ToString(), "{1,3}");
  EXPECT_EQ(FeatureSet().ToString(), "{}");
  EXPECT_EQ(s.Complement(4), (FeatureSet{2, 4}));
  EXPECT_TRUE(FeatureSet{1}.IsSubsetOf(s));
  EXPECT_EQ(FeatureSet::All(64).size(), 64);
  EXPECT_THROW(FeatureSet{0}, ValidationError);
  EXPECT_THROW(FeatureSet{65}, ValidationError);
}

TEST(FeatureSetTest, CanonicalOrderIsLexicographicOnIds) {
  std::vector<FeatureSet> family{{2}, {1, 2}, {1}, {1, 3}, {}, {1, 2}, {2, 3}};
  Canonicalize(family);
  std::vector<FeatureSet> expected{{}, {1}, {1, 2}, {1, 3}, {2}, {2, 3}};
  EXPECT_EQ(family, expected);
  EXPECT_EQ(ToString(family), "{{},{1},{1,2},{1,3},{2},{2,3}}");
}

TEST(FeatureSetTest, OrderingAgreesWithIdVectorsExhaustively) {
  for (std::uint64_t a = 0; a < 32; ++a) {
    for (std::uint64_t b = 0; b < 32; ++b) {
      auto x = FeatureSet::FromMask(a);
      auto y = FeatureSet::FromMask(b);
      EXPECT_EQ(x < y, x.ids() < y.ids()) << x.ToString() << " " << y.ToString();
    }
  }
}

}  // namespace
}  // namespace logshap
