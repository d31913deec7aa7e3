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

#ifndef LOGSHAP_RATIONAL_H_
#define LOGSHAP_RATIONAL_H_

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace logshap {

// Exact rational number. All expectations and Shapley sums are carried out
// in this type so that values such as 1/12 compare exactly.
using Rational = mpq_class;

// Accepts "p/q", integers and decimal literals ("0.25", "-1.5e-2").
// Throws ParseError on anything else, including a zero denominator.
Rational ParseRational(std::string_view text);

// Canonical "p/q" form; integers render without a denominator.
std::string ToString(const Rational& value);

// Fixed-point rendering with `places` digits after the point, rounded half
// away from zero.
std::string ToDecimal(const Rational& value, int places = 6);

double ToDouble(const Rational& value);

Rational Abs(const Rational& value);

// n! as an exact integer.
Rational Factorial(unsigned n);

}  // namespace logshap

#endif  // LOGSHAP_RATIONAL_H_
