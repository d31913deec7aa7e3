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

#include "logshap/rational.h"

#include <cctype>
#include <string>

#include "logshap/errors.h"

namespace logshap {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

bool IsInteger(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) {
    s.remove_prefix(1);
  }
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class ParseInteger(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

[[noreturn]] void Fail(std::string_view text) {
  throw ParseError("invalid rational literal '" + std::string(text) + "'");
}

Rational ParseDecimal(std::string_view s, std::string_view original) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    if (!IsInteger(exp_part, true) || exp_part.size() > 8) Fail(original);
    exponent = std::stol(std::string(exp_part));
    s = s.substr(0, e);
  }
  std::string digits;
  long fraction_digits = 0;
  bool seen_point = false;
  for (char c : s) {
    if (c == '.') {
      if (seen_point) Fail(original);
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++fraction_digits;
    } else {
      Fail(original);
    }
  }
  if (digits.empty()) Fail(original);
  mpz_class numerator(digits, 10);
  long scale = exponent - fraction_digits;
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(
                                           scale < 0 ? -scale : scale));
  Rational result = scale < 0 ? Rational(numerator, power)
                              : Rational(numerator * power);
  result.canonicalize();
  if (negative) result = -result;
  return result;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  std::string_view s = Trim(text);
  if (s.empty()) Fail(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = Trim(s.substr(0, slash));
    std::string_view den = Trim(s.substr(slash + 1));
    if (!IsInteger(num, true) || !IsInteger(den, false)) Fail(text);
    mpz_class d = ParseInteger(den);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational r(ParseInteger(num), d);
    r.canonicalize();
    return r;
  }
  if (IsInteger(s, true)) return Rational(ParseInteger(s));
  return ParseDecimal(s, text);
}

std::string ToString(const Rational& value) { return value.get_str(10); }

std::string ToDecimal(const Rational& value, int places) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
  Rational scaled = Abs(value) * scale + Rational(1, 2);
  mpz_class rounded;
  mpz_fdiv_q(rounded.get_mpz_t(), scaled.get_num_mpz_t(),
             scaled.get_den_mpz_t());
  std::string digits = rounded.get_str(10);
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, static_cast<std::size_t>(places + 1) - digits.size(), '0');
  }
  std::string out;
  if (value < 0 && rounded != 0) out.push_back('-');
  out += digits.substr(0, digits.size() - static_cast<std::size_t>(places));
  if (places > 0) {
    out.push_back('.');
    out += digits.substr(digits.size() - static_cast<std::size_t>(places));
  }
  return out;
}

double ToDouble(const Rational& value) { return value.get_d(); }

Rational Abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

Rational Factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

}  // namespace logshap
