// Copyright 2026 The packcover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstdint>

namespace packcover {

// A real number m * 2^e with |m| in [1, 2) (or m == 0) and a 64-bit binary
// exponent. Used wherever weights like (1+eps)^y leave the range of double.
class WideReal {
 public:
  constexpr WideReal() = default;

  static WideReal from_double(double v);
  // Normalizes an arbitrary (finite) mantissa/exponent pair.
  static WideReal from_parts(double mantissa, std::int64_t exponent);
  // 2^x for a possibly huge real x.
  static WideReal exp2(double x);

  double mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }
  bool is_zero() const { return mantissa_ == 0.0; }
  bool is_negative() const { return mantissa_ < 0.0; }

  // Saturates to +-inf or 0 outside the double range.
  double to_double() const;
  // log2 of the absolute value; -inf for zero.
  double log2() const;

  // Divides by 2^k exactly.
  WideReal shifted(std::int64_t k) const;

  friend WideReal operator*(const WideReal& a, const WideReal& b);
  friend WideReal operator/(const WideReal& a, const WideReal& b);
  friend WideReal operator+(const WideReal& a, const WideReal& b);
  friend WideReal operator-(const WideReal& a, const WideReal& b);
  friend WideReal operator-(const WideReal& a) {
    WideReal r = a;
    r.mantissa_ = -r.mantissa_;
    return r;
  }
  WideReal& operator+=(const WideReal& o) { return *this = *this + o; }
  WideReal& operator-=(const WideReal& o) { return *this = *this - o; }
  WideReal& operator*=(const WideReal& o) { return *this = *this * o; }

  friend bool operator==(const WideReal& a, const WideReal& b) = default;
  friend std::partial_ordering operator<=>(const WideReal& a,
                                           const WideReal& b);

 private:
  double mantissa_ = 0.0;
  std::int64_t exponent_ = 0;
};

// a / b as a plain double (saturating).
double ratio(const WideReal& a, const WideReal& b);

}  // namespace packcover
