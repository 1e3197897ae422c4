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

#include "packcover/wide_real.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "packcover/errors.hpp"

namespace packcover {

WideReal WideReal::from_double(double v) { return from_parts(v, 0); }

WideReal WideReal::from_parts(double mantissa, std::int64_t exponent) {
  WideReal r;
  if (mantissa == 0.0) return r;
  if (!std::isfinite(mantissa)) {
    throw InternalError("WideReal: non-finite mantissa");
  }
  int ex = 0;
  const double fr = std::frexp(mantissa, &ex);  // |fr| in [0.5, 1)
  r.mantissa_ = fr * 2.0;
  r.exponent_ = exponent + ex - 1;
  return r;
}

WideReal WideReal::exp2(double x) {
  if (!std::isfinite(x)) throw InternalError("WideReal::exp2: non-finite");
  const double whole = std::floor(x);
  return from_parts(std::exp2(x - whole), static_cast<std::int64_t>(whole));
}

double WideReal::to_double() const {
  if (mantissa_ == 0.0) return 0.0;
  constexpr std::int64_t kLimit = 4096;
  const auto e = static_cast<int>(std::clamp(exponent_, -kLimit, kLimit));
  return std::ldexp(mantissa_, e);
}

double WideReal::log2() const {
  if (mantissa_ == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log2(std::fabs(mantissa_)) + static_cast<double>(exponent_);
}

WideReal WideReal::shifted(std::int64_t k) const {
  WideReal r = *this;
  if (r.mantissa_ != 0.0) r.exponent_ -= k;
  return r;
}

WideReal operator*(const WideReal& a, const WideReal& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return WideReal::from_parts(a.mantissa_ * b.mantissa_,
                              a.exponent_ + b.exponent_);
}

WideReal operator/(const WideReal& a, const WideReal& b) {
  if (b.is_zero()) throw InternalError("WideReal: division by zero");
  if (a.is_zero()) return {};
  return WideReal::from_parts(a.mantissa_ / b.mantissa_,
                              a.exponent_ - b.exponent_);
}

WideReal operator+(const WideReal& a, const WideReal& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const WideReal& hi = a.exponent_ >= b.exponent_ ? a : b;
  const WideReal& lo = a.exponent_ >= b.exponent_ ? b : a;
  const std::int64_t gap = hi.exponent_ - lo.exponent_;
  if (gap > 1100) return hi;
  return WideReal::from_parts(
      hi.mantissa_ + std::ldexp(lo.mantissa_, -static_cast<int>(gap)),
      hi.exponent_);
}

WideReal operator-(const WideReal& a, const WideReal& b) { return a + (-b); }

std::partial_ordering operator<=>(const WideReal& a, const WideReal& b) {
  const WideReal d = a - b;
  return d.mantissa_ <=> 0.0;
}

double ratio(const WideReal& a, const WideReal& b) { return (a / b).to_double(); }

}  // namespace packcover
