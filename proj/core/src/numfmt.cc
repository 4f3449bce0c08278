// Copyright 2026 The trafsample Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trafsample/numfmt.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace trafsample {
namespace {

constexpr double kPow10[kMaxDecimals + 1] = {
    1e0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9, 1e10, 1e11, 1e12};

// Magnitude in units of 10^-decimals, rounded half-up.
std::uint64_t ScaledDigits(double magnitude, int decimals) {
  const double scaled = magnitude * kPow10[decimals];
  const double floor = std::floor(scaled);
  const double frac = scaled - floor;
  const double slack =
      64 * std::numeric_limits<double>::epsilon() * scaled + 1e-12;
  auto digits = static_cast<std::uint64_t>(floor);
  if (frac >= 0.5 - slack) ++digits;
  return digits;
}

}  // namespace

std::string FormatFixed(double value, int decimals) {
  decimals = std::clamp(decimals, 0, kMaxDecimals);
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  const std::uint64_t digits = ScaledDigits(std::fabs(value), decimals);
  std::string text = std::to_string(digits);
  if (text.size() <= static_cast<std::size_t>(decimals)) {
    text.insert(0, static_cast<std::size_t>(decimals) + 1 - text.size(), '0');
  }
  if (decimals > 0) {
    text.insert(text.size() - static_cast<std::size_t>(decimals), 1, '.');
  }
  if (value < 0 && digits != 0) text.insert(0, 1, '-');
  return text;
}

double RoundHalfUp(double value, int decimals) {
  decimals = std::clamp(decimals, 0, kMaxDecimals);
  if (!std::isfinite(value)) return value;
  const double magnitude =
      static_cast<double>(ScaledDigits(std::fabs(value), decimals)) /
      kPow10[decimals];
  return value < 0 ? -magnitude : magnitude;
}

}  // namespace trafsample
