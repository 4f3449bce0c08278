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

#ifndef TRAFSAMPLE_NUMFMT_H_
#define TRAFSAMPLE_NUMFMT_H_

#include <string>

namespace trafsample {

inline constexpr int kDefaultDecimals = 3;
inline constexpr int kMaxDecimals = 12;

// Fixed-point text with half-up rounding (ties away from zero). Values whose
// scaled fraction sits within binary representation error of .5 count as
// ties, so 2.675 renders as 2.68 at two decimals. Output does not depend on
// the C library's printf rounding.
std::string FormatFixed(double value, int decimals);

// Numeric counterpart of FormatFixed.
double RoundHalfUp(double value, int decimals);

}  // namespace trafsample

#endif  // TRAFSAMPLE_NUMFMT_H_
