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

#ifndef TRAFSAMPLE_TOOLS_CLI_H_
#define TRAFSAMPLE_TOOLS_CLI_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "trafsample/samplers.h"

namespace trafsample::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsageError = 2;

// Entry point shared by the executable and the tests. `args` excludes the
// program name.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Run-matrix file for `compare`: one run per line,
//
//   <family> key=value ...
//
// with family in {random, systematic, bycount, stratified, underover} and
// keys n, interval (or I), k, replacement (true/false), seed. '#' starts a
// comment. Runs without a seed key use `default_seed`.
// Throws Error(kMalformedRunMatrix).
std::vector<SampleSpec> ParseRunMatrix(std::istream& in,
                                       std::uint64_t default_seed);

}  // namespace trafsample::cli

#endif  // TRAFSAMPLE_TOOLS_CLI_H_
