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

#ifndef TRAFSAMPLE_ERROR_H_
#define TRAFSAMPLE_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace trafsample {

enum class ErrorCode {
  kMissingLabelColumn,
  kEmptyLabel,
  kMalformedRow,
  kEmptyDataset,
  kZeroTotal,
  kMalformedHistogram,
  kInvalidParameter,
  kTargetExceedsPopulation,
  kZeroPopulation,
  kCountExceedsPopulation,
  kUnknownLabelInSample,
  kEmptyComparison,
  kEmptySeries,
  kNonMonotonicAxis,
  kMalformedRunMatrix,
  kMalformedReport,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures surface as this exception. `line()` is the 1-based
// input line when the error is tied to one, otherwise 0.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0);

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::size_t line_;
};

}  // namespace trafsample

#endif  // TRAFSAMPLE_ERROR_H_
