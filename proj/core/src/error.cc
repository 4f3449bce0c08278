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

#include "trafsample/error.h"

namespace trafsample {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingLabelColumn: return "MissingLabelColumn";
    case ErrorCode::kEmptyLabel: return "EmptyLabel";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kZeroTotal: return "ZeroTotal";
    case ErrorCode::kMalformedHistogram: return "MalformedHistogram";
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kTargetExceedsPopulation: return "TargetExceedsPopulation";
    case ErrorCode::kZeroPopulation: return "ZeroPopulation";
    case ErrorCode::kCountExceedsPopulation: return "CountExceedsPopulation";
    case ErrorCode::kUnknownLabelInSample: return "UnknownLabelInSample";
    case ErrorCode::kEmptyComparison: return "EmptyComparison";
    case ErrorCode::kEmptySeries: return "EmptySeries";
    case ErrorCode::kNonMonotonicAxis: return "NonMonotonicAxis";
    case ErrorCode::kMalformedRunMatrix: return "MalformedRunMatrix";
    case ErrorCode::kMalformedReport: return "MalformedReport";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

namespace {

std::string Decorate(ErrorCode code, const std::string& message,
                     std::size_t line) {
  std::string out(ErrorCodeName(code));
  if (line != 0) out += " (line " + std::to_string(line) + ")";
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(Decorate(code, message, line)),
      code_(code),
      line_(line) {}

}  // namespace trafsample
