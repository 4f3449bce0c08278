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

#ifndef TRAFSAMPLE_REPORT_H_
#define TRAFSAMPLE_REPORT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trafsample/metrics.h"
#include "trafsample/samplers.h"

namespace trafsample {

enum class OutputFormat { kMarkdown, kCsv, kJson };

// Version of the JSON envelope written by RenderReport/RenderComparison.
inline constexpr int kReportSchemaVersion = 1;

// Several sampler runs over one source, one column per run. Rows are the
// source classes in histogram order and are identical across columns.
class ComparisonMatrix {
 public:
  // Throws Error(kEmptyComparison) for zero runs and
  // Error(kInvalidParameter) if the runs disagree on their source classes.
  explicit ComparisonMatrix(std::vector<ImbalanceReport> runs);

  std::span<const ImbalanceReport> runs() const { return runs_; }
  std::size_t row_count() const { return runs_.front().per_class.size(); }
  std::size_t column_count() const { return runs_.size(); }
  const std::string& row_label(std::size_t row) const {
    return runs_.front().per_class[row].label;
  }
  // Sampled share of class `row` in run `column`, in percent.
  double cell(std::size_t row, std::size_t column) const {
    return runs_[column].per_class[row].sampled_percent;
  }
  // Column heading such as "stratified I=5 (n=6012)".
  std::string ColumnTitle(std::size_t column) const;

 private:
  std::vector<ImbalanceReport> runs_;
};

// Deterministic text for equal inputs. Markdown and CSV round half-up to
// `decimals`; JSON always carries full precision.
std::string RenderReport(const ImbalanceReport& report, OutputFormat format,
                         int decimals);
std::string RenderReport(const ImbalanceReport& report, OutputFormat format);
std::string RenderComparison(const ComparisonMatrix& matrix,
                             OutputFormat format, int decimals);

// Inverse of RenderReport(..., kJson). Throws Error(kMalformedReport).
ImbalanceReport ParseReportJson(std::string_view json);

// Description of a sampler run as used in report headers, e.g.
// "random n=500 seed=0".
std::string DescribeSpec(const std::optional<SampleSpec>& spec);

struct MissingSeriesRow {
  std::uint64_t x = 0;  // n for random sampling, I for systematic
  std::optional<double> observed;
  std::optional<double> expected;
};

// CSV "x,observed,expected"; absent values are left blank. Throws
// Error(kEmptySeries) and Error(kNonMonotonicAxis) unless x is strictly
// increasing.
std::string MissingSeriesCsv(std::span<const MissingSeriesRow> series,
                             int decimals);

}  // namespace trafsample

#endif  // TRAFSAMPLE_REPORT_H_
