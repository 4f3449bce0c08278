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

#ifndef TRAFSAMPLE_DATASET_H_
#define TRAFSAMPLE_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace trafsample {

using Attribute = std::pair<std::string, std::string>;

// One labeled traffic record. `position` is 1-based within its dataset.
struct PacketRecord {
  std::uint64_t position = 0;
  std::string label;
  std::vector<Attribute> attributes;

  friend bool operator==(const PacketRecord&, const PacketRecord&) = default;
};

// Ordered, immutable population of records. Positions are exactly 1..P in
// order; labels are trimmed and non-empty.
class TraceDataset {
 public:
  TraceDataset() = default;
  // Throws Error(kInvalidParameter) if positions are not 1..P in order, and
  // Error(kEmptyLabel) if a label is blank. Labels are trimmed.
  explicit TraceDataset(std::vector<PacketRecord> records);

  // Records labeled in order, positions 1..P, no attributes.
  static TraceDataset FromLabels(const std::vector<std::string>& labels);

  std::span<const PacketRecord> records() const { return records_; }
  std::size_t population() const { return records_.size(); }
  // Number of distinct labels.
  std::size_t class_count() const { return class_count_; }
  bool empty() const { return records_.empty(); }

  // 1-based access.
  const PacketRecord& at(std::uint64_t position) const {
    return records_.at(position - 1);
  }

 private:
  std::vector<PacketRecord> records_;
  std::size_t class_count_ = 0;
};

struct ClassCount {
  std::string label;
  std::uint64_t count = 0;

  friend bool operator==(const ClassCount&, const ClassCount&) = default;
};

// Per-label instance counts in a fixed order (first appearance for
// histograms computed from a dataset). Every count is >= 1 and labels are
// unique.
class ClassHistogram {
 public:
  ClassHistogram() = default;
  // Throws Error(kMalformedHistogram) on a blank or duplicate label or a
  // zero count.
  explicit ClassHistogram(std::vector<ClassCount> entries);

  std::span<const ClassCount> entries() const { return entries_; }
  // L: number of classes (strata).
  std::size_t class_count() const { return entries_.size(); }
  std::uint64_t total() const { return total_; }

  std::optional<std::size_t> IndexOf(std::string_view label) const;

  // Same label->count mapping, ignoring entry order.
  bool SameCounts(const ClassHistogram& other) const;

  friend bool operator==(const ClassHistogram& a, const ClassHistogram& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<ClassCount> entries_;
  std::uint64_t total_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
};

enum class InputFormat { kCsv, kNdjson };
enum class Arrangement { kShuffled, kGrouped };

inline constexpr std::string_view kDefaultLabelColumn = "Protocol";
inline constexpr std::string_view kPositionColumn = "No.";

// Reads one record per data row (CSV, header required) or per non-blank line
// (NDJSON objects). Every non-label column is kept as an attribute, in
// column order; NDJSON non-string values are kept as their JSON text.
//
// Errors: kMissingLabelColumn, kEmptyLabel (whole file rejected), kMalformedRow
// (column count mismatch, bad quoting, invalid JSON), kEmptyDataset.
TraceDataset ParseRecords(std::istream& in, InputFormat format,
                          std::string_view label_column = kDefaultLabelColumn);

// Builds a dataset with exactly the histogram's counts. Grouped emits each
// class contiguously in histogram order; shuffled applies a seeded
// Fisher-Yates permutation to the grouped layout. Each record carries a
// "No." attribute equal to its position. Throws Error(kZeroTotal) for an
// empty histogram.
TraceDataset Synthesize(const ClassHistogram& spec, std::uint64_t seed,
                        Arrangement arrangement);

// Counts by exact label in first-appearance order. Throws kEmptyDataset.
ClassHistogram Histogram(const TraceDataset& dataset);

// "label,count" lines; '#' starts a comment; blank lines ignored. The count
// follows the last comma so labels may themselves contain commas.
// Throws Error(kMalformedHistogram) with the offending line.
ClassHistogram ParseHistogramSpec(std::istream& in);
void WriteHistogramSpec(std::ostream& out, const ClassHistogram& histogram);

// CSV with the records' attribute columns followed by `label_column`. All
// records must share the same attribute keys.
void WriteRecordsCsv(std::ostream& out, const TraceDataset& dataset,
                     std::string_view label_column = kDefaultLabelColumn);

}  // namespace trafsample

#endif  // TRAFSAMPLE_DATASET_H_
