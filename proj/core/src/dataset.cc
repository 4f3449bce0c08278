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

#include "trafsample/dataset.h"

#include <algorithm>
#include <charconv>
#include <string>
#include <unordered_set>
#include <utility>

#include "json.hpp"
#include "trafsample/csv.h"
#include "trafsample/error.h"
#include "trafsample/rng.h"

namespace trafsample {

TraceDataset::TraceDataset(std::vector<PacketRecord> records)
    : records_(std::move(records)) {
  std::unordered_set<std::string_view> labels;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    PacketRecord& record = records_[i];
    if (record.position != i + 1) {
      throw Error(ErrorCode::kInvalidParameter,
                  "record positions must be contiguous from 1; record " +
                      std::to_string(i + 1) + " has position " +
                      std::to_string(record.position));
    }
    const std::string_view trimmed = Trim(record.label);
    if (trimmed.empty()) {
      throw Error(ErrorCode::kEmptyLabel,
                  "record " + std::to_string(i + 1) + " has a blank label");
    }
    if (trimmed.size() != record.label.size()) record.label = std::string(trimmed);
  }
  for (const PacketRecord& record : records_) labels.insert(record.label);
  class_count_ = labels.size();
}

TraceDataset TraceDataset::FromLabels(const std::vector<std::string>& labels) {
  std::vector<PacketRecord> records;
  records.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    records.push_back({i + 1, labels[i], {}});
  }
  return TraceDataset(std::move(records));
}

ClassHistogram::ClassHistogram(std::vector<ClassCount> entries)
    : entries_(std::move(entries)) {
  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    ClassCount& entry = entries_[i];
    entry.label = std::string(Trim(entry.label));
    if (entry.label.empty()) {
      throw Error(ErrorCode::kMalformedHistogram, "blank class label");
    }
    if (entry.count == 0) {
      throw Error(ErrorCode::kMalformedHistogram,
                  "class '" + entry.label + "' has zero count");
    }
    if (!index_.emplace(entry.label, i).second) {
      throw Error(ErrorCode::kMalformedHistogram,
                  "duplicate class '" + entry.label + "'");
    }
    total_ += entry.count;
  }
}

std::optional<std::size_t> ClassHistogram::IndexOf(
    std::string_view label) const {
  const auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool ClassHistogram::SameCounts(const ClassHistogram& other) const {
  if (entries_.size() != other.entries_.size()) return false;
  for (const ClassCount& entry : entries_) {
    const auto j = other.IndexOf(entry.label);
    if (!j || other.entries_[*j].count != entry.count) return false;
  }
  return true;
}

namespace {

TraceDataset FinishParse(std::vector<PacketRecord> records) {
  if (records.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "input has no data rows");
  }
  return TraceDataset(std::move(records));
}

TraceDataset ParseCsv(std::istream& in, std::string_view label_column) {
  CsvReader reader(in);
  std::vector<std::string> header;
  if (!reader.Next(header)) {
    throw Error(ErrorCode::kEmptyDataset, "input has no header row");
  }
  if (!header.empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0) {
    header[0].erase(0, 3);
  }
  std::optional<std::size_t> label_index;
  for (std::size_t i = 0; i < header.size(); ++i) {
    header[i] = std::string(Trim(header[i]));
    if (!label_index && header[i] == label_column) label_index = i;
  }
  if (!label_index) {
    throw Error(ErrorCode::kMissingLabelColumn,
                "header has no column named '" + std::string(label_column) +
                    "'",
                reader.record_line());
  }

  std::vector<PacketRecord> records;
  std::vector<std::string> fields;
  while (reader.Next(fields)) {
    const std::size_t row = records.size() + 1;
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::kMalformedRow,
                  "expected " + std::to_string(header.size()) +
                      " columns, found " + std::to_string(fields.size()),
                  reader.record_line());
    }
    PacketRecord record;
    record.position = row;
    record.label = std::string(Trim(fields[*label_index]));
    if (record.label.empty()) {
      throw Error(ErrorCode::kEmptyLabel,
                  "data row " + std::to_string(row) + " has a blank label",
                  reader.record_line());
    }
    record.attributes.reserve(fields.size() - 1);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i == *label_index) continue;
      record.attributes.emplace_back(header[i], std::move(fields[i]));
    }
    records.push_back(std::move(record));
  }
  return FinishParse(std::move(records));
}

std::string JsonText(const nlohmann::ordered_json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_null()) return {};
  return value.dump();
}

TraceDataset ParseNdjson(std::istream& in, std::string_view label_column) {
  std::vector<PacketRecord> records;
  std::string line;
  std::size_t line_number = 0;
  const std::string key(label_column);
  while (std::getline(in, line)) {
    ++line_number;
    if (Trim(line).empty()) continue;
    nlohmann::ordered_json object;
    try {
      object = nlohmann::ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kMalformedRow,
                  std::string("invalid JSON: ") + e.what(), line_number);
    }
    if (!object.is_object()) {
      throw Error(ErrorCode::kMalformedRow, "line is not a JSON object",
                  line_number);
    }
    const auto label_it = object.find(key);
    if (label_it == object.end()) {
      throw Error(ErrorCode::kMissingLabelColumn,
                  "object has no field named '" + key + "'", line_number);
    }
    PacketRecord record;
    record.position = records.size() + 1;
    record.label = std::string(Trim(JsonText(*label_it)));
    if (record.label.empty()) {
      throw Error(ErrorCode::kEmptyLabel,
                  "data row " + std::to_string(record.position) +
                      " has a blank label",
                  line_number);
    }
    for (auto it = object.begin(); it != object.end(); ++it) {
      if (it.key() == key) continue;
      record.attributes.emplace_back(it.key(), JsonText(it.value()));
    }
    records.push_back(std::move(record));
  }
  return FinishParse(std::move(records));
}

}  // namespace

TraceDataset ParseRecords(std::istream& in, InputFormat format,
                          std::string_view label_column) {
  return format == InputFormat::kCsv ? ParseCsv(in, label_column)
                                     : ParseNdjson(in, label_column);
}

TraceDataset Synthesize(const ClassHistogram& spec, std::uint64_t seed,
                        Arrangement arrangement) {
  if (spec.total() == 0) {
    throw Error(ErrorCode::kZeroTotal, "histogram has no instances");
  }
  std::vector<std::size_t> classes;
  classes.reserve(spec.total());
  for (std::size_t c = 0; c < spec.class_count(); ++c) {
    classes.insert(classes.end(), spec.entries()[c].count, c);
  }
  if (arrangement == Arrangement::kShuffled) {
    Rng rng(seed);
    for (std::size_t i = classes.size() - 1; i > 0; --i) {
      std::swap(classes[i], classes[rng.Below(i + 1)]);
    }
  }
  std::vector<PacketRecord> records;
  records.reserve(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    records.push_back(
        {i + 1,
         spec.entries()[classes[i]].label,
         {{std::string(kPositionColumn), std::to_string(i + 1)}}});
  }
  return TraceDataset(std::move(records));
}

ClassHistogram Histogram(const TraceDataset& dataset) {
  if (dataset.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "dataset has no records");
  }
  std::vector<ClassCount> entries;
  std::unordered_map<std::string_view, std::size_t> index;
  for (const PacketRecord& record : dataset.records()) {
    const auto [it, inserted] = index.try_emplace(record.label, entries.size());
    if (inserted) {
      entries.push_back({record.label, 1});
    } else {
      ++entries[it->second].count;
    }
  }
  return ClassHistogram(std::move(entries));
}

ClassHistogram ParseHistogramSpec(std::istream& in) {
  std::vector<ClassCount> entries;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = Trim(text);
    if (text.empty()) continue;
    const auto comma = text.rfind(',');
    if (comma == std::string_view::npos) {
      throw Error(ErrorCode::kMalformedHistogram,
                  "expected 'label,count'", line_number);
    }
    const std::string_view label = Trim(text.substr(0, comma));
    const std::string_view count_text = Trim(text.substr(comma + 1));
    std::uint64_t count = 0;
    const auto [end, ec] = std::from_chars(
        count_text.data(), count_text.data() + count_text.size(), count);
    if (ec != std::errc() || end != count_text.data() + count_text.size() ||
        count_text.empty()) {
      throw Error(ErrorCode::kMalformedHistogram,
                  "count '" + std::string(count_text) +
                      "' is not a non-negative integer",
                  line_number);
    }
    if (label.empty()) {
      throw Error(ErrorCode::kMalformedHistogram, "blank class label",
                  line_number);
    }
    if (count == 0) {
      throw Error(ErrorCode::kMalformedHistogram,
                  "class '" + std::string(label) + "' has zero count",
                  line_number);
    }
    for (const ClassCount& seen : entries) {
      if (seen.label == label) {
        throw Error(ErrorCode::kMalformedHistogram,
                    "duplicate class '" + std::string(label) + "'",
                    line_number);
      }
    }
    entries.push_back({std::string(label), count});
  }
  return ClassHistogram(std::move(entries));
}

void WriteHistogramSpec(std::ostream& out, const ClassHistogram& histogram) {
  for (const ClassCount& entry : histogram.entries()) {
    out << entry.label << ',' << entry.count << '\n';
  }
}

void WriteRecordsCsv(std::ostream& out, const TraceDataset& dataset,
                     std::string_view label_column) {
  std::vector<std::string> row;
  if (!dataset.empty()) {
    for (const Attribute& attribute : dataset.records().front().attributes) {
      row.push_back(attribute.first);
    }
  }
  row.emplace_back(label_column);
  WriteCsvRow(out, row);
  for (const PacketRecord& record : dataset.records()) {
    const auto& first = dataset.records().front().attributes;
    if (record.attributes.size() != first.size()) {
      throw Error(ErrorCode::kInvalidParameter,
                  "record " + std::to_string(record.position) +
                      " has a different attribute set");
    }
    row.clear();
    for (std::size_t i = 0; i < record.attributes.size(); ++i) {
      if (record.attributes[i].first != first[i].first) {
        throw Error(ErrorCode::kInvalidParameter,
                    "record " + std::to_string(record.position) +
                        " has a different attribute set");
      }
      row.push_back(record.attributes[i].second);
    }
    row.push_back(record.label);
    WriteCsvRow(out, row);
  }
}

}  // namespace trafsample
