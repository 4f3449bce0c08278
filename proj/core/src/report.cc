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

#include "trafsample/report.h"

#include <sstream>
#include <string>
#include <utility>

#include "json.hpp"
#include "trafsample/csv.h"
#include "trafsample/error.h"
#include "trafsample/numfmt.h"

namespace trafsample {

namespace {

using Json = nlohmann::ordered_json;

bool IsSeeded(const SamplerFamily& family) {
  return std::holds_alternative<RandomParams>(family) ||
         std::holds_alternative<UnderOverParams>(family);
}

std::string MarkdownCell(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    if (ch == '|') out.push_back('\\');
    out.push_back(ch == '\n' ? ' ' : ch);
  }
  return out;
}

Json SpecToJson(const std::optional<SampleSpec>& spec) {
  Json j;
  if (!spec) {
    j["family"] = "identity";
    return j;
  }
  j["family"] = std::string(FamilyName(spec->family));
  if (const auto* p = std::get_if<RandomParams>(&spec->family)) {
    j["n"] = p->n;
    j["with_replacement"] = p->with_replacement;
  } else if (const auto* p = std::get_if<SystematicParams>(&spec->family)) {
    j["interval"] = p->interval;
  } else if (const auto* p =
                 std::get_if<SystematicByCountParams>(&spec->family)) {
    j["n"] = p->n;
  } else if (const auto* p = std::get_if<StratifiedParams>(&spec->family)) {
    j["interval"] = p->interval;
  } else if (const auto* p = std::get_if<UnderOverParams>(&spec->family)) {
    j["k"] = p->k;
  }
  j["seed"] = spec->seed;
  return j;
}

std::optional<SampleSpec> SpecFromJson(const Json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "identity") return std::nullopt;
  SampleSpec spec;
  spec.seed = j.at("seed").get<std::uint64_t>();
  if (family == "random") {
    spec.family = RandomParams{j.at("n").get<std::uint64_t>(),
                               j.at("with_replacement").get<bool>()};
  } else if (family == "systematic") {
    spec.family = SystematicParams{j.at("interval").get<std::uint64_t>()};
  } else if (family == "bycount") {
    spec.family = SystematicByCountParams{j.at("n").get<std::uint64_t>()};
  } else if (family == "stratified") {
    spec.family = StratifiedParams{j.at("interval").get<std::uint64_t>()};
  } else if (family == "underover") {
    spec.family = UnderOverParams{j.at("k").get<std::uint64_t>()};
  } else {
    throw Error(ErrorCode::kMalformedReport,
                "unknown sampler family '" + family + "'");
  }
  return spec;
}

Json SourceToJson(const ImbalanceReport& report) {
  Json classes = Json::array();
  for (const ClassRow& row : report.per_class) {
    classes.push_back({{"label", row.label}, {"count", row.source_count}});
  }
  return {{"population", report.source_population}, {"classes", classes}};
}

Json ReportBody(const ImbalanceReport& report) {
  Json j;
  j["spec"] = SpecToJson(report.spec);
  Json per_class = Json::array();
  for (const ClassRow& row : report.per_class) {
    per_class.push_back({{"label", row.label},
                         {"source_count", row.source_count},
                         {"sampled_count", row.sampled_count},
                         {"sampled_percent", row.sampled_percent},
                         {"selection_probability", row.selection_probability}});
  }
  j["per_class"] = per_class;
  Json totals;
  totals["sampled"] = report.total_sampled;
  totals["size_percent"] = report.size_percent;
  totals["synthetic"] = report.synthetic_count;
  totals["class_count"] = report.class_count();
  totals["missing_count"] = report.missing_count();
  totals["imbalance_ratio"] =
      report.imbalance_ratio ? Json(*report.imbalance_ratio) : Json(nullptr);
  j["totals"] = totals;
  j["missing"] = report.missing_classes;
  return j;
}

std::string ReportJson(const ImbalanceReport& report) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "class_report";
  j["source"] = SourceToJson(report);
  const Json body = ReportBody(report);
  for (const auto& [key, value] : body.items()) j[key] = value;
  j["display_decimals"] = report.display_decimals;
  return j.dump(2) + "\n";
}

std::string ReportMarkdown(const ImbalanceReport& report, int decimals) {
  std::ostringstream out;
  out << "# Class report\n\n";
  out << "- sample: " << MarkdownCell(DescribeSpec(report.spec)) << '\n';
  out << "- seed: "
      << (report.spec ? std::to_string(report.spec->seed) : "none") << '\n';
  out << "- source population: " << report.source_population << '\n';
  out << "- classes: " << report.class_count() << '\n';
  out << "- sampled: " << report.total_sampled << " ("
      << FormatFixed(report.size_percent, decimals) << "% of source)\n";
  out << "- synthetic entries: " << report.synthetic_count << '\n';
  out << "- missing classes: " << report.missing_count();
  if (!report.missing_classes.empty()) {
    out << " (";
    for (std::size_t i = 0; i < report.missing_classes.size(); ++i) {
      if (i != 0) out << ", ";
      out << MarkdownCell(report.missing_classes[i]);
    }
    out << ')';
  }
  out << '\n';
  out << "- imbalance ratio: "
      << (report.imbalance_ratio ? FormatFixed(*report.imbalance_ratio, decimals)
                                 : std::string("n/a"))
      << "\n\n";
  out << "| Class | Source count | Sampled count | Sampled % | P(s) |\n";
  out << "|:---|---:|---:|---:|---:|\n";
  for (const ClassRow& row : report.per_class) {
    out << "| " << MarkdownCell(row.label) << " | " << row.source_count
        << " | " << row.sampled_count << " | "
        << FormatFixed(row.sampled_percent, decimals) << " | "
        << FormatFixed(row.selection_probability, decimals) << " |\n";
  }
  return out.str();
}

std::string ReportCsv(const ImbalanceReport& report, int decimals) {
  std::ostringstream out;
  WriteCsvRow(out, {"label", "source_count", "sampled_count", "sampled_percent",
                    "selection_probability"});
  for (const ClassRow& row : report.per_class) {
    WriteCsvRow(out, {row.label, std::to_string(row.source_count),
                      std::to_string(row.sampled_count),
                      FormatFixed(row.sampled_percent, decimals),
                      FormatFixed(row.selection_probability, decimals)});
  }
  return out.str();
}

}  // namespace

std::string DescribeSpec(const std::optional<SampleSpec>& spec) {
  if (!spec) return "whole dataset";
  std::string text = std::string(FamilyName(spec->family)) + " " +
                     ParameterText(spec->family);
  if (IsSeeded(spec->family)) text += " seed=" + std::to_string(spec->seed);
  return text;
}

ComparisonMatrix::ComparisonMatrix(std::vector<ImbalanceReport> runs)
    : runs_(std::move(runs)) {
  if (runs_.empty()) {
    throw Error(ErrorCode::kEmptyComparison,
                "a comparison needs at least one run");
  }
  const ImbalanceReport& first = runs_.front();
  for (const ImbalanceReport& run : runs_) {
    bool same = run.source_population == first.source_population &&
                run.per_class.size() == first.per_class.size();
    for (std::size_t i = 0; same && i < run.per_class.size(); ++i) {
      same = run.per_class[i].label == first.per_class[i].label &&
             run.per_class[i].source_count == first.per_class[i].source_count;
    }
    if (!same) {
      throw Error(ErrorCode::kInvalidParameter,
                  "comparison runs must share one source histogram");
    }
  }
}

std::string ComparisonMatrix::ColumnTitle(std::size_t column) const {
  const ImbalanceReport& run = runs_[column];
  return DescribeSpec(run.spec) + " (n=" + std::to_string(run.total_sampled) +
         ")";
}

std::string RenderReport(const ImbalanceReport& report, OutputFormat format,
                         int decimals) {
  switch (format) {
    case OutputFormat::kMarkdown: return ReportMarkdown(report, decimals);
    case OutputFormat::kCsv: return ReportCsv(report, decimals);
    case OutputFormat::kJson: return ReportJson(report);
  }
  return {};
}

std::string RenderReport(const ImbalanceReport& report, OutputFormat format) {
  return RenderReport(report, format, report.display_decimals);
}

std::string RenderComparison(const ComparisonMatrix& matrix,
                             OutputFormat format, int decimals) {
  const auto runs = matrix.runs();
  if (format == OutputFormat::kJson) {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = "comparison";
    j["source"] = SourceToJson(runs.front());
    Json columns = Json::array();
    for (const ImbalanceReport& run : runs) columns.push_back(ReportBody(run));
    j["columns"] = columns;
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  if (format == OutputFormat::kCsv) {
    std::vector<std::string> row = {"label"};
    for (std::size_t c = 0; c < matrix.column_count(); ++c) {
      row.push_back(matrix.ColumnTitle(c));
    }
    WriteCsvRow(out, row);
    for (std::size_t r = 0; r < matrix.row_count(); ++r) {
      row = {matrix.row_label(r)};
      for (std::size_t c = 0; c < matrix.column_count(); ++c) {
        row.push_back(FormatFixed(matrix.cell(r, c), decimals));
      }
      WriteCsvRow(out, row);
    }
    row = {"missing_count"};
    for (const ImbalanceReport& run : runs) {
      row.push_back(std::to_string(run.missing_count()));
    }
    WriteCsvRow(out, row);
    return out.str();
  }

  out << "# Sampler comparison (% of each sample)\n\n";
  out << "- source population: " << runs.front().source_population << '\n';
  out << "- classes: " << matrix.row_count() << "\n\n";
  out << "| Class |";
  for (std::size_t c = 0; c < matrix.column_count(); ++c) {
    out << ' ' << MarkdownCell(matrix.ColumnTitle(c)) << " |";
  }
  out << "\n|:---|";
  for (std::size_t c = 0; c < matrix.column_count(); ++c) out << "---:|";
  out << '\n';
  for (std::size_t r = 0; r < matrix.row_count(); ++r) {
    out << "| " << MarkdownCell(matrix.row_label(r)) << " |";
    for (std::size_t c = 0; c < matrix.column_count(); ++c) {
      out << ' ' << FormatFixed(matrix.cell(r, c), decimals) << " |";
    }
    out << '\n';
  }
  out << "| Missing classes |";
  for (const ImbalanceReport& run : runs) {
    out << ' ' << run.missing_count() << " |";
  }
  out << '\n';
  return out.str();
}

ImbalanceReport ParseReportJson(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    if (j.at("kind").get<std::string>() != "class_report") {
      throw Error(ErrorCode::kMalformedReport, "not a class_report document");
    }
    ImbalanceReport report;
    report.source_population = j.at("source").at("population");
    report.spec = SpecFromJson(j.at("spec"));
    for (const Json& row : j.at("per_class")) {
      report.per_class.push_back(
          {row.at("label").get<std::string>(),
           row.at("source_count").get<std::uint64_t>(),
           row.at("sampled_count").get<std::uint64_t>(),
           row.at("sampled_percent").get<double>(),
           row.at("selection_probability").get<double>()});
    }
    const Json& totals = j.at("totals");
    report.total_sampled = totals.at("sampled");
    report.size_percent = totals.at("size_percent");
    report.synthetic_count = totals.at("synthetic");
    if (!totals.at("imbalance_ratio").is_null()) {
      report.imbalance_ratio = totals.at("imbalance_ratio").get<double>();
    }
    report.missing_classes = j.at("missing").get<std::vector<std::string>>();
    report.display_decimals = j.at("display_decimals");
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedReport, e.what());
  }
}

std::string MissingSeriesCsv(std::span<const MissingSeriesRow> series,
                             int decimals) {
  if (series.empty()) {
    throw Error(ErrorCode::kEmptySeries, "missing-class series is empty");
  }
  std::ostringstream out;
  out << "x,observed,expected\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i != 0 && series[i].x <= series[i - 1].x) {
      throw Error(ErrorCode::kNonMonotonicAxis,
                  "x values must be strictly increasing (" +
                      std::to_string(series[i - 1].x) + " then " +
                      std::to_string(series[i].x) + ")");
    }
    const MissingSeriesRow& row = series[i];
    out << row.x << ','
        << (row.observed ? FormatFixed(*row.observed, decimals) : "") << ','
        << (row.expected ? FormatFixed(*row.expected, decimals) : "") << '\n';
  }
  return out.str();
}

}  // namespace trafsample
