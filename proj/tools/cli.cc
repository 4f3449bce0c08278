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

#include "cli.h"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "trafsample/csv.h"
#include "trafsample/dataset.h"
#include "trafsample/error.h"
#include "trafsample/metrics.h"
#include "trafsample/numfmt.h"
#include "trafsample/report.h"
#include "trafsample/samplers.h"

namespace trafsample::cli {

namespace {

// Invalid invocation detected after CLI11 parsing; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InputOptions {
  std::string input;
  std::string histogram;
  std::string label_column{kDefaultLabelColumn};
  std::string input_format = "auto";
  std::string arrangement = "shuffled";
};

struct OutputOptions {
  std::string format = "markdown";
  int decimals = kDefaultDecimals;
  std::string out;
};

const std::vector<std::string> kFormats = {"markdown", "csv", "json"};
const std::vector<std::string> kFamilies = {"random", "systematic", "bycount",
                                            "stratified", "underover"};

void AddInputOptions(CLI::App* command, InputOptions& options) {
  auto* input = command->add_option("--input", options.input,
                                    "Dataset file (CSV or NDJSON)");
  auto* histogram = command->add_option(
      "--histogram", options.histogram,
      "Histogram spec; the dataset is synthesized from it with --seed");
  input->excludes(histogram);
  command->add_option("--label-column", options.label_column,
                      "Column holding the class label")
      ->capture_default_str();
  command->add_option("--input-format", options.input_format,
                      "auto picks ndjson for .ndjson/.jsonl, else csv")
      ->check(CLI::IsMember({"auto", "csv", "ndjson"}))
      ->capture_default_str();
  command->add_option("--arrangement", options.arrangement,
                      "Record order when synthesizing from --histogram")
      ->check(CLI::IsMember({"shuffled", "grouped"}))
      ->capture_default_str();
}

void AddOutputOptions(CLI::App* command, OutputOptions& options) {
  command->add_option("--format", options.format, "Report format")
      ->check(CLI::IsMember(kFormats))
      ->capture_default_str();
  command->add_option("--decimals", options.decimals,
                      "Display decimals (half-up)")
      ->check(CLI::Range(0, kMaxDecimals))
      ->capture_default_str();
  command->add_option("--out", options.out, "Output path (default stdout)");
}

OutputFormat ToOutputFormat(const std::string& name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  return OutputFormat::kMarkdown;
}

Arrangement ToArrangement(const std::string& name) {
  return name == "grouped" ? Arrangement::kGrouped : Arrangement::kShuffled;
}

std::ifstream OpenInput(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return in;
}

ClassHistogram LoadHistogram(const std::string& path) {
  std::ifstream in = OpenInput(path);
  return ParseHistogramSpec(in);
}

TraceDataset LoadDataset(const InputOptions& options, std::uint64_t seed) {
  if (options.input.empty() == options.histogram.empty()) {
    throw UsageError("exactly one of --input or --histogram is required");
  }
  if (!options.histogram.empty()) {
    return Synthesize(LoadHistogram(options.histogram), seed,
                      ToArrangement(options.arrangement));
  }
  InputFormat format = InputFormat::kCsv;
  if (options.input_format == "ndjson") {
    format = InputFormat::kNdjson;
  } else if (options.input_format == "auto") {
    const std::string ext =
        std::filesystem::path(options.input).extension().string();
    if (ext == ".ndjson" || ext == ".jsonl") format = InputFormat::kNdjson;
  }
  std::ifstream in = OpenInput(options.input);
  return ParseRecords(in, format, options.label_column);
}

bool SamePath(const std::string& a, const std::string& b) {
  if (a.empty() || b.empty() || a == "-" || b == "-") return false;
  std::error_code ec;
  return std::filesystem::weakly_canonical(a, ec) ==
         std::filesystem::weakly_canonical(b, ec);
}

void GuardOutput(const std::string& out, const InputOptions& input) {
  if (SamePath(out, input.input) || SamePath(out, input.histogram)) {
    throw UsageError("refusing to overwrite the input file '" + out + "'");
  }
}

void WriteText(const std::string& path, const std::string& text,
               std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  file << text;
  if (!file) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
}

bool ParseUnsigned(std::string_view text, std::uint64_t& value) {
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  return !text.empty() && ec == std::errc() &&
         end == text.data() + text.size();
}

// --- synth -----------------------------------------------------------------

struct SynthOptions {
  std::string histogram;
  std::uint64_t seed = 0;
  std::string arrangement = "shuffled";
  std::string label_column{kDefaultLabelColumn};
  std::string out;
};

int RunSynth(const SynthOptions& options, std::ostream& out,
             std::ostream& err) {
  ClassHistogram histogram;
  try {
    histogram = LoadHistogram(options.histogram);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw UsageError(e.what());
  }
  if (histogram.total() == 0) {
    throw UsageError("histogram spec '" + options.histogram +
                     "' has no classes");
  }
  if (SamePath(options.out, options.histogram)) {
    throw UsageError("refusing to overwrite the input file '" + options.out +
                     "'");
  }
  const TraceDataset dataset =
      Synthesize(histogram, options.seed, ToArrangement(options.arrangement));
  std::ostringstream csv;
  WriteRecordsCsv(csv, dataset, options.label_column);
  WriteText(options.out, csv.str(), out);
  std::ostream& summary = options.out.empty() || options.out == "-" ? err : out;
  summary << "population=" << dataset.population()
          << " classes=" << histogram.class_count()
          << " seed=" << options.seed << '\n';
  return kExitOk;
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeOptions {
  InputOptions input;
  OutputOptions output{"markdown", 5, ""};
  std::uint64_t seed = 0;
};

int RunAnalyze(const AnalyzeOptions& options, std::ostream& out) {
  GuardOutput(options.output.out, options.input);
  const TraceDataset dataset = LoadDataset(options.input, options.seed);
  const ImbalanceReport report =
      IdentityReport(Histogram(dataset), options.output.decimals);
  WriteText(options.output.out,
            RenderReport(report, ToOutputFormat(options.output.format)), out);
  return kExitOk;
}

// --- sample ----------------------------------------------------------------

struct SampleOptions {
  InputOptions input;
  OutputOptions output;
  std::string family;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> interval;
  std::optional<std::uint64_t> k;
  bool with_replacement = false;
  std::uint64_t seed = 0;
  std::string report;
};

SampleSpec BuildSpec(const SampleOptions& options) {
  auto need = [&](const std::optional<std::uint64_t>& value,
                  std::string_view flag) -> std::uint64_t {
    if (!value) {
      throw UsageError("--family " + options.family + " requires " +
                       std::string(flag));
    }
    if (*value == 0) {
      throw UsageError(std::string(flag) + " must be at least 1");
    }
    return *value;
  };
  SampleSpec spec;
  spec.seed = options.seed;
  if (options.family == "random") {
    spec.family = RandomParams{need(options.n, "--n"), options.with_replacement};
  } else if (options.family == "systematic") {
    spec.family = SystematicParams{need(options.interval, "--interval")};
  } else if (options.family == "bycount") {
    spec.family = SystematicByCountParams{need(options.n, "--n")};
  } else if (options.family == "stratified") {
    spec.family = StratifiedParams{need(options.interval, "--interval")};
  } else {
    spec.family = UnderOverParams{need(options.k, "--k")};
  }
  return spec;
}

int RunSampleCommand(const SampleOptions& options, std::ostream& out) {
  const SampleSpec spec = BuildSpec(options);
  GuardOutput(options.output.out, options.input);
  GuardOutput(options.report, options.input);
  const TraceDataset dataset = LoadDataset(options.input, options.seed);
  const SampleResult sample = RunSample(dataset, spec);
  if (!options.output.out.empty()) {
    std::ostringstream csv;
    WriteSampleCsv(csv, sample);
    WriteText(options.output.out, csv.str(), out);
  }
  const ImbalanceReport report =
      ClassReport(Histogram(dataset), sample, options.output.decimals);
  WriteText(options.report,
            RenderReport(report, ToOutputFormat(options.output.format)), out);
  return kExitOk;
}

// --- compare ---------------------------------------------------------------

struct CompareOptions {
  InputOptions input;
  OutputOptions output;
  std::string runs;
  std::uint64_t seed = 0;
};

int RunCompare(const CompareOptions& options, std::ostream& out) {
  std::vector<SampleSpec> specs;
  {
    std::ifstream in = OpenInput(options.runs);
    try {
      specs = ParseRunMatrix(in, options.seed);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  if (specs.empty()) {
    throw UsageError("run matrix '" + options.runs + "' lists no runs");
  }
  GuardOutput(options.output.out, options.input);
  const TraceDataset dataset = LoadDataset(options.input, options.seed);
  const ClassHistogram histogram = Histogram(dataset);
  std::vector<ImbalanceReport> reports;
  reports.reserve(specs.size());
  for (const SampleSpec& spec : specs) {
    reports.push_back(ClassReport(histogram, RunSample(dataset, spec),
                                  options.output.decimals));
  }
  const ComparisonMatrix matrix(std::move(reports));
  WriteText(options.output.out,
            RenderComparison(matrix, ToOutputFormat(options.output.format),
                             options.output.decimals),
            out);
  return kExitOk;
}

// --- oracle ----------------------------------------------------------------

struct OracleOptions {
  InputOptions input;
  std::string family = "random";
  std::vector<std::uint64_t> n_values;
  std::vector<std::uint64_t> intervals;
  bool with_replacement = false;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  int decimals = kDefaultDecimals;
  std::string out;
};

int RunOracle(const OracleOptions& options, std::ostream& out) {
  const bool systematic = options.family == "systematic";
  const auto& axis = systematic ? options.intervals : options.n_values;
  if (axis.empty()) {
    throw UsageError(systematic ? "--family systematic requires --interval"
                                : "--family random requires --n");
  }
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (systematic && axis[i] == 0) {
      throw UsageError("--interval values must be at least 1");
    }
    if (i != 0 && axis[i] <= axis[i - 1]) {
      throw UsageError("axis values must be strictly increasing");
    }
  }
  GuardOutput(options.out, options.input);
  const TraceDataset dataset = LoadDataset(options.input, options.seed);
  const ClassHistogram histogram = Histogram(dataset);

  std::vector<MissingSeriesRow> rows;
  for (std::uint64_t x : axis) {
    MissingSeriesRow row;
    row.x = x;
    if (systematic) {
      row.observed = static_cast<double>(
          CountMissingClasses(histogram, SystematicSample(dataset, x)));
      // A systematic sample of a uniformly shuffled order is a uniform
      // subset of ceil(P/I) records.
      const std::uint64_t size = (dataset.population() + x - 1) / x;
      row.expected =
          MissProbabilityAnalytic(histogram, size, false).expected_missing;
    } else {
      row.expected =
          MissProbabilityAnalytic(histogram, x, options.with_replacement)
              .expected_missing;
      if (options.trials == 1) {
        row.observed = static_cast<double>(CountMissingClasses(
            histogram,
            RandomSample(dataset, x, options.with_replacement, options.seed)));
      } else if (options.trials > 1) {
        row.observed = SimulateRandomMissing(dataset, x,
                                             options.with_replacement,
                                             options.seed, options.trials)
                           .Mean();
      }
    }
    rows.push_back(row);
  }
  WriteText(options.out, MissingSeriesCsv(rows, options.decimals), out);
  return kExitOk;
}

int ExitCodeFor(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kMalformedHistogram:
    case ErrorCode::kMalformedRunMatrix:
    case ErrorCode::kInvalidParameter:
      return kExitUsageError;
    default:
      return kExitDataError;
  }
}

}  // namespace

std::vector<SampleSpec> ParseRunMatrix(std::istream& in,
                                       std::uint64_t default_seed) {
  std::vector<SampleSpec> specs;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    std::istringstream tokens{std::string(Trim(text))};
    std::string family;
    if (!(tokens >> family)) continue;
    auto fail = [&](const std::string& message) {
      return Error(ErrorCode::kMalformedRunMatrix, message, line_number);
    };
    if (std::find(kFamilies.begin(), kFamilies.end(), family) ==
        kFamilies.end()) {
      throw fail("unknown family '" + family + "'");
    }
    std::optional<std::uint64_t> n, interval, k;
    bool replacement = false;
    std::uint64_t seed = default_seed;
    std::string token;
    while (tokens >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) throw fail("expected key=value, got '" + token + "'");
      const std::string key = token.substr(0, eq);
      const std::string value = token.substr(eq + 1);
      if (key == "replacement" || key == "with_replacement") {
        if (value != "true" && value != "false") {
          throw fail("replacement must be true or false");
        }
        replacement = value == "true";
        continue;
      }
      std::uint64_t number = 0;
      if (!ParseUnsigned(value, number)) {
        throw fail("'" + value + "' is not a non-negative integer");
      }
      if (key == "n") {
        n = number;
      } else if (key == "interval" || key == "I") {
        interval = number;
      } else if (key == "k") {
        k = number;
      } else if (key == "seed") {
        seed = number;
      } else {
        throw fail("unknown key '" + key + "'");
      }
    }
    auto need = [&](const std::optional<std::uint64_t>& value,
                    std::string_view key) {
      if (!value) throw fail(family + " requires " + std::string(key) + "=");
      if (*value == 0) throw fail(std::string(key) + " must be at least 1");
      return *value;
    };
    SampleSpec spec;
    spec.seed = seed;
    if (family == "random") {
      spec.family = RandomParams{need(n, "n"), replacement};
    } else if (family == "systematic") {
      spec.family = SystematicParams{need(interval, "interval")};
    } else if (family == "bycount") {
      spec.family = SystematicByCountParams{need(n, "n")};
    } else if (family == "stratified") {
      spec.family = StratifiedParams{need(interval, "interval")};
    } else {
      spec.family = UnderOverParams{need(k, "k")};
    }
    specs.push_back(spec);
  }
  return specs;
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Sampling and class-imbalance analysis for labeled packet traces",
               "trafsample"};
  app.require_subcommand(1);

  SynthOptions synth;
  auto* synth_cmd =
      app.add_subcommand("synth", "Synthesize a dataset from a histogram spec");
  synth_cmd->add_option("--histogram", synth.histogram, "Histogram spec file")
      ->required();
  synth_cmd->add_option("--seed", synth.seed, "Shuffle seed")
      ->capture_default_str();
  synth_cmd->add_option("--arrangement", synth.arrangement, "Record order")
      ->check(CLI::IsMember({"shuffled", "grouped"}))
      ->capture_default_str();
  synth_cmd->add_option("--label-column", synth.label_column,
                        "Header of the label column")
      ->capture_default_str();
  synth_cmd->add_option("--out", synth.out, "Output CSV (default stdout)");

  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand(
      "analyze", "Per-class counts, shares and selection probabilities");
  AddInputOptions(analyze_cmd, analyze.input);
  AddOutputOptions(analyze_cmd, analyze.output);
  analyze_cmd->add_option("--seed", analyze.seed, "Seed for --histogram")
      ->capture_default_str();

  SampleOptions sample;
  auto* sample_cmd =
      app.add_subcommand("sample", "Draw one sample and report its balance");
  AddInputOptions(sample_cmd, sample.input);
  AddOutputOptions(sample_cmd, sample.output);
  sample_cmd->get_option("--out")->description(
      "Sample CSV (source_position,label,synthetic)");
  sample_cmd->add_option("--family", sample.family, "Sampler family")
      ->required()
      ->check(CLI::IsMember(kFamilies));
  sample_cmd->add_option("--n", sample.n, "Target count (random, bycount)");
  sample_cmd->add_option("--interval", sample.interval,
                         "Interval I (systematic, stratified)");
  sample_cmd->add_option("--k", sample.k, "Per-class quota (underover)");
  sample_cmd->add_flag("--with-replacement", sample.with_replacement,
                       "Random sampling with replacement");
  sample_cmd->add_option("--seed", sample.seed, "Seed")->capture_default_str();
  sample_cmd->add_option("--report", sample.report,
                         "Report path (default stdout)");

  CompareOptions compare;
  auto* compare_cmd = app.add_subcommand(
      "compare", "Class shares across several sampler runs");
  AddInputOptions(compare_cmd, compare.input);
  AddOutputOptions(compare_cmd, compare.output);
  compare_cmd->add_option("--runs", compare.runs, "Run-matrix file")
      ->required();
  compare_cmd->add_option("--seed", compare.seed, "Default seed")
      ->capture_default_str();

  OracleOptions oracle;
  auto* oracle_cmd = app.add_subcommand(
      "oracle", "Observed vs expected missing classes as CSV");
  AddInputOptions(oracle_cmd, oracle.input);
  oracle_cmd->add_option("--family", oracle.family, "random or systematic")
      ->check(CLI::IsMember({"random", "systematic"}))
      ->capture_default_str();
  oracle_cmd->add_option("--n", oracle.n_values, "Sample sizes (random)")
      ->delimiter(',');
  oracle_cmd->add_option("--interval", oracle.intervals,
                         "Intervals (systematic)")
      ->delimiter(',');
  oracle_cmd->add_flag("--with-replacement", oracle.with_replacement,
                       "Random sampling with replacement");
  oracle_cmd->add_option("--trials", oracle.trials,
                         "Seeded random runs averaged into 'observed' (0: "
                         "leave blank)")
      ->capture_default_str();
  oracle_cmd->add_option("--seed", oracle.seed, "Seed")->capture_default_str();
  oracle_cmd->add_option("--decimals", oracle.decimals, "Display decimals")
      ->check(CLI::Range(0, kMaxDecimals))
      ->capture_default_str();
  oracle_cmd->add_option("--out", oracle.out, "Output CSV (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsageError;
  }

  try {
    if (synth_cmd->parsed()) return RunSynth(synth, out, err);
    if (analyze_cmd->parsed()) return RunAnalyze(analyze, out);
    if (sample_cmd->parsed()) return RunSampleCommand(sample, out);
    if (compare_cmd->parsed()) return RunCompare(compare, out);
    if (oracle_cmd->parsed()) return RunOracle(oracle, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsageError;
}

}  // namespace trafsample::cli
