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

#ifndef TRAFSAMPLE_METRICS_H_
#define TRAFSAMPLE_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trafsample/dataset.h"
#include "trafsample/numfmt.h"
#include "trafsample/samplers.h"

namespace trafsample {

// n / P. Throws kZeroPopulation, kCountExceedsPopulation.
double SelectionProbability(std::uint64_t n, std::uint64_t population);

// 100 * n / P. Throws kZeroPopulation.
double SampleSizePercent(std::uint64_t n, std::uint64_t population);

// floor(P / n), at least 1 for 1 <= n <= P. Throws kInvalidParameter for
// n = 0 and kTargetExceedsPopulation for n > P.
std::uint64_t SamplingInterval(std::uint64_t population, std::uint64_t n);

struct StratifiedTotals {
  std::uint64_t sampled = 0;               // n(s) = sum of per-stratum counts
  std::vector<double> probabilities;       // n_i / P per stratum
  double size_percent = 0;                 // 100 * n(s) / P
};

// Throws kZeroPopulation.
StratifiedTotals ComputeStratifiedTotals(std::span<const std::uint64_t> counts,
                                         std::uint64_t population);

struct ClassRow {
  std::string label;
  std::uint64_t source_count = 0;
  std::uint64_t sampled_count = 0;
  double sampled_percent = 0;         // share of the sample, 0..100
  double selection_probability = 0;   // sampled_count / source population

  friend bool operator==(const ClassRow&, const ClassRow&) = default;
};

// Per-class composition of a sample against its source. Values are stored
// at full precision; `display_decimals` only affects rendering.
struct ImbalanceReport {
  std::uint64_t source_population = 0;
  // Absent for a whole-dataset analysis.
  std::optional<SampleSpec> spec;
  std::vector<ClassRow> per_class;  // source-histogram order
  std::uint64_t total_sampled = 0;
  double size_percent = 0;  // total_sampled relative to the source, in %
  std::uint64_t synthetic_count = 0;
  std::vector<std::string> missing_classes;
  // max / min over nonzero sampled counts; absent when nothing was sampled.
  std::optional<double> imbalance_ratio;
  int display_decimals = kDefaultDecimals;

  std::size_t class_count() const { return per_class.size(); }
  std::size_t missing_count() const { return missing_classes.size(); }

  friend bool operator==(const ImbalanceReport&,
                         const ImbalanceReport&) = default;
};

// Throws Error(kUnknownLabelInSample) if the sample holds a label the
// histogram does not.
ImbalanceReport ClassReport(const ClassHistogram& source,
                            const SampleResult& sample,
                            int display_decimals = kDefaultDecimals);

// Report for the whole dataset taken as its own sample.
ImbalanceReport IdentityReport(const ClassHistogram& source,
                               int display_decimals = kDefaultDecimals);

// Source classes with no representative in the sample.
std::size_t CountMissingClasses(const ClassHistogram& source,
                                const SampleResult& sample);

// Probability that a class of `class_size` records out of `population` gets
// no representative in a uniform sample of n records.
//
// Without replacement this is C(P-c, n) / C(P, n), evaluated as a product of
// min(c, n) ratios; it is exactly 0 when c > P - n. With replacement it is
// (1 - c/P)^n.
//
// Throws kZeroPopulation, kCountExceedsPopulation (n > P without
// replacement, or c > P).
double MissProbability(std::uint64_t population, std::uint64_t class_size,
                       std::uint64_t n, bool with_replacement);

struct MissRow {
  std::string label;
  std::uint64_t source_count = 0;
  double miss_probability = 0;
};

struct MissProbabilityTable {
  std::vector<MissRow> rows;
  double expected_missing = 0;  // expected number of missing classes
};

MissProbabilityTable MissProbabilityAnalytic(const ClassHistogram& source,
                                             std::uint64_t n,
                                             bool with_replacement);

struct ExpectedMissingPoint {
  std::uint64_t n = 0;
  double expected_missing = 0;
};

std::vector<ExpectedMissingPoint> ExpectedMissingSeries(
    const ClassHistogram& source, std::span<const std::uint64_t> n_values,
    bool with_replacement);

// Distribution of the missing-class count over seeded Monte Carlo trials.
// Trial t uses seed DeriveSeed(seed, t), so the aggregate is independent of
// how trials are spread over threads.
struct MissingDistribution {
  std::uint64_t trials = 0;
  // frequency[m] = number of trials with exactly m missing classes.
  std::vector<std::uint64_t> frequency;

  double Mean() const;
  double StandardDeviation() const;
  // Standard error of the mean.
  double StandardError() const;
  // Smallest m whose cumulative frequency reaches q * trials.
  std::size_t Quantile(double q) const;
};

// Random sampling of `dataset`; `threads` = 0 picks the hardware count.
MissingDistribution SimulateRandomMissing(const TraceDataset& dataset,
                                          std::uint64_t n,
                                          bool with_replacement,
                                          std::uint64_t seed,
                                          std::uint64_t trials,
                                          unsigned threads = 0);

// Systematic sampling at `interval` of datasets synthesized from `source`
// with arrangement=shuffled and seed DeriveSeed(seed, t).
MissingDistribution SimulateSystematicMissing(const ClassHistogram& source,
                                              std::uint64_t interval,
                                              std::uint64_t seed,
                                              std::uint64_t trials,
                                              unsigned threads = 0);

}  // namespace trafsample

#endif  // TRAFSAMPLE_METRICS_H_
