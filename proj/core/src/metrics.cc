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

#include "trafsample/metrics.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <utility>

#include "trafsample/error.h"
#include "trafsample/rng.h"

namespace trafsample {

namespace {

void RequirePopulation(std::uint64_t population) {
  if (population == 0) {
    throw Error(ErrorCode::kZeroPopulation, "population must be at least 1");
  }
}

}  // namespace

double SelectionProbability(std::uint64_t n, std::uint64_t population) {
  RequirePopulation(population);
  if (n > population) {
    throw Error(ErrorCode::kCountExceedsPopulation,
                std::to_string(n) + " exceeds population " +
                    std::to_string(population));
  }
  return static_cast<double>(n) / static_cast<double>(population);
}

double SampleSizePercent(std::uint64_t n, std::uint64_t population) {
  RequirePopulation(population);
  return 100.0 * static_cast<double>(n) / static_cast<double>(population);
}

std::uint64_t SamplingInterval(std::uint64_t population, std::uint64_t n) {
  if (n == 0) {
    throw Error(ErrorCode::kInvalidParameter, "n must be at least 1");
  }
  if (n > population) {
    throw Error(ErrorCode::kTargetExceedsPopulation,
                "n=" + std::to_string(n) + " exceeds population " +
                    std::to_string(population));
  }
  return population / n;
}

StratifiedTotals ComputeStratifiedTotals(std::span<const std::uint64_t> counts,
                                         std::uint64_t population) {
  RequirePopulation(population);
  StratifiedTotals totals;
  totals.probabilities.reserve(counts.size());
  for (std::uint64_t count : counts) {
    totals.sampled += count;
    totals.probabilities.push_back(static_cast<double>(count) /
                                   static_cast<double>(population));
  }
  totals.size_percent = SampleSizePercent(totals.sampled, population);
  return totals;
}

namespace {

ImbalanceReport BuildReport(const ClassHistogram& source,
                            std::vector<std::uint64_t> sampled,
                            std::uint64_t synthetic, int display_decimals) {
  RequirePopulation(source.total());
  ImbalanceReport report;
  report.source_population = source.total();
  report.display_decimals = display_decimals;
  report.synthetic_count = synthetic;
  for (std::uint64_t count : sampled) report.total_sampled += count;
  report.size_percent =
      SampleSizePercent(report.total_sampled, report.source_population);

  std::uint64_t smallest = 0;
  std::uint64_t largest = 0;
  const auto entries = source.entries();
  report.per_class.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    ClassRow row;
    row.label = entries[i].label;
    row.source_count = entries[i].count;
    row.sampled_count = sampled[i];
    row.sampled_percent =
        report.total_sampled == 0
            ? 0.0
            : 100.0 * static_cast<double>(sampled[i]) /
                  static_cast<double>(report.total_sampled);
    row.selection_probability = static_cast<double>(sampled[i]) /
                                static_cast<double>(report.source_population);
    if (sampled[i] == 0) {
      report.missing_classes.push_back(row.label);
    } else {
      smallest = smallest == 0 ? sampled[i] : std::min(smallest, sampled[i]);
      largest = std::max(largest, sampled[i]);
    }
    report.per_class.push_back(std::move(row));
  }
  if (smallest != 0) {
    report.imbalance_ratio =
        static_cast<double>(largest) / static_cast<double>(smallest);
  }
  return report;
}

std::vector<std::uint64_t> SampledCounts(const ClassHistogram& source,
                                         const SampleResult& sample,
                                         std::uint64_t* synthetic) {
  std::vector<std::uint64_t> counts(source.class_count(), 0);
  for (const SampledRecord& entry : sample.entries) {
    const auto index = source.IndexOf(entry.label);
    if (!index) {
      throw Error(ErrorCode::kUnknownLabelInSample,
                  "sample label '" + entry.label +
                      "' does not occur in the source histogram");
    }
    ++counts[*index];
    if (synthetic != nullptr && entry.synthetic) ++*synthetic;
  }
  return counts;
}

}  // namespace

ImbalanceReport ClassReport(const ClassHistogram& source,
                            const SampleResult& sample, int display_decimals) {
  std::uint64_t synthetic = 0;
  std::vector<std::uint64_t> counts = SampledCounts(source, sample, &synthetic);
  ImbalanceReport report =
      BuildReport(source, std::move(counts), synthetic, display_decimals);
  report.spec = sample.spec;
  return report;
}

ImbalanceReport IdentityReport(const ClassHistogram& source,
                               int display_decimals) {
  std::vector<std::uint64_t> counts;
  counts.reserve(source.class_count());
  for (const ClassCount& entry : source.entries()) {
    counts.push_back(entry.count);
  }
  return BuildReport(source, std::move(counts), 0, display_decimals);
}

std::size_t CountMissingClasses(const ClassHistogram& source,
                                const SampleResult& sample) {
  const auto counts = SampledCounts(source, sample, nullptr);
  return static_cast<std::size_t>(
      std::count(counts.begin(), counts.end(), std::uint64_t{0}));
}

double MissProbability(std::uint64_t population, std::uint64_t class_size,
                       std::uint64_t n, bool with_replacement) {
  RequirePopulation(population);
  if (class_size > population) {
    throw Error(ErrorCode::kCountExceedsPopulation,
                "class size " + std::to_string(class_size) +
                    " exceeds population " + std::to_string(population));
  }
  if (with_replacement) {
    if (n == 0) return 1.0;
    const double share = static_cast<double>(class_size) /
                         static_cast<double>(population);
    return std::clamp(std::exp(static_cast<double>(n) * std::log1p(-share)),
                      0.0, 1.0);
  }
  if (n > population) {
    throw Error(ErrorCode::kCountExceedsPopulation,
                "n=" + std::to_string(n) + " exceeds population " +
                    std::to_string(population) +
                    " for sampling without replacement");
  }
  if (n == 0 || class_size == 0) return 1.0;
  if (class_size > population - n) return 0.0;
  // C(P-c, n) / C(P, n) = prod_{i<c} (P-n-i)/(P-i) = prod_{i<n} (P-c-i)/(P-i);
  // take the shorter product.
  const std::uint64_t terms = std::min(class_size, n);
  const std::uint64_t other = terms == class_size ? n : class_size;
  double ratio = 1.0;
  for (std::uint64_t i = 0; i < terms && ratio > 0; ++i) {
    ratio *= static_cast<double>(population - other - i) /
             static_cast<double>(population - i);
  }
  return std::clamp(ratio, 0.0, 1.0);
}

MissProbabilityTable MissProbabilityAnalytic(const ClassHistogram& source,
                                             std::uint64_t n,
                                             bool with_replacement) {
  MissProbabilityTable table;
  table.rows.reserve(source.class_count());
  for (const ClassCount& entry : source.entries()) {
    const double p =
        MissProbability(source.total(), entry.count, n, with_replacement);
    table.rows.push_back({entry.label, entry.count, p});
    table.expected_missing += p;
  }
  return table;
}

std::vector<ExpectedMissingPoint> ExpectedMissingSeries(
    const ClassHistogram& source, std::span<const std::uint64_t> n_values,
    bool with_replacement) {
  std::vector<ExpectedMissingPoint> series;
  series.reserve(n_values.size());
  for (std::uint64_t n : n_values) {
    series.push_back(
        {n, MissProbabilityAnalytic(source, n, with_replacement)
                .expected_missing});
  }
  return series;
}

double MissingDistribution::Mean() const {
  if (trials == 0) return 0;
  std::uint64_t sum = 0;
  for (std::size_t m = 0; m < frequency.size(); ++m) sum += m * frequency[m];
  return static_cast<double>(sum) / static_cast<double>(trials);
}

double MissingDistribution::StandardDeviation() const {
  if (trials < 2) return 0;
  const double mean = Mean();
  double squares = 0;
  for (std::size_t m = 0; m < frequency.size(); ++m) {
    const double d = static_cast<double>(m) - mean;
    squares += d * d * static_cast<double>(frequency[m]);
  }
  return std::sqrt(squares / static_cast<double>(trials - 1));
}

double MissingDistribution::StandardError() const {
  if (trials == 0) return 0;
  return StandardDeviation() / std::sqrt(static_cast<double>(trials));
}

std::size_t MissingDistribution::Quantile(double q) const {
  const double target = q * static_cast<double>(trials);
  std::uint64_t cumulative = 0;
  for (std::size_t m = 0; m < frequency.size(); ++m) {
    cumulative += frequency[m];
    if (static_cast<double>(cumulative) >= target && cumulative > 0) return m;
  }
  return frequency.empty() ? 0 : frequency.size() - 1;
}

namespace {

// Runs `trial(t)` for t in [0, trials) over worker threads and tallies the
// returned missing-class counts. Only integer tallies are merged.
MissingDistribution RunTrials(
    std::uint64_t trials, std::size_t max_missing, unsigned threads,
    const std::function<std::size_t(std::uint64_t)>& trial) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(threads, std::max<std::uint64_t>(trials, 1)));

  MissingDistribution result;
  result.trials = trials;
  result.frequency.assign(max_missing + 1, 0);
  std::mutex mutex;
  std::exception_ptr failure;
  auto worker = [&](unsigned id) {
    std::vector<std::uint64_t> local(max_missing + 1, 0);
    try {
      for (std::uint64_t t = id; t < trials; t += threads) ++local[trial(t)];
    } catch (...) {
      std::lock_guard<std::mutex> lock(mutex);
      if (!failure) failure = std::current_exception();
      return;
    }
    std::lock_guard<std::mutex> lock(mutex);
    for (std::size_t m = 0; m < local.size(); ++m) {
      result.frequency[m] += local[m];
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(worker, id);
    for (auto& thread : pool) thread.join();
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

}  // namespace

MissingDistribution SimulateRandomMissing(const TraceDataset& dataset,
                                          std::uint64_t n,
                                          bool with_replacement,
                                          std::uint64_t seed,
                                          std::uint64_t trials,
                                          unsigned threads) {
  const ClassHistogram source = Histogram(dataset);
  return RunTrials(trials, source.class_count(), threads,
                   [&](std::uint64_t t) {
                     return CountMissingClasses(
                         source, RandomSample(dataset, n, with_replacement,
                                              DeriveSeed(seed, t)));
                   });
}

MissingDistribution SimulateSystematicMissing(const ClassHistogram& source,
                                              std::uint64_t interval,
                                              std::uint64_t seed,
                                              std::uint64_t trials,
                                              unsigned threads) {
  if (source.total() == 0) {
    throw Error(ErrorCode::kZeroTotal, "histogram has no instances");
  }
  if (interval == 0) {
    throw Error(ErrorCode::kInvalidParameter, "interval must be at least 1");
  }
  // Same permutation Synthesize(kShuffled) applies, on class indices only.
  std::vector<std::size_t> grouped;
  grouped.reserve(source.total());
  for (std::size_t c = 0; c < source.class_count(); ++c) {
    grouped.insert(grouped.end(), source.entries()[c].count, c);
  }
  return RunTrials(
      trials, source.class_count(), threads, [&](std::uint64_t t) {
        std::vector<std::size_t> classes = grouped;
        Rng rng(DeriveSeed(seed, t));
        for (std::size_t i = classes.size() - 1; i > 0; --i) {
          std::swap(classes[i], classes[rng.Below(i + 1)]);
        }
        std::vector<bool> seen(source.class_count(), false);
        std::size_t present = 0;
        for (std::size_t i = 0; i < classes.size(); i += interval) {
          if (!seen[classes[i]]) {
            seen[classes[i]] = true;
            ++present;
          }
        }
        return source.class_count() - present;
      });
}

}  // namespace trafsample
