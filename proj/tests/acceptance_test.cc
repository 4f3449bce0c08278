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

// Acceptance suite. Prints one [PASS]/[FAIL] line per criterion and exits
// nonzero if any fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "test_support.h"
#include "trafsample/dataset.h"
#include "trafsample/metrics.h"
#include "trafsample/numfmt.h"
#include "trafsample/rng.h"
#include "trafsample/samplers.h"

namespace trafsample {
namespace {

using testing::DataPath;
using testing::Fnv1a;
using testing::IsRotatedPrintedRow;
using testing::LoadPuTds;
using testing::MatchesGolden;
using testing::PuTdsPrinted;
using testing::ReadFile;

// Collects failure notes for one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok && notes_.size() < 8) notes_.push_back(what);
    failed_ = failed_ || !ok;
  }
  bool failed() const { return failed_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  bool failed_ = false;
  std::vector<std::string> notes_;
};

struct Criterion {
  const char* id;
  const char* title;
  double budget_seconds;  // 0: no runtime bound
  std::function<void(Check&)> body;
};

const TraceDataset& PuTds() {
  static const TraceDataset dataset =
      Synthesize(LoadPuTds(), 0, Arrangement::kShuffled);
  return dataset;
}

std::vector<std::vector<std::string>> SplitCsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

int Cli(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli::Run(args, o, e);
  if (out != nullptr) *out = o.str();
  return code;
}

// --- AC1 -------------------------------------------------------------------

void ClassProbabilities(Check& check) {
  const std::string hist = DataPath("pu_tds.hist");
  std::string five, three;
  check.Expect(Cli({"analyze", "--histogram", hist, "--format", "csv",
                    "--decimals", "5"},
                   &five) == 0,
               "analyze failed");
  check.Expect(Cli({"analyze", "--histogram", hist, "--format", "csv",
                    "--decimals", "3"},
                   &three) == 0,
               "analyze failed");
  // Rows come in first-appearance order; index them by label.
  std::map<std::string, std::vector<std::string>> by5, by3;
  for (auto& row : SplitCsv(five)) by5[row[0]] = row;
  for (auto& row : SplitCsv(three)) by3[row[0]] = row;
  const auto& printed = PuTdsPrinted();
  check.Expect(by5.size() == printed.size() + 1, "row count");
  const std::map<std::string, std::string> recomputed = {
      {"UDP", "1.950"}, {"ICMPv6", "8.453"}, {"SSDP", "5.237"}};
  const std::map<std::string, std::string> recomputed_p = {
      {"UDP", "0.01950"}, {"ICMPv6", "0.08453"}, {"SSDP", "0.05237"}};
  std::uint64_t total = 0;
  for (const auto& entry : printed) {
    const std::string label = entry.label;
    total += entry.count;
    if (!by5.count(label) || !by3.count(label)) {
      check.Expect(false, "no row for " + label);
      continue;
    }
    const auto& row5 = by5[label];
    const auto& row3 = by3[label];
    check.Expect(row5[1] == std::to_string(entry.count), "count " + label);
    if (IsRotatedPrintedRow(label)) {
      check.Expect(row3[3] == recomputed.at(label),
                   label + " percent " + row3[3]);
      check.Expect(row5[4] == recomputed_p.at(label),
                   label + " P(s) " + row5[4]);
    } else {
      check.Expect(row3[3] == FormatFixed(entry.percent, 3),
                   label + " percent " + row3[3]);
      check.Expect(row5[4] == FormatFixed(entry.probability, 5),
                   label + " P(s) " + row5[4]);
    }
  }
  check.Expect(total == 30000, "histogram total");
}

// --- AC2 -------------------------------------------------------------------

void SystematicTotals(Check& check) {
  const std::uint64_t expected[] = {6000, 5000, 4286, 3750, 3334, 3000};
  check.Expect(PuTds().population() == 30000, "population");
  for (std::uint64_t interval = 5; interval <= 10; ++interval) {
    const auto size = SystematicSample(PuTds(), interval).entries.size();
    check.Expect(size == expected[interval - 5],
                 "I=" + std::to_string(interval) + " gave " +
                     std::to_string(size));
  }
}

// --- AC3 -------------------------------------------------------------------

// Published per-class percentages of the stratified samples, I = 5..10.
const std::map<std::string, std::vector<double>>& StratifiedPercentages() {
  static const std::map<std::string, std::vector<double>> cells = {
      {"DHCP", {1.164, 1.158, 1.164, 1.169, 1.165, 1.161}},
      {"ARP", {10.762, 10.778, 10.775, 10.763, 10.756, 10.746}},
      {"ICMP", {0.083, 0.08, 0.093, 0.08, 0.09, 0.1}},
      {"HTTP", {4.175, 4.172, 4.166, 4.172, 4.183, 4.179}},
      {"TCP", {39.039, 39.042, 39.027, 38.985, 38.96, 38.939}},
      {"UDP", {1.946, 1.956, 1.955, 8.424, 1.942, 1.957}},
      {"ICMPv6", {8.45, 8.443, 8.448, 1.967, 8.425, 8.425}},
      {"SSDP", {5.24, 5.23, 5.236, 5.235, 5.229, 5.24}},
      {"NBNS", {2.146, 2.136, 2.141, 2.153, 2.151, 2.156}},
      {"MDNS", {0.399, 0.399, 0.396, 0.399, 0.418, 0.398}},
      {"LLMNR", {3.443, 3.433, 3.444, 3.428, 3.436, 3.449}},
      {"BROWSER", {0.649, 0.659, 0.652, 0.664, 0.657, 0.663}},
      {"TLSv1", {18.862, 18.862, 18.85, 18.841, 18.823, 18.806}},
      {"DB-LSP-DISC", {0.25, 0.259, 0.256, 0.266, 0.269, 0.265}},
      {"DHCPv6", {1.547, 1.537, 1.536, 1.541, 1.554, 1.559}},
      {"DNS", {0.017, 0.02, 0.023, 0.027, 0.03, 0.033}},
      {"HTTP/XML", {0.017, 0.02, 0.023, 0.027, 0.03, 0.033}},
      {"IAPP", {0.017, 0.02, 0.023, 0.027, 0.03, 0.033}},
      {"IGMP", {1.131, 1.138, 1.14, 1.143, 1.135, 1.128}},
      {"IPX RIP", {0.05, 0.04, 0.047, 0.053, 0.06, 0.066}},
      {"LLC", {0.499, 0.499, 0.489, 0.505, 0.508, 0.498}},
      {"NBIPX", {0.033, 0.02, 0.023, 0.027, 0.03, 0.033}},
      {"OCSP", {0.017, 0.02, 0.023, 0.027, 0.03, 0.033}},
      {"SSL", {0.05, 0.06, 0.047, 0.053, 0.06, 0.066}},
      {"XID", {0.017, 0.02, 0.023, 0.027, 0.03, 0.033}},
  };
  return cells;
}

void StratifiedTotalsAndCells(Check& check) {
  const std::uint64_t expected[] = {6012, 5010, 4297, 3763, 3347, 3015};
  const ClassHistogram histogram = Histogram(PuTds());
  const auto& cells = StratifiedPercentages();
  for (std::uint64_t interval = 5; interval <= 10; ++interval) {
    const std::string tag = "I=" + std::to_string(interval);
    std::uint64_t hand = 0;
    for (const auto& entry : histogram.entries()) {
      hand += (entry.count + interval - 1) / interval;
    }
    check.Expect(hand == expected[interval - 5], tag + " ceil sum");
    const ImbalanceReport report =
        ClassReport(histogram, StratifiedSample(PuTds(), interval));
    check.Expect(report.total_sampled == expected[interval - 5],
                 tag + " total " + std::to_string(report.total_sampled));
    check.Expect(report.missing_count() == 0, tag + " missing classes");
    for (const ClassRow& row : report.per_class) {
      const bool swapped =
          interval == 8 && (row.label == "UDP" || row.label == "ICMPv6");
      if (swapped) continue;
      const double printed = cells.at(row.label)[interval - 5];
      check.Expect(std::fabs(row.sampled_percent - printed) <= 0.01,
                   tag + " " + row.label + " " +
                       FormatFixed(row.sampled_percent, 3));
      if (row.label == "DNS" || row.label == "HTTP/XML") {
        const double share =
            100.0 * static_cast<double>((row.source_count + interval - 1) /
                                        interval) /
            static_cast<double>(report.total_sampled);
        check.Expect(FormatFixed(share, 3) == FormatFixed(printed, 3),
                     tag + " small-count cell " + row.label);
      }
    }
  }
}

// --- AC4 -------------------------------------------------------------------

void UnderOverBalance(Check& check) {
  const ClassHistogram histogram = Histogram(PuTds());
  const std::uint64_t ks[] = {100, 200, 300, 400, 500, 700};
  const std::uint64_t totals[] = {2500, 5000, 7500, 10000, 12500, 17500};
  for (int i = 0; i < 6; ++i) {
    const std::string tag = "k=" + std::to_string(ks[i]);
    const ImbalanceReport report =
        ClassReport(histogram, UnderOverSample(PuTds(), ks[i], 0));
    check.Expect(report.total_sampled == totals[i], tag + " total");
    for (const ClassRow& row : report.per_class) {
      check.Expect(FormatFixed(row.sampled_percent, 3) == "4.000",
                   tag + " " + row.label);
    }
    check.Expect(report.imbalance_ratio == 1.0, tag + " ratio");
  }
}

// --- AC5 -------------------------------------------------------------------

void RandomInformationLoss(Check& check) {
  const ClassHistogram histogram = Histogram(PuTds());
  const double expected =
      MissProbabilityAnalytic(histogram, 500, false).expected_missing;
  check.Expect(expected >= 8.0 && expected <= 9.0,
               "analytic " + FormatFixed(expected, 6));
  const MissingDistribution mc =
      SimulateRandomMissing(PuTds(), 500, false, 0, 10000);
  const double z = (mc.Mean() - expected) / mc.StandardError();
  check.Expect(std::fabs(z) <= 3.0, "Monte Carlo mean " +
                                        FormatFixed(mc.Mean(), 4) + " z=" +
                                        FormatFixed(z, 2));
  check.Expect(mc.Quantile(0.025) <= 9 && 9 <= mc.Quantile(0.975),
               "9 outside central 95%");
  const std::vector<std::uint64_t> sizes = {500,  1000,  2000,  3000,
                                            5000, 10000, 15000, 20000};
  const auto series = ExpectedMissingSeries(histogram, sizes, false);
  for (std::size_t i = 1; i < series.size(); ++i) {
    check.Expect(series[i].expected_missing < series[i - 1].expected_missing,
                 "series not decreasing at n=" + std::to_string(sizes[i]));
  }
}

// --- AC6 -------------------------------------------------------------------

// All partitions of `total` into parts no larger than `largest`.
void Partitions(std::uint64_t total, std::uint64_t largest,
                std::vector<std::uint64_t>& prefix,
                const std::function<void(const std::vector<std::uint64_t>&)>&
                    visit) {
  if (total == 0) {
    visit(prefix);
    return;
  }
  for (std::uint64_t part = std::min(total, largest); part >= 1; --part) {
    prefix.push_back(part);
    Partitions(total - part, part, prefix, visit);
    prefix.pop_back();
  }
}

TraceDataset Grouped(const std::vector<std::uint64_t>& counts) {
  std::vector<ClassCount> entries;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    entries.push_back({"c" + std::to_string(i), counts[i]});
  }
  return Synthesize(ClassHistogram(std::move(entries)), 0,
                    Arrangement::kGrouped);
}

void BruteForceOracle(Check& check) {
  // Single-class miss probability against subset enumeration.
  for (std::uint64_t P = 1; P <= 12; ++P) {
    const std::uint32_t subsets = 1u << P;
    for (std::uint64_t n = 0; n <= P; ++n) {
      for (std::uint64_t c = 1; c <= P; ++c) {
        const std::uint32_t class_mask = (1u << c) - 1;
        std::uint64_t hits = 0, all = 0;
        for (std::uint32_t s = 0; s < subsets; ++s) {
          if (static_cast<std::uint64_t>(std::popcount(s)) != n) continue;
          ++all;
          hits += (s & class_mask) == 0;
        }
        const double exact = static_cast<double>(hits) / all;
        const double got = MissProbability(P, c, n, false);
        check.Expect(std::fabs(got - exact) <= 1e-12,
                     "P=" + std::to_string(P) + " c=" + std::to_string(c) +
                         " n=" + std::to_string(n));
      }
    }
  }
  // With replacement: enumerate every draw sequence for small P and n.
  for (std::uint64_t P = 1; P <= 6; ++P) {
    for (std::uint64_t n = 0; n <= 6; ++n) {
      std::uint64_t sequences = 1;
      for (std::uint64_t i = 0; i < n; ++i) sequences *= P;
      for (std::uint64_t c = 1; c <= P; ++c) {
        std::uint64_t hits = 0;
        for (std::uint64_t s = 0; s < sequences; ++s) {
          bool miss = true;
          for (std::uint64_t rest = s, i = 0; i < n; ++i, rest /= P) {
            miss = miss && rest % P >= c;
          }
          hits += miss;
        }
        const double exact = static_cast<double>(hits) / sequences;
        check.Expect(std::fabs(MissProbability(P, c, n, true) - exact) <= 1e-12,
                     "with replacement P=" + std::to_string(P));
      }
    }
  }
  // Expected missing classes and sampler size laws on every histogram.
  std::vector<std::uint64_t> prefix;
  for (std::uint64_t P = 1; P <= 12; ++P) {
    Partitions(P, P, prefix, [&](const std::vector<std::uint64_t>& counts) {
      const TraceDataset dataset = Grouped(counts);
      const ClassHistogram histogram = Histogram(dataset);
      const std::size_t L = counts.size();
      std::vector<std::uint32_t> masks;
      std::uint64_t offset = 0;
      for (std::uint64_t c : counts) {
        masks.push_back(((1u << c) - 1) << offset);
        offset += c;
      }
      std::vector<std::uint64_t> missing_sum(P + 1, 0), subset_count(P + 1, 0);
      for (std::uint32_t s = 0; s < (1u << P); ++s) {
        const int n = std::popcount(s);
        ++subset_count[n];
        for (std::uint32_t mask : masks) missing_sum[n] += (s & mask) == 0;
      }
      for (std::uint64_t n = 0; n <= P; ++n) {
        const double exact =
            static_cast<double>(missing_sum[n]) / subset_count[n];
        const double got =
            MissProbabilityAnalytic(histogram, n, false).expected_missing;
        check.Expect(std::fabs(got - exact) <= 1e-12,
                     "expected missing P=" + std::to_string(P));
      }
      for (std::uint64_t interval = 1; interval <= P + 1; ++interval) {
        check.Expect(SystematicSample(dataset, interval).entries.size() ==
                         (P + interval - 1) / interval,
                     "systematic size");
        const SampleResult strat = StratifiedSample(dataset, interval);
        std::map<std::string, std::uint64_t> per_class;
        for (const auto& e : strat.entries) ++per_class[e.label];
        for (const auto& entry : histogram.entries()) {
          check.Expect(per_class[entry.label] ==
                           (entry.count + interval - 1) / interval,
                       "stratified per-class size");
        }
      }
      for (std::uint64_t k = 1; k <= P + 1; ++k) {
        const SampleResult uo = UnderOverSample(dataset, k, P * 31 + k);
        check.Expect(uo.entries.size() == k * L, "under-over size");
        std::map<std::string, std::uint64_t> per_class;
        for (const auto& e : uo.entries) ++per_class[e.label];
        for (const auto& [label, count] : per_class) {
          check.Expect(count == k, "under-over per-class size");
        }
      }
      for (std::uint64_t n = 1; n <= P; ++n) {
        check.Expect(RandomSample(dataset, n, false, n).entries.size() == n,
                     "random size");
        check.Expect(RandomSample(dataset, n, true, n).entries.size() == n,
                     "random size with replacement");
      }
    });
  }
}

// --- AC7 -------------------------------------------------------------------

void Determinism(Check& check) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("trafsample_acceptance_" +
                    std::to_string(std::chrono::steady_clock::now()
                                       .time_since_epoch()
                                       .count()));
  std::filesystem::create_directories(dir);
  const std::string hist = DataPath("pu_tds.hist");
  const std::string runs = (dir / "runs.txt").string();
  {
    std::ofstream(runs) << "random n=500\nrandom n=2000 replacement=true\n"
                           "underover k=100\nstratified I=7\n";
  }
  struct Command {
    std::string golden;  // empty: byte comparison of the two runs only
    std::vector<std::string> args;
    bool hash_only = false;
  };
  const std::vector<Command> commands = {
      {"cli_synth_pu_tds_seed0.fnv1a",
       {"synth", "--histogram", hist, "--seed", "0"},
       true},
      {"cli_sample_random_n500_seed0.csv",
       {"sample", "--histogram", hist, "--family", "random", "--n", "500",
        "--seed", "0"}},
      {"cli_sample_random_wr_n500_seed0.csv",
       {"sample", "--histogram", hist, "--family", "random", "--n", "500",
        "--with-replacement", "--seed", "0"}},
      {"cli_sample_underover_k100_seed0.json",
       {"sample", "--histogram", hist, "--family", "underover", "--k", "100",
        "--seed", "0", "--format", "json"}},
      {"cli_compare_seed0.md",
       {"compare", "--histogram", hist, "--runs", runs, "--seed", "0"}},
      {"cli_oracle_random_seed0.csv",
       {"oracle", "--histogram", hist, "--n", "500,1000,2000,5000",
        "--trials", "200", "--seed", "0"}},
  };
  for (const Command& command : commands) {
    std::vector<std::string> outputs;
    for (int run = 0; run < 2; ++run) {
      const std::string out_path =
          (dir / ("run" + std::to_string(run))).string();
      std::vector<std::string> args = command.args;
      std::string stdout_text;
      if (args[0] == "sample") {
        args.insert(args.end(), {"--out", out_path + ".csv", "--report",
                                 out_path + ".report"});
      } else {
        args.insert(args.end(), {"--out", out_path});
      }
      check.Expect(Cli(args, &stdout_text) == 0, command.golden + " failed");
      std::string text = args[0] == "sample"
                             ? ReadFile(out_path + ".csv") + "\n---\n" +
                                   ReadFile(out_path + ".report")
                             : ReadFile(out_path);
      outputs.push_back(text);
    }
    check.Expect(outputs[0] == outputs[1], command.golden + " differs");
    const std::string frozen =
        command.hash_only ? std::to_string(Fnv1a(outputs[0])) + "\n"
                          : outputs[0];
    check.Expect(MatchesGolden(command.golden, frozen),
                 command.golden + " golden mismatch");
  }
  std::filesystem::remove_all(dir);
}

// --- AC8 -------------------------------------------------------------------

void StratifiedCompleteness(Check& check) {
  Rng rng(20260101);
  const std::uint64_t intervals[] = {1, 2, 3, 5, 7, 10, 64, 1000};
  const std::uint64_t ks[] = {1, 3, 17, 250};
  int histograms = 0;
  for (; histograms < 1200; ++histograms) {
    const std::uint64_t classes = 1 + rng.Below(30);
    std::vector<ClassCount> entries;
    for (std::uint64_t c = 0; c < classes; ++c) {
      // Mix of tiny and heavy classes.
      const std::uint64_t scale = rng.Below(4) == 0 ? 2000 : 20;
      entries.push_back({"p" + std::to_string(c), 1 + rng.Below(scale)});
    }
    const ClassHistogram histogram(std::move(entries));
    const TraceDataset dataset =
        Synthesize(histogram, rng.Next(), Arrangement::kShuffled);
    for (std::uint64_t interval : intervals) {
      check.Expect(CountMissingClasses(
                       histogram, StratifiedSample(dataset, interval)) == 0,
                   "stratified lost a class at I=" + std::to_string(interval));
    }
    for (std::uint64_t k : ks) {
      const ImbalanceReport report = ClassReport(
          histogram, UnderOverSample(dataset, k, rng.Next()));
      check.Expect(report.imbalance_ratio == 1.0,
                   "under-over ratio at k=" + std::to_string(k));
    }
  }
  check.Expect(histograms >= 1000, "too few histograms");
}

}  // namespace
}  // namespace trafsample

int main() {
  using trafsample::Check;
  using trafsample::Criterion;
  const std::vector<Criterion> criteria = {
      {"AC1", "PU-TDS class probabilities and shares", 1.0,
       trafsample::ClassProbabilities},
      {"AC2", "systematic sample sizes", 1.0, trafsample::SystematicTotals},
      {"AC3", "stratified totals and per-class shares", 1.0,
       trafsample::StratifiedTotalsAndCells},
      {"AC4", "under-over balance", 1.0, trafsample::UnderOverBalance},
      {"AC5", "random sampling information loss", 30.0,
       trafsample::RandomInformationLoss},
      {"AC6", "brute-force oracle equivalence", 10.0,
       trafsample::BruteForceOracle},
      {"AC7", "seeded determinism and golden outputs", 0.0,
       trafsample::Determinism},
      {"AC8", "stratified completeness property", 0.0,
       trafsample::StratifiedCompleteness},
  };
  // Warm the shared synthesized dataset so its one-off cost is not charged
  // to the first timed criterion.
  trafsample::PuTds();
  int failures = 0;
  for (const Criterion& criterion : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.body(check);
    } catch (const std::exception& e) {
      check.Expect(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (criterion.budget_seconds > 0) {
      check.Expect(seconds < criterion.budget_seconds,
                   "runtime over " +
                       trafsample::FormatFixed(criterion.budget_seconds, 0) +
                       " s");
    }
    std::printf("[%s] %s %s (%.3f s)\n", check.failed() ? "FAIL" : "PASS",
                criterion.id, criterion.title, seconds);
    for (const std::string& note : check.notes()) {
      std::printf("       %s\n", note.c_str());
    }
    failures += check.failed();
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
