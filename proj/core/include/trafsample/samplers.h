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

#ifndef TRAFSAMPLE_SAMPLERS_H_
#define TRAFSAMPLE_SAMPLERS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "trafsample/dataset.h"

namespace trafsample {

struct RandomParams {
  std::uint64_t n = 1;
  bool with_replacement = false;
  friend bool operator==(const RandomParams&, const RandomParams&) = default;
};

struct SystematicParams {
  std::uint64_t interval = 1;
  friend bool operator==(const SystematicParams&,
                         const SystematicParams&) = default;
};

// Systematic sampling with the interval derived from a target count.
struct SystematicByCountParams {
  std::uint64_t n = 1;
  friend bool operator==(const SystematicByCountParams&,
                         const SystematicByCountParams&) = default;
};

// Two-phase: stratify by label, then systematic within each stratum.
struct StratifiedParams {
  std::uint64_t interval = 1;
  friend bool operator==(const StratifiedParams&,
                         const StratifiedParams&) = default;
};

// Per-class quota k: under-sample larger classes, replicate smaller ones.
struct UnderOverParams {
  std::uint64_t k = 1;
  friend bool operator==(const UnderOverParams&,
                         const UnderOverParams&) = default;
};

using SamplerFamily =
    std::variant<RandomParams, SystematicParams, SystematicByCountParams,
                 StratifiedParams, UnderOverParams>;

struct SampleSpec {
  SamplerFamily family;
  // Ignored by the systematic and stratified families.
  std::uint64_t seed = 0;

  friend bool operator==(const SampleSpec&, const SampleSpec&) = default;
};

// Command-line / file name of a family: random, systematic, bycount,
// stratified, underover.
std::string_view FamilyName(const SamplerFamily& family);
// Short parameter text, e.g. "n=500", "I=5", "k=100".
std::string ParameterText(const SamplerFamily& family);
// Throws Error(kInvalidParameter) when n, I or k is zero.
void ValidateSpec(const SampleSpec& spec);

struct SampledRecord {
  std::uint64_t source_position = 0;
  std::string label;
  // True only for over-sampling duplicates added beyond a class's originals.
  bool synthetic = false;

  friend bool operator==(const SampledRecord&, const SampledRecord&) = default;
};

struct SampleResult {
  SampleSpec spec;
  std::vector<SampledRecord> entries;
  std::uint64_t source_population = 0;
  std::size_t source_class_count = 0;

  friend bool operator==(const SampleResult&, const SampleResult&) = default;
};

// All samplers are pure functions of their arguments and throw
// Error(kEmptyDataset) on an empty dataset and Error(kInvalidParameter) on a
// zero n / interval / k.

// Without replacement: a uniform simple random sample of min(n, P) distinct
// records, emitted in ascending position. With replacement: n independent
// uniform draws in draw order.
SampleResult RandomSample(const TraceDataset& dataset, std::uint64_t n,
                          bool with_replacement, std::uint64_t seed);

// Positions 1, 1+I, 1+2I, ... <= P; ceil(P/I) entries.
SampleResult SystematicSample(const TraceDataset& dataset,
                              std::uint64_t interval);

// I = floor(P/n), then the first n entries of SystematicSample(I).
// Throws Error(kTargetExceedsPopulation) when n > P.
SampleResult SystematicByCount(const TraceDataset& dataset, std::uint64_t n);

// Each stratum (label) in first-appearance order contributes its records at
// within-stratum offsets 1, 1+I, ...: ceil(n_i/I) entries, ascending.
SampleResult StratifiedSample(const TraceDataset& dataset,
                              std::uint64_t interval);

// Exactly k entries per class, classes in first-appearance order. Classes
// larger than k get k distinct records drawn uniformly (ascending position);
// smaller classes keep every original, then (k - n_i) uniform draws with
// replacement flagged synthetic. Class i draws from the sub-stream
// DeriveSeed(seed, i).
SampleResult UnderOverSample(const TraceDataset& dataset, std::uint64_t k,
                             std::uint64_t seed);

// Dispatches on spec.family after ValidateSpec.
SampleResult RunSample(const TraceDataset& dataset, const SampleSpec& spec);

// CSV with columns source_position,label,synthetic.
void WriteSampleCsv(std::ostream& out, const SampleResult& sample);

}  // namespace trafsample

#endif  // TRAFSAMPLE_SAMPLERS_H_
