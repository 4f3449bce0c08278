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

#include "trafsample/samplers.h"

#include <algorithm>
#include <string>
#include <type_traits>
#include <unordered_map>

#include "trafsample/csv.h"
#include "trafsample/error.h"
#include "trafsample/rng.h"

namespace trafsample {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void RequireNonEmpty(const TraceDataset& dataset) {
  if (dataset.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "cannot sample an empty dataset");
  }
}

void RequirePositive(std::uint64_t value, std::string_view name) {
  if (value == 0) {
    throw Error(ErrorCode::kInvalidParameter,
                std::string(name) + " must be at least 1");
  }
}

SampleResult MakeResult(const TraceDataset& dataset, SampleSpec spec,
                        std::size_t class_count) {
  SampleResult result;
  result.spec = std::move(spec);
  result.source_population = dataset.population();
  result.source_class_count = class_count;
  return result;
}

void Emit(SampleResult& result, const PacketRecord& record,
          bool synthetic = false) {
  result.entries.push_back({record.position, record.label, synthetic});
}

// Floyd's algorithm: `count` distinct indices drawn uniformly from
// [0, population), returned ascending.
std::vector<std::uint64_t> DrawDistinct(Rng& rng, std::uint64_t population,
                                        std::uint64_t count) {
  std::vector<bool> taken(population, false);
  std::vector<std::uint64_t> chosen;
  chosen.reserve(count);
  for (std::uint64_t j = population - count; j < population; ++j) {
    std::uint64_t t = rng.Below(j + 1);
    if (taken[t]) t = j;
    taken[t] = true;
    chosen.push_back(t);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

// Record indices (0-based) grouped by label in first-appearance order.
std::vector<std::vector<std::size_t>> Strata(const TraceDataset& dataset) {
  std::vector<std::vector<std::size_t>> strata;
  std::unordered_map<std::string_view, std::size_t> index;
  const auto records = dataset.records();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto [it, inserted] =
        index.try_emplace(records[i].label, strata.size());
    if (inserted) strata.emplace_back();
    strata[it->second].push_back(i);
  }
  return strata;
}

}  // namespace

std::string_view FamilyName(const SamplerFamily& family) {
  return std::visit(
      Overloaded{
          [](const RandomParams&) { return std::string_view("random"); },
          [](const SystematicParams&) {
            return std::string_view("systematic");
          },
          [](const SystematicByCountParams&) {
            return std::string_view("bycount");
          },
          [](const StratifiedParams&) {
            return std::string_view("stratified");
          },
          [](const UnderOverParams&) {
            return std::string_view("underover");
          },
      },
      family);
}

std::string ParameterText(const SamplerFamily& family) {
  return std::visit(
      Overloaded{
          [](const RandomParams& p) {
            return "n=" + std::to_string(p.n) +
                   (p.with_replacement ? " (with replacement)" : "");
          },
          [](const SystematicParams& p) {
            return "I=" + std::to_string(p.interval);
          },
          [](const SystematicByCountParams& p) {
            return "n=" + std::to_string(p.n);
          },
          [](const StratifiedParams& p) {
            return "I=" + std::to_string(p.interval);
          },
          [](const UnderOverParams& p) { return "k=" + std::to_string(p.k); },
      },
      family);
}

void ValidateSpec(const SampleSpec& spec) {
  std::visit(Overloaded{
                 [](const RandomParams& p) { RequirePositive(p.n, "n"); },
                 [](const SystematicParams& p) {
                   RequirePositive(p.interval, "interval");
                 },
                 [](const SystematicByCountParams& p) {
                   RequirePositive(p.n, "n");
                 },
                 [](const StratifiedParams& p) {
                   RequirePositive(p.interval, "interval");
                 },
                 [](const UnderOverParams& p) { RequirePositive(p.k, "k"); },
             },
             spec.family);
}

SampleResult RandomSample(const TraceDataset& dataset, std::uint64_t n,
                          bool with_replacement, std::uint64_t seed) {
  RequireNonEmpty(dataset);
  RequirePositive(n, "n");
  SampleResult result = MakeResult(
      dataset, {RandomParams{n, with_replacement}, seed}, dataset.class_count());
  const auto records = dataset.records();
  const std::uint64_t population = records.size();
  Rng rng(seed);
  if (with_replacement) {
    result.entries.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      Emit(result, records[rng.Below(population)]);
    }
    return result;
  }
  const std::uint64_t count = std::min(n, population);
  result.entries.reserve(count);
  for (std::uint64_t index : DrawDistinct(rng, population, count)) {
    Emit(result, records[index]);
  }
  return result;
}

SampleResult SystematicSample(const TraceDataset& dataset,
                              std::uint64_t interval) {
  RequireNonEmpty(dataset);
  RequirePositive(interval, "interval");
  SampleResult result = MakeResult(dataset, {SystematicParams{interval}, 0},
                                   dataset.class_count());
  const auto records = dataset.records();
  result.entries.reserve((records.size() + interval - 1) / interval);
  for (std::uint64_t i = 0; i < records.size(); i += interval) {
    Emit(result, records[i]);
  }
  return result;
}

SampleResult SystematicByCount(const TraceDataset& dataset, std::uint64_t n) {
  RequireNonEmpty(dataset);
  RequirePositive(n, "n");
  if (n > dataset.population()) {
    throw Error(ErrorCode::kTargetExceedsPopulation,
                "n=" + std::to_string(n) + " exceeds population " +
                    std::to_string(dataset.population()));
  }
  const std::uint64_t interval = dataset.population() / n;
  SampleResult result = SystematicSample(dataset, interval);
  result.entries.resize(n);
  result.spec = {SystematicByCountParams{n}, 0};
  return result;
}

SampleResult StratifiedSample(const TraceDataset& dataset,
                              std::uint64_t interval) {
  RequireNonEmpty(dataset);
  RequirePositive(interval, "interval");
  const auto strata = Strata(dataset);
  SampleResult result =
      MakeResult(dataset, {StratifiedParams{interval}, 0}, strata.size());
  const auto records = dataset.records();
  for (const auto& stratum : strata) {
    for (std::size_t j = 0; j < stratum.size(); j += interval) {
      Emit(result, records[stratum[j]]);
    }
  }
  return result;
}

SampleResult UnderOverSample(const TraceDataset& dataset, std::uint64_t k,
                             std::uint64_t seed) {
  RequireNonEmpty(dataset);
  RequirePositive(k, "k");
  const auto strata = Strata(dataset);
  SampleResult result =
      MakeResult(dataset, {UnderOverParams{k}, seed}, strata.size());
  result.entries.reserve(k * strata.size());
  const auto records = dataset.records();
  for (std::size_t c = 0; c < strata.size(); ++c) {
    const auto& stratum = strata[c];
    const std::uint64_t size = stratum.size();
    Rng rng(DeriveSeed(seed, c));
    if (size > k) {
      for (std::uint64_t j : DrawDistinct(rng, size, k)) {
        Emit(result, records[stratum[j]]);
      }
      continue;
    }
    for (std::size_t index : stratum) Emit(result, records[index]);
    for (std::uint64_t extra = size; extra < k; ++extra) {
      Emit(result, records[stratum[rng.Below(size)]], /*synthetic=*/true);
    }
  }
  return result;
}

SampleResult RunSample(const TraceDataset& dataset, const SampleSpec& spec) {
  ValidateSpec(spec);
  SampleResult result = std::visit(
      Overloaded{
          [&](const RandomParams& p) {
            return RandomSample(dataset, p.n, p.with_replacement, spec.seed);
          },
          [&](const SystematicParams& p) {
            return SystematicSample(dataset, p.interval);
          },
          [&](const SystematicByCountParams& p) {
            return SystematicByCount(dataset, p.n);
          },
          [&](const StratifiedParams& p) {
            return StratifiedSample(dataset, p.interval);
          },
          [&](const UnderOverParams& p) {
            return UnderOverSample(dataset, p.k, spec.seed);
          },
      },
      spec.family);
  result.spec = spec;
  return result;
}

void WriteSampleCsv(std::ostream& out, const SampleResult& sample) {
  out << "source_position,label,synthetic\n";
  for (const SampledRecord& entry : sample.entries) {
    out << entry.source_position << ',' << CsvField(entry.label) << ','
        << (entry.synthetic ? "true" : "false") << '\n';
  }
}

}  // namespace trafsample
