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

#include <fstream>
#include <sstream>
#include <string>

#include "benchmark/benchmark.h"
#include "trafsample/dataset.h"
#include "trafsample/metrics.h"
#include "trafsample/samplers.h"

namespace trafsample {
namespace {

const ClassHistogram& PuTdsHistogram() {
  static const ClassHistogram histogram = [] {
    std::ifstream in(std::string(TRAFSAMPLE_DATA_DIR) + "/pu_tds.hist");
    return ParseHistogramSpec(in);
  }();
  return histogram;
}

const TraceDataset& PuTds() {
  static const TraceDataset dataset =
      Synthesize(PuTdsHistogram(), 0, Arrangement::kShuffled);
  return dataset;
}

void BM_Synthesize(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        Synthesize(PuTdsHistogram(), 0, Arrangement::kShuffled));
  }
  state.SetItemsProcessed(state.iterations() * 30000);
}
BENCHMARK(BM_Synthesize);

void BM_ParseCsv(benchmark::State& state) {
  std::ostringstream csv;
  WriteRecordsCsv(csv, PuTds(), kDefaultLabelColumn);
  const std::string text = csv.str();
  for (auto _ : state) {
    std::istringstream in(text);
    benchmark::DoNotOptimize(ParseRecords(in, InputFormat::kCsv));
  }
  state.SetBytesProcessed(state.iterations() * text.size());
}
BENCHMARK(BM_ParseCsv);

void BM_RandomSample(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        RandomSample(PuTds(), state.range(0), false, seed++));
  }
}
BENCHMARK(BM_RandomSample)->Arg(500)->Arg(5000)->Arg(20000);

void BM_SystematicSample(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(SystematicSample(PuTds(), state.range(0)));
  }
}
BENCHMARK(BM_SystematicSample)->Arg(5)->Arg(10);

void BM_StratifiedSample(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(StratifiedSample(PuTds(), state.range(0)));
  }
}
BENCHMARK(BM_StratifiedSample)->Arg(5)->Arg(10);

void BM_UnderOverSample(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(UnderOverSample(PuTds(), state.range(0), 0));
  }
}
BENCHMARK(BM_UnderOverSample)->Arg(100)->Arg(700);

void BM_MissProbabilityAnalytic(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        MissProbabilityAnalytic(PuTdsHistogram(), state.range(0), false));
  }
}
BENCHMARK(BM_MissProbabilityAnalytic)->Arg(500)->Arg(20000);

void BM_SimulateRandomMissing(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(SimulateRandomMissing(PuTds(), 500, false, 0,
                                                   state.range(0), 1));
  }
}
BENCHMARK(BM_SimulateRandomMissing)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace trafsample

BENCHMARK_MAIN();
