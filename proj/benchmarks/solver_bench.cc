// Copyright 2026 The TNG Solver Authors
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

#include <benchmark/benchmark.h>

#include <string>

#include "tng/equilibria.h"
#include "tng/model.h"
#include "tng/ne_search.h"
#include "tng/punish.h"
#include "tng/semantics.h"
#include "tng/social_opt.h"

namespace {

tng::Game Fixture(const char* name) {
  return tng::LoadGameFile(std::string(TNG_FIXTURE_DIR) + "/" + name);
}

void BM_LowValFig1(benchmark::State& state) {
  const tng::Game g = Fixture("fig1.tng");
  const tng::FiniteGame fg(g, state.range(0));
  for (auto _ : state) {
    tng::LowValSolver lv(fg, 0);
    benchmark::DoNotOptimize(lv.Value(fg.Initial()));
  }
}
BENCHMARK(BM_LowValFig1)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SocialOptimumFig5(benchmark::State& state) {
  const tng::Game g = Fixture("fig5.tng");
  const tng::FiniteGame fg(g, 8);
  for (auto _ : state) benchmark::DoNotOptimize(tng::SocialOptimumValue(fg));
}
BENCHMARK(BM_SocialOptimumFig5)->Unit(benchmark::kMillisecond);

void BM_BestResponseDynamicsFig1(benchmark::State& state) {
  const tng::Game g = Fixture("fig1.tng");
  const tng::FiniteGame fg(g, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tng::BestResponseDynamics(fg, 8).sw);
  }
}
BENCHMARK(BM_BestResponseDynamicsFig1)->Unit(benchmark::kMillisecond);

void BM_BestSwFig5(benchmark::State& state) {
  const tng::Game g = Fixture("fig5.tng");
  const tng::FiniteGame fg(g, 8);
  for (auto _ : state) {
    tng::NeSolver ne(fg);
    benchmark::DoNotOptimize(ne.BestSw());
  }
}
BENCHMARK(BM_BestSwFig5)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
