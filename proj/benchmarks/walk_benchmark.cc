// Copyright 2026 The entwalk Authors
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

#include <cstdint>

#include "benchmark/benchmark.h"
#include "entwalk/entanglement.h"
#include "entwalk/hilbert.h"
#include "entwalk/remote.h"
#include "entwalk/tomography.h"
#include "entwalk/walk.h"

namespace entwalk {
namespace {

void BM_EvolveBell(benchmark::State& state) {
    const TripartiteState bell = make_bell_initial();
    const int steps = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve(bell, WalkConfig{steps}));
    }
    state.SetComplexityN(steps);
}
BENCHMARK(BM_EvolveBell)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_EntanglementCurve(benchmark::State& state) {
    const Ensemble werner = make_werner_initial(0.8);
    const int steps = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(entanglement_curve(werner, WalkConfig{steps}));
    }
}
BENCHMARK(BM_EntanglementCurve)->Arg(10)->Arg(50);

void BM_RunScan(benchmark::State& state) {
    ConditioningScan scan;
    scan.alpha_grid = ConditioningScan::angle_grid(2.0);
    scan.beta_grid = scan.alpha_grid;
    scan.steps = static_cast<int>(state.range(0));
    scan.weight = EntangledWeight::of(0.5);
    scan.reference = {PolarizationAngle::from_degrees(24.0)};
    const Ensemble bell = make_bell_initial();
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_scan(scan, bell));
    }
}
BENCHMARK(BM_RunScan)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SampledTomography(benchmark::State& state) {
    const Ensemble werner = make_werner_initial(0.766);
    const Ensemble evolved = evolve(werner, WalkConfig{4});
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tomography_at(evolved, 0, Sampling{1'000'000, seed++}));
    }
}
BENCHMARK(BM_SampledTomography);

}  // namespace
}  // namespace entwalk
