// Copyright 2026 The hamsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cmath>

#include "hamsynth/open_synth.hpp"
#include "hamsynth/path.hpp"
#include "hamsynth/unitary_synth.hpp"
#include "hamsynth/verify.hpp"

namespace {

using namespace hamsynth;

void BM_ExpmSkew2(benchmark::State& state) {
    CMat2 h = 0.3 * pauli::x() - 0.7 * pauli::y() + 0.2 * pauli::z();
    for (auto _ : state) benchmark::DoNotOptimize(expm_skew(h, 1e-3));
}
BENCHMARK(BM_ExpmSkew2);

void BM_ExpmSkew4(benchmark::State& state) {
    CMat4 h = 0.4 * shrink_generator() + kron(pauli::z(), pauli::x());
    for (auto _ : state) benchmark::DoNotOptimize(expm_skew(h, 1e-3));
}
BENCHMARK(BM_ExpmSkew4);

void BM_PropagateClosed(benchmark::State& state) {
    const PathSpec path = family_circle(0.8, 1.0, 1.0);
    const SpectralInit init = spectral_init(path);
    const AlphaGauge gauge;
    const TimeGrid grid(static_cast<int>(state.range(0)), path.tau());
    auto h = [&](double t) { return h_general(path, init, gauge, t); };
    for (auto _ : state) benchmark::DoNotOptimize(propagate_closed(h, rho0(path), grid));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PropagateClosed)->RangeMultiplier(2)->Range(500, 8000)->Complexity(benchmark::oN);

void BM_PropagateCombinedEllipse(benchmark::State& state) {
    const PathSpec path = family_ellipse(1.0);
    const WGauge w;
    const VGauge v;
    const TimeGrid grid(static_cast<int>(state.range(0)), path.tau());
    const CMat4 kick = preparation_kick(path, w, v);
    auto h = [&](double t) { return h_ab_numeric(path, w, v, t).h; };
    for (auto _ : state) benchmark::DoNotOptimize(propagate_combined(h, kick, rho0(path), grid));
}
BENCHMARK(BM_PropagateCombinedEllipse)->Arg(1000)->Arg(4000);

}  // namespace
