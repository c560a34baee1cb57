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

#include "hamsynth/geomphase.hpp"
#include "hamsynth/open_synth.hpp"
#include "hamsynth/path.hpp"
#include "hamsynth/unitary_synth.hpp"

namespace {

using namespace hamsynth;

void BM_HGeneral(benchmark::State& state) {
    const PathSpec path = family_circle(0.5, std::acos(2.0 / 3.0), 1.0);
    const SpectralInit init = spectral_init(path);
    const AlphaGauge gauge([](double t) { return 0.3 * std::sin(t); },
                           [](double t) { return -0.2 * std::sin(2 * t); },
                           [](double t) { return 0.3 * std::cos(t); },
                           [](double t) { return -0.4 * std::cos(2 * t); });
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(h_general(path, init, gauge, t));
        t = std::fmod(t + 1e-3, path.tau());
    }
}
BENCHMARK(BM_HGeneral);

void BM_DilationTilde(benchmark::State& state) {
    const PathSpec path = family_ellipse(1.0);
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dilation_tilde(path, t));
        t = std::fmod(t + 1e-3, path.tau());
    }
}
BENCHMARK(BM_DilationTilde);

void BM_HabNumeric(benchmark::State& state) {
    const PathSpec path = family_ellipse(1.0);
    const WGauge w;
    const VGauge v;
    double t = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(h_ab_numeric(path, w, v, t));
        t = std::fmod(t + 1e-3, path.tau() - 0.2) + 0.1;
    }
}
BENCHMARK(BM_HabNumeric);

void BM_GeometricPhase(benchmark::State& state) {
    const PathSpec path = family_circle(0.5, std::acos(2.0 / 3.0), 1.0);
    const SpectralInit init = spectral_init(path);
    const TimeGrid grid(static_cast<int>(state.range(0)), path.tau());
    const AlphaGauge gauge = parallel_alphas(path, grid);
    for (auto _ : state) benchmark::DoNotOptimize(geometric_phase(path, init, gauge, grid));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GeometricPhase)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oN);

}  // namespace
