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

#pragma once

#include <array>
#include <span>

#include "hamsynth/linalg.hpp"
#include "hamsynth/path.hpp"
#include "hamsynth/unitary_synth.hpp"

namespace hamsynth {

struct PhaseResult {
    double gamma;                              // principal value in (-pi, pi]
    std::array<cplx, 2> connection_integrals;  // int_0^tau tr[rho_k(0) U^dagger U'] dt
    int grid_n;
    cplx trace_sum;
    bool near_branch_cut;
};

/// tr[rho_k(0) U^dagger dU/dt] for U = tilde_u V. Chain rule when the path and
/// gauge carry analytic rates, central difference of U otherwise.
cplx connection_k(const PathSpec& path, const SpectralInit& init,
                  const AlphaGauge& gauge, double t, int k);

/// alpha_1 = -alpha_2 = 1/2 int_0^t cos(theta) phi' dt. Node values come from
/// per-interval Simpson sums; off-node values add one Simpson panel from the
/// preceding node. The returned rates are the integrand itself.
AlphaGauge parallel_alphas(const PathSpec& path, const TimeGrid& grid);

/// Mixed-state geometric phase
///   gamma = arg sum_k w_k tr[rho_k(0) U(tau)] exp(-int_0^tau tr[rho_k(0) U^dagger U'] dt)
/// with composite Simpson quadrature on the grid (n must be even).
PhaseResult geometric_phase(const PathSpec& path, const SpectralInit& init,
                            const AlphaGauge& gauge, const TimeGrid& grid);

/// -atan(r0 tan(pi (1 - cos theta0))). At tan poles the limit -pi/2 is returned.
double gamma_closed_form(double r0, double theta0);

/// Zero-dynamical-phase Hamiltonian
///   1/2 [[phi' sin^2, (-i theta' - phi' sin cos) e^{-i phi}], [c.c., -phi' sin^2]].
CMat2 h_parallel(const PathSpec& path, double t);

/// (omega sin th0 / 2) [[sin th0, -cos th0 e^{-i omega t}], [-cos th0 e^{i omega t}, -sin th0]].
CMat2 circle_h(double theta0, double omega, double t);

/// Composite Simpson rule on uniformly spaced samples (odd sample count).
cplx simpson(std::span<const cplx> samples, double h);
double simpson(std::span<const double> samples, double h);

}  // namespace hamsynth
