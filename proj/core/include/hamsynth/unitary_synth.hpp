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

#include <functional>

#include "hamsynth/linalg.hpp"
#include "hamsynth/path.hpp"

namespace hamsynth {

/// Gauge functions alpha_1(t), alpha_2(t) of the commuting phase matrix
/// V(t) = e^{i alpha_1} rho_1(0) + e^{i alpha_2} rho_2(0). Both vanish at t = 0.
class AlphaGauge {
public:
    /// alpha_1 = alpha_2 = 0.
    AlphaGauge();

    /// Throws NonzeroAlphaAtZero unless alpha1(0) and alpha2(0) vanish
    /// (|alpha_k(0)| <= 1e-12). Rates are optional.
    AlphaGauge(ScalarFn alpha1, ScalarFn alpha2, ScalarFn rate1 = {},
               ScalarFn rate2 = {});

    double alpha(int k, double t) const;

    /// Analytic rate when available, otherwise the path-derivative stencil
    /// with step h inside [0, tau].
    double rate(int k, double t, double h, double tau) const;

    bool has_analytic_rates() const { return bool(rate1_) && bool(rate2_); }

private:
    ScalarFn alpha1_, alpha2_, rate1_, rate2_;
};

struct PulseSample {
    double t;
    double b0;  // identity offset
    Vec3 b;     // H = b0 I + (b . sigma)/2
};

template <typename M>
struct GeneratorEstimate {
    M h;               // Hermitized i dU/dt U^dagger
    double skew_defect;  // ||H - H^dagger||_F before Hermitization
};

/// Reference unitary carrying (theta0, phi0) to (theta(t), phi(t)):
/// Rz(phi) Ry(theta - theta0) Rz(-phi0) written out entrywise.
CMat2 tilde_u(const PathSpec& path, double t);

CMat2 v_gauge(const SpectralInit& init, const AlphaGauge& gauge, double t);

/// U(t) = tilde_u(t) V(t). Throws KindMismatch on open paths.
CMat2 u_general(const PathSpec& path, const SpectralInit& init,
                const AlphaGauge& gauge, double t);

/// General Hamiltonian of the gauge family,
///   H = 1/2 [[phi' - a1'(1+cos) - a2'(1-cos), (-i theta' - a1' sin + a2' sin) e^{-i phi}],
///            [(i theta' - a1' sin + a2' sin) e^{i phi}, -phi' - a1'(1-cos) - a2'(1+cos)]].
/// Throws KindMismatch on open paths.
CMat2 h_general(const PathSpec& path, const SpectralInit& init,
                const AlphaGauge& gauge, double t);
CMat2 h_general(const PathSpec& path, const SpectralInit& init,
                const AlphaGauge& gauge, double t, double h);

/// i d/dt[tilde_u] tilde_u^dagger, the alpha = 0 member of the family.
CMat2 h_tilde(const PathSpec& path, double t);

/// Central-difference i dU/dt U^dagger, Hermitized.
GeneratorEstimate<CMat2> h_numeric(const std::function<CMat2(double)>& u_fn,
                                   double t, double h);

/// B0 = tr(H)/2, B_i = tr(H sigma_i). Throws NonHermitianInput.
PulseSample pulse_decompose(const CMat2& h, double t);

}  // namespace hamsynth
