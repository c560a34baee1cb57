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
#include <optional>

#include "hamsynth/linalg.hpp"
#include "hamsynth/path.hpp"
#include "hamsynth/unitary_synth.hpp"

namespace hamsynth {

using MatrixFn2 = std::function<CMat2(double)>;

struct KrausPair {
    CMat2 m0;
    CMat2 m1;

    /// ||m0^dagger m0 + m1^dagger m1 - I||_F
    double completeness_defect() const;

    /// sum_mu M_mu rho M_mu^dagger
    CMat2 apply(const CMat2& rho) const;
};

/// Ancilla-side SU(2) gauge path W(t).
class WGauge {
public:
    /// W(t) = I.
    WGauge();

    /// Samples are validated against SU(2) on every evaluation.
    explicit WGauge(MatrixFn2 w, MatrixFn2 rate = {});

    /// W(t) = exp(-i (a_x sigma_x + a_y sigma_y + a_z sigma_z)).
    static WGauge from_generator(ScalarFn ax, ScalarFn ay, ScalarFn az);

    /// Throws GaugeMismatch if the sample is not special unitary.
    CMat2 at(double t) const;
    bool is_identity() const { return !w_; }

private:
    MatrixFn2 w_;
    MatrixFn2 rate_;
};

/// System-side gauge V(t). For r0 > 0 it must commute with rho(0); the usual
/// source is an AlphaGauge. For r0 = 0 any unitary path with V(0) = I is allowed.
class VGauge {
public:
    /// V(t) = I.
    VGauge();

    static VGauge from_alpha(SpectralInit init, AlphaGauge gauge);
    static VGauge arbitrary(MatrixFn2 v);

    CMat2 at(double t) const;
    bool is_identity() const { return !v_; }

private:
    explicit VGauge(MatrixFn2 v) : v_(std::move(v)) {}
    MatrixFn2 v_;
};

struct DilationSample {
    double t;
    CMat4 u_ab;
};

/// The reference Kraus pair M~0, M~1 for the trajectory, with the shorthand
/// s_s, s_c, c_s, c_c of half-angle products and r+ = sqrt((r+r0)/(1+r0)),
/// r- = sqrt((1-r)/(1+r0)).
KrausPair kraus_tilde(const PathSpec& path, double t);

/// Reference 4x4 dilation. Columns 1 and 3 (ancilla input |0>) embed the Kraus
/// pair: U[2a'+mu][2a] = (M~mu)[a'][a].
DilationSample dilation_tilde(const PathSpec& path, double t);

/// M_mu = sum_nu W_{mu nu} M~_nu V(t).
/// Throws GaugeMismatch if r0 > 0 and V(t) does not commute with rho(0).
KrausPair kraus_general(const PathSpec& path, const WGauge& w, const VGauge& v,
                        double t);

/// U_ab = (I (x) W) U~_ab (V (x) I).
DilationSample dilation_general(const PathSpec& path, const WGauge& w,
                                const VGauge& v, double t);

/// Reads <mu| U |0> off the ancilla-|0> columns.
KrausPair kraus_from_dilation(const CMat4& u_ab);

struct DifferentiationOptions {
    double h = 0.0;          // 0 selects tol::kUnitaryStepRelative * tau
    bool richardson = false;  // (4 D(h/2) - D(h)) / 3
};

/// Hermitized central-difference i dU_ab/dt U_ab^dagger, one-sided within h of
/// the ends of [0, tau].
GeneratorEstimate<CMat4> h_ab_numeric(const PathSpec& path, const WGauge& w,
                                      const VGauge& v, double t,
                                      DifferentiationOptions opts = {});

/// U_ab(0). The realized protocol applies this unitary at t = 0 and then
/// evolves under H_ab(t); U_ab(0) is not the identity in general.
CMat4 preparation_kick(const PathSpec& path, const WGauge& w, const VGauge& v);

/// sigma_x (x) sigma_y - sigma_y (x) sigma_x.
CMat4 shrink_generator();

/// Closed-form Hamiltonian for shrinking along the polar axis,
///   H = r' / (4 sqrt(1 - r^2)) (sigma_x (x) sigma_y - sigma_y (x) sigma_x).
/// At r = 1 with r' = 0 the coefficient takes its limit -sqrt(-r'')/4.
/// Throws SingularShrinkStart at r = 1 with r' != 0, DomainError for r
/// outside [0, 1]. h is the finite-difference step used when r has no analytic
/// rate.
CMat4 shrink_h_ab(const Coordinate& r, double t, double h);

}  // namespace hamsynth
