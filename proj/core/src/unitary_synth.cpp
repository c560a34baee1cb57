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

#include "hamsynth/unitary_synth.hpp"

#include <cmath>

#include "hamsynth/errors.hpp"
#include "hamsynth/numdiff.hpp"
#include "hamsynth/tolerances.hpp"

namespace hamsynth {

AlphaGauge::AlphaGauge()
    : alpha1_([](double) { return 0.0; }),
      alpha2_([](double) { return 0.0; }),
      rate1_([](double) { return 0.0; }),
      rate2_([](double) { return 0.0; }) {}

AlphaGauge::AlphaGauge(ScalarFn alpha1, ScalarFn alpha2, ScalarFn rate1, ScalarFn rate2)
    : alpha1_(std::move(alpha1)),
      alpha2_(std::move(alpha2)),
      rate1_(std::move(rate1)),
      rate2_(std::move(rate2)) {
    if (!alpha1_ || !alpha2_)
        throw Error(ErrorCode::InvalidConfig, "alpha gauge functions must be set");
    if (std::abs(alpha1_(0.0)) > tol::kAnalytic || std::abs(alpha2_(0.0)) > tol::kAnalytic)
        throw Error(ErrorCode::NonzeroAlphaAtZero, "gauge functions must vanish at t = 0");
}

double AlphaGauge::alpha(int k, double t) const { return k == 1 ? alpha1_(t) : alpha2_(t); }

double AlphaGauge::rate(int k, double t, double h, double tau) const {
    const ScalarFn& rate = k == 1 ? rate1_ : rate2_;
    if (rate) return rate(t);
    const ScalarFn& value = k == 1 ? alpha1_ : alpha2_;
    return derivative(value, t, h, 0.0, tau);
}

namespace {

void require_unitary_kind(const PathSpec& path, const char* context) {
    if (path.kind() != PathKind::Unitary)
        throw Error(ErrorCode::KindMismatch,
                    std::string(context) + ": path has varying r; use the dilation synthesis");
}

CMat2 explicit_hamiltonian(const BlochPoint& p, const BlochRates& d, double a1, double a2) {
    double c = std::cos(p.theta);
    double s = std::sin(p.theta);
    cplx e_minus = std::exp(cplx(0.0, -p.phi));
    CMat2 h;
    h(0, 0) = 0.5 * (d.dphi - a1 * (1.0 + c) - a2 * (1.0 - c));
    h(1, 1) = 0.5 * (-d.dphi - a1 * (1.0 - c) - a2 * (1.0 + c));
    h(0, 1) = 0.5 * cplx(-a1 * s + a2 * s, -d.dtheta) * e_minus;
    h(1, 0) = std::conj(h(0, 1));
    return h;
}

}  // namespace

CMat2 tilde_u(const PathSpec& path, double t) {
    require_in_domain(path, t, "tilde_u");
    const BlochPoint p0 = path.initial();
    const BlochPoint p = path.at(t);
    double half = 0.5 * (p.theta - p0.theta);
    double c = std::cos(half);
    double s = std::sin(half);
    double diff = 0.5 * (p.phi - p0.phi);
    double sum = 0.5 * (p.phi + p0.phi);
    CMat2 u;
    u(0, 0) = c * std::exp(cplx(0.0, -diff));
    u(0, 1) = -s * std::exp(cplx(0.0, -sum));
    u(1, 0) = s * std::exp(cplx(0.0, sum));
    u(1, 1) = c * std::exp(cplx(0.0, diff));
    return u;
}

CMat2 v_gauge(const SpectralInit& init, const AlphaGauge& gauge, double t) {
    return std::exp(cplx(0.0, gauge.alpha(1, t))) * init.rho1_0 +
           std::exp(cplx(0.0, gauge.alpha(2, t))) * init.rho2_0;
}

CMat2 u_general(const PathSpec& path, const SpectralInit& init, const AlphaGauge& gauge, double t) {
    require_unitary_kind(path, "u_general");
    return tilde_u(path, t) * v_gauge(init, gauge, t);
}

CMat2 h_general(const PathSpec& path, const SpectralInit& init, const AlphaGauge& gauge, double t) {
    return h_general(path, init, gauge, t, path.default_step());
}

CMat2 h_general(const PathSpec& path, const SpectralInit& /*init*/, const AlphaGauge& gauge,
                double t, double h) {
    require_unitary_kind(path, "h_general");
    require_in_domain(path, t, "h_general");
    return explicit_hamiltonian(path.at(t), derivatives_at(path, t, h),
                                gauge.rate(1, t, h, path.tau()), gauge.rate(2, t, h, path.tau()));
}

CMat2 h_tilde(const PathSpec& path, double t) {
    require_in_domain(path, t, "h_tilde");
    return explicit_hamiltonian(path.at(t), derivatives_at(path, t), 0.0, 0.0);
}

GeneratorEstimate<CMat2> h_numeric(const std::function<CMat2(double)>& u_fn, double t, double h) {
    if (!(h > 0.0)) throw Error(ErrorCode::DomainError, "h_numeric: step must be positive");
    CMat2 du = derivative(u_fn, t, h);
    CMat2 raw = kI * du * u_fn(t).adjoint();
    return {hermitize(raw), hermiticity_defect(raw)};
}

PulseSample pulse_decompose(const CMat2& h, double t) {
    require_hermitian(h, "pulse_decompose");
    PulseSample p;
    p.t = t;
    p.b0 = 0.5 * (h(0, 0) + h(1, 1)).real();
    p.b = {(h * pauli::x()).trace().real(), (h * pauli::y()).trace().real(),
           (h * pauli::z()).trace().real()};
    return p;
}

}  // namespace hamsynth
