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

#include "hamsynth/open_synth.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/LU>

#include "hamsynth/errors.hpp"
#include "hamsynth/numdiff.hpp"
#include "hamsynth/tolerances.hpp"

namespace hamsynth {

double KrausPair::completeness_defect() const {
    return (m0.adjoint() * m0 + m1.adjoint() * m1 - CMat2::Identity()).norm();
}

CMat2 KrausPair::apply(const CMat2& rho) const {
    return m0 * rho * m0.adjoint() + m1 * rho * m1.adjoint();
}

WGauge::WGauge() = default;

WGauge::WGauge(MatrixFn2 w, MatrixFn2 rate) : w_(std::move(w)), rate_(std::move(rate)) {}

WGauge WGauge::from_generator(ScalarFn ax, ScalarFn ay, ScalarFn az) {
    return WGauge([ax = std::move(ax), ay = std::move(ay), az = std::move(az)](double t) {
        CMat2 g = ax(t) * pauli::x() + ay(t) * pauli::y() + az(t) * pauli::z();
        return expm_skew(g, 1.0);
    });
}

CMat2 WGauge::at(double t) const {
    if (!w_) return CMat2::Identity();
    CMat2 w = w_(t);
    double udef = unitarity_defect(w);
    double ddef = std::abs(w.determinant() - 1.0);
    if (!(udef <= tol::kGaugeMatrix) || !(ddef <= tol::kGaugeMatrix)) {
        std::ostringstream msg;
        msg << "W(" << t << ") is not in SU(2): unitarity defect " << udef << ", |det - 1| = " << ddef;
        throw Error(ErrorCode::GaugeMismatch, msg.str());
    }
    return w;
}

VGauge::VGauge() = default;

VGauge VGauge::from_alpha(SpectralInit init, AlphaGauge gauge) {
    return VGauge([init = std::move(init), gauge = std::move(gauge)](double t) {
        return v_gauge(init, gauge, t);
    });
}

VGauge VGauge::arbitrary(MatrixFn2 v) { return VGauge(std::move(v)); }

CMat2 VGauge::at(double t) const {
    if (!v_) return CMat2::Identity();
    CMat2 v = v_(t);
    double udef = unitarity_defect(v);
    if (!(udef <= tol::kGaugeMatrix)) {
        std::ostringstream msg;
        msg << "V(" << t << ") is not unitary: defect " << udef;
        throw Error(ErrorCode::GaugeMismatch, msg.str());
    }
    return v;
}

namespace {

struct HalfAngles {
    double ss, sc, cs, cc;  // sin/cos(theta/2) times sin/cos(theta0/2)
    double rp, rm;          // sqrt((r+r0)/(1+r0)), sqrt((1-r)/(1+r0))
    double phi, phi0;
};

HalfAngles half_angles(const PathSpec& path, double t) {
    require_in_domain(path, t, "open synthesis");
    const BlochPoint p0 = path.initial();
    const BlochPoint p = path.at(t);
    if (p.r < -tol::kRangeSlack || p.r > 1.0 + tol::kRangeSlack) {
        std::ostringstream msg;
        msg << "r(" << t << ") = " << p.r << " outside [0, 1]";
        throw Error(ErrorCode::DomainError, msg.str());
    }
    double r = std::clamp(p.r, 0.0, 1.0);
    double st = std::sin(0.5 * p.theta), ct = std::cos(0.5 * p.theta);
    double s0 = std::sin(0.5 * p0.theta), c0 = std::cos(0.5 * p0.theta);
    return {st * s0,
            st * c0,
            ct * s0,
            ct * c0,
            std::sqrt((r + p0.r) / (1.0 + p0.r)),
            std::sqrt((1.0 - r) / (1.0 + p0.r)),
            p.phi,
            p0.phi};
}

cplx e(double x) { return std::exp(cplx(0.0, x)); }

void require_commuting(const PathSpec& path, const CMat2& v, double t) {
    if (path.initial().r <= tol::kDegenerateR0) return;
    CMat2 r0 = rho0(path);
    double comm = (v * r0 - r0 * v).norm();
    if (!(comm <= tol::kGaugeMatrix)) {
        std::ostringstream msg;
        msg << "V(" << t << ") does not commute with rho(0): ||[V, rho0]||_F = " << comm;
        throw Error(ErrorCode::GaugeMismatch, msg.str());
    }
}

}  // namespace

KrausPair kraus_tilde(const PathSpec& path, double t) {
    const HalfAngles a = half_angles(path, t);
    const double phi = a.phi, phi0 = a.phi0;
    KrausPair k;
    k.m0(0, 0) = -a.cs - a.rm * a.sc * e(phi0 - phi);
    k.m0(0, 1) = a.cc * e(-phi0) - a.rm * a.ss * e(-phi);
    k.m0(1, 0) = -a.ss * e(phi) + a.rm * a.cc * e(phi0);
    k.m0(1, 1) = a.sc * e(phi - phi0) + a.rm * a.cs;
    k.m1(0, 0) = a.rp * a.cc * e(phi0);
    k.m1(0, 1) = a.rp * a.cs;
    k.m1(1, 0) = a.rp * a.sc * e(phi + phi0);
    k.m1(1, 1) = a.rp * a.ss * e(phi);
    return k;
}

DilationSample dilation_tilde(const PathSpec& path, double t) {
    const HalfAngles a = half_angles(path, t);
    const double phi = a.phi, phi0 = a.phi0;
    const double ss = a.ss, sc = a.sc, cs = a.cs, cc = a.cc, rp = a.rp, rm = a.rm;
    CMat4 u;
    u << -cs - rm * sc * e(phi0 - phi), -rp * ss * e(-phi), cc * e(-phi0) - rm * ss * e(-phi),
        rp * sc * e(-(phi + phi0)),
        //
        rp * cc * e(phi0), -sc * e(phi0 - phi) - rm * cs, rp * cs, -ss * e(-phi) + rm * cc * e(-phi0),
        //
        -ss * e(phi) + rm * cc * e(phi0), rp * cs, sc * e(phi - phi0) + rm * cs, -rp * cc * e(-phi0),
        //
        rp * sc * e(phi + phi0), cc * e(phi0) - rm * ss * e(phi), rp * ss * e(phi),
        cs + rm * sc * e(phi - phi0);
    return {t, u};
}

KrausPair kraus_general(const PathSpec& path, const WGauge& w, const VGauge& v, double t) {
    const KrausPair base = kraus_tilde(path, t);
    const CMat2 wm = w.at(t);
    const CMat2 vm = v.at(t);
    require_commuting(path, vm, t);
    return {(wm(0, 0) * base.m0 + wm(0, 1) * base.m1) * vm,
            (wm(1, 0) * base.m0 + wm(1, 1) * base.m1) * vm};
}

DilationSample dilation_general(const PathSpec& path, const WGauge& w, const VGauge& v, double t) {
    DilationSample s = dilation_tilde(path, t);
    if (w.is_identity() && v.is_identity()) return s;
    const CMat2 wm = w.at(t);
    const CMat2 vm = v.at(t);
    require_commuting(path, vm, t);
    s.u_ab = kron(CMat2::Identity(), wm) * s.u_ab * kron(vm, CMat2::Identity());
    return s;
}

KrausPair kraus_from_dilation(const CMat4& u) {
    KrausPair k;
    for (int a_out = 0; a_out < 2; ++a_out)
        for (int a_in = 0; a_in < 2; ++a_in) {
            k.m0(a_out, a_in) = u(2 * a_out + 0, 2 * a_in);
            k.m1(a_out, a_in) = u(2 * a_out + 1, 2 * a_in);
        }
    return k;
}

GeneratorEstimate<CMat4> h_ab_numeric(const PathSpec& path, const WGauge& w, const VGauge& v,
                                      double t, DifferentiationOptions opts) {
    require_in_domain(path, t, "h_ab_numeric");
    const double h = opts.h > 0.0 ? opts.h : tol::kUnitaryStepRelative * path.tau();
    auto u_of = [&](double s) -> CMat4 { return dilation_general(path, w, v, s).u_ab; };
    CMat4 du = derivative(u_of, t, h, 0.0, path.tau());
    if (opts.richardson) {
        CMat4 du_half = derivative(u_of, t, 0.5 * h, 0.0, path.tau());
        du = (4.0 * du_half - du) / 3.0;
    }
    CMat4 raw = kI * du * u_of(t).adjoint();
    return {hermitize(raw), hermiticity_defect(raw)};
}

CMat4 preparation_kick(const PathSpec& path, const WGauge& w, const VGauge& v) {
    return dilation_general(path, w, v, 0.0).u_ab;
}

CMat4 shrink_generator() {
    return kron(pauli::x(), pauli::y()) - kron(pauli::y(), pauli::x());
}

CMat4 shrink_h_ab(const Coordinate& r, double t, double h) {
    if (!(h > 0.0)) throw Error(ErrorCode::DomainError, "shrink_h_ab: step must be positive");
    const double lo = 0.0;
    const double hi = std::numeric_limits<double>::infinity();
    const double rv = r.value(t);
    if (rv < -tol::kRangeSlack || rv > 1.0 + tol::kRangeSlack) {
        std::ostringstream msg;
        msg << "shrink_h_ab: r(" << t << ") = " << rv << " outside [0, 1]";
        throw Error(ErrorCode::DomainError, msg.str());
    }
    const double rate = r.rate ? r.rate(t) : derivative(r.value, t, h, lo, hi);
    const double gap = (1.0 - rv) * (1.0 + rv);

    double coefficient;
    if (gap <= 1e-14) {
        // Only the quiet start r' = 0 has a finite limit; use the second
        // derivative: r' ~ r'' t and sqrt(1 - r^2) ~ sqrt(-r'') t.
        constexpr double kRateZero = 1e-7;
        if (std::abs(rate) > kRateZero) {
            std::ostringstream msg;
            msg << "shrink_h_ab: r(" << t << ") = 1 with r' = " << rate
                << "; the coefficient r'/(4 sqrt(1 - r^2)) diverges";
            throw Error(ErrorCode::SingularShrinkStart, msg.str());
        }
        const double hs = std::max(h, 1e-4);
        double curvature;
        if (r.rate) {
            curvature = derivative(r.rate, t, hs, lo, hi);
        } else {
            double f0 = r.value(t), f1 = r.value(t + hs), f2 = r.value(t + 2 * hs),
                   f3 = r.value(t + 3 * hs);
            curvature = (2 * f0 - 5 * f1 + 4 * f2 - f3) / (hs * hs);
        }
        coefficient = -std::sqrt(std::max(-curvature, 0.0)) / 4.0;
    } else {
        coefficient = rate / (4.0 * std::sqrt(gap));
    }
    return coefficient * shrink_generator();
}

}  // namespace hamsynth
