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

#include "hamsynth/geomphase.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "hamsynth/errors.hpp"
#include "hamsynth/numdiff.hpp"
#include "hamsynth/tolerances.hpp"

namespace hamsynth {

using std::numbers::pi;

namespace {

void require_unitary_kind(const PathSpec& path, const char* context) {
    if (path.kind() != PathKind::Unitary)
        throw Error(ErrorCode::KindMismatch, std::string(context) + ": requires a constant-r path");
}

template <typename T>
T simpson_impl(std::span<const T> f, double h) {
    const std::size_t n = f.size() - 1;
    if (f.size() < 3 || n % 2 != 0)
        throw Error(ErrorCode::DomainError, "Simpson quadrature needs an even number of intervals");
    T odd{}, even{};
    for (std::size_t i = 1; i < n; i += 2) odd += f[i];
    for (std::size_t i = 2; i < n; i += 2) even += f[i];
    return (f.front() + f.back() + 4.0 * odd + 2.0 * even) * (h / 3.0);
}

}  // namespace

cplx simpson(std::span<const cplx> samples, double h) { return simpson_impl(samples, h); }
double simpson(std::span<const double> samples, double h) { return simpson_impl(samples, h); }

cplx connection_k(const PathSpec& path, const SpectralInit& init, const AlphaGauge& gauge,
                  double t, int k) {
    require_unitary_kind(path, "connection_k");
    if (k != 1 && k != 2) throw Error(ErrorCode::DomainError, "connection_k: k must be 1 or 2");
    require_in_domain(path, t, "connection_k");
    const CMat2& proj = init.projector(k);

    if (path.has_analytic_rates() && gauge.has_analytic_rates()) {
        // dU/dt = -i H~ U~ V + U~ dV/dt with dV/dt = sum_j i a_j' e^{i a_j} rho_j(0).
        const double h = path.default_step();
        const CMat2 ut = tilde_u(path, t);
        const CMat2 v = v_gauge(init, gauge, t);
        const CMat2 dv = kI * gauge.rate(1, t, h, path.tau()) *
                             std::exp(cplx(0.0, gauge.alpha(1, t))) * init.rho1_0 +
                         kI * gauge.rate(2, t, h, path.tau()) *
                             std::exp(cplx(0.0, gauge.alpha(2, t))) * init.rho2_0;
        const CMat2 u = ut * v;
        const CMat2 du = -kI * h_tilde(path, t) * u + ut * dv;
        return (proj * u.adjoint() * du).trace();
    }

    const double h = tol::kUnitaryStepRelative * path.tau();
    auto u_of = [&](double s) -> CMat2 { return u_general(path, init, gauge, s); };
    const CMat2 du = derivative(u_of, t, h, 0.0, path.tau());
    return (proj * u_of(t).adjoint() * du).trace();
}

AlphaGauge parallel_alphas(const PathSpec& path, const TimeGrid& grid) {
    require_unitary_kind(path, "parallel_alphas");
    struct Table {
        double step;
        std::vector<double> cumulative;
        std::function<double(double)> f;
    };
    auto table = std::make_shared<Table>();
    table->step = grid.step();
    table->f = [p = path](double t) {
        return 0.5 * std::cos(p.at(t).theta) * derivatives_at(p, t).dphi;
    };

    const auto& f = table->f;
    table->cumulative.resize(grid.nodes(), 0.0);
    for (std::size_t i = 0; i + 1 < grid.nodes(); ++i) {
        const double a = grid.at(i), b = grid.at(i + 1);
        table->cumulative[i + 1] =
            table->cumulative[i] + (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    }

    auto alpha1 = [table](double t) {
        const auto last = table->cumulative.size() - 1;
        auto i = static_cast<std::size_t>(std::clamp(std::floor(t / table->step), 0.0,
                                                     static_cast<double>(last)));
        const double a = static_cast<double>(i) * table->step;
        if (t == a) return table->cumulative[i];
        const auto& fn = table->f;
        return table->cumulative[i] + (t - a) / 6.0 * (fn(a) + 4.0 * fn(0.5 * (a + t)) + fn(t));
    };
    auto rate1 = [table](double t) { return table->f(t); };
    return AlphaGauge(alpha1, [alpha1](double t) { return -alpha1(t); }, rate1,
                      [rate1](double t) { return -rate1(t); });
}

PhaseResult geometric_phase(const PathSpec& path, const SpectralInit& init,
                            const AlphaGauge& gauge, const TimeGrid& grid) {
    require_unitary_kind(path, "geometric_phase");
    if (grid.intervals() % 2 != 0)
        throw Error(ErrorCode::DomainError, "geometric_phase: grid needs an even interval count");

    std::vector<cplx> c1(grid.nodes()), c2(grid.nodes());
    for (std::size_t i = 0; i < grid.nodes(); ++i) {
        const double t = grid.at(i);
        c1[i] = connection_k(path, init, gauge, t, 1);
        c2[i] = connection_k(path, init, gauge, t, 2);
    }

    PhaseResult out{};
    out.grid_n = grid.intervals();
    out.connection_integrals = {simpson(std::span<const cplx>(c1), grid.step()),
                                simpson(std::span<const cplx>(c2), grid.step())};

    const CMat2 u_end = u_general(path, init, gauge, grid.tau());
    cplx sum = 0.0;
    for (int k = 1; k <= 2; ++k) {
        sum += init.weight(k) * (init.projector(k) * u_end).trace() *
               std::exp(-out.connection_integrals[k - 1]);
    }
    out.trace_sum = sum;
    if (std::abs(sum) < tol::kUndefinedPhase)
        throw Error(ErrorCode::UndefinedPhase, "geometric_phase: trace sum vanishes");
    double g = std::arg(sum);
    if (g <= -pi) g = pi;
    out.gamma = g;
    out.near_branch_cut = pi - std::abs(g) < tol::kBranchCut;
    return out;
}

double gamma_closed_form(double r0, double theta0) {
    const double x = pi * (1.0 - std::cos(theta0));
    if (std::abs(std::cos(x)) < 1e-12) return r0 > 0.0 ? -pi / 2 : 0.0;
    return -std::atan(r0 * std::tan(x));
}

CMat2 h_parallel(const PathSpec& path, double t) {
    require_unitary_kind(path, "h_parallel");
    require_in_domain(path, t, "h_parallel");
    const BlochPoint p = path.at(t);
    const BlochRates d = derivatives_at(path, t);
    const double s = std::sin(p.theta), c = std::cos(p.theta);
    CMat2 h;
    h(0, 0) = 0.5 * d.dphi * s * s;
    h(1, 1) = -h(0, 0);
    h(0, 1) = 0.5 * cplx(-d.dphi * s * c, -d.dtheta) * std::exp(cplx(0.0, -p.phi));
    h(1, 0) = 0.5 * cplx(-d.dphi * s * c, d.dtheta) * std::exp(cplx(0.0, p.phi));
    return h;
}

CMat2 circle_h(double theta0, double omega, double t) {
    const double s = std::sin(theta0), c = std::cos(theta0);
    const double scale = 0.5 * omega * s;
    CMat2 h;
    h(0, 0) = scale * s;
    h(1, 1) = -scale * s;
    h(0, 1) = -scale * c * std::exp(cplx(0.0, -omega * t));
    h(1, 0) = -scale * c * std::exp(cplx(0.0, omega * t));
    return h;
}

}  // namespace hamsynth
