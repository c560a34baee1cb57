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

#include "hamsynth/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hamsynth/errors.hpp"
#include "hamsynth/geomphase.hpp"
#include "hamsynth/tolerances.hpp"

namespace hamsynth {

namespace {

CMat2 ancilla_ground() {
    CMat2 p = CMat2::Zero();
    p(0, 0) = 1.0;
    return p;
}

template <typename M, typename HFn, typename Reduce>
PropagationResult propagate(const HFn& h_fn, const M& u0, const M& state0, const TimeGrid& grid,
                            const StateFn& reference, Reduce reduce) {
    PropagationResult out{grid, {}, 0.0, 0.0, 0.0};
    out.states.reserve(grid.nodes());
    M u = u0;
    M state = state0;
    auto record = [&](double t) {
        CMat2 reduced = reduce(state);
        if (reference)
            out.max_trace_distance =
                std::max(out.max_trace_distance, trace_distance(reduced, reference(t)));
        out.states.push_back(reduced);
    };
    record(0.0);
    for (std::size_t j = 0; j + 1 < grid.nodes(); ++j) {
        const double t0 = grid.at(j), t1 = grid.at(j + 1);
        const double tm = 0.5 * (t0 + t1);
        const M h = h_fn(tm);
        out.max_hermiticity_defect = std::max(out.max_hermiticity_defect, hermiticity_defect(h));
        try {
            u = expm_skew(h, t1 - t0) * u;
        } catch (const Error& e) {
            std::ostringstream msg;
            msg << "propagation at t = " << tm << ": " << e.what();
            throw Error(e.code(), msg.str());
        }
        out.max_unitarity_defect = std::max(out.max_unitarity_defect, unitarity_defect(u));
        state = u * state0 * u.adjoint();
        record(t1);
    }
    return out;
}

}  // namespace

PropagationResult propagate_closed(const HamiltonianFn2& h_fn, const CMat2& rho0,
                                   const TimeGrid& grid, const StateFn& reference) {
    return propagate<CMat2>(h_fn, CMat2::Identity(), rho0, grid, reference,
                            [](const CMat2& s) { return s; });
}

PropagationResult propagate_combined(const HamiltonianFn4& h_ab_fn, const CMat4& kick,
                                     const CMat2& rho0, const TimeGrid& grid,
                                     const StateFn& reference) {
    if (!(unitarity_defect(kick) <= tol::kAnalytic))
        throw Error(ErrorCode::DomainError, "propagate_combined: preparation kick is not unitary");
    const CMat4 start = kick * kron(rho0, ancilla_ground()) * kick.adjoint();
    return propagate<CMat4>(h_ab_fn, CMat4::Identity(), start, grid, reference,
                            [](const CMat4& s) { return partial_trace_b(s); });
}

double max_trajectory_distance(const PropagationResult& a, const PropagationResult& b) {
    if (a.states.size() != b.states.size())
        throw Error(ErrorCode::DomainError, "trajectories have different lengths");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.states.size(); ++i)
        worst = std::max(worst, trace_distance(a.states[i], b.states[i]));
    return worst;
}

PropagationResult richardson(const PropagationResult& coarse, const PropagationResult& fine) {
    if (fine.grid.intervals() != 2 * coarse.grid.intervals() || fine.grid.tau() != coarse.grid.tau())
        throw Error(ErrorCode::DomainError, "richardson: fine grid must halve the coarse step");
    PropagationResult out = coarse;
    for (std::size_t i = 0; i < coarse.states.size(); ++i)
        out.states[i] = (4.0 * fine.states[2 * i] - coarse.states[i]) / 3.0;
    out.max_trace_distance = 0.0;
    return out;
}

const Check* VerificationReport::find(std::string_view name) const {
    auto it = std::find_if(checks_.begin(), checks_.end(),
                           [&](const Check& c) { return c.name == name; });
    return it == checks_.end() ? nullptr : &*it;
}

bool VerificationReport::overall_pass() const {
    return !checks_.empty() &&
           std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : checks_) {
        nlohmann::json j;
        j["name"] = c.name;
        j["residual"] = c.residual ? nlohmann::json(*c.residual) : nlohmann::json(nullptr);
        j["tolerance"] = c.tolerance;
        j["pass"] = c.pass;
        if (!c.error.empty()) j["error"] = c.error;
        if (!c.message.empty()) j["message"] = c.message;
        checks.push_back(std::move(j));
    }
    return {{"checks", std::move(checks)},
            {"overall_pass", overall_pass()},
            {"provenance", provenance_},
            {"results", results_}};
}

std::string_view to_string(Synthesis s) noexcept {
    switch (s) {
        case Synthesis::UnitaryGeneral: return "unitary-general";
        case Synthesis::UnitaryParallel: return "unitary-parallel";
        case Synthesis::OpenDilation: return "open-dilation";
        case Synthesis::ShrinkClosedForm: return "shrink-closed-form";
    }
    return "unknown";
}

namespace {

/// Runs fn and records its residual; any exception becomes a failed entry.
template <typename Fn>
bool attempt(VerificationReport& report, std::string name, double tolerance, Fn&& fn) {
    Check c;
    c.name = std::move(name);
    c.tolerance = tolerance;
    try {
        double residual = fn();
        c.residual = residual;
        c.pass = std::isfinite(residual) && residual <= tolerance;
    } catch (const Error& e) {
        c.error = std::string(to_string(e.code()));
        c.message = e.what();
    } catch (const std::exception& e) {
        c.error = "exception";
        c.message = e.what();
    }
    bool ok = c.pass;
    report.add(std::move(c));
    return ok;
}

void fail(VerificationReport& report, std::string name, const Error& e) {
    Check c;
    c.name = std::move(name);
    c.error = std::string(to_string(e.code()));
    c.message = e.what();
    report.add(std::move(c));
}

template <typename Fn>
double max_over(const TimeGrid& grid, Fn&& fn) {
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.nodes(); ++i) worst = std::max(worst, fn(grid.at(i)));
    return worst;
}

void unitary_battery(VerificationReport& report, const PathSpec& path, Synthesis synthesis,
                     const ReportGauges& gauges, const TimeGrid& grid, const ReportOptions& opts) {
    SpectralInit init;
    try {
        if (path.kind() != PathKind::Unitary)
            throw Error(ErrorCode::KindMismatch, "closed synthesis requested for a varying-r path");
        init = spectral_init(path);
    } catch (const Error& e) {
        fail(report, "synthesis", e);
        return;
    }
    const CMat2 r0 = rho0(path);
    attempt(report, "spectral_reconstruction", tol::kAnalytic, [&] {
        return (init.w1 * init.rho1_0 + init.w2 * init.rho2_0 - r0).norm();
    });

    const bool parallel = synthesis == Synthesis::UnitaryParallel;
    const AlphaGauge gauge = parallel ? parallel_alphas(path, grid) : gauges.alpha;
    const AlphaGauge other = parallel ? AlphaGauge() : parallel_alphas(path, grid);
    const double h = opts.fd_step > 0.0 ? opts.fd_step : path.default_step();

    auto hamiltonian = [&](const AlphaGauge& g) {
        return [&path, &init, g, h, p = opts.perturbation](double t) {
            CMat2 m = h_general(path, init, g, t, h);
            if (p) m += *p;
            return m;
        };
    };

    attempt(report, "hamiltonian_hermiticity", tol::kAnalytic, [&] {
        return max_over(grid, [&](double t) {
            return hermiticity_defect(h_general(path, init, gauge, t, h));
        });
    });
    attempt(report, "unitarity", tol::kAnalytic, [&] {
        return max_over(grid, [&](double t) {
            return unitarity_defect(u_general(path, init, gauge, t));
        });
    });
    attempt(report, "analytic_reproduction", tol::kAnalytic, [&] {
        return max_over(grid, [&](double t) {
            const CMat2 u = u_general(path, init, gauge, t);
            return (u * r0 * u.adjoint() - rho_of_t(path, t)).norm();
        });
    });

    const int steps = opts.closed_steps > 0 ? opts.closed_steps : grid.intervals();
    const TimeGrid pgrid(steps, path.tau());
    auto reference = [&path](double t) { return rho_of_t(path, t); };
    std::optional<PropagationResult> primary;
    attempt(report, "realization", tol::kClosedRealization, [&] {
        primary = propagate_closed(hamiltonian(gauge), r0, pgrid, reference);
        report.results()["closed_steps"] = steps;
        return primary->max_trace_distance;
    });
    attempt(report, "gauge_invariance", tol::kClosedGaugeInvariance, [&] {
        if (!primary) throw Error(ErrorCode::DomainError, "realization propagation failed");
        // Both sides are extrapolated so the comparison sees the gauge, not
        // the stepper's h^2 error, which differs between gauges.
        const TimeGrid fine(2 * steps, path.tau());
        auto a = richardson(*primary, propagate_closed(hamiltonian(gauge), r0, fine));
        auto b = richardson(propagate_closed(hamiltonian(other), r0, pgrid),
                            propagate_closed(hamiltonian(other), r0, fine));
        return max_trajectory_distance(a, b);
    });

    if (parallel) {
        attempt(report, "parallel_transport", tol::kParallelTransport, [&] {
            return max_over(grid, [&](double t) {
                return std::max(std::abs(connection_k(path, init, gauge, t, 1)),
                                std::abs(connection_k(path, init, gauge, t, 2)));
            });
        });
    }

    const int phase_n = grid.intervals() + grid.intervals() % 2;
    const TimeGrid phase_grid(phase_n, path.tau());
    std::optional<double> gamma;
    attempt(report, "phase_gauge_independence", 1e-6, [&] {
        PhaseResult a = geometric_phase(path, init, gauge, phase_grid);
        PhaseResult b = geometric_phase(path, init, other, phase_grid);
        gamma = a.gamma;
        report.results()["gamma"] = a.gamma;
        report.results()["gamma_near_branch_cut"] = a.near_branch_cut;
        double d = std::abs(a.gamma - b.gamma);
        return std::min(d, 2 * std::numbers::pi - d);
    });
    if (path.family() == "circle") {
        attempt(report, "phase_closed_form", tol::kPhaseClosedForm, [&] {
            if (!gamma) throw Error(ErrorCode::UndefinedPhase, "geometric phase unavailable");
            const double ref = gamma_closed_form(path.params().at("r0"), path.params().at("theta0"));
            report.results()["gamma_closed_form"] = ref;
            return std::abs(*gamma - ref);
        });
    }
}

void open_battery(VerificationReport& report, const PathSpec& path, Synthesis synthesis,
                  const ReportGauges& gauges, const TimeGrid& grid, const ReportOptions& opts) {
    const CMat2 r0 = rho0(path);
    VGauge v;
    try {
        if (gauges.v) {
            v = *gauges.v;
        } else if (path.initial().r > tol::kDegenerateR0) {
            v = VGauge::from_alpha(spectral_init(path), gauges.alpha);
        }
        if (synthesis == Synthesis::ShrinkClosedForm) {
            if (path.family() != "shrink")
                throw Error(ErrorCode::KindMismatch, "closed-form shrink synthesis needs the shrink family");
            (void)shrink_h_ab(path.r(), 0.0, path.default_step());
        }
    } catch (const Error& e) {
        fail(report, "synthesis", e);
        return;
    }
    const WGauge& w = gauges.w;

    attempt(report, "completeness", tol::kAnalytic, [&] {
        return max_over(grid, [&](double t) {
            return kraus_general(path, w, v, t).completeness_defect();
        });
    });
    attempt(report, "dilation_unitarity", tol::kAnalytic, [&] {
        return max_over(grid, [&](double t) {
            return unitarity_defect(dilation_general(path, w, v, t).u_ab);
        });
    });
    attempt(report, "embedding", tol::kAnalytic, [&] {
        return max_over(grid, [&](double t) {
            KrausPair a = kraus_from_dilation(dilation_general(path, w, v, t).u_ab);
            KrausPair b = kraus_general(path, w, v, t);
            return std::max((a.m0 - b.m0).norm(), (a.m1 - b.m1).norm());
        });
    });
    const CMat4 start = kron(r0, ancilla_ground());
    attempt(report, "reduced_dynamics", tol::kAnalytic, [&] {
        return max_over(grid, [&](double t) {
            const CMat4 u = dilation_general(path, w, v, t).u_ab;
            return (partial_trace_b(u * start * u.adjoint()) - rho_of_t(path, t)).norm();
        });
    });
    CMat4 kick = CMat4::Identity();
    attempt(report, "kick_reduced_state", tol::kAnalytic, [&] {
        kick = preparation_kick(path, w, v);
        return (partial_trace_b(kick * start * kick.adjoint()) - r0).norm();
    });

    DifferentiationOptions dopts;
    dopts.h = opts.fd_step;
    auto perturb = [p = opts.perturbation](CMat4 m) {
        if (p) m += kron(*p, CMat2::Identity());
        return m;
    };
    HamiltonianFn4 h_fn;
    if (synthesis == Synthesis::ShrinkClosedForm) {
        const double h = opts.fd_step > 0.0 ? opts.fd_step : path.default_step();
        h_fn = [&path, h, perturb](double t) { return perturb(shrink_h_ab(path.r(), t, h)); };
        attempt(report, "closed_form_vs_numeric", tol::kFiniteDifferenceGenerator, [&] {
            return max_over(grid, [&](double t) {
                return (h_ab_numeric(path, WGauge(), VGauge(), t, dopts).h -
                        shrink_h_ab(path.r(), t, h))
                    .norm();
            });
        });
    } else {
        h_fn = [&path, &w, &v, dopts, perturb](double t) {
            return perturb(h_ab_numeric(path, w, v, t, dopts).h);
        };
        // Diagnostic only: U_ab has a kink wherever r touches 1 mid-path.
        try {
            report.results()["max_generator_skew_defect"] =
                max_over(grid, [&](double t) { return h_ab_numeric(path, w, v, t, dopts).skew_defect; });
        } catch (const Error&) {
        }
    }

    const int steps = opts.combined_steps > 0 ? opts.combined_steps : grid.intervals();
    const TimeGrid pgrid(steps, path.tau());
    auto reference = [&path](double t) { return rho_of_t(path, t); };
    std::optional<PropagationResult> primary;
    attempt(report, "realization", tol::kCombinedRealization, [&] {
        primary = propagate_combined(h_fn, kick, r0, pgrid, reference);
        report.results()["combined_steps"] = steps;
        return primary->max_trace_distance;
    });
    attempt(report, "gauge_invariance", tol::kCombinedGaugeInvariance, [&] {
        if (!primary) throw Error(ErrorCode::DomainError, "realization propagation failed");
        const WGauge w0;
        const VGauge v0;
        auto trivial = [&path, &w0, &v0, dopts, perturb](double t) {
            return perturb(h_ab_numeric(path, w0, v0, t, dopts).h);
        };
        return max_trajectory_distance(
            *primary, propagate_combined(trivial, preparation_kick(path, w0, v0), r0, pgrid));
    });
}

}  // namespace

VerificationReport run_report(const PathSpec& path, Synthesis synthesis, const ReportGauges& gauges,
                              const TimeGrid& grid, const ReportOptions& options) {
    VerificationReport report;
    auto& prov = report.provenance();
    prov["family"] = path.family();
    prov["params"] = path.params();
    prov["kind"] = path.kind() == PathKind::Unitary ? "unitary" : "open";
    prov["tau"] = path.tau();
    prov["synthesis"] = std::string(to_string(synthesis));
    prov["gauge"] = gauges.description;
    prov["grid_n"] = grid.intervals();
    prov["fd_step"] = options.fd_step > 0.0 ? options.fd_step : path.default_step();
    prov["stepper"] = "exponential-midpoint";
    prov["perturbed"] = options.perturbation.has_value();

    try {
        if (synthesis == Synthesis::UnitaryGeneral || synthesis == Synthesis::UnitaryParallel)
            unitary_battery(report, path, synthesis, gauges, grid, options);
        else
            open_battery(report, path, synthesis, gauges, grid, options);
    } catch (const Error& e) {
        fail(report, "internal", e);
    } catch (const std::exception& e) {
        Check c;
        c.name = "internal";
        c.error = "exception";
        c.message = e.what();
        report.add(std::move(c));
    }
    return report;
}

}  // namespace hamsynth
