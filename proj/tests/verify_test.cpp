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

#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "hamsynth/geomphase.hpp"
#include "test_support.hpp"

using namespace hamsynth;
using std::numbers::pi;

namespace {

Coordinate constant(double v) {
    return {[v](double) { return v; }, [](double) { return 0.0; }};
}

}  // namespace

TEST(verify, propagate_closed_trivial_and_precession) {
    const CMat2 rho = density_matrix({0.8, 1.0, 0.4});
    const TimeGrid grid(200, 1.0);
    auto still = propagate_closed([](double) { return CMat2(CMat2::Zero()); }, rho, grid);
    ASSERT_EQ(still.states.size(), grid.nodes());
    for (const CMat2& s : still.states) EXPECT_LT((s - rho).norm(), 1e-15);

    const double omega = 1.0;
    const TimeGrid period(2000, 2 * pi / omega);
    const CMat2 plus = density_matrix({1.0, pi / 2, 0.0});
    auto spin = propagate_closed([&](double) { return CMat2(0.5 * omega * pauli::z()); }, plus, period);
    for (std::size_t i = 1; i + 1 < period.nodes(); ++i) {
        BlochPoint b = bloch_coordinates(spin.states[i]);
        EXPECT_NEAR(std::remainder(b.phi - omega * period.at(i), 2 * pi), 0.0, 1e-8);
    }
}

TEST(verify, closed_realization_converges_at_second_order) {
    std::mt19937_64 rng(51);
    for (int i = 0; i < 3; ++i) {
        PathSpec p = hamsynth::testing::random_unitary_path(rng);
        SpectralInit s = spectral_init(p);
        AlphaGauge g = hamsynth::testing::random_alpha(rng);
        auto h = [&](double t) { return h_general(p, s, g, t); };
        auto ref = [&](double t) { return rho_of_t(p, t); };
        double e1 = propagate_closed(h, rho0(p), TimeGrid(2000, p.tau()), ref).max_trace_distance;
        double e2 = propagate_closed(h, rho0(p), TimeGrid(4000, p.tau()), ref).max_trace_distance;
        EXPECT_LT(e1, 1e-6);
        EXPECT_GT(e1 / e2, 3.5);
        EXPECT_LT(e1 / e2, 4.5);
    }
}

TEST(verify, propagate_combined_trivial_and_ellipse) {
    const CMat2 rho = density_matrix({0.5, 2.0, 1.0});
    auto still = propagate_combined([](double) { return CMat4(CMat4::Zero()); }, CMat4::Identity(), rho,
                                    TimeGrid(50, 1.0));
    for (const CMat2& s : still.states) EXPECT_LT((s - rho).norm(), 1e-15);

    PathSpec e = family_ellipse(1.0);
    auto h = [&](double t) { return h_ab_numeric(e, WGauge{}, VGauge{}, t).h; };
    auto res = propagate_combined(h, preparation_kick(e, WGauge{}, VGauge{}), rho0(e), TimeGrid(4000, e.tau()),
                                  [&](double t) { return rho_of_t(e, t); });
    EXPECT_LT(res.max_trace_distance, 1e-5);
    EXPECT_LT(res.max_unitarity_defect, 1e-10);
}

TEST(verify, random_open_path_through_dilation) {
    std::mt19937_64 rng(52);
    PathSpec p = hamsynth::testing::random_open_path(rng);
    WGauge w = hamsynth::testing::random_w(rng);
    VGauge v = VGauge::from_alpha(spectral_init(p), hamsynth::testing::random_alpha(rng));
    auto h = [&](double t) { return h_ab_numeric(p, w, v, t).h; };
    auto res = propagate_combined(h, preparation_kick(p, w, v), rho0(p), TimeGrid(4000, p.tau()),
                                  [&](double t) { return rho_of_t(p, t); });
    EXPECT_LT(res.max_trace_distance, 1e-5);
}

TEST(verify, report_for_circle_with_parallel_gauge) {
    PathSpec c = family_circle(0.5, std::acos(2.0 / 3.0), 1.0);
    VerificationReport r = run_report(c, Synthesis::UnitaryParallel, {}, TimeGrid(2000, c.tau()));
    for (const Check& k : r.checks()) EXPECT_TRUE(k.pass) << k.name << " " << k.error;
    EXPECT_TRUE(r.overall_pass());
    ASSERT_NE(r.find("phase_closed_form"), nullptr);
    EXPECT_NEAR(r.results()["gamma"].get<double>(), -0.7137243789, 1e-4);
    ASSERT_NE(r.find("parallel_transport"), nullptr);

    nlohmann::json j = r.to_json();
    for (const char* key : {"checks", "overall_pass", "provenance", "results"}) EXPECT_TRUE(j.contains(key));
    EXPECT_EQ(j["provenance"]["grid_n"], 2000);
    EXPECT_EQ(j["provenance"]["stepper"], "exponential-midpoint");
}

TEST(verify, fault_injection_is_detected) {
    PathSpec c = family_circle(0.5, std::acos(2.0 / 3.0), 1.0);
    ReportOptions opts;
    opts.perturbation = CMat2(1e-3 * pauli::x());
    VerificationReport r = run_report(c, Synthesis::UnitaryParallel, {}, TimeGrid(2000, c.tau()), opts);
    const Check* real = r.find("realization");
    ASSERT_NE(real, nullptr);
    EXPECT_FALSE(real->pass);
    ASSERT_TRUE(real->residual.has_value());
    EXPECT_GT(*real->residual, 1e-4);
    EXPECT_FALSE(r.overall_pass());
}

TEST(verify, structured_failures) {
    PathSpec mixed(constant(0.0), constant(1.0), constant(0.0), 1.0, PathKind::Unitary);
    VerificationReport r = run_report(mixed, Synthesis::UnitaryGeneral, {}, TimeGrid(100, 1.0));
    const Check* syn = r.find("synthesis");
    ASSERT_NE(syn, nullptr);
    EXPECT_FALSE(syn->pass);
    EXPECT_EQ(syn->error, "DegenerateInitialState");
    EXPECT_FALSE(r.overall_pass());

    PathSpec steep = family_shrink({[](double t) { return 1 - t; }, [](double) { return -1.0; }}, 0.5);
    VerificationReport s = run_report(steep, Synthesis::ShrinkClosedForm, {}, TimeGrid(100, 0.5));
    const Check* sing = s.find("synthesis");
    ASSERT_NE(sing, nullptr);
    EXPECT_EQ(sing->error, "SingularShrinkStart");
    EXPECT_FALSE(s.overall_pass());

    VerificationReport k = run_report(family_ellipse(1.0), Synthesis::UnitaryGeneral, {}, TimeGrid(100, pi));
    ASSERT_NE(k.find("synthesis"), nullptr);
    EXPECT_EQ(k.find("synthesis")->error, "KindMismatch");
}

TEST(verify, report_for_shrink_and_ellipse) {
    PathSpec shrink = family_shrink({[](double t) { return 1 - t * t; }, [](double t) { return -2 * t; }}, 0.9);
    VerificationReport s = run_report(shrink, Synthesis::ShrinkClosedForm, {}, TimeGrid(4000, 0.9));
    for (const Check& k : s.checks()) EXPECT_TRUE(k.pass) << k.name << " " << k.error;

    PathSpec e = family_ellipse(1.0);
    VerificationReport r = run_report(e, Synthesis::OpenDilation, {}, TimeGrid(4000, e.tau()));
    for (const Check& k : r.checks()) EXPECT_TRUE(k.pass) << k.name << " " << k.error;
    EXPECT_TRUE(r.overall_pass());
}
