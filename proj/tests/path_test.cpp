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

#include "hamsynth/path.hpp"

#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "hamsynth/errors.hpp"
#include "hamsynth/spline.hpp"
#include "test_support.hpp"

using namespace hamsynth;
using std::numbers::pi;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::IoError;
}

PathSpec static_path(double r, double theta, double phi) {
    auto c = [](double v) { return Coordinate{[v](double) { return v; }, [](double) { return 0.0; }}; };
    return PathSpec(c(r), c(theta), c(phi), 1.0, PathKind::Unitary);
}

std::filesystem::path temp_file(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "hamsynth_path_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(path, rho_of_t_examples) {
    CMat2 north = rho_of_t(static_path(1.0, 0.0, 1.234), 0.5);
    EXPECT_LT((north - CMat2{{1.0, 0.0}, {0.0, 0.0}}).norm(), 1e-15);
    EXPECT_LT((rho_of_t(static_path(0.0, 1.0, 2.0), 0.0) - 0.5 * CMat2::Identity()).norm(), 1e-15);
    CMat2 eq = rho_of_t(static_path(1.0, pi / 2, 0.0), 1.0);
    EXPECT_LT((eq - CMat2{{0.5, 0.5}, {0.5, 0.5}}).norm(), 1e-15);
}

TEST(path, rho_of_t_rejects_times_outside_domain) {
    PathSpec p = static_path(0.5, 1.0, 0.0);
    EXPECT_EQ(code_of([&] { (void)rho_of_t(p, -1e-9); }), ErrorCode::DomainError);
    EXPECT_EQ(code_of([&] { (void)rho_of_t(p, 1.0 + 1e-9); }), ErrorCode::DomainError);
}

TEST(path, rho0_examples) {
    PathSpec circle = family_circle(0.5, std::acos(2.0 / 3.0), 1.0);
    const double s = std::sqrt(5.0) / 3.0;
    CMat2 expected{{0.5 * (1 + 1.0 / 3), 0.5 * 0.5 * s}, {0.5 * 0.5 * s, 0.5 * (1 - 1.0 / 3)}};
    EXPECT_LT((rho0(circle) - expected).norm(), 1e-15);
    EXPECT_LT((rho0(static_path(1.0, pi / 2, 0.0)) - CMat2{{0.5, 0.5}, {0.5, 0.5}}).norm(), 1e-15);
    EXPECT_LT((rho0(static_path(0.0, 0.3, 0.1)) - 0.5 * CMat2::Identity()).norm(), 1e-15);
}

TEST(path, density_matrix_validity_and_bloch_round_trip) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        BlochPoint p{u(rng), 1e-3 + (pi - 2e-3) * u(rng), -pi + 2 * pi * u(rng)};
        CMat2 rho = density_matrix(p);
        EXPECT_LT(hermiticity_defect(rho), 1e-13);
        EXPECT_NEAR(rho.trace().real(), 1.0, 1e-13);
        EXPECT_GE(eigenvalues_hermitian(rho)[0], -1e-12);
        if (p.r < 1e-3) continue;
        BlochPoint back = bloch_coordinates(rho);
        EXPECT_NEAR(back.r, p.r, 1e-10);
        EXPECT_NEAR(back.theta, p.theta, 1e-10 / p.r + 1e-10);
        EXPECT_NEAR(std::remainder(back.phi - p.phi, 2 * pi), 0.0, 1e-9 / (p.r * std::sin(p.theta)));
    }
}

TEST(path, derivatives_analytic_and_finite_difference) {
    const double omega = 1.7;
    PathSpec analytic = family_circle(0.5, 1.0, omega);
    EXPECT_EQ(derivatives_at(analytic, 0.3, 1e-3).dphi, omega);

    auto constant = [](double v) { return Coordinate{[v](double) { return v; }, {}}; };
    PathSpec linear(constant(0.5), constant(1.0), Coordinate{[omega](double t) { return omega * t; }, {}}, 2.0,
                    PathKind::Unitary);
    for (double h : {1e-2, 0.1, 0.5})
        for (double t : {0.0, 0.7, 2.0}) EXPECT_NEAR(derivatives_at(linear, t, h).dphi, omega, 1e-12);

    PathSpec wave(constant(0.5), Coordinate{[](double t) { return 1.5 + std::sin(t); }, {}}, constant(0.0), 2.0,
                  PathKind::Unitary);
    EXPECT_NEAR(derivatives_at(wave, 0.3, 1e-4).dtheta, std::cos(0.3), 1e-8);
    // One-sided second-order stencils at both ends.
    EXPECT_NEAR(derivatives_at(wave, 0.0, 1e-4).dtheta, 1.0, 1e-7);
    EXPECT_NEAR(derivatives_at(wave, 2.0, 1e-4).dtheta, std::cos(2.0), 1e-7);
    // Default step is tau * 1e-6.
    EXPECT_DOUBLE_EQ(wave.default_step(), 2e-6);
}

TEST(path, spectral_init_examples) {
    SpectralInit polar = spectral_init(static_path(0.5, 0.0, 0.0));
    EXPECT_DOUBLE_EQ(polar.w1, 0.75);
    EXPECT_DOUBLE_EQ(polar.w2, 0.25);
    EXPECT_LT((polar.rho1_0 - CMat2{{1.0, 0.0}, {0.0, 0.0}}).norm(), 1e-15);
    EXPECT_LT((polar.rho2_0 - CMat2{{0.0, 0.0}, {0.0, 1.0}}).norm(), 1e-15);

    SpectralInit eq = spectral_init(static_path(1.0, pi / 2, 0.0));
    EXPECT_DOUBLE_EQ(eq.w1, 1.0);
    EXPECT_DOUBLE_EQ(eq.w2, 0.0);
    EXPECT_LT((eq.rho1_0 - CMat2{{0.5, 0.5}, {0.5, 0.5}}).norm(), 1e-15);
    EXPECT_LT((eq.rho2_0 - CMat2{{0.5, -0.5}, {-0.5, 0.5}}).norm(), 1e-15);

    EXPECT_EQ(code_of([] { (void)spectral_init(static_path(0.0, 1.0, 1.0)); }),
              ErrorCode::DegenerateInitialState);
}

TEST(path, spectral_init_invariants) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 50; ++i) {
        PathSpec p = hamsynth::testing::random_unitary_path(rng, 1.0, 0.01, 1.0);
        SpectralInit s = spectral_init(p);
        EXPECT_NEAR(s.w1 + s.w2, 1.0, 1e-15);
        EXPECT_LT((s.rho1_0 + s.rho2_0 - CMat2::Identity()).norm(), 1e-12);
        EXPECT_LT((s.rho1_0 * s.rho1_0 - s.rho1_0).norm(), 1e-12);
        EXPECT_LT((s.rho2_0 * s.rho2_0 - s.rho2_0).norm(), 1e-12);
        EXPECT_LT(std::abs((s.rho1_0 * s.rho2_0).trace()), 1e-12);
        EXPECT_LT((s.w1 * s.rho1_0 + s.w2 * s.rho2_0 - rho0(p)).norm(), 1e-13);
    }
}

TEST(path, families) {
    const double theta0 = std::acos(2.0 / 3.0);
    PathSpec circle = family_circle(0.5, theta0, 1.0);
    BlochPoint c0 = circle.at(0.0);
    EXPECT_EQ(c0.r, 0.5);
    EXPECT_EQ(c0.theta, theta0);
    EXPECT_EQ(c0.phi, 0.0);
    EXPECT_NEAR(circle.tau(), 2 * pi, 1e-15);
    EXPECT_EQ(circle.kind(), PathKind::Unitary);

    const double omega = 1.3;
    PathSpec ellipse = family_ellipse(omega);
    EXPECT_NEAR(ellipse.at(pi / (2 * omega)).r, 0.5, 1e-15);
    EXPECT_EQ(ellipse.kind(), PathKind::Open);
    const TimeGrid grid(1000, ellipse.tau());
    for (double t : grid.points()) {
        Vec3 b = bloch_vector(rho_of_t(ellipse, t));
        EXPECT_NEAR(b[0] * b[0] + 4 * b[1] * b[1], 1.0, 1e-12);
        EXPECT_NEAR(b[2], 0.0, 1e-15);
        // analytic r' against a central difference
        if (t > 1e-3 && t < ellipse.tau() - 1e-3) {
            double fd = (ellipse.r().value(t + 1e-6) - ellipse.r().value(t - 1e-6)) / 2e-6;
            EXPECT_NEAR(ellipse.r().rate(t), fd, 1e-8);
        }
    }

    PathSpec shrink = family_shrink({[](double t) { return 1 - t * t; }, [](double t) { return -2 * t; }}, 0.9);
    EXPECT_EQ(shrink.at(0.0).r, 1.0);
    EXPECT_EQ(derivatives_at(shrink, 0.0).dr, 0.0);
}

TEST(path, invalid_parameters) {
    EXPECT_EQ(code_of([] { (void)family_circle(1.2, 1.0, 1.0); }), ErrorCode::InvalidFamilyParameter);
    EXPECT_EQ(code_of([] { (void)family_circle(0.5, 4.0, 1.0); }), ErrorCode::InvalidFamilyParameter);
    EXPECT_EQ(code_of([] { (void)family_circle(0.5, 1.0, 0.0); }), ErrorCode::InvalidFamilyParameter);
    EXPECT_EQ(code_of([] { (void)family_ellipse(-1.0); }), ErrorCode::InvalidFamilyParameter);
    EXPECT_EQ(code_of([] { (void)family_shrink({[](double t) { return 0.9 - t; }, {}}, 0.5); }),
              ErrorCode::InvalidFamilyParameter);
    // r leaves [0, 1]
    EXPECT_EQ(code_of([] { (void)family_shrink({[](double t) { return 1 + t; }, {}}, 0.5); }),
              ErrorCode::InvalidFamilyParameter);
    // unitary kind with varying r
    auto c = [](double v) { return Coordinate{[v](double) { return v; }, {}}; };
    EXPECT_EQ(code_of([&] {
                  (void)PathSpec({[](double t) { return 0.5 + 0.1 * t; }, {}}, c(1.0), c(0.0), 1.0,
                                 PathKind::Unitary);
              }),
              ErrorCode::InvalidFamilyParameter);
}

TEST(path, time_grid) {
    TimeGrid g(7, 2.5);
    EXPECT_EQ(g.nodes(), 8u);
    EXPECT_EQ(g.at(0), 0.0);
    EXPECT_EQ(g.at(7), 2.5);
    auto pts = g.points();
    for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_GT(pts[i], pts[i - 1]);
    EXPECT_THROW(TimeGrid(0, 1.0), Error);
    EXPECT_THROW(TimeGrid(4, 0.0), Error);
}

TEST(spline, natural_cubic) {
    std::vector<double> x, lin, s;
    for (int i = 0; i <= 200; ++i) {
        double t = 0.01 * i * i / 20.0;  // non-uniform spacing
        x.push_back(t);
        lin.push_back(3.0 * t - 1.0);
        s.push_back(std::sin(t));
    }
    NaturalCubicSpline line(x, lin);
    for (double t : {0.0, 0.123, 1.0, 19.9}) {
        EXPECT_NEAR(line.value(t), 3 * t - 1, 1e-12);
        EXPECT_NEAR(line.derivative(t), 3.0, 1e-12);
        EXPECT_NEAR(line.second_derivative(t), 0.0, 1e-10);
    }
    NaturalCubicSpline wave(x, s);
    for (int i = 0; i < 100; ++i) {
        double t = 2.0 + 0.15 * i;
        EXPECT_NEAR(wave.value(t), std::sin(t), 5e-5);
        EXPECT_NEAR(wave.derivative(t), std::cos(t), 5e-4);
    }
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(wave.value(x[i]), s[i], 1e-14);
    std::vector<double> bad{0.0, 1.0, 1.0};
    EXPECT_THROW(NaturalCubicSpline(bad, bad), Error);
}

TEST(path, sampled_round_trip_through_csv) {
    PathSpec circle = family_circle(0.5, std::acos(2.0 / 3.0), 1.0);
    auto file = temp_file("circle.csv");
    write_path_csv(file, circle, TimeGrid(400, circle.tau()));
    PathSpec sampled = family_sampled(read_path_csv(file));
    EXPECT_EQ(sampled.kind(), PathKind::Unitary);
    EXPECT_NEAR(sampled.tau(), circle.tau(), 1e-15);
    for (double t : TimeGrid(37, circle.tau()).points()) {
        BlochPoint a = circle.at(t), b = sampled.at(t);
        EXPECT_NEAR(a.r, b.r, 1e-15);
        EXPECT_NEAR(a.theta, b.theta, 1e-12);
        EXPECT_NEAR(a.phi, b.phi, 1e-10);
        EXPECT_NEAR(sampled.phi().rate(t), 1.0, 1e-9);
    }
}

TEST(path, sampled_unwraps_phi_and_detects_open_kind) {
    std::vector<PathSample> rows;
    for (int i = 0; i <= 100; ++i) {
        double t = 0.1 * i;
        rows.push_back({t, 0.9 - 0.05 * t, 1.0, std::fmod(2.0 * t, 2 * pi)});
    }
    PathSpec p = family_sampled(rows);
    EXPECT_EQ(p.kind(), PathKind::Open);
    EXPECT_NEAR(p.at(10.0).phi, 20.0, 1e-9);
    EXPECT_NEAR(p.phi().rate(5.0), 2.0, 1e-9);
}

TEST(path, sampled_csv_validation) {
    auto write = [](const std::string& name, const std::string& body) {
        auto f = temp_file(name);
        std::ofstream(f) << body;
        return f;
    };
    EXPECT_EQ(code_of([&] { (void)read_path_csv(write("h.csv", "time,r,theta,phi\n0,1,0,0\n")); }),
              ErrorCode::InvalidFamilyParameter);
    EXPECT_EQ(code_of([&] { (void)read_path_csv(write("c.csv", "t,r,theta,phi\n0,1,0\n")); }),
              ErrorCode::InvalidFamilyParameter);
    EXPECT_EQ(code_of([&] { (void)read_path_csv(write("n.csv", "t,r,theta,phi\n0,1,x,0\n")); }),
              ErrorCode::InvalidFamilyParameter);
    EXPECT_EQ(code_of([&] { (void)read_path_csv(temp_file("missing.csv")); }), ErrorCode::IoError);
    EXPECT_EQ(code_of([&] { (void)family_sampled(read_path_csv(write("s.csv", "t,r,theta,phi\n0.1,1,0,0\n1,1,0,0\n"))); }),
              ErrorCode::InvalidFamilyParameter);
    EXPECT_EQ(code_of([&] { (void)family_sampled(read_path_csv(write("i.csv", "t,r,theta,phi\n0,1,0,0\n0,1,0,0\n"))); }),
              ErrorCode::InvalidFamilyParameter);
    EXPECT_EQ(code_of([&] { (void)family_sampled(read_path_csv(write("r.csv", "t,r,theta,phi\n0,1.5,0,0\n1,1,0,0\n"))); }),
              ErrorCode::InvalidFamilyParameter);
    auto ok = read_path_csv(write("ok.csv", "t,r,theta,phi\r\n0,0.5,1,0\r\n1,0.5,1,1\r\n"));
    ASSERT_EQ(ok.size(), 2u);
    EXPECT_EQ(ok[1].phi, 1.0);
}
