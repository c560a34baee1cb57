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

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hamsynth/linalg.hpp"

namespace hamsynth {

using ScalarFn = std::function<double(double)>;

enum class PathKind { Unitary, Open };

/// A trajectory coordinate and, when known, its analytic time derivative.
struct Coordinate {
    ScalarFn value;
    ScalarFn rate;  // empty if no analytic derivative is supplied
};

struct BlochPoint {
    double r;
    double theta;
    double phi;
};

struct BlochRates {
    double dr;
    double dtheta;
    double dphi;
};

/// Uniform partition of [0, tau] into n intervals (n+1 nodes).
class TimeGrid {
public:
    TimeGrid(int n, double tau);

    int intervals() const { return n_; }
    std::size_t nodes() const { return static_cast<std::size_t>(n_) + 1; }
    double tau() const { return tau_; }
    double step() const { return tau_ / n_; }
    double at(std::size_t i) const;
    std::vector<double> points() const;

private:
    int n_;
    double tau_;
};

/// Prescribed Bloch trajectory (r(t), theta(t), phi(t)) on [0, tau].
///
/// phi is taken unwrapped; it may leave [0, 2pi]. The constructor samples the
/// trajectory on 513 nodes and rejects r outside [0,1], theta outside [0,pi],
/// and (for PathKind::Unitary) any drift of r away from r(0).
class PathSpec {
public:
    using Params = std::map<std::string, double>;

    PathSpec(Coordinate r, Coordinate theta, Coordinate phi, double tau,
             PathKind kind, std::string family = "custom", Params params = {});

    double tau() const { return tau_; }
    PathKind kind() const { return kind_; }
    const std::string& family() const { return family_; }
    const Params& params() const { return params_; }

    BlochPoint at(double t) const;
    BlochPoint initial() const { return initial_; }

    /// Finite-difference step used when no analytic rate exists: tau * 1e-6
    /// unless overridden.
    double default_step() const { return step_; }
    void set_default_step(double h);

    bool has_analytic_rates() const;

    const Coordinate& r() const { return r_; }
    const Coordinate& theta() const { return theta_; }
    const Coordinate& phi() const { return phi_; }

private:
    Coordinate r_, theta_, phi_;
    double tau_;
    PathKind kind_;
    std::string family_;
    Params params_;
    BlochPoint initial_{};
    double step_;
};

/// Weights and projectors of rho(0) = w1 rho1(0) + w2 rho2(0).
struct SpectralInit {
    double w1;
    double w2;
    CMat2 rho1_0;
    CMat2 rho2_0;
    static constexpr int delta1 = 1;
    static constexpr int delta2 = -1;

    const CMat2& projector(int k) const { return k == 1 ? rho1_0 : rho2_0; }
    double weight(int k) const { return k == 1 ? w1 : w2; }
};

/// rho = 1/2 [[1 + r cos(theta), r sin(theta) e^{-i phi}], [c.c., 1 - r cos(theta)]].
CMat2 density_matrix(const BlochPoint& p);

/// Throws DomainError if t is outside [0, tau].
CMat2 rho_of_t(const PathSpec& path, double t);
CMat2 rho0(const PathSpec& path);

/// Analytic rates where the path provides them, otherwise central differences
/// with step h (one-sided at the ends of [0, tau]).
BlochRates derivatives_at(const PathSpec& path, double t, double h);
BlochRates derivatives_at(const PathSpec& path, double t);

/// Throws DegenerateInitialState when r0 <= 1e-12.
SpectralInit spectral_init(const PathSpec& path);

/// Projector (1 + delta n.sigma)/2 on the Bloch direction (theta, phi).
CMat2 direction_projector(double theta, double phi, int delta);

/// Extracts (r, theta, phi) from a density matrix; phi in (-pi, pi].
BlochPoint bloch_coordinates(const CMat2& rho);

void require_in_domain(const PathSpec& path, double t, const char* context);

// Built-in trajectories.

/// theta = theta0, phi = omega t, r = r0 over one period tau = 2 pi / omega.
PathSpec family_circle(double r0, double theta0, double omega);
PathSpec family_circle(double r0, double theta0, double omega, double tau);

/// r = (cos^2 wt + 4 sin^2 wt)^(-1/2), theta = pi/2, phi = w t; traces the
/// ellipse r_x^2 + 4 r_y^2 = 1 in the equatorial plane. Default tau = 2 pi / omega.
PathSpec family_ellipse(double omega);
PathSpec family_ellipse(double omega, double tau);

/// theta = theta0 = 0, phi = 0, r(t) with r(0) = 1, r(t) <= 1.
PathSpec family_shrink(Coordinate r, double tau);

struct PathSample {
    double t, r, theta, phi;
};

/// Natural cubic spline interpolation of a sampled trajectory. The table must
/// start at t = 0 and be strictly increasing in t. phi is unwrapped on load
/// (jumps larger than pi are taken as 2 pi wraps). PathKind::Unitary is
/// chosen when r is constant within 1e-12 on the samples.
PathSpec family_sampled(std::vector<PathSample> table);

/// Reads a `t,r,theta,phi` CSV.
std::vector<PathSample> read_path_csv(const std::filesystem::path& file);
void write_path_csv(const std::filesystem::path& file, const PathSpec& path,
                    const TimeGrid& grid);

}  // namespace hamsynth
