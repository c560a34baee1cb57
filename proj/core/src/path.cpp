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

#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <numbers>
#include <sstream>

#include "hamsynth/errors.hpp"
#include "hamsynth/numdiff.hpp"
#include "hamsynth/spline.hpp"
#include "hamsynth/tolerances.hpp"

namespace hamsynth {

using std::numbers::pi;

TimeGrid::TimeGrid(int n, double tau) : n_(n), tau_(tau) {
    if (n <= 0) throw Error(ErrorCode::DomainError, "time grid needs a positive interval count");
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw Error(ErrorCode::DomainError, "time grid needs a positive finite end time");
}

double TimeGrid::at(std::size_t i) const {
    if (i >= nodes()) throw Error(ErrorCode::DomainError, "time grid index out of range");
    // Last node is tau exactly.
    return i == static_cast<std::size_t>(n_) ? tau_ : tau_ * static_cast<double>(i) / n_;
}

std::vector<double> TimeGrid::points() const {
    std::vector<double> out(nodes());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i);
    return out;
}

namespace {

void check_point(const BlochPoint& p, double t) {
    std::ostringstream msg;
    if (!std::isfinite(p.r) || !std::isfinite(p.theta) || !std::isfinite(p.phi)) {
        msg << "path coordinates are not finite at t = " << t;
        throw Error(ErrorCode::InvalidFamilyParameter, msg.str());
    }
    if (p.r < -tol::kRangeSlack || p.r > 1.0 + tol::kRangeSlack) {
        msg << "r(t) = " << p.r << " outside [0, 1] at t = " << t;
        throw Error(ErrorCode::InvalidFamilyParameter, msg.str());
    }
    if (p.theta < -tol::kRangeSlack || p.theta > pi + tol::kRangeSlack) {
        msg << "theta(t) = " << p.theta << " outside [0, pi] at t = " << t;
        throw Error(ErrorCode::InvalidFamilyParameter, msg.str());
    }
}

}  // namespace

PathSpec::PathSpec(Coordinate r, Coordinate theta, Coordinate phi, double tau, PathKind kind,
                   std::string family, Params params)
    : r_(std::move(r)),
      theta_(std::move(theta)),
      phi_(std::move(phi)),
      tau_(tau),
      kind_(kind),
      family_(std::move(family)),
      params_(std::move(params)),
      step_(tau * tol::kPathStepRelative) {
    if (!r_.value || !theta_.value || !phi_.value)
        throw Error(ErrorCode::InvalidFamilyParameter, "path coordinates must all be set");
    if (!(tau_ > 0.0) || !std::isfinite(tau_))
        throw Error(ErrorCode::InvalidFamilyParameter, "path end time must be positive and finite");

    initial_ = at(0.0);
    constexpr int kSamples = 512;
    for (int i = 0; i <= kSamples; ++i) {
        double t = tau_ * i / kSamples;
        BlochPoint p = at(t);
        check_point(p, t);
        if (kind_ == PathKind::Unitary && std::abs(p.r - initial_.r) > tol::kConstantR) {
            std::ostringstream msg;
            msg << "unitary path has varying r: r(" << t << ") = " << p.r << " vs r0 = " << initial_.r;
            throw Error(ErrorCode::InvalidFamilyParameter, msg.str());
        }
    }
}

BlochPoint PathSpec::at(double t) const { return {r_.value(t), theta_.value(t), phi_.value(t)}; }

void PathSpec::set_default_step(double h) {
    if (!(h > 0.0)) throw Error(ErrorCode::DomainError, "finite-difference step must be positive");
    step_ = h;
}

bool PathSpec::has_analytic_rates() const {
    return bool(r_.rate) && bool(theta_.rate) && bool(phi_.rate);
}

CMat2 density_matrix(const BlochPoint& p) {
    double c = std::cos(p.theta);
    double s = std::sin(p.theta);
    CMat2 m;
    m(0, 0) = 0.5 * (1.0 + p.r * c);
    m(1, 1) = 0.5 * (1.0 - p.r * c);
    m(0, 1) = 0.5 * p.r * s * std::exp(cplx(0.0, -p.phi));
    m(1, 0) = 0.5 * p.r * s * std::exp(cplx(0.0, p.phi));
    return m;
}

void require_in_domain(const PathSpec& path, double t, const char* context) {
    if (!(t >= 0.0 && t <= path.tau())) {
        std::ostringstream msg;
        msg << context << ": t = " << t << " outside [0, " << path.tau() << "]";
        throw Error(ErrorCode::DomainError, msg.str());
    }
}

CMat2 rho_of_t(const PathSpec& path, double t) {
    require_in_domain(path, t, "rho_of_t");
    return density_matrix(path.at(t));
}

CMat2 rho0(const PathSpec& path) { return density_matrix(path.initial()); }

namespace {

double rate_of(const Coordinate& c, double t, double h, double tau) {
    if (c.rate) return c.rate(t);
    return derivative(c.value, t, h, 0.0, tau);
}

}  // namespace

BlochRates derivatives_at(const PathSpec& path, double t, double h) {
    if (!(h > 0.0)) throw Error(ErrorCode::DomainError, "finite-difference step must be positive");
    return {rate_of(path.r(), t, h, path.tau()), rate_of(path.theta(), t, h, path.tau()),
            rate_of(path.phi(), t, h, path.tau())};
}

BlochRates derivatives_at(const PathSpec& path, double t) {
    return derivatives_at(path, t, path.default_step());
}

CMat2 direction_projector(double theta, double phi, int delta) {
    return density_matrix({static_cast<double>(delta), theta, phi});
}

SpectralInit spectral_init(const PathSpec& path) {
    const BlochPoint p0 = path.initial();
    if (p0.r <= tol::kDegenerateR0)
        throw Error(ErrorCode::DegenerateInitialState,
                    "r0 = 0: the spectral decomposition of rho(0) is not unique");
    SpectralInit init;
    init.w1 = 0.5 * (1.0 + p0.r);
    init.w2 = 0.5 * (1.0 - p0.r);
    init.rho1_0 = direction_projector(p0.theta, p0.phi, SpectralInit::delta1);
    init.rho2_0 = direction_projector(p0.theta, p0.phi, SpectralInit::delta2);
    return init;
}

BlochPoint bloch_coordinates(const CMat2& rho) {
    Vec3 b = bloch_vector(rho);
    double r = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
    double theta = r > 0.0 ? std::acos(std::clamp(b[2] / r, -1.0, 1.0)) : 0.0;
    double phi = std::atan2(b[1], b[0]);
    return {r, theta, phi};
}

namespace {

ScalarFn constant(double v) {
    return [v](double) { return v; };
}

void require_param(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InvalidFamilyParameter, what);
}

}  // namespace

PathSpec family_circle(double r0, double theta0, double omega) {
    require_param(omega > 0.0 && std::isfinite(omega), "circle: omega must be positive");
    return family_circle(r0, theta0, omega, 2.0 * pi / omega);
}

PathSpec family_circle(double r0, double theta0, double omega, double tau) {
    require_param(r0 >= 0.0 && r0 <= 1.0, "circle: r0 must lie in [0, 1]");
    require_param(theta0 >= 0.0 && theta0 <= pi, "circle: theta0 must lie in [0, pi]");
    require_param(std::isfinite(omega), "circle: omega must be finite");
    return PathSpec({constant(r0), constant(0.0)}, {constant(theta0), constant(0.0)},
                    {[omega](double t) { return omega * t; }, constant(omega)}, tau,
                    PathKind::Unitary, "circle",
                    {{"r0", r0}, {"theta0", theta0}, {"omega", omega}});
}

PathSpec family_ellipse(double omega) {
    require_param(omega > 0.0 && std::isfinite(omega), "ellipse: omega must be positive");
    return family_ellipse(omega, 2.0 * pi / omega);
}

PathSpec family_ellipse(double omega, double tau) {
    require_param(std::isfinite(omega) && omega != 0.0, "ellipse: omega must be nonzero");
    auto r = [omega](double t) {
        double c = std::cos(omega * t);
        double s = std::sin(omega * t);
        return 1.0 / std::sqrt(c * c + 4.0 * s * s);
    };
    // d/dt (1 + 3 sin^2)^(-1/2) = -3 omega sin cos (1 + 3 sin^2)^(-3/2)
    auto dr = [omega](double t) {
        double c = std::cos(omega * t);
        double s = std::sin(omega * t);
        double q = 1.0 + 3.0 * s * s;
        return -3.0 * omega * s * c / (q * std::sqrt(q));
    };
    return PathSpec({r, dr}, {constant(pi / 2), constant(0.0)},
                    {[omega](double t) { return omega * t; }, constant(omega)}, tau,
                    PathKind::Open, "ellipse", {{"omega", omega}});
}

PathSpec family_shrink(Coordinate r, double tau) {
    require_param(bool(r.value), "shrink: r(t) must be set");
    require_param(std::abs(r.value(0.0) - 1.0) <= tol::kRangeSlack, "shrink: r(0) must equal 1");
    return PathSpec(std::move(r), {constant(0.0), constant(0.0)}, {constant(0.0), constant(0.0)},
                    tau, PathKind::Open, "shrink");
}

PathSpec family_sampled(std::vector<PathSample> table) {
    require_param(table.size() >= 2, "sampled path needs at least two rows");
    require_param(table.front().t == 0.0, "sampled path must start at t = 0");
    for (std::size_t i = 1; i < table.size(); ++i)
        require_param(table[i].t > table[i - 1].t, "sampled path times must be strictly increasing");

    std::vector<double> t(table.size()), r(table.size()), th(table.size()), ph(table.size());
    double offset = 0.0;
    bool constant_r = true;
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& row = table[i];
        check_point({row.r, row.theta, row.phi}, row.t);
        t[i] = row.t;
        r[i] = row.r;
        th[i] = row.theta;
        if (i > 0) {
            double jump = row.phi + offset - ph[i - 1];
            while (jump > pi) { offset -= 2 * pi; jump -= 2 * pi; }
            while (jump < -pi) { offset += 2 * pi; jump += 2 * pi; }
        }
        ph[i] = row.phi + offset;
        if (std::abs(row.r - table.front().r) > tol::kConstantR) constant_r = false;
    }

    auto make = [&t](const std::vector<double>& y) {
        auto s = std::make_shared<const NaturalCubicSpline>(t, y);
        return Coordinate{[s](double x) { return s->value(x); },
                          [s](double x) { return s->derivative(x); }};
    };
    Coordinate rc = constant_r ? Coordinate{constant(r.front()), constant(0.0)} : make(r);
    return PathSpec(std::move(rc), make(th), make(ph), t.back(),
                    constant_r ? PathKind::Unitary : PathKind::Open, "sampled",
                    {{"rows", static_cast<double>(table.size())}});
}

std::vector<PathSample> read_path_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::IoError, "cannot open path CSV " + file.string());
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::InvalidFamilyParameter, "path CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,r,theta,phi")
        throw Error(ErrorCode::InvalidFamilyParameter, "path CSV header must be t,r,theta,phi");

    std::vector<PathSample> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::array<double, 4> v{};
        std::istringstream ss(line);
        std::string cell;
        int col = 0;
        while (std::getline(ss, cell, ',')) {
            if (col < 4) {
                try {
                    std::size_t used = 0;
                    v[col] = std::stod(cell, &used);
                    if (cell.find_first_not_of(" \t", used) != std::string::npos)
                        throw std::invalid_argument(cell);
                } catch (const std::exception&) {
                    throw Error(ErrorCode::InvalidFamilyParameter,
                                "path CSV line " + std::to_string(lineno) + ": bad number '" + cell + "'");
                }
            }
            ++col;
        }
        if (col != 4)
            throw Error(ErrorCode::InvalidFamilyParameter,
                        "path CSV line " + std::to_string(lineno) + ": expected 4 columns");
        rows.push_back({v[0], v[1], v[2], v[3]});
    }
    return rows;
}

void write_path_csv(const std::filesystem::path& file, const PathSpec& path, const TimeGrid& grid) {
    std::ofstream out(file);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + file.string());
    out << "t,r,theta,phi\n" << std::setprecision(17);
    for (double t : grid.points()) {
        BlochPoint p = path.at(t);
        out << t << ',' << p.r << ',' << p.theta << ',' << p.phi << '\n';
    }
}

}  // namespace hamsynth
