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

#include "hamsynth/linalg.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "hamsynth/errors.hpp"
#include "hamsynth/tolerances.hpp"

namespace hamsynth {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonHermitianInput: return "NonHermitianInput";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::DegenerateInitialState: return "DegenerateInitialState";
        case ErrorCode::InvalidFamilyParameter: return "InvalidFamilyParameter";
        case ErrorCode::KindMismatch: return "KindMismatch";
        case ErrorCode::GaugeMismatch: return "GaugeMismatch";
        case ErrorCode::SingularShrinkStart: return "SingularShrinkStart";
        case ErrorCode::UndefinedPhase: return "UndefinedPhase";
        case ErrorCode::NonzeroAlphaAtZero: return "NonzeroAlphaAtZero";
        case ErrorCode::InvalidExpression: return "InvalidExpression";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

namespace pauli {
CMat2 identity() { return CMat2::Identity(); }
CMat2 x() {
    CMat2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}
CMat2 y() {
    CMat2 m;
    m << 0.0, -kI, kI, 0.0;
    return m;
}
CMat2 z() {
    CMat2 m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}
}  // namespace pauli

CMat4 kron(const CMat2& a, const CMat2& b) {
    CMat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return out;
}

CMat2 partial_trace_b(const CMat4& m) {
    CMat2 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
    return out;
}

double frobenius(const CMat2& m) { return m.norm(); }
double frobenius(const CMat4& m) { return m.norm(); }

double hermiticity_defect(const CMat2& m) { return (m - m.adjoint()).norm(); }
double hermiticity_defect(const CMat4& m) { return (m - m.adjoint()).norm(); }

double unitarity_defect(const CMat2& m) {
    return (m.adjoint() * m - CMat2::Identity()).norm();
}
double unitarity_defect(const CMat4& m) {
    return (m.adjoint() * m - CMat4::Identity()).norm();
}

namespace {

template <typename M>
void require_hermitian_impl(const M& m, const char* context) {
    double defect = hermiticity_defect(m);
    double scale = std::max(1.0, m.norm());
    if (!(defect <= tol::kHermitianInput * scale)) {
        std::ostringstream msg;
        msg << context << ": matrix is not Hermitian (||M - M^dagger||_F = " << defect << ")";
        throw Error(ErrorCode::NonHermitianInput, msg.str());
    }
}

}  // namespace

void require_hermitian(const CMat2& m, const char* context) { require_hermitian_impl(m, context); }
void require_hermitian(const CMat4& m, const char* context) { require_hermitian_impl(m, context); }

CMat2 expm_skew(const CMat2& h, double dt) {
    require_hermitian(h, "expm_skew");
    // H = a0 I + a.sigma with a0 = tr(H)/2, a_i = tr(H sigma_i)/2.
    double a0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
    double ax = 0.5 * (h(0, 1).real() + h(1, 0).real());
    double ay = 0.5 * (h(1, 0).imag() - h(0, 1).imag());
    double az = 0.5 * (h(0, 0).real() - h(1, 1).real());
    double norm = std::sqrt(ax * ax + ay * ay + az * az);
    double angle = norm * dt;
    double c = std::cos(angle);
    // sin(angle)/norm without dividing by a vanishing norm.
    double s_over = norm > 1e-300 ? std::sin(angle) / norm : dt;
    CMat2 u;
    u(0, 0) = cplx(c, -s_over * az);
    u(1, 1) = cplx(c, s_over * az);
    u(0, 1) = -kI * s_over * cplx(ax, -ay);
    u(1, 0) = -kI * s_over * cplx(ax, ay);
    return std::exp(cplx(0.0, -a0 * dt)) * u;
}

CMat4 expm_skew(const CMat4& h, double dt) {
    require_hermitian(h, "expm_skew");
    Eigen::SelfAdjointEigenSolver<CMat4> eig(hermitize(h));
    Eigen::Matrix<cplx, 4, 1> phases;
    for (int i = 0; i < 4; ++i) phases(i) = std::exp(cplx(0.0, -eig.eigenvalues()(i) * dt));
    const CMat4& q = eig.eigenvectors();
    return q * phases.asDiagonal() * q.adjoint();
}

std::array<double, 2> eigenvalues_hermitian(const CMat2& m) {
    double mean = 0.5 * (m(0, 0).real() + m(1, 1).real());
    double half_gap = 0.5 * (m(0, 0).real() - m(1, 1).real());
    double off = std::abs(0.5 * (m(0, 1) + std::conj(m(1, 0))));
    double radius = std::hypot(half_gap, off);
    return {mean - radius, mean + radius};
}

double trace_distance(const CMat2& a, const CMat2& b) {
    require_hermitian(a, "trace_distance");
    require_hermitian(b, "trace_distance");
    auto ev = eigenvalues_hermitian(a - b);
    return 0.5 * (std::abs(ev[0]) + std::abs(ev[1]));
}

Vec3 bloch_vector(const CMat2& rho) {
    return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(),
            rho(0, 0).real() - rho(1, 1).real()};
}

CMat2 density_from_bloch(const Vec3& r) {
    CMat2 m;
    m(0, 0) = 0.5 * (1.0 + r[2]);
    m(1, 1) = 0.5 * (1.0 - r[2]);
    m(0, 1) = 0.5 * cplx(r[0], -r[1]);
    m(1, 0) = 0.5 * cplx(r[0], r[1]);
    return m;
}

}  // namespace hamsynth
