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

#include <array>
#include <complex>

#include <Eigen/Core>

namespace hamsynth {

using cplx = std::complex<double>;

/// Single-qubit operator. Rows and columns follow the computational basis |0>,|1>.
using CMat2 = Eigen::Matrix<cplx, 2, 2>;

/// System-plus-ancilla operator. Basis index is 2a+b with the system qubit a as
/// the first tensor factor and the ancilla b as the second.
using CMat4 = Eigen::Matrix<cplx, 4, 4>;

using Vec3 = std::array<double, 3>;

inline constexpr cplx kI{0.0, 1.0};

namespace pauli {
CMat2 identity();
CMat2 x();
CMat2 y();
CMat2 z();
}  // namespace pauli

template <typename M>
M dagger(const M& m) {
    return m.adjoint();
}

CMat4 kron(const CMat2& a, const CMat2& b);

/// Traces out the ancilla (second factor).
CMat2 partial_trace_b(const CMat4& m);

double frobenius(const CMat2& m);
double frobenius(const CMat4& m);

/// ||M - M^dagger||_F.
double hermiticity_defect(const CMat2& m);
double hermiticity_defect(const CMat4& m);

/// ||M^dagger M - I||_F.
double unitarity_defect(const CMat2& m);
double unitarity_defect(const CMat4& m);

/// Throws Error{NonHermitianInput} when ||M - M^dagger||_F exceeds
/// tol::kHermitianInput * max(1, ||M||_F).
void require_hermitian(const CMat2& m, const char* context);
void require_hermitian(const CMat4& m, const char* context);

/// exp(-i H dt) for Hermitian H. The 2x2 overload uses the Pauli closed form
/// exp(-i(a0 + a.sigma)dt) = e^{-i a0 dt}(cos(|a|dt) - i sin(|a|dt) a.sigma/|a|);
/// the 4x4 overload diagonalizes H.
CMat2 expm_skew(const CMat2& h, double dt);
CMat4 expm_skew(const CMat4& h, double dt);

/// Half the sum of absolute eigenvalues of A - B.
double trace_distance(const CMat2& a, const CMat2& b);

/// Hermitian part (M + M^dagger)/2.
template <typename M>
M hermitize(const M& m) {
    return (m + m.adjoint()) * 0.5;
}

/// Bloch vector (tr(rho sx), tr(rho sy), tr(rho sz)).
Vec3 bloch_vector(const CMat2& rho);

/// Density matrix (1 + r.sigma)/2.
CMat2 density_from_bloch(const Vec3& r);

/// Eigenvalues of a 2x2 Hermitian matrix, ascending.
std::array<double, 2> eigenvalues_hermitian(const CMat2& m);

}  // namespace hamsynth
