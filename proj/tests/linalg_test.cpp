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

#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "hamsynth/errors.hpp"
#include "test_support.hpp"

using namespace hamsynth;
using hamsynth::testing::random_complex;
using hamsynth::testing::random_hermitian;
using std::numbers::pi;

TEST(linalg, dagger) {
    EXPECT_EQ(dagger(CMat2(CMat2::Identity())), CMat2(CMat2::Identity()));
    EXPECT_EQ(dagger(pauli::y()), pauli::y());
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10; ++i) {
        CMat4 m = random_complex<CMat4>(rng);
        EXPECT_EQ(dagger(dagger(m)), m);
        CMat2 a = random_complex<CMat2>(rng);
        EXPECT_EQ(dagger(a)(0, 1), std::conj(a(1, 0)));
    }
}

TEST(linalg, kron_identities) {
    EXPECT_EQ(kron(pauli::identity(), pauli::identity()), CMat4(CMat4::Identity()));
    CMat2 p0 = CMat2::Zero();
    p0(0, 0) = 1.0;
    CMat4 expected = CMat4::Zero();
    expected(0, 0) = 1.0;
    EXPECT_EQ(kron(p0, p0), expected);

    CMat4 g = kron(pauli::x(), pauli::y()) - kron(pauli::y(), pauli::x());
    for (int i = 0; i < 4; ++i) EXPECT_EQ(g(i, i), cplx(0.0));
    EXPECT_LT(hermiticity_defect(g), 1e-15);
    // Expanded by hand: only the |01>,|10> block survives, as 2i|01><10| - 2i|10><01|.
    EXPECT_EQ(g(1, 2), cplx(0.0, 2.0));
    EXPECT_EQ(g(2, 1), cplx(0.0, -2.0));
    EXPECT_EQ(g(0, 3), cplx(0.0));
    EXPECT_EQ(g(3, 0), cplx(0.0));
}

TEST(linalg, kron_basis_ordering_is_system_major) {
    // |a b> with index 2a + b: sigma_x on the ancilla flips the low bit.
    CMat4 xb = kron(pauli::identity(), pauli::x());
    EXPECT_EQ(xb(1, 0), cplx(1.0));
    EXPECT_EQ(xb(3, 2), cplx(1.0));
    CMat4 xa = kron(pauli::x(), pauli::identity());
    EXPECT_EQ(xa(2, 0), cplx(1.0));
    EXPECT_EQ(xa(3, 1), cplx(1.0));
}

TEST(linalg, kron_mixed_product) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 20; ++i) {
        CMat2 a = random_complex<CMat2>(rng), b = random_complex<CMat2>(rng);
        CMat2 c = random_complex<CMat2>(rng), d = random_complex<CMat2>(rng);
        EXPECT_LT((kron(a, b) * kron(c, d) - kron(a * c, b * d)).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(linalg, partial_trace) {
    EXPECT_EQ(partial_trace_b(CMat4::Identity()), CMat2(2.0 * CMat2::Identity()));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        CMat2 a = random_complex<CMat2>(rng), b = random_complex<CMat2>(rng);
        EXPECT_LT((partial_trace_b(kron(a, b)) - a * b.trace()).norm(), 1e-13);
        CMat4 m = random_complex<CMat4>(rng), n = random_complex<CMat4>(rng);
        EXPECT_LT(std::abs(partial_trace_b(m).trace() - m.trace()), 1e-13);
        EXPECT_LT((partial_trace_b(m) - hamsynth::testing::partial_trace_brute(m)).norm(), 1e-13);
        cplx s(0.3, -1.2);
        EXPECT_LT((partial_trace_b(m + s * n) - partial_trace_b(m) - s * partial_trace_b(n)).norm(),
                  1e-12);
    }
}

TEST(linalg, expm_skew_closed_forms) {
    EXPECT_EQ(expm_skew(CMat2(CMat2::Zero()), 0.7), CMat2(CMat2::Identity()));
    EXPECT_LT((expm_skew(CMat4(CMat4::Zero()), 0.7) - CMat4::Identity()).norm(), 1e-15);
    CMat2 u = expm_skew(pauli::z(), pi / 2);
    EXPECT_LT((u - (-kI) * pauli::z()).norm(), 1e-15);
}

TEST(linalg, expm_skew_unitary_and_matches_taylor) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> dt(-3.0, 3.0);
    for (int i = 0; i < 50; ++i) {
        CMat2 h2 = random_hermitian<CMat2>(rng);
        CMat4 h4 = random_hermitian<CMat4>(rng);
        double s = dt(rng);
        CMat2 u2 = expm_skew(h2, s);
        CMat4 u4 = expm_skew(h4, s);
        EXPECT_LT(unitarity_defect(u2), 1e-12);
        EXPECT_LT(unitarity_defect(u4), 1e-12);
        EXPECT_LT((u2 - hamsynth::testing::expm_taylor(CMat2(-kI * s * h2))).norm(), 1e-12);
        EXPECT_LT((u4 - hamsynth::testing::expm_taylor(CMat4(-kI * s * h4))).norm(), 1e-12);
    }
}

TEST(linalg, expm_skew_2x2_agrees_with_4x4_on_embedded_blocks) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        CMat2 h = random_hermitian<CMat2>(rng);
        CMat4 embedded = kron(h, pauli::identity());
        CMat4 ref = expm_skew(embedded, 0.9);
        CMat4 closed = kron(expm_skew(h, 0.9), pauli::identity());
        EXPECT_LT((ref - closed).norm(), 1e-12);
        // Block-diagonal embedding too.
        CMat4 block = CMat4::Zero();
        block.topLeftCorner<2, 2>() = h;
        block.bottomRightCorner<2, 2>() = -h;
        CMat4 e = expm_skew(block, 1.3);
        EXPECT_LT((CMat2(e.topLeftCorner<2, 2>()) - expm_skew(h, 1.3)).norm(), 1e-12);
        EXPECT_LT((CMat2(e.bottomRightCorner<2, 2>()) - expm_skew(CMat2(-h), 1.3)).norm(), 1e-12);
    }
}

TEST(linalg, expm_skew_rejects_non_hermitian) {
    CMat2 bad = pauli::x();
    bad(0, 1) = cplx(1.0, 0.5);
    try {
        (void)expm_skew(bad, 1.0);
        FAIL() << "expected NonHermitianInput";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonHermitianInput);
    }
    CMat4 bad4 = CMat4::Zero();
    bad4(0, 1) = 1.0;
    EXPECT_THROW((void)expm_skew(bad4, 1.0), Error);
    // Relative tolerance: a tiny skew on a large matrix is accepted.
    CMat2 big = 1e6 * pauli::x();
    big(0, 1) += cplx(0.0, 1e-6);
    EXPECT_NO_THROW((void)expm_skew(big, 1e-6));
}

TEST(linalg, trace_distance) {
    std::mt19937_64 rng(6);
    CMat2 rho = hamsynth::testing::random_density(rng);
    EXPECT_EQ(trace_distance(rho, rho), 0.0);
    CMat2 up = CMat2::Zero(), down = CMat2::Zero();
    up(0, 0) = 1.0;
    down(1, 1) = 1.0;
    EXPECT_NEAR(trace_distance(up, down), 1.0, 1e-15);
    EXPECT_NEAR(trace_distance(CMat2(0.5 * CMat2::Identity()), up), 0.5, 1e-15);
    for (int i = 0; i < 50; ++i) {
        CMat2 a = hamsynth::testing::random_density(rng), b = hamsynth::testing::random_density(rng);
        double d = trace_distance(a, b);
        EXPECT_NEAR(d, trace_distance(b, a), 1e-15);
        EXPECT_GE(d, 0.0);
        EXPECT_NEAR(d, hamsynth::testing::trace_distance_eig(a, b), 1e-13);
        // Qubit identity: trace distance = |r_a - r_b| / 2.
        Vec3 ra = bloch_vector(a), rb = bloch_vector(b);
        double dx = ra[0] - rb[0], dy = ra[1] - rb[1], dz = ra[2] - rb[2];
        EXPECT_NEAR(d, 0.5 * std::sqrt(dx * dx + dy * dy + dz * dz), 1e-13);
    }
    CMat2 bad = CMat2::Zero();
    bad(0, 1) = 1.0;
    EXPECT_THROW((void)trace_distance(bad, up), Error);
}

TEST(linalg, bloch_round_trip) {
    Vec3 r{0.1, -0.4, 0.3};
    Vec3 back = bloch_vector(density_from_bloch(r));
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(back[i], r[i], 1e-15);
}
