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

// Residual tolerances shared by the library checks, the report battery and the
// test suites. Changing a value here changes it everywhere.

namespace hamsynth::tol {

/// Relative Frobenius tolerance on ||H - H^dagger|| for inputs that must be Hermitian.
inline constexpr double kHermitianInput = 1e-10;

/// Below this r0 the spectral decomposition of rho(0) is not unique.
inline constexpr double kDegenerateR0 = 1e-12;

/// Allowed drift of r(t) on a unitary (constant-r) path.
inline constexpr double kConstantR = 1e-12;

/// Margin when checking r in [0,1] and theta in [0,pi] on samples.
inline constexpr double kRangeSlack = 1e-12;

/// Identities that hold symbolically (unitarity, completeness, embedding,
/// analytic reduced-state reproduction).
inline constexpr double kAnalytic = 1e-12;

/// Commutator [V, rho(0)] and SU(2) validation of W samples.
inline constexpr double kGaugeMatrix = 1e-12;

/// Closed-system realization after propagation at default steps.
inline constexpr double kClosedRealization = 1e-6;

/// Combined-system realization after propagation at default steps.
inline constexpr double kCombinedRealization = 1e-5;

/// State-level gauge invariance after closed propagation.
inline constexpr double kClosedGaugeInvariance = 1e-8;

/// State-level gauge invariance after combined propagation.
inline constexpr double kCombinedGaugeInvariance = 1e-5;

/// Parallel-transport residual max_{t,k} |tr[rho_k(0) U^dagger dU/dt]|.
inline constexpr double kParallelTransport = 1e-8;

/// Numeric geometric phase against the circle closed form.
inline constexpr double kPhaseClosedForm = 1e-4;

/// Finite-difference generator against a closed form.
inline constexpr double kFiniteDifferenceGenerator = 1e-6;

/// Trace-sum modulus below which the geometric phase is undefined.
inline constexpr double kUndefinedPhase = 1e-12;

/// Distance to +/-pi at which a geometric phase is flagged as near the branch cut.
inline constexpr double kBranchCut = 1e-6;

/// Default relative finite-difference step for path and gauge derivatives.
inline constexpr double kPathStepRelative = 1e-6;

/// Default relative finite-difference step for 2x2 and 4x4 unitary paths.
inline constexpr double kUnitaryStepRelative = 1e-5;

inline constexpr int kDefaultClosedSteps = 2000;
inline constexpr int kDefaultCombinedSteps = 4000;

}  // namespace hamsynth::tol
