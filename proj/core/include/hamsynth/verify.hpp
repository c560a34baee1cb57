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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hamsynth/linalg.hpp"
#include "hamsynth/open_synth.hpp"
#include "hamsynth/path.hpp"
#include "hamsynth/unitary_synth.hpp"

namespace hamsynth {

using HamiltonianFn2 = std::function<CMat2(double)>;
using HamiltonianFn4 = std::function<CMat4(double)>;
using StateFn = std::function<CMat2(double)>;

struct PropagationResult {
    TimeGrid grid;
    std::vector<CMat2> states;  // reduced state at every node
    double max_trace_distance = 0.0;  // against the reference, 0 if none
    double max_hermiticity_defect = 0.0;
    double max_unitarity_defect = 0.0;
};

/// Exponential midpoint stepping U_{j+1} = exp(-i H(t_j + dt/2) dt) U_j from
/// U_0 = I, recording U_j rho0 U_j^dagger at each node. Throws
/// NonHermitianInput naming the offending time.
PropagationResult propagate_closed(const HamiltonianFn2& h_fn, const CMat2& rho0,
                                   const TimeGrid& grid,
                                   const StateFn& reference = {});

/// Starts from kick (rho0 (x) |0><0|) kick^dagger, steps as above in 4x4 and
/// records the partial trace over the ancilla.
PropagationResult propagate_combined(const HamiltonianFn4& h_ab_fn,
                                     const CMat4& kick, const CMat2& rho0,
                                     const TimeGrid& grid,
                                     const StateFn& reference = {});

/// max_j trace_distance(a[j], b[j]).
/// (4 rho_fine - rho_coarse) / 3 on the coarse nodes; the fine grid has twice
/// the intervals. Cancels the h^2 term of the symmetric stepper.
PropagationResult richardson(const PropagationResult& coarse,
                             const PropagationResult& fine);

double max_trajectory_distance(const PropagationResult& a,
                               const PropagationResult& b);

struct Check {
    std::string name;
    std::optional<double> residual;  // empty when the check raised
    double tolerance = 0.0;
    bool pass = false;
    std::string error;  // error code name when the check raised
    std::string message;
};

class VerificationReport {
public:
    void add(Check check) { checks_.push_back(std::move(check)); }
    const std::vector<Check>& checks() const { return checks_; }
    const Check* find(std::string_view name) const;
    bool overall_pass() const;

    nlohmann::json& provenance() { return provenance_; }
    const nlohmann::json& provenance() const { return provenance_; }

    /// Computed values that are not pass/fail checks (gamma, step counts).
    nlohmann::json& results() { return results_; }
    const nlohmann::json& results() const { return results_; }

    nlohmann::json to_json() const;

private:
    std::vector<Check> checks_;
    nlohmann::json provenance_ = nlohmann::json::object();
    nlohmann::json results_ = nlohmann::json::object();
};

enum class Synthesis {
    UnitaryGeneral,    // h_general with the supplied alpha gauge
    UnitaryParallel,   // h_general with parallel_alphas
    OpenDilation,      // h_ab_numeric with the supplied W, V gauges
    ShrinkClosedForm,  // shrink_h_ab
};

std::string_view to_string(Synthesis s) noexcept;

struct ReportGauges {
    AlphaGauge alpha;
    WGauge w;
    std::optional<VGauge> v;  // empty: derived from alpha when r0 > 0, else I
    std::string description = "default";
};

struct ReportOptions {
    int closed_steps = 0;    // 0: take grid.intervals()
    int combined_steps = 0;  // 0: take grid.intervals()
    double fd_step = 0.0;    // 0: per-module defaults
    /// Added to every synthesized Hamiltonian before propagation (fault injection).
    std::optional<CMat2> perturbation;
};

/// Runs the check battery applicable to the path and synthesis choice. Errors
/// raised by any stage become failed checks; the report is always returned.
VerificationReport run_report(const PathSpec& path, Synthesis synthesis,
                              const ReportGauges& gauges, const TimeGrid& grid,
                              const ReportOptions& options = {});

}  // namespace hamsynth
