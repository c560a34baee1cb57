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
#include <iosfwd>
#include <optional>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

namespace hamsynth {

enum class Command { SynthUnitary, SynthOpen, GeomPhase, Verify };

struct JobConfig {
    Command command = Command::Verify;
    nlohmann::json path;   // {family, ...family params}
    nlohmann::json gauge;  // {parallel, alpha1_expr, alpha2_expr, w, v}
    std::optional<int> grid_n;
    std::optional<double> grid_tau;
    std::filesystem::path output_dir = "out";
    std::set<std::string> formats = {"csv", "json"};
    bool write_path_csv = false;
    std::optional<double> fd_step;
    std::string synthesis;  // "", "numeric" or "closed-form"
    std::filesystem::path base_dir;  // resolves relative csv paths
};

/// Throws Error{InvalidConfig} on schema violations.
JobConfig parse_job(const nlohmann::json& doc, std::filesystem::path base_dir = {});
JobConfig load_job(const std::filesystem::path& file);

/// Exit codes for run_job.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitVerificationFailed = 2;

/// Executes the job, writes outputs under output_dir, prints a short summary
/// to out and a machine-readable error object to err on failure.
int run_job(const JobConfig& job, std::ostream& out, std::ostream& err);

}  // namespace hamsynth
