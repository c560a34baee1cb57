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

#include <iostream>

#include "CLI11.hpp"
#include "hamsynth/errors.hpp"
#include "hamsynth/job.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Synthesize and verify Hamiltonians that drive a qubit along a prescribed Bloch trajectory"};
    std::string job_file;
    std::string output_dir;
    app.add_option("job", job_file, "JSON job description")->required();
    app.add_option("-o,--output-dir", output_dir, "Override output.dir from the job file");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : hamsynth::kExitConfigError;
    }

    hamsynth::JobConfig job;
    try {
        job = hamsynth::load_job(job_file);
    } catch (const hamsynth::Error& e) {
        nlohmann::json err{{"error", std::string(hamsynth::to_string(e.code()))}, {"message", e.what()}};
        std::cerr << err.dump() << '\n';
        return hamsynth::kExitConfigError;
    }
    if (!output_dir.empty()) job.output_dir = output_dir;
    return hamsynth::run_job(job, std::cout, std::cerr);
}
