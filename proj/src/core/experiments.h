// Copyright 2026 The mixcert Authors
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

#ifndef MIXCERT_CORE_EXPERIMENTS_H
#define MIXCERT_CORE_EXPERIMENTS_H

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/report_io.h"
#include "core/rng.h"
#include "core/schedule.h"
#include "core/states.h"

namespace mixcert {

// State family named by a config string: "mixed", "hard", "pure", or
// "file:<path>" for a fixed density matrix loaded from disk.
StateSource state_source_from_spec(const std::string& spec, int d, double eps);

// Schedule named by a config string: "fixed" (standard basis),
// "fresh-haar", or "greedy-realign". Adaptive kinds get a per-dimension
// stream derived from `seed`.
Schedule schedule_from_spec(const std::string& kind, int d, RngSeed seed);

// Full configuration of one command run. Round-trips losslessly through
// JSON (every field is always serialized). -1 marks "no override" for n.
struct ExperimentConfig {
    std::string command;
    std::vector<int> d_grid = {8, 16};
    double eps = 0.5;
    std::int64_t n = -1;
    std::int64_t trials = 200;
    RngSeed seed = 0;
    std::int64_t mc_outer = 200;
    std::int64_t mc_pairs = 2000;
    std::int64_t mc_inner = 2000;
    std::string schedule = "fixed";  // fixed | fresh-haar | greedy-realign
    std::string state = "mixed";     // mixed | hard | pure | file:<path>
    std::string out;                 // empty: caller prints the rendering
    std::string format = "csv";
    int jobs = 1;
    std::vector<double> multipliers = {0.0, 6.0, 12.0, 24.0, 48.0, 96.0};
    int t_max = 4;

    nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig load_file(const std::string& path);
    void validate() const;
};

// Runs the command named in config.command and returns its report
// (wall_clock_seconds filled in). Known commands: certify, sweep,
// paninski, verify, tails, simulate.
ExperimentReport run_command(const ExperimentConfig& config);

}  // namespace mixcert

#endif
