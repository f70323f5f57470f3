// Copyright 2026 The entwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ENTWALK_TOOLS_QWALK_COMMANDS_H
#define ENTWALK_TOOLS_QWALK_COMMANDS_H

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/table.h"

namespace entwalk::cli {

/// Raised for invalid configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    /// Unset selects the per-command default.
    std::optional<int> steps;
    double visibility = 1.0;
    double entangled_weight = 1.0;
    double theta_classical_deg = 0.0;
    double grid_deg = 2.0;
    double angle_phase_deg = 90.0;
    std::uint64_t shots = 1'000'000;
    std::optional<std::uint64_t> seed;
    bool exact = false;
    std::filesystem::path out;
    OutputFormat format = OutputFormat::Csv;
};

inline constexpr int kMaxSteps = 100000;

/// Throws ConfigError on any out-of-range field. `stochastic` commands also
/// require a seed.
void validate(const RunConfig& config, bool stochastic);

// Table builders. They perform the computation but write nothing.

/// Per-step position distributions: step, position, probability.
Table evolve_distributions(const RunConfig& config);
/// Amplitude dump: step, branch, weight, alice, coin, position, re, im.
Table evolve_amplitudes(const RunConfig& config);
/// Curve summary: input, step, e_avg, e_normalized.
Table entanglement_summary(const RunConfig& config);
/// Per-position curve entries: input, step, position, probability,
/// entanglement, purity, low_probability.
Table entanglement_positions(const RunConfig& config);
/// Long-format variance surfaces for every scenario.
Table remote_scan_table(const RunConfig& config);
/// Per-(step, position) reconstruction reports.
Table tomography_table(const RunConfig& config);

// Commands: validate, compute, then write every output atomically. Return the
// written paths.

std::vector<std::filesystem::path> cmd_evolve(const RunConfig& config);
std::vector<std::filesystem::path> cmd_entanglement(const RunConfig& config);
std::vector<std::filesystem::path> cmd_remote_scan(const RunConfig& config);
std::vector<std::filesystem::path> cmd_tomography(const RunConfig& config);

/// `<stem><suffix><ext>` next to `out`, e.g. run.csv -> run_amplitudes.csv.
std::filesystem::path companion_path(const std::filesystem::path& out,
                                     const std::string& suffix);

}  // namespace entwalk::cli

#endif  // ENTWALK_TOOLS_QWALK_COMMANDS_H
