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

#include "qwalk/app.h"

#include <exception>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "entwalk/errors.h"
#include "qwalk/commands.h"

namespace entwalk::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entanglement transfer in a Hadamard quantum walk on one photon "
                 "of a polarization Bell pair."};
    app.name("qwalk");
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a TOML/INI file; flags win");

    RunConfig config;
    int steps = -1;
    std::optional<double> classical_weight;
    std::string format = "csv";
    std::string out_path;

    auto* steps_opt = app.add_option("--steps", steps, "Number of walk steps");
    app.add_option("--visibility", config.visibility,
                   "Werner visibility of the initial pair; 1 = ideal Bell state");
    auto* ew = app.add_option("--entangled-weight", config.entangled_weight,
                              "Weight of the entangled state in the remote mixture");
    auto* cw = app.add_option("--classical-weight", classical_weight,
                              "Alias: 1 - entangled weight");
    ew->excludes(cw);
    app.add_option("--theta-classical", config.theta_classical_deg,
                   "Dephasing basis angle of the mixed scenario, degrees");
    app.add_option("--grid-deg", config.grid_deg, "Angle grid resolution, degrees");
    app.add_option("--angle-phase-deg", config.angle_phase_deg,
                   "Relative phase of projector states, degrees (90 = H/R/V/L circle)");
    app.add_option("--shots", config.shots, "Coincidences per tomography setting");
    app.add_option("--seed", config.seed, "Master random seed");
    app.add_flag("--exact", config.exact, "Use exact probabilities in tomography");
    app.add_option("--out", out_path, "Output file");
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    std::map<std::string, std::vector<std::filesystem::path> (*)(const RunConfig&)>
        commands{{"evolve", &cmd_evolve},
                 {"entanglement", &cmd_entanglement},
                 {"remote-scan", &cmd_remote_scan},
                 {"tomography", &cmd_tomography}};
    const std::map<std::string, std::string> help{
        {"evolve", "Position distributions and amplitudes per step"},
        {"entanglement", "Average CHSH entanglement per step"},
        {"remote-scan", "Remote-conditioning variance surfaces"},
        {"tomography", "Simulated tomography of every (step, position)"}};
    for (const auto& [name, fn] : commands) {
        app.add_subcommand(name, help.at(name))->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "qwalk: " << e.what() << "\n";
        return kExitConfig;
    }

    if (steps_opt->count() > 0) config.steps = steps;
    if (classical_weight) config.entangled_weight = 1.0 - *classical_weight;
    if (classical_weight && !(*classical_weight >= 0.0 && *classical_weight <= 1.0)) {
        err << "qwalk: --classical-weight must lie in [0, 1]\n";
        return kExitConfig;
    }
    config.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    config.out = out_path;

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        for (const auto& path : commands.at(name)(config)) {
            out << path.string() << "\n";
        }
    } catch (const ConfigError& e) {
        err << "qwalk " << name << ": " << e.what() << "\n";
        return kExitConfig;
    } catch (const InvalidArgument& e) {
        err << "qwalk " << name << ": " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "qwalk " << name << ": " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}

}  // namespace entwalk::cli
