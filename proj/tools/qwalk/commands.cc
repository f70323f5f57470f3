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

#include "qwalk/commands.h"

#include <cmath>
#include <sstream>

#include "entwalk/entanglement.h"
#include "entwalk/hilbert.h"
#include "entwalk/remote.h"
#include "entwalk/tomography.h"
#include "entwalk/walk.h"
#include "json.hpp"

namespace entwalk::cli {
namespace {

constexpr int kDefaultSteps = 10;
constexpr int kDefaultScanSteps = 3;

int steps_or(const RunConfig& config, int fallback) {
    return config.steps.value_or(fallback);
}

Ensemble initial_state(const RunConfig& config) {
    return config.visibility >= 1.0 ? Ensemble(make_bell_initial())
                                    : make_werner_initial(config.visibility);
}

const char* pol_name(int bit) { return bit == 0 ? "H" : "V"; }

Cell optional_cell(const std::optional<double>& v) {
    return v ? Cell{*v} : Cell{std::monostate{}};
}

std::string density_json(const TwoQubitDensity& rho) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (int r = 0; r < 4; ++r) {
        nlohmann::json rr = nlohmann::json::array();
        nlohmann::json ri = nlohmann::json::array();
        for (int c = 0; c < 4; ++c) {
            rr.push_back(rho.matrix()(r, c).real());
            ri.push_back(rho.matrix()(r, c).imag());
        }
        re.push_back(rr);
        im.push_back(ri);
    }
    nlohmann::json out;
    out["basis"] = {"HH", "HV", "VH", "VV"};
    out["real"] = re;
    out["imag"] = im;
    return out.dump();
}

void append_scan(Table& table, const std::string& scenario,
                 const ConditioningScan& scan, const Ensemble& entangled,
                 double grid_deg) {
    const VarianceSurface surface = run_scan(scan, entangled);
    for (const auto& ss : surface.steps) {
        for (std::size_t ia = 0; ia < surface.alpha_grid.size(); ++ia) {
            for (std::size_t ib = 0; ib < surface.beta_grid.size(); ++ib) {
                const VarianceCell& cell = ss.cells[ia * surface.beta_grid.size() + ib];
                table.add_row({scenario, std::int64_t{ss.step},
                               static_cast<double>(ia) * grid_deg,
                               static_cast<double>(ib) * grid_deg,
                               optional_cell(cell.raw),
                               optional_cell(cell.normalized),
                               cell.success_probability, cell.raw.has_value()});
            }
        }
    }
}

std::vector<std::filesystem::path> write_all(
    const std::vector<std::pair<std::filesystem::path, Table>>& outputs,
    OutputFormat format) {
    AtomicWriter writer;
    for (const auto& [path, table] : outputs) {
        writer.stage(path, serialize(table, format));
    }
    return writer.commit();
}

}  // namespace

void validate(const RunConfig& config, bool stochastic) {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (config.steps && (*config.steps < 0 || *config.steps > kMaxSteps)) {
        fail("--steps must lie in [0, " + std::to_string(kMaxSteps) + "]");
    }
    if (!(config.visibility >= 0.0 && config.visibility <= 1.0)) {
        fail("--visibility must lie in [0, 1]");
    }
    if (!(config.entangled_weight >= 0.0 && config.entangled_weight <= 1.0)) {
        fail("--entangled-weight must lie in [0, 1]");
    }
    if (!std::isfinite(config.theta_classical_deg)) {
        fail("--theta-classical must be finite");
    }
    if (!std::isfinite(config.angle_phase_deg)) {
        fail("--angle-phase-deg must be finite");
    }
    if (!(config.grid_deg > 0.0 && config.grid_deg <= 180.0)) {
        fail("--grid-deg must lie in (0, 180]");
    }
    if (config.shots == 0) fail("--shots must be positive");
    if (config.out.empty()) fail("--out is required");
    if (stochastic && !config.seed) fail("--seed is required for this command");
}

std::filesystem::path companion_path(const std::filesystem::path& out,
                                     const std::string& suffix) {
    std::filesystem::path p = out.parent_path() / out.stem();
    p += suffix;
    p += out.extension();
    return p;
}

Table evolve_distributions(const RunConfig& config) {
    Table table{{"step", "position", "probability"}, {}};
    const WalkConfig one{1, CoinSpec::hadamard()};
    Ensemble state = initial_state(config);
    for (int t = 0; t <= steps_or(config, kDefaultSteps); ++t) {
        if (t > 0) state = evolve(state, one);
        for (const auto& [x, p] : position_distribution(state).probs) {
            table.add_row({std::int64_t{t}, std::int64_t{x}, p});
        }
    }
    return table;
}

Table evolve_amplitudes(const RunConfig& config) {
    Table table{{"step", "branch", "weight", "alice", "coin", "position", "re", "im"},
                {}};
    const WalkConfig one{1, CoinSpec::hadamard()};
    Ensemble state = initial_state(config);
    for (int t = 0; t <= steps_or(config, kDefaultSteps); ++t) {
        if (t > 0) state = evolve(state, one);
        for (std::size_t k = 0; k < state.size(); ++k) {
            const Branch& br = state.branches()[k];
            for (const auto& [x, b] : br.state.blocks()) {
                for (int i = 0; i < 4; ++i) {
                    if (b[i] == Complex{0.0, 0.0}) continue;
                    table.add_row({std::int64_t{t}, static_cast<std::int64_t>(k),
                                   br.weight, std::string(pol_name(i / 2)),
                                   std::string(pol_name(i % 2)), std::int64_t{x},
                                   b[i].real(), b[i].imag()});
                }
            }
        }
    }
    return table;
}

namespace {

std::vector<std::pair<std::string, EntanglementCurve>> curves(const RunConfig& config) {
    const WalkConfig walk{steps_or(config, kDefaultSteps), CoinSpec::hadamard()};
    std::vector<std::pair<std::string, EntanglementCurve>> out;
    out.emplace_back("ideal", entanglement_curve(make_bell_initial(), walk));
    if (config.visibility < 1.0) {
        out.emplace_back("werner",
                         entanglement_curve(make_werner_initial(config.visibility),
                                            walk, config.visibility > 1.0 / 3.0));
    }
    return out;
}

}  // namespace

Table entanglement_summary(const RunConfig& config) {
    Table table{{"input", "step", "e_avg", "e_normalized"}, {}};
    for (const auto& [label, curve] : curves(config)) {
        for (const auto& rec : curve.records) {
            table.add_row({label, std::int64_t{rec.step}, rec.average,
                           optional_cell(rec.normalized)});
        }
    }
    return table;
}

Table entanglement_positions(const RunConfig& config) {
    Table table{{"input", "step", "position", "probability", "entanglement",
                 "purity", "low_probability"},
                {}};
    for (const auto& [label, curve] : curves(config)) {
        for (const auto& rec : curve.records) {
            for (const auto& pe : rec.positions) {
                table.add_row({label, std::int64_t{rec.step},
                               std::int64_t{pe.position}, pe.probability,
                               pe.entanglement, pe.purity, pe.low_probability});
            }
        }
    }
    return table;
}

Table remote_scan_table(const RunConfig& config) {
    Table table{{"scenario", "step", "alpha_deg", "beta_deg", "raw_variance",
                 "normalized_variance", "success_probability", "present"},
                {}};
    const double phase = config.angle_phase_deg;
    ConditioningScan scan;
    scan.alpha_grid = ConditioningScan::angle_grid(config.grid_deg, phase);
    scan.beta_grid = scan.alpha_grid;
    scan.steps = steps_or(config, kDefaultScanSteps);

    const Ensemble entangled = initial_state(config);

    scan.weight = EntangledWeight::of(1.0);
    scan.reference = {PolarizationAngle::from_degrees(0.0, phase)};
    append_scan(table, "entangled", scan, entangled, config.grid_deg);

    const std::pair<const char*, double> theories[] = {
        {"theory_a", 0.0}, {"theory_b", 45.0}, {"theory_c", 24.0}};
    scan.weight = EntangledWeight::of(0.0);
    for (const auto& [name, deg] : theories) {
        scan.reference = {PolarizationAngle::from_degrees(deg, phase)};
        append_scan(table, name, scan, entangled, config.grid_deg);
    }

    scan.weight = EntangledWeight::of(config.entangled_weight);
    scan.reference = {PolarizationAngle::from_degrees(config.theta_classical_deg, phase)};
    append_scan(table, "mixed", scan, entangled, config.grid_deg);
    return table;
}

Table tomography_table(const RunConfig& config) {
    std::vector<std::string> columns{"step", "position", "probability", "fidelity",
                                     "purity", "chsh", "true_chsh"};
    const bool with_matrix = config.format == OutputFormat::Json;
    if (with_matrix) columns.push_back("rho_hat");
    Table table{columns, {}};

    const Sampling sampling{config.exact ? 0 : config.shots, config.seed.value_or(0)};
    const WalkConfig one{1, CoinSpec::hadamard()};
    Ensemble state = initial_state(config);
    for (int t = 0; t <= steps_or(config, kDefaultSteps); ++t) {
        if (t > 0) state = evolve(state, one);
        for (const auto& [x, p] : position_distribution(state).probs) {
            if (p < kEmptyPositionThreshold) continue;
            const PipelineResult r = tomography_at(state, x, sampling);
            const double truth = chsh_quantifier(condition_on_position(state, x).density);
            std::vector<Cell> row{std::int64_t{t},
                                  std::int64_t{x},
                                  r.probability,
                                  optional_cell(r.report.fidelity_to_truth),
                                  r.report.purity,
                                  r.report.chsh,
                                  truth};
            if (with_matrix) row.push_back(RawJson{density_json(r.report.rho_hat)});
            table.add_row(std::move(row));
        }
    }
    return table;
}

std::vector<std::filesystem::path> cmd_evolve(const RunConfig& config) {
    validate(config, false);
    return write_all({{config.out, evolve_distributions(config)},
                      {companion_path(config.out, "_amplitudes"),
                       evolve_amplitudes(config)}},
                     config.format);
}

std::vector<std::filesystem::path> cmd_entanglement(const RunConfig& config) {
    validate(config, false);
    return write_all({{config.out, entanglement_summary(config)},
                      {companion_path(config.out, "_positions"),
                       entanglement_positions(config)}},
                     config.format);
}

std::vector<std::filesystem::path> cmd_remote_scan(const RunConfig& config) {
    validate(config, false);
    return write_all({{config.out, remote_scan_table(config)}}, config.format);
}

std::vector<std::filesystem::path> cmd_tomography(const RunConfig& config) {
    validate(config, !config.exact);
    return write_all({{config.out, tomography_table(config)}}, config.format);
}

}  // namespace entwalk::cli
