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

#include "entwalk/remote.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace entwalk {
namespace {

constexpr double kDistributionTolerance = 1e-10;

TripartiteState product_at_origin(const QubitBlock& alice, const QubitBlock& coin) {
    std::map<int, Block> blocks;
    for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c) blocks[0][2 * a + c] = alice[a] * coin[c];
    return TripartiteState(std::move(blocks), 0);
}

void accumulate(std::map<int, double>& into, const Ensemble& input, double scale,
                PolarizationAngle alice, PolarizationAngle bob) {
    if (scale == 0.0) return;
    for (const auto& br : input.branches()) {
        for (const auto& [x, m] : projected_masses(br.state, alice, bob)) {
            into[x] += scale * br.weight * m;
        }
    }
}

}  // namespace

Ensemble make_classical_reference(const DephasedBellSpec& spec) {
    const QubitBlock u = spec.basis_angle.ket();
    const QubitBlock w = spec.basis_angle.orthogonal().ket();
    return Ensemble(std::vector<Branch>{{0.5, product_at_origin(u, w)},
                                        {0.5, product_at_origin(w, u)}});
}

EntangledWeight EntangledWeight::of(double entangled_weight) {
    if (!(entangled_weight >= 0.0 && entangled_weight <= 1.0)) {
        throw InvalidArgument("entangled weight must lie in [0, 1]");
    }
    return EntangledWeight{entangled_weight};
}

EntangledWeight EntangledWeight::from_classical_weight(double classical_weight) {
    if (!(classical_weight >= 0.0 && classical_weight <= 1.0)) {
        throw InvalidArgument("classical weight must lie in [0, 1]");
    }
    return EntangledWeight{1.0 - classical_weight};
}

std::map<int, double> conditioned_masses(const Ensemble& entangled,
                                         const Ensemble& classical,
                                         EntangledWeight weight,
                                         PolarizationAngle alice,
                                         PolarizationAngle bob) {
    std::map<int, double> out;
    accumulate(out, classical, 1.0 - weight.value, alice, bob);
    accumulate(out, entangled, weight.value, alice, bob);
    return out;
}

ConditionedDistribution conditioned_distribution_evolved(
    const Ensemble& entangled, const Ensemble& classical, EntangledWeight weight,
    PolarizationAngle alice, PolarizationAngle bob) {
    if (entangled.step() != classical.step()) {
        throw InvalidArgument("entangled and classical inputs at different steps");
    }
    std::map<int, double> masses =
        conditioned_masses(entangled, classical, weight, alice, bob);
    double total = 0.0;
    for (const auto& [x, m] : masses) total += m;
    if (total < kZeroSuccessThreshold) {
        std::ostringstream msg;
        msg << "projection has total mass " << total;
        throw ZeroSuccess(msg.str());
    }
    ConditionedDistribution out;
    out.joint_success_probability = total;
    out.distribution.step = entangled.step();
    for (const auto& [x, m] : masses) out.distribution.probs[x] = m / total;
    return out;
}

ConditionedDistribution conditioned_distribution(const Ensemble& entangled,
                                                 const Ensemble& classical,
                                                 EntangledWeight weight,
                                                 PolarizationAngle alice,
                                                 PolarizationAngle bob,
                                                 int steps) {
    const WalkConfig config{steps, CoinSpec::hadamard()};
    return conditioned_distribution_evolved(evolve(entangled, config),
                                            evolve(classical, config), weight,
                                            alice, bob);
}

double variance(const PositionDistribution& dist) {
    const double total = dist.total();
    if (std::abs(total - 1.0) > kDistributionTolerance) {
        std::ostringstream msg;
        msg << "distribution sums to " << total;
        throw UnnormalizedDistribution(msg.str());
    }
    double mean = 0.0;
    double second = 0.0;
    for (const auto& [x, p] : dist.probs) {
        mean += x * p;
        second += static_cast<double>(x) * x * p;
    }
    return std::max(0.0, second - mean * mean);
}

std::vector<PolarizationAngle> ConditioningScan::angle_grid(double step_deg,
                                                            double phase_deg) {
    if (!(step_deg > 0.0 && step_deg <= 180.0)) {
        throw InvalidArgument("grid resolution must lie in (0, 180] degrees");
    }
    std::vector<PolarizationAngle> grid;
    for (int k = 0;; ++k) {
        const double deg = k * step_deg;
        if (deg >= 180.0 - 1e-9) break;
        grid.push_back(PolarizationAngle::from_degrees(deg, phase_deg));
    }
    return grid;
}

const VarianceCell& VarianceSurface::cell(int step, std::size_t ia,
                                          std::size_t ib) const {
    return steps.at(static_cast<std::size_t>(step))
        .cells.at(ia * beta_grid.size() + ib);
}

VarianceSurface run_scan(const ConditioningScan& scan, const Ensemble& entangled) {
    if (scan.alpha_grid.empty() || scan.beta_grid.empty()) {
        throw InvalidArgument("conditioning scan needs non-empty angle grids");
    }
    if (scan.steps < 0) throw InvalidArgument("scan steps must be nonnegative");
    EntangledWeight::of(scan.weight.value);

    VarianceSurface surface;
    surface.alpha_grid = scan.alpha_grid;
    surface.beta_grid = scan.beta_grid;

    const WalkConfig one{1, scan.coin};
    Ensemble ent = entangled;
    Ensemble cls = make_classical_reference(scan.reference);
    for (int t = 0; t <= scan.steps; ++t) {
        if (t > 0) {
            ent = evolve(ent, one);
            cls = evolve(cls, one);
        }
        StepSurface ss;
        ss.step = ent.step();
        ss.cells.reserve(scan.alpha_grid.size() * scan.beta_grid.size());
        for (const auto& alpha : scan.alpha_grid) {
            for (const auto& beta : scan.beta_grid) {
                VarianceCell cell;
                try {
                    const ConditionedDistribution cd = conditioned_distribution_evolved(
                        ent, cls, scan.weight, alpha, beta);
                    cell.success_probability = cd.joint_success_probability;
                    cell.raw = variance(cd.distribution);
                    ss.min_raw = std::min(ss.min_raw.value_or(*cell.raw), *cell.raw);
                    ss.max_raw = std::max(ss.max_raw.value_or(*cell.raw), *cell.raw);
                } catch (const ZeroSuccess&) {
                    cell.success_probability = 0.0;
                }
                ss.cells.push_back(cell);
            }
        }
        if (ss.min_raw) {
            const double range = *ss.max_raw - *ss.min_raw;
            for (auto& cell : ss.cells) {
                if (!cell.raw) continue;
                cell.normalized = range > 0.0 ? (*cell.raw - *ss.min_raw) / range : 0.0;
            }
        }
        surface.steps.push_back(std::move(ss));
    }
    return surface;
}

}  // namespace entwalk
