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

#ifndef ENTWALK_REMOTE_H
#define ENTWALK_REMOTE_H

#include <map>
#include <optional>
#include <vector>

#include "entwalk/hilbert.h"
#include "entwalk/walk.h"

// Remote conditioning: Bob's coin and Alice's polarization are both projected
// and the resulting position distribution of Bob's photon is compared between
// the entangled state and classically correlated (dephased) references.

namespace entwalk {

/// Bell state with the Alice/Bob coherences removed in the basis
/// {angle, angle.orthogonal()}.
struct DephasedBellSpec {
    PolarizationAngle basis_angle;
};

/// Below this total projected mass a conditioning outcome is ZeroSuccess.
inline constexpr double kZeroSuccessThreshold = 1e-14;

/// Equal-weight branches |theta, theta_perp, 0> and |theta_perp, theta, 0>.
Ensemble make_classical_reference(const DephasedBellSpec& spec);

/// Weight of the entangled state in the mixture, gamma in
/// P_B = <A,B,x| (1 - gamma) q + gamma |Phi><Phi| |A,B,x>.
struct EntangledWeight {
    double value = 1.0;

    /// Throws InvalidArgument outside [0, 1].
    static EntangledWeight of(double entangled_weight);
    static EntangledWeight from_classical_weight(double classical_weight);
};

/// Unnormalized projected masses of the gamma-mixture for states that have
/// already been evolved to the same step.
std::map<int, double> conditioned_masses(const Ensemble& entangled,
                                         const Ensemble& classical,
                                         EntangledWeight weight,
                                         PolarizationAngle alice,
                                         PolarizationAngle bob);

struct ConditionedDistribution {
    PositionDistribution distribution;
    /// Total projected mass before renormalization.
    double joint_success_probability = 0.0;
};

/// Normalizes `conditioned_masses` for pre-evolved states. Throws ZeroSuccess
/// when the total mass is below 1e-14.
ConditionedDistribution conditioned_distribution_evolved(
    const Ensemble& entangled, const Ensemble& classical, EntangledWeight weight,
    PolarizationAngle alice, PolarizationAngle bob);

/// Evolves both inputs `steps` Hadamard steps, then conditions.
ConditionedDistribution conditioned_distribution(const Ensemble& entangled,
                                                 const Ensemble& classical,
                                                 EntangledWeight weight,
                                                 PolarizationAngle alice,
                                                 PolarizationAngle bob,
                                                 int steps);

/// sum x^2 P(x) - (sum x P(x))^2. Throws UnnormalizedDistribution if the
/// probabilities do not sum to one within 1e-10.
double variance(const PositionDistribution& dist);

struct ConditioningScan {
    std::vector<PolarizationAngle> alpha_grid;
    std::vector<PolarizationAngle> beta_grid;
    int steps = 0;
    EntangledWeight weight;
    DephasedBellSpec reference;
    CoinSpec coin = CoinSpec::hadamard();

    /// Both grids set to {0, step, 2 step, ...} below 180 degrees.
    static std::vector<PolarizationAngle> angle_grid(
        double step_deg, double phase_deg = 90.0);
};

struct VarianceCell {
    /// Empty for a ZeroSuccess projection.
    std::optional<double> raw;
    std::optional<double> normalized;
    double success_probability = 0.0;
};

struct StepSurface {
    int step = 0;
    /// Row-major, cells[ia * beta_count + ib].
    std::vector<VarianceCell> cells;
    std::optional<double> min_raw;
    std::optional<double> max_raw;
};

struct VarianceSurface {
    std::vector<PolarizationAngle> alpha_grid;
    std::vector<PolarizationAngle> beta_grid;
    std::vector<StepSurface> steps;

    const VarianceCell& cell(int step, std::size_t ia, std::size_t ib) const;
};

/// Variance over the (alpha, beta) grid for every step 0..scan.steps, min-max
/// normalized per step over present cells. A step whose present variances
/// are all equal gets normalized value 0 everywhere.
VarianceSurface run_scan(const ConditioningScan& scan, const Ensemble& entangled);

}  // namespace entwalk

#endif  // ENTWALK_REMOTE_H
