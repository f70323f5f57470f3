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

#ifndef ENTWALK_TOMOGRAPHY_H
#define ENTWALK_TOMOGRAPHY_H

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "entwalk/hilbert.h"
#include "entwalk/walk.h"

// Emulated two-qubit polarization tomography: Pauli-eigenstate projector
// pairs, binomial coincidence sampling, linear inversion and a projection back
// onto the physical density matrices.

namespace entwalk {

enum class PauliEigenstate : int { H = 0, V, D, A, R, L };

std::string_view to_string(PauliEigenstate s);
QubitBlock ket(PauliEigenstate s);

struct MeasurementSetting {
    PauliEigenstate alice;
    PauliEigenstate bob;

    friend bool operator==(const MeasurementSetting&,
                           const MeasurementSetting&) = default;
};

/// All 36 projector pairs, Alice-major in the order H, V, D, A, R, L.
std::vector<MeasurementSetting> standard_settings();

/// tr[rho (P_alice x P_bob)] for each setting.
std::vector<double> born_probabilities(const TwoQubitDensity& rho,
                                       std::span<const MeasurementSetting> settings);

struct CountRecord {
    std::vector<MeasurementSetting> settings;
    std::vector<std::uint64_t> counts;
    std::uint64_t shots_per_setting = 0;
    std::uint64_t seed = 0;
};

/// Independent binomial draw per setting, reproducible from `seed`.
/// Throws InvalidArgument for zero shots.
CountRecord sample_counts(const TwoQubitDensity& rho,
                          std::span<const MeasurementSetting> settings,
                          std::uint64_t shots, std::uint64_t seed);

/// Derives an independent stream seed for one (step, position) cell.
std::uint64_t cell_seed(std::uint64_t master_seed, int step, int position);

struct ReconstructionReport {
    TwoQubitDensity rho_hat = TwoQubitDensity::maximally_mixed();
    /// Present when the true state was supplied.
    std::optional<double> fidelity_to_truth;
    double purity = 0.0;
    double chsh = 0.0;
};

/// Unconstrained linear-inversion estimate from per-setting frequencies:
/// Hermitian and unit trace, possibly with negative eigenvalues. Exact on
/// noiseless data. Throws MissingSetting unless all 36 standard settings
/// appear.
Eigen::Matrix4cd linear_inversion(std::span<const MeasurementSetting> settings,
                                  std::span<const double> frequencies);

/// Closest unit-trace positive semidefinite matrix in Frobenius norm.
Eigen::Matrix4cd project_to_density(const Eigen::Matrix4cd& hermitian);

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const TwoQubitDensity& rho, const TwoQubitDensity& sigma);

/// Frequencies count / shots, then linear inversion and PSD projection.
/// Throws MissingSetting or DegenerateCounts (all counts zero).
ReconstructionReport reconstruct(const CountRecord& counts,
                                 const std::optional<TwoQubitDensity>& truth = {});

/// Noiseless variant fed with exact probabilities.
ReconstructionReport reconstruct_from_probabilities(
    std::span<const MeasurementSetting> settings,
    std::span<const double> probabilities,
    const std::optional<TwoQubitDensity>& truth = {});

/// Finite-count sampling parameters; zero shots selects the infinite-shot
/// limit, where exact Born probabilities are inverted directly.
struct Sampling {
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
};

struct PipelineResult {
    ReconstructionReport report;
    int step = 0;
    int position = 0;
    /// Weight of the position at this step.
    double probability = 0.0;
};

/// Evolves `initial` config.steps steps, conditions on `position`, simulates
/// the measurement and reconstructs. Propagates EmptyPosition.
PipelineResult tomography_pipeline(const Ensemble& initial,
                                   const WalkConfig& config, int position,
                                   const Sampling& sampling);

/// Same, for a state already evolved to the step of interest. Counts are drawn
/// with cell_seed(sampling.seed, step, position).
PipelineResult tomography_at(const Ensemble& evolved, int position,
                             const Sampling& sampling);

}  // namespace entwalk

#endif  // ENTWALK_TOMOGRAPHY_H
