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

#ifndef ENTWALK_HILBERT_H
#define ENTWALK_HILBERT_H

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "entwalk/errors.h"

// State representation for the tripartite system made of Alice's polarization
// qubit, Bob's coin (polarization) qubit and Bob's integer walk position.
//
// Pure states are stored sparsely as one 4-component block per occupied
// position. Block index is 2 * alice + coin with H = 0 and V = 1, so a block is
// already the (HH, HV, VH, VV) two-qubit ket for that position with Alice's
// qubit first. Mixed states are ensembles of pure branches.

namespace entwalk {

using Complex = std::complex<double>;

enum class Pol : int { H = 0, V = 1 };

enum class Party { Alice, BobCoin };

/// Amplitudes at one position, indexed by 2 * alice + coin.
using Block = std::array<Complex, 4>;

/// Amplitudes of a single remaining qubit at one position.
using QubitBlock = std::array<Complex, 2>;

inline constexpr double kAmplitudeFloor = 1e-14;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kEmptyPositionThreshold = 1e-12;

constexpr int block_index(Pol alice, Pol coin) {
    return 2 * static_cast<int>(alice) + static_cast<int>(coin);
}

/// Single-qubit projector state cos(theta)|H> + exp(i phase) sin(theta)|V>.
///
/// The default relative phase of pi/2 places every angle on the great circle
/// through H, R, V and L. With that phase, remote-conditioning statistics at
/// step one are identical for the Bell state and its H/V-dephased mixture for
/// all angle pairs. A phase of zero gives the real linear-polarization family.
/// theta is meaningful modulo pi (the state only changes sign).
struct PolarizationAngle {
    static constexpr double kDefaultRelativePhase = std::numbers::pi / 2.0;

    double theta = 0.0;
    double relative_phase = kDefaultRelativePhase;

    static PolarizationAngle from_degrees(double theta_deg,
                                          double phase_deg = 90.0);

    /// The orthogonal partner, theta + pi/2 on the same great circle.
    PolarizationAngle orthogonal() const;

    QubitBlock ket() const;
};

struct BasisLabel {
    Pol alice;
    Pol coin;
    int position;
};

/// Pure tripartite state with sparse position support.
class TripartiteState {
   public:
    /// Builds a state from (label, amplitude) entries. Repeated labels add.
    /// Throws InvalidState unless the state is normalized and every occupied
    /// position satisfies |x| <= step.
    static TripartiteState from_amplitudes(
        std::span<const std::pair<BasisLabel, Complex>> entries, int step);

    /// Builds a state from per-position blocks, validating norm and support.
    TripartiteState(std::map<int, Block> blocks, int step);

    /// Norm-checked only. Used for intermediates of a walk step whose support
    /// temporarily runs ahead of the step counter.
    static TripartiteState without_support_check(std::map<int, Block> blocks,
                                                 int step);

    int step() const { return step_; }
    const std::map<int, Block>& blocks() const { return blocks_; }

    Complex amplitude(Pol alice, Pol coin, int position) const;
    double norm_squared() const;
    std::size_t nonzero_count() const;

    /// Block at x, or all zeros for an absent position.
    Block block_at(int position) const;

   private:
    struct Unchecked {};
    TripartiteState(Unchecked, std::map<int, Block> blocks, int step);

    std::map<int, Block> blocks_;
    int step_ = 0;
};

struct Branch {
    double weight;
    TripartiteState state;
};

/// Convex mixture of pure tripartite states. All branches share a step.
class Ensemble {
   public:
    /// Single-branch ensemble.
    Ensemble(TripartiteState state);  // NOLINT(google-explicit-constructor)

    /// Throws InvalidState if weights are outside (0, 1], do not sum to one,
    /// the list is empty or the branches disagree on the step.
    explicit Ensemble(std::vector<Branch> branches);

    const std::vector<Branch>& branches() const { return branches_; }
    std::size_t size() const { return branches_.size(); }
    int step() const { return branches_.front().state.step(); }

   private:
    std::vector<Branch> branches_;
};

/// 4x4 density operator for (Alice polarization, Bob coin), basis order
/// HH, HV, VH, VV.
class TwoQubitDensity {
   public:
    using Matrix = Eigen::Matrix4cd;

    static constexpr double kHermitianTolerance = 1e-10;
    static constexpr double kTraceTolerance = 1e-10;
    static constexpr double kEigenvalueFloor = -1e-9;

    /// Throws InvalidState unless the matrix is Hermitian, unit trace and
    /// positive semidefinite within tolerance.
    explicit TwoQubitDensity(const Matrix& matrix);

    /// |psi><psi| / <psi|psi>. Throws InvalidState for a zero vector.
    static TwoQubitDensity pure(const Block& ket);
    static TwoQubitDensity maximally_mixed();

    const Matrix& matrix() const { return matrix_; }

   private:
    Matrix matrix_;
};

/// Probabilities over Bob's positions.
struct PositionDistribution {
    std::map<int, double> probs;
    int step = 0;

    double total() const;
    double at(int position) const;
};

struct ConditionalDensity {
    TwoQubitDensity density;
    double probability;
};

/// Alice/coin density at position x, renormalized, plus the weight of x.
/// Throws EmptyPosition if that weight is below 1e-12.
ConditionalDensity condition_on_position(const Ensemble& input, int position);

/// Remaining qubit and position after one polarization qubit was projected.
struct QubitPositionState {
    std::map<int, QubitBlock> amplitudes;
    int step = 0;

    double norm_squared() const;
};

using PositionAmplitudes = std::map<int, Complex>;

template <class Remainder>
struct Projection {
    /// Success probability of the projection.
    double probability = 0.0;
    /// Renormalized post-measurement object; empty for a zero-probability
    /// outcome.
    std::optional<Remainder> remainder;
};

/// Mixture of projected remainders with renormalized weights.
template <class Remainder>
using WeightedRemainders = std::vector<std::pair<double, Remainder>>;

Projection<QubitPositionState> project_polarization(const TripartiteState& state,
                                                    Party party,
                                                    PolarizationAngle angle);

Projection<WeightedRemainders<QubitPositionState>> project_polarization(
    const Ensemble& input, Party party, PolarizationAngle angle);

/// Projects the one qubit left after a first projection.
Projection<PositionAmplitudes> project_polarization(
    const QubitPositionState& state, PolarizationAngle angle);

Projection<WeightedRemainders<PositionAmplitudes>> project_polarization(
    const WeightedRemainders<QubitPositionState>& input,
    PolarizationAngle angle);

/// Unnormalized |<A, B, x|psi>|^2 for every occupied x.
std::map<int, double> projected_masses(const TripartiteState& state,
                                       PolarizationAngle alice,
                                       PolarizationAngle bob);

/// (|H,V,0> + |V,H,0>) / sqrt(2) at step 0.
TripartiteState make_bell_initial();

/// v |Psi+><Psi+| + (1 - v) I/4 at the origin as five pure branches.
/// Throws InvalidArgument unless 0 <= v <= 1.
Ensemble make_werner_initial(double visibility);

}  // namespace entwalk

#endif  // ENTWALK_HILBERT_H
