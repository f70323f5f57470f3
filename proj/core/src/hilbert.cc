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

#include "entwalk/hilbert.h"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace entwalk {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void prune(std::map<int, Block>& blocks) {
    for (auto it = blocks.begin(); it != blocks.end();) {
        bool any = false;
        for (auto& a : it->second) {
            if (std::abs(a) < kAmplitudeFloor) {
                a = Complex{0.0, 0.0};
            } else {
                any = true;
            }
        }
        it = any ? std::next(it) : blocks.erase(it);
    }
}

double block_norm(const Block& b) {
    double n = 0.0;
    for (const auto& a : b) n += std::norm(a);
    return n;
}

void check_norm(const std::map<int, Block>& blocks) {
    double n = 0.0;
    for (const auto& [x, b] : blocks) n += block_norm(b);
    if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTolerance) {
        std::ostringstream msg;
        msg << "tripartite state not normalized: norm^2 = " << n;
        throw InvalidState(msg.str());
    }
}

void check_support(const std::map<int, Block>& blocks, int step) {
    if (step < 0) throw InvalidState("negative step counter");
    for (const auto& [x, b] : blocks) {
        if (std::abs(x) > step) {
            std::ostringstream msg;
            msg << "position " << x << " outside support of step " << step;
            throw InvalidState(msg.str());
        }
    }
}

Complex bra(const QubitBlock& ket, int index) { return std::conj(ket[index]); }

// Contracts the named qubit of one block against <angle|.
QubitBlock contract(const Block& b, Party party, const QubitBlock& ket) {
    QubitBlock out{};
    for (int a = 0; a < 2; ++a) {
        for (int c = 0; c < 2; ++c) {
            const Complex amp = b[2 * a + c];
            if (party == Party::Alice) {
                out[c] += bra(ket, a) * amp;
            } else {
                out[a] += bra(ket, c) * amp;
            }
        }
    }
    return out;
}

}  // namespace

PolarizationAngle PolarizationAngle::from_degrees(double theta_deg,
                                                  double phase_deg) {
    constexpr double kDeg = std::numbers::pi / 180.0;
    return {theta_deg * kDeg, phase_deg * kDeg};
}

PolarizationAngle PolarizationAngle::orthogonal() const {
    return {theta + std::numbers::pi / 2.0, relative_phase};
}

QubitBlock PolarizationAngle::ket() const {
    return {Complex{std::cos(theta), 0.0},
            std::polar(1.0, relative_phase) * std::sin(theta)};
}

TripartiteState TripartiteState::from_amplitudes(
    std::span<const std::pair<BasisLabel, Complex>> entries, int step) {
    std::map<int, Block> blocks;
    for (const auto& [label, amp] : entries) {
        blocks[label.position][block_index(label.alice, label.coin)] += amp;
    }
    return TripartiteState(std::move(blocks), step);
}

TripartiteState::TripartiteState(std::map<int, Block> blocks, int step)
    : blocks_(std::move(blocks)), step_(step) {
    prune(blocks_);
    check_norm(blocks_);
    check_support(blocks_, step_);
}

TripartiteState::TripartiteState(Unchecked, std::map<int, Block> blocks,
                                 int step)
    : blocks_(std::move(blocks)), step_(step) {
    prune(blocks_);
    check_norm(blocks_);
}

TripartiteState TripartiteState::without_support_check(
    std::map<int, Block> blocks, int step) {
    return TripartiteState(Unchecked{}, std::move(blocks), step);
}

Complex TripartiteState::amplitude(Pol alice, Pol coin, int position) const {
    auto it = blocks_.find(position);
    if (it == blocks_.end()) return {0.0, 0.0};
    return it->second[block_index(alice, coin)];
}

double TripartiteState::norm_squared() const {
    double n = 0.0;
    for (const auto& [x, b] : blocks_) n += block_norm(b);
    return n;
}

std::size_t TripartiteState::nonzero_count() const {
    std::size_t n = 0;
    for (const auto& [x, b] : blocks_) {
        for (const auto& a : b) n += (a != Complex{0.0, 0.0}) ? 1 : 0;
    }
    return n;
}

Block TripartiteState::block_at(int position) const {
    auto it = blocks_.find(position);
    return it == blocks_.end() ? Block{} : it->second;
}

Ensemble::Ensemble(TripartiteState state)
    : branches_{Branch{1.0, std::move(state)}} {}

Ensemble::Ensemble(std::vector<Branch> branches)
    : branches_(std::move(branches)) {
    if (branches_.empty()) throw InvalidState("empty ensemble");
    double total = 0.0;
    for (const auto& br : branches_) {
        if (!(br.weight > 0.0) || br.weight > 1.0 + kNormTolerance) {
            throw InvalidState("ensemble weight outside (0, 1]");
        }
        if (br.state.step() != branches_.front().state.step()) {
            throw InvalidState("ensemble branches at different steps");
        }
        total += br.weight;
    }
    if (std::abs(total - 1.0) > kNormTolerance) {
        throw InvalidState("ensemble weights do not sum to one");
    }
}

TwoQubitDensity::TwoQubitDensity(const Matrix& matrix) : matrix_(matrix) {
    if (!matrix_.allFinite()) throw InvalidState("density has non-finite entries");
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance) {
        throw InvalidState("density not Hermitian");
    }
    const Complex tr = matrix_.trace();
    if (std::abs(tr.real() - 1.0) > kTraceTolerance ||
        std::abs(tr.imag()) > kTraceTolerance) {
        throw InvalidState("density trace differs from one");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_,
                                                 Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < kEigenvalueFloor) {
        throw InvalidState("density has a negative eigenvalue");
    }
}

TwoQubitDensity TwoQubitDensity::pure(const Block& ket) {
    Eigen::Vector4cd v(ket[0], ket[1], ket[2], ket[3]);
    const double n = v.squaredNorm();
    if (!(n > 0.0)) throw InvalidState("zero vector has no density");
    Matrix m = v * v.adjoint() / n;
    m = 0.5 * (m + m.adjoint()).eval();
    return TwoQubitDensity(m);
}

TwoQubitDensity TwoQubitDensity::maximally_mixed() {
    return TwoQubitDensity(Matrix::Identity() / 4.0);
}

double PositionDistribution::total() const {
    double s = 0.0;
    for (const auto& [x, p] : probs) s += p;
    return s;
}

double PositionDistribution::at(int position) const {
    auto it = probs.find(position);
    return it == probs.end() ? 0.0 : it->second;
}

ConditionalDensity condition_on_position(const Ensemble& input, int position) {
    TwoQubitDensity::Matrix acc = TwoQubitDensity::Matrix::Zero();
    double probability = 0.0;
    for (const auto& br : input.branches()) {
        const Block b = br.state.block_at(position);
        Eigen::Vector4cd v(b[0], b[1], b[2], b[3]);
        acc += br.weight * (v * v.adjoint());
        probability += br.weight * v.squaredNorm();
    }
    if (probability < kEmptyPositionThreshold) {
        std::ostringstream msg;
        msg << "position " << position << " has probability " << probability;
        throw EmptyPosition(msg.str());
    }
    acc /= probability;
    acc = 0.5 * (acc + acc.adjoint()).eval();
    return {TwoQubitDensity(acc), probability};
}

double QubitPositionState::norm_squared() const {
    double n = 0.0;
    for (const auto& [x, q] : amplitudes) n += std::norm(q[0]) + std::norm(q[1]);
    return n;
}

namespace {

// Masses at or below this are rounding residue of an orthogonal contraction
// and are reported as a zero-probability outcome.
constexpr double kProjectionFloor = kAmplitudeFloor * kAmplitudeFloor;

}  // namespace

Projection<QubitPositionState> project_polarization(const TripartiteState& state,
                                                    Party party,
                                                    PolarizationAngle angle) {
    const QubitBlock ket = angle.ket();
    QubitPositionState rem;
    rem.step = state.step();
    for (const auto& [x, b] : state.blocks()) {
        rem.amplitudes[x] = contract(b, party, ket);
    }
    Projection<QubitPositionState> out;
    out.probability = rem.norm_squared();
    if (out.probability > kProjectionFloor) {
        const double s = 1.0 / std::sqrt(out.probability);
        for (auto& [x, q] : rem.amplitudes) {
            q[0] *= s;
            q[1] *= s;
        }
        out.remainder = std::move(rem);
    }
    return out;
}

Projection<WeightedRemainders<QubitPositionState>> project_polarization(
    const Ensemble& input, Party party, PolarizationAngle angle) {
    Projection<WeightedRemainders<QubitPositionState>> out;
    WeightedRemainders<QubitPositionState> parts;
    for (const auto& br : input.branches()) {
        auto p = project_polarization(br.state, party, angle);
        if (p.remainder) {
            out.probability += br.weight * p.probability;
            parts.emplace_back(br.weight * p.probability, std::move(*p.remainder));
        }
    }
    if (out.probability > kProjectionFloor) {
        for (auto& [w, r] : parts) w /= out.probability;
        out.remainder = std::move(parts);
    }
    return out;
}

Projection<PositionAmplitudes> project_polarization(
    const QubitPositionState& state, PolarizationAngle angle) {
    const QubitBlock ket = angle.ket();
    PositionAmplitudes amps;
    double mass = 0.0;
    for (const auto& [x, q] : state.amplitudes) {
        const Complex a = bra(ket, 0) * q[0] + bra(ket, 1) * q[1];
        amps[x] = a;
        mass += std::norm(a);
    }
    Projection<PositionAmplitudes> out;
    out.probability = mass;
    if (mass > kProjectionFloor) {
        const double s = 1.0 / std::sqrt(mass);
        for (auto& [x, a] : amps) a *= s;
        out.remainder = std::move(amps);
    }
    return out;
}

Projection<WeightedRemainders<PositionAmplitudes>> project_polarization(
    const WeightedRemainders<QubitPositionState>& input,
    PolarizationAngle angle) {
    Projection<WeightedRemainders<PositionAmplitudes>> out;
    WeightedRemainders<PositionAmplitudes> parts;
    for (const auto& [w, state] : input) {
        auto p = project_polarization(state, angle);
        if (p.remainder) {
            out.probability += w * p.probability;
            parts.emplace_back(w * p.probability, std::move(*p.remainder));
        }
    }
    if (out.probability > kProjectionFloor) {
        for (auto& [w, r] : parts) w /= out.probability;
        out.remainder = std::move(parts);
    }
    return out;
}

std::map<int, double> projected_masses(const TripartiteState& state,
                                       PolarizationAngle alice,
                                       PolarizationAngle bob) {
    const QubitBlock ka = alice.ket();
    const QubitBlock kb = bob.ket();
    std::map<int, double> out;
    for (const auto& [x, b] : state.blocks()) {
        Complex amp{0.0, 0.0};
        for (int a = 0; a < 2; ++a) {
            for (int c = 0; c < 2; ++c) {
                amp += bra(ka, a) * bra(kb, c) * b[2 * a + c];
            }
        }
        out[x] = std::norm(amp);
    }
    return out;
}

TripartiteState make_bell_initial() {
    std::map<int, Block> blocks;
    blocks[0][block_index(Pol::H, Pol::V)] = kInvSqrt2;
    blocks[0][block_index(Pol::V, Pol::H)] = kInvSqrt2;
    return TripartiteState(std::move(blocks), 0);
}

Ensemble make_werner_initial(double visibility) {
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw InvalidArgument("visibility must lie in [0, 1]");
    }
    std::vector<Branch> branches;
    if (visibility > 0.0) branches.push_back({visibility, make_bell_initial()});
    const double noise = (1.0 - visibility) / 4.0;
    if (noise > 0.0) {
        for (int k = 0; k < 4; ++k) {
            std::map<int, Block> blocks;
            blocks[0][k] = 1.0;
            branches.push_back({noise, TripartiteState(std::move(blocks), 0)});
        }
    }
    return Ensemble(std::move(branches));
}

}  // namespace entwalk
