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

#ifndef ENTWALK_WALK_H
#define ENTWALK_WALK_H

#include <map>

#include <Eigen/Dense>

#include "entwalk/hilbert.h"

namespace entwalk {

using CoinMatrix = Eigen::Matrix2cd;

/// Coin operator, either the Hadamard coin everywhere or a general
/// position-dependent unitary with a default for unlisted positions.
class CoinSpec {
   public:
    enum class Kind { Hadamard, General };

    static constexpr double kUnitaryTolerance = 1e-10;

    static CoinSpec hadamard();
    static CoinSpec identity();

    /// Throws NonUnitaryCoin if any supplied block is not unitary.
    static CoinSpec general(const CoinMatrix& default_coin,
                            std::map<int, CoinMatrix> per_position = {});

    Kind kind() const { return kind_; }
    const CoinMatrix& at(int position) const;

   private:
    CoinSpec(Kind kind, CoinMatrix default_coin,
             std::map<int, CoinMatrix> per_position);

    Kind kind_;
    CoinMatrix default_;
    std::map<int, CoinMatrix> per_position_;
};

struct WalkConfig {
    int steps = 0;
    CoinSpec coin = CoinSpec::hadamard();
};

/// Rotates Bob's coin at every position. Alice and positions are untouched.
TripartiteState apply_coin(const TripartiteState& state, const CoinSpec& coin);

/// Moves coin-H amplitudes to x + 1 and coin-V amplitudes to x - 1. The step
/// counter is not advanced.
TripartiteState apply_shift(const TripartiteState& state);

/// One coin-then-shift step; advances the step counter.
TripartiteState walk_step(const TripartiteState& state, const CoinSpec& coin);

TripartiteState evolve(const TripartiteState& initial, const WalkConfig& config);
Ensemble evolve(const Ensemble& initial, const WalkConfig& config);

/// P(x) summed over both polarizations and, for ensembles, over branches.
PositionDistribution position_distribution(const Ensemble& input);

}  // namespace entwalk

#endif  // ENTWALK_WALK_H
