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

#include "entwalk/walk.h"

#include <cmath>
#include <utility>
#include <vector>

namespace entwalk {
namespace {

void require_unitary(const CoinMatrix& m) {
    if (!m.allFinite() ||
        (m.adjoint() * m - CoinMatrix::Identity()).cwiseAbs().maxCoeff() >
            CoinSpec::kUnitaryTolerance) {
        throw NonUnitaryCoin("coin block is not unitary");
    }
}

void require_steps(int steps) {
    if (steps < 0) throw InvalidArgument("walk steps must be nonnegative");
}

}  // namespace

CoinSpec::CoinSpec(Kind kind, CoinMatrix default_coin,
                   std::map<int, CoinMatrix> per_position)
    : kind_(kind),
      default_(std::move(default_coin)),
      per_position_(std::move(per_position)) {}

CoinSpec CoinSpec::hadamard() {
    CoinMatrix h;
    h << 1.0, 1.0, 1.0, -1.0;
    h /= std::sqrt(2.0);
    return CoinSpec(Kind::Hadamard, h, {});
}

CoinSpec CoinSpec::identity() {
    return general(CoinMatrix::Identity());
}

CoinSpec CoinSpec::general(const CoinMatrix& default_coin,
                           std::map<int, CoinMatrix> per_position) {
    require_unitary(default_coin);
    for (const auto& [x, m] : per_position) require_unitary(m);
    return CoinSpec(Kind::General, default_coin, std::move(per_position));
}

const CoinMatrix& CoinSpec::at(int position) const {
    if (per_position_.empty()) return default_;
    auto it = per_position_.find(position);
    return it == per_position_.end() ? default_ : it->second;
}

TripartiteState apply_coin(const TripartiteState& state, const CoinSpec& coin) {
    std::map<int, Block> out;
    for (const auto& [x, b] : state.blocks()) {
        const CoinMatrix& c = coin.at(x);
        Block nb{};
        for (int a = 0; a < 2; ++a) {
            for (int p = 0; p < 2; ++p) {
                nb[2 * a + p] = c(p, 0) * b[2 * a] + c(p, 1) * b[2 * a + 1];
            }
        }
        out.emplace(x, nb);
    }
    return TripartiteState::without_support_check(std::move(out), state.step());
}

TripartiteState apply_shift(const TripartiteState& state) {
    std::map<int, Block> out;
    for (const auto& [x, b] : state.blocks()) {
        Block& up = out[x + 1];
        Block& down = out[x - 1];
        for (int a = 0; a < 2; ++a) {
            up[2 * a] += b[2 * a];
            down[2 * a + 1] += b[2 * a + 1];
        }
    }
    return TripartiteState::without_support_check(std::move(out), state.step());
}

TripartiteState walk_step(const TripartiteState& state, const CoinSpec& coin) {
    TripartiteState shifted = apply_shift(apply_coin(state, coin));
    std::map<int, Block> blocks = shifted.blocks();
    return TripartiteState(std::move(blocks), state.step() + 1);
}

TripartiteState evolve(const TripartiteState& initial, const WalkConfig& config) {
    require_steps(config.steps);
    TripartiteState state = initial;
    for (int t = 0; t < config.steps; ++t) state = walk_step(state, config.coin);
    return state;
}

Ensemble evolve(const Ensemble& initial, const WalkConfig& config) {
    require_steps(config.steps);
    std::vector<Branch> out;
    out.reserve(initial.size());
    for (const auto& br : initial.branches()) {
        out.push_back({br.weight, evolve(br.state, config)});
    }
    return Ensemble(std::move(out));
}

PositionDistribution position_distribution(const Ensemble& input) {
    PositionDistribution dist;
    dist.step = input.step();
    for (const auto& br : input.branches()) {
        for (const auto& [x, b] : br.state.blocks()) {
            double p = 0.0;
            for (const auto& a : b) p += std::norm(a);
            dist.probs[x] += br.weight * p;
        }
    }
    return dist;
}

}  // namespace entwalk
