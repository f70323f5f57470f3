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
#include <random>

#include "gtest/gtest.h"
#include "support/oracle.h"

namespace entwalk {
namespace {

constexpr double kRoot = 0.70710678118654752440;

TripartiteState single(Pol alice, Pol coin, int x, int step) {
    std::map<int, Block> blocks;
    blocks[x][block_index(alice, coin)] = 1.0;
    return TripartiteState(std::move(blocks), step);
}

TripartiteState random_state(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::map<int, Block> blocks;
    double norm = 0.0;
    for (auto& a : blocks[0]) {
        a = Complex{n(rng), n(rng)};
        norm += std::norm(a);
    }
    for (auto& a : blocks[0]) a /= std::sqrt(norm);
    return TripartiteState(std::move(blocks), 0);
}

testing::DenseState to_dense(const TripartiteState& s, int max_steps) {
    std::vector<std::tuple<int, int, int, Complex>> entries;
    for (const auto& [x, b] : s.blocks())
        for (int i = 0; i < 4; ++i) entries.emplace_back(i / 2, i % 2, x, b[i]);
    return testing::dense_from(entries, max_steps);
}

TEST(walk, hadamard_on_horizontal_coin) {
    const TripartiteState out =
        apply_coin(single(Pol::H, Pol::H, 0, 0), CoinSpec::hadamard());
    EXPECT_NEAR(out.amplitude(Pol::H, Pol::H, 0).real(), kRoot, 1e-15);
    EXPECT_NEAR(out.amplitude(Pol::H, Pol::V, 0).real(), kRoot, 1e-15);
    EXPECT_EQ(out.nonzero_count(), 2u);
}

TEST(walk, hadamard_on_vertical_coin) {
    const TripartiteState out =
        apply_coin(single(Pol::H, Pol::V, 0, 0), CoinSpec::hadamard());
    EXPECT_NEAR(out.amplitude(Pol::H, Pol::H, 0).real(), kRoot, 1e-15);
    EXPECT_NEAR(out.amplitude(Pol::H, Pol::V, 0).real(), -kRoot, 1e-15);
}

TEST(walk, identity_coin_leaves_state_unchanged) {
    std::mt19937_64 rng(3);
    const TripartiteState s = random_state(rng);
    const TripartiteState out = apply_coin(s, CoinSpec::identity());
    for (int i = 0; i < 4; ++i)
        EXPECT_EQ(out.block_at(0)[i], s.block_at(0)[i]);
}

TEST(walk, shift_moves_h_right_and_v_left) {
    const TripartiteState right = apply_shift(single(Pol::H, Pol::H, 0, 0));
    EXPECT_NEAR(std::abs(right.amplitude(Pol::H, Pol::H, 1)), 1.0, 1e-15);
    EXPECT_EQ(right.step(), 0);
    const TripartiteState left = apply_shift(single(Pol::H, Pol::V, 0, 0));
    EXPECT_NEAR(std::abs(left.amplitude(Pol::H, Pol::V, -1)), 1.0, 1e-15);
}

TEST(walk, shift_preserves_norm) {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 20; ++k) {
        const TripartiteState s = random_state(rng);
        EXPECT_NEAR(apply_shift(s).norm_squared(), s.norm_squared(), 1e-15);
    }
}

TEST(walk, non_unitary_coin_rejected) {
    CoinMatrix m;
    m << 1.0, 1.0, 0.0, 1.0;
    EXPECT_THROW(CoinSpec::general(m), NonUnitaryCoin);
    EXPECT_THROW(CoinSpec::general(CoinMatrix::Identity(), {{3, m}}), NonUnitaryCoin);
}

TEST(walk, position_dependent_coin) {
    CoinMatrix flip;
    flip << 0.0, 1.0, 1.0, 0.0;
    const CoinSpec coin = CoinSpec::general(CoinMatrix::Identity(), {{1, flip}});
    EXPECT_EQ(coin.kind(), CoinSpec::Kind::General);
    // H moves to +1, flips to V there, then returns to 0.
    const TripartiteState out =
        evolve(single(Pol::V, Pol::H, 0, 0), WalkConfig{2, coin});
    EXPECT_NEAR(std::abs(out.amplitude(Pol::V, Pol::V, 0)), 1.0, 1e-15);
}

TEST(walk, one_bell_step) {
    const TripartiteState out = walk_step(make_bell_initial(), CoinSpec::hadamard());
    EXPECT_EQ(out.step(), 1);
    EXPECT_EQ(out.nonzero_count(), 4u);
    const PositionDistribution d = position_distribution(out);
    EXPECT_EQ(d.probs.size(), 2u);
    EXPECT_NEAR(d.at(-1), 0.5, 1e-15);
    EXPECT_NEAR(d.at(1), 0.5, 1e-15);
    // |H>_A (|H,1> - |V,-1>)/2 + |V>_A (|H,1> + |V,-1>)/2
    EXPECT_NEAR(out.amplitude(Pol::H, Pol::H, 1).real(), 0.5, 1e-15);
    EXPECT_NEAR(out.amplitude(Pol::H, Pol::V, -1).real(), -0.5, 1e-15);
    EXPECT_NEAR(out.amplitude(Pol::V, Pol::H, 1).real(), 0.5, 1e-15);
    EXPECT_NEAR(out.amplitude(Pol::V, Pol::V, -1).real(), 0.5, 1e-15);
}

TEST(walk, cancelled_amplitudes_are_dropped) {
    // From (|H> + |V>)/sqrt 2 the Hadamard coin cancels V exactly.
    std::map<int, Block> blocks;
    blocks[0][0] = kRoot;
    blocks[0][1] = kRoot;
    const TripartiteState out =
        walk_step(TripartiteState(std::move(blocks), 0), CoinSpec::hadamard());
    EXPECT_EQ(out.nonzero_count(), 1u);
    EXPECT_EQ(out.blocks().count(-1), 0u);
}

TEST(walk, identity_coin_is_ballistic) {
    const TripartiteState out =
        evolve(single(Pol::H, Pol::H, 0, 0), WalkConfig{2, CoinSpec::identity()});
    EXPECT_NEAR(std::abs(out.amplitude(Pol::H, Pol::H, 2)), 1.0, 1e-15);
    EXPECT_EQ(out.nonzero_count(), 1u);
}

TEST(walk, zero_steps_returns_input) {
    const TripartiteState bell = make_bell_initial();
    const TripartiteState out = evolve(bell, WalkConfig{0});
    EXPECT_EQ(out.step(), 0);
    EXPECT_EQ(out.blocks(), bell.blocks());
    EXPECT_THROW(evolve(bell, WalkConfig{-1}), InvalidArgument);
}

TEST(walk, ten_steps_support_and_norm) {
    const TripartiteState out = evolve(make_bell_initial(), WalkConfig{10});
    EXPECT_NEAR(out.norm_squared(), 1.0, 1e-10);
    for (const auto& [x, b] : out.blocks()) {
        EXPECT_LE(std::abs(x), 10);
        EXPECT_EQ((x + 10) % 2, 0);
    }
}

TEST(walk, single_walker_three_steps_matches_dense_oracle) {
    const TripartiteState s = single(Pol::H, Pol::H, 0, 0);
    const auto dense = testing::dense_positions(
        testing::dense_evolve(testing::dense_from({{0, 0, 0, 1.0}}, 3), 3));
    const PositionDistribution d = position_distribution(evolve(s, WalkConfig{3}));
    ASSERT_EQ(d.probs.size(), dense.size());
    for (const auto& [x, p] : dense) EXPECT_NEAR(d.at(x), p, 1e-12);
    // Frozen from the oracle: 1/8, 1/8, 5/8, 1/8.
    EXPECT_NEAR(d.at(-3), 0.125, 1e-15);
    EXPECT_NEAR(d.at(-1), 0.125, 1e-15);
    EXPECT_NEAR(d.at(1), 0.625, 1e-15);
    EXPECT_NEAR(d.at(3), 0.125, 1e-15);
}

TEST(walk, ensemble_position_distribution_is_convex) {
    const Ensemble e(std::vector<Branch>{{0.5, single(Pol::H, Pol::H, 1, 1)},
                                         {0.5, single(Pol::V, Pol::V, -1, 1)}});
    const PositionDistribution d = position_distribution(e);
    EXPECT_NEAR(d.at(1), 0.5, 1e-15);
    EXPECT_NEAR(d.at(-1), 0.5, 1e-15);
    EXPECT_EQ(d.step, 1);
    const PositionDistribution b = position_distribution(make_bell_initial());
    EXPECT_NEAR(b.at(0), 1.0, 1e-15);
}

TEST(walk_property, thirty_steps_unitary) {
    std::mt19937_64 rng(99);
    for (int k = 0; k < 10; ++k) {
        const TripartiteState out = evolve(random_state(rng), WalkConfig{30});
        EXPECT_LT(std::abs(out.norm_squared() - 1.0), 1e-10);
        for (const auto& [x, b] : out.blocks()) {
            EXPECT_LE(std::abs(x), 30);
            EXPECT_EQ((x + 30) % 2, 0);
        }
    }
}

TEST(walk_property, sparse_matches_dense_operator_up_to_eight_steps) {
    std::mt19937_64 rng(1234);
    const int max_steps = 8;
    for (int trial = 0; trial < 5; ++trial) {
        const TripartiteState init = trial == 0 ? make_bell_initial() : random_state(rng);
        const testing::DenseState dense0 = to_dense(init, max_steps);
        for (int t = 0; t <= max_steps; ++t) {
            const testing::DenseState dense = testing::dense_evolve(dense0, t);
            const TripartiteState sparse = evolve(init, WalkConfig{t});
            double diff = 0.0;
            for (int x = -max_steps; x <= max_steps; ++x)
                for (int a = 0; a < 2; ++a)
                    for (int c = 0; c < 2; ++c)
                        diff = std::max(diff, std::abs(dense.at(a, c, x) -
                                                       sparse.amplitude(Pol(a), Pol(c), x)));
            EXPECT_LT(diff, 1e-12) << "t=" << t;
        }
    }
}

TEST(walk_property, alice_marginal_invariant) {
    std::mt19937_64 rng(8);
    auto alice_marginal = [](const TripartiteState& s) {
        Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
        for (const auto& [x, b] : s.blocks())
            for (int a = 0; a < 2; ++a)
                for (int a2 = 0; a2 < 2; ++a2)
                    for (int c = 0; c < 2; ++c)
                        m(a, a2) += b[2 * a + c] * std::conj(b[2 * a2 + c]);
        return m;
    };
    for (int k = 0; k < 10; ++k) {
        const TripartiteState s = random_state(rng);
        const Eigen::Matrix2cd before = alice_marginal(s);
        const Eigen::Matrix2cd after = alice_marginal(evolve(s, WalkConfig{12}));
        EXPECT_LT((before - after).cwiseAbs().maxCoeff(), 1e-12);
    }
}

}  // namespace
}  // namespace entwalk
