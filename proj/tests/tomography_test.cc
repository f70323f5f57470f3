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

#include "entwalk/tomography.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "entwalk/entanglement.h"
#include "gtest/gtest.h"
#include "support/oracle.h"

namespace entwalk {
namespace {

TwoQubitDensity bell_density() { return condition_on_position(make_bell_initial(), 0).density; }

MeasurementSetting partner(const MeasurementSetting& s) {
    // H<->V, D<->A, R<->L on Bob.
    const int b = static_cast<int>(s.bob);
    return {s.alice, static_cast<PauliEigenstate>(b ^ 1)};
}

TEST(tomography, standard_settings_grid) {
    const auto settings = standard_settings();
    ASSERT_EQ(settings.size(), 36u);
    EXPECT_EQ(settings.front(), (MeasurementSetting{PauliEigenstate::H, PauliEigenstate::H}));
    EXPECT_EQ(settings[1], (MeasurementSetting{PauliEigenstate::H, PauliEigenstate::V}));
    EXPECT_EQ(settings[2], (MeasurementSetting{PauliEigenstate::H, PauliEigenstate::D}));
    EXPECT_EQ(settings.back(), (MeasurementSetting{PauliEigenstate::L, PauliEigenstate::L}));
}

TEST(tomography, partner_settings_sum_to_marginal) {
    std::mt19937_64 rng(2);
    const auto settings = standard_settings();
    for (int k = 0; k < 20; ++k) {
        const TwoQubitDensity rho(testing::random_density(rng));
        const auto p = born_probabilities(rho, settings);
        for (std::size_t i = 0; i < settings.size(); ++i) {
            const auto j = static_cast<std::size_t>(
                std::find(settings.begin(), settings.end(), partner(settings[i])) -
                settings.begin());
            // Alice marginal by direct partial trace.
            const QubitBlock a = ket(settings[i].alice);
            Complex marginal{};
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    for (int bq = 0; bq < 2; ++bq)
                        marginal += std::conj(a[r]) * rho.matrix()(2 * r + bq, 2 * c + bq) * a[c];
            EXPECT_NEAR(p[i] + p[j], marginal.real(), 1e-12);
        }
    }
}

TEST(tomography, born_probabilities_examples) {
    const auto settings = standard_settings();
    for (double p : born_probabilities(TwoQubitDensity::maximally_mixed(), settings))
        EXPECT_NEAR(p, 0.25, 1e-15);
    const auto pb = born_probabilities(bell_density(), settings);
    EXPECT_NEAR(pb[1], 0.5, 1e-15);  // (H, V)
    EXPECT_NEAR(pb[0], 0.0, 1e-15);  // (H, H)
}

TEST(tomography, sampling_examples) {
    const auto settings = standard_settings();
    const CountRecord a = sample_counts(bell_density(), settings, 1'000'000, 17);
    const CountRecord b = sample_counts(bell_density(), settings, 1'000'000, 17);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_EQ(a.counts[0], 0u);
    EXPECT_EQ(a.shots_per_setting, 1'000'000u);
    const CountRecord c = sample_counts(bell_density(), settings, 1'000'000, 18);
    EXPECT_NE(a.counts, c.counts);
    EXPECT_THROW(sample_counts(bell_density(), settings, 0, 1), InvalidArgument);
}

TEST(tomography, sampling_within_binomial_interval) {
    std::mt19937_64 rng(3);
    const TwoQubitDensity rho(testing::random_density(rng));
    const auto settings = standard_settings();
    const std::uint64_t n = 1'000'000;
    const auto p = born_probabilities(rho, settings);
    const CountRecord rec = sample_counts(rho, settings, n, 99);
    for (std::size_t k = 0; k < settings.size(); ++k) {
        const double phat = static_cast<double>(rec.counts[k]) / n;
        EXPECT_LE(std::abs(phat - p[k]), 5 * testing::binomial_sigma(p[k], n) + 1e-12);
    }
}

TEST(tomography, exact_inversion_recovers_state) {
    std::mt19937_64 rng(4);
    const auto settings = standard_settings();
    for (int k = 0; k < 50; ++k) {
        const TwoQubitDensity rho(testing::random_density(rng));
        const auto p = born_probabilities(rho, settings);
        const ReconstructionReport rep = reconstruct_from_probabilities(settings, p, rho);
        EXPECT_LT((rep.rho_hat.matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_NEAR(*rep.fidelity_to_truth, 1.0, 1e-9);
    }
}

TEST(tomography, inversion_independent_of_setting_order) {
    std::mt19937_64 rng(5);
    auto settings = standard_settings();
    const TwoQubitDensity rho(testing::random_density(rng));
    std::shuffle(settings.begin(), settings.end(), rng);
    const auto p = born_probabilities(rho, settings);
    EXPECT_LT((linear_inversion(settings, p) - rho.matrix()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(tomography, error_paths) {
    auto settings = standard_settings();
    CountRecord rec;
    rec.settings = settings;
    rec.counts.assign(36, 0);
    rec.shots_per_setting = 100;
    EXPECT_THROW(reconstruct(rec), DegenerateCounts);
    rec.settings.pop_back();
    rec.counts.pop_back();
    rec.counts[0] = 5;
    EXPECT_THROW(reconstruct(rec), MissingSetting);
}

TEST(tomography, bell_million_shots_high_fidelity) {
    const auto settings = standard_settings();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const CountRecord rec = sample_counts(bell_density(), settings, 1'000'000, seed);
        const ReconstructionReport rep = reconstruct(rec, bell_density());
        EXPECT_GE(*rep.fidelity_to_truth, 0.999);
        EXPECT_LE(rep.purity, 1.0 + 1e-9);
    }
}

TEST(tomography, pipeline_exact_limits) {
    const Sampling exact{0, 0};
    const PipelineResult r0 =
        tomography_pipeline(make_bell_initial(), WalkConfig{0}, 0, exact);
    EXPECT_NEAR(r0.report.chsh, 1.0, 1e-9);
    EXPECT_NEAR(r0.probability, 1.0, 1e-15);
    for (int x : {-1, 1}) {
        const PipelineResult r1 =
            tomography_pipeline(make_bell_initial(), WalkConfig{1}, x, exact);
        EXPECT_NEAR(r1.report.chsh, 0.0, 1e-9);
        EXPECT_NEAR(r1.probability, 0.5, 1e-15);
    }
    EXPECT_THROW(tomography_pipeline(make_bell_initial(), WalkConfig{1}, 0, exact),
                 EmptyPosition);
}

TEST(tomography, pipeline_werner_million_shots) {
    const double v = 0.766;
    const PipelineResult r = tomography_pipeline(make_werner_initial(v), WalkConfig{0}, 0,
                                                 Sampling{1'000'000, 2026});
    EXPECT_NEAR(r.report.chsh, (3 * v - 1) / 2, 0.01);
}

TEST(tomography, cell_seeds_differ) {
    EXPECT_NE(cell_seed(1, 0, 0), cell_seed(1, 0, 1));
    EXPECT_NE(cell_seed(1, 1, 0), cell_seed(1, 0, 1));
    EXPECT_NE(cell_seed(1, 2, -2), cell_seed(1, 2, 2));
    EXPECT_EQ(cell_seed(7, 3, -1), cell_seed(7, 3, -1));
}

// Properties.

TEST(tomography_property, projection_never_moves_away_from_truth) {
    std::mt19937_64 rng(6);
    const auto settings = standard_settings();
    double before = 0.0, after = 0.0;
    for (int k = 0; k < 100; ++k) {
        // Low-rank truths so linear inversion often leaves the PSD cone.
        Eigen::Matrix4cd m = 0.9 * bell_density().matrix() + 0.1 * testing::random_density(rng);
        const TwoQubitDensity rho(0.5 * (m + m.adjoint()));
        const CountRecord rec = sample_counts(rho, settings, 200, 1000 + k);
        std::vector<double> f;
        for (auto c : rec.counts) f.push_back(static_cast<double>(c) / 200.0);
        const Eigen::Matrix4cd lin = linear_inversion(settings, f);
        const Eigen::Matrix4cd proj = project_to_density(lin);
        const double db = (lin - rho.matrix()).norm();
        const double da = (proj - rho.matrix()).norm();
        EXPECT_LE(da, db + 1e-12);
        before += db;
        after += da;
        EXPECT_LE(purity(TwoQubitDensity(proj)), 1.0 + 1e-9);
    }
    EXPECT_LE(after / 100, before / 100 + 1e-12);
}

TEST(tomography_property, fidelity_symmetric_and_faithful) {
    std::mt19937_64 rng(8);
    for (int k = 0; k < 100; ++k) {
        const TwoQubitDensity a(testing::random_density(rng));
        const TwoQubitDensity b(testing::random_density(rng));
        EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-9);
        EXPECT_LT(fidelity(a, b), 1.0 - 1e-6);
        EXPECT_NEAR(fidelity(a, a), 1.0, 1e-9);
    }
}

TEST(tomography_property, projection_of_density_is_identity) {
    std::mt19937_64 rng(10);
    for (int k = 0; k < 50; ++k) {
        const Eigen::Matrix4cd rho = testing::random_density(rng);
        EXPECT_LT((project_to_density(rho) - rho).cwiseAbs().maxCoeff(), 1e-12);
    }
}

}  // namespace
}  // namespace entwalk
