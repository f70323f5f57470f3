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
#include <array>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "entwalk/entanglement.h"

namespace entwalk {
namespace {

constexpr std::size_t kSettingCount = 36;
constexpr double kInvSqrt2 = 0.70710678118654752440;

using Matrix2 = Eigen::Matrix2cd;

// (1, <sigma_x>, <sigma_y>, <sigma_z>) for a projector state.
std::array<double, 4> pauli_expectations(PauliEigenstate s) {
    const QubitBlock k = ket(s);
    const Complex i{0.0, 1.0};
    const Complex x = std::conj(k[0]) * k[1] + std::conj(k[1]) * k[0];
    const Complex y = std::conj(k[0]) * (-i) * k[1] + std::conj(k[1]) * i * k[0];
    const double z = std::norm(k[0]) - std::norm(k[1]);
    return {1.0, x.real(), y.real(), z};
}

std::array<Matrix2, 4> pauli_with_identity() {
    const Complex i{0.0, 1.0};
    Matrix2 id = Matrix2::Identity();
    Matrix2 x, y, z;
    x << 0.0, 1.0, 1.0, 0.0;
    y << 0.0, -i, i, 0.0;
    z << 1.0, 0.0, 0.0, -1.0;
    return {id, x, y, z};
}

Eigen::Matrix4cd kron(const Matrix2& a, const Matrix2& b) {
    Eigen::Matrix4cd out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
    return out;
}

Eigen::Matrix4cd projector(const MeasurementSetting& s) {
    const QubitBlock a = ket(s.alice);
    const QubitBlock b = ket(s.bob);
    Eigen::Vector4cd v(a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]);
    return v * v.adjoint();
}

// Index of each standard setting inside `settings`; throws if one is absent.
std::array<std::size_t, kSettingCount> locate_standard(
    std::span<const MeasurementSetting> settings) {
    const std::vector<MeasurementSetting> standard = standard_settings();
    std::array<std::size_t, kSettingCount> where{};
    for (std::size_t k = 0; k < kSettingCount; ++k) {
        auto it = std::find(settings.begin(), settings.end(), standard[k]);
        if (it == settings.end()) {
            throw MissingSetting("tomography record lacks setting " +
                                 std::string(to_string(standard[k].alice)) +
                                 std::string(to_string(standard[k].bob)));
        }
        where[k] = static_cast<std::size_t>(it - settings.begin());
    }
    return where;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Eigen::Matrix4cd psd_sqrt(const Eigen::Matrix4cd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m);
    Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

ReconstructionReport report_for(const Eigen::Matrix4cd& estimate,
                                const std::optional<TwoQubitDensity>& truth) {
    ReconstructionReport rep;
    rep.rho_hat = TwoQubitDensity(project_to_density(estimate));
    rep.purity = purity(rep.rho_hat);
    rep.chsh = chsh_quantifier(rep.rho_hat);
    if (truth) rep.fidelity_to_truth = fidelity(*truth, rep.rho_hat);
    return rep;
}

}  // namespace

std::string_view to_string(PauliEigenstate s) {
    static constexpr std::array<std::string_view, 6> names{"H", "V", "D",
                                                           "A", "R", "L"};
    return names[static_cast<std::size_t>(s)];
}

QubitBlock ket(PauliEigenstate s) {
    const Complex i{0.0, 1.0};
    switch (s) {
        case PauliEigenstate::H: return {1.0, 0.0};
        case PauliEigenstate::V: return {0.0, 1.0};
        case PauliEigenstate::D: return {kInvSqrt2, kInvSqrt2};
        case PauliEigenstate::A: return {kInvSqrt2, -kInvSqrt2};
        case PauliEigenstate::R: return {kInvSqrt2, i * kInvSqrt2};
        case PauliEigenstate::L: return {kInvSqrt2, -i * kInvSqrt2};
    }
    return {};
}

std::vector<MeasurementSetting> standard_settings() {
    std::vector<MeasurementSetting> out;
    out.reserve(kSettingCount);
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            out.push_back({static_cast<PauliEigenstate>(a),
                           static_cast<PauliEigenstate>(b)});
    return out;
}

std::vector<double> born_probabilities(const TwoQubitDensity& rho,
                                       std::span<const MeasurementSetting> settings) {
    std::vector<double> out;
    out.reserve(settings.size());
    for (const auto& s : settings) {
        const double p = (rho.matrix() * projector(s)).trace().real();
        out.push_back(std::clamp(p, 0.0, 1.0));
    }
    return out;
}

CountRecord sample_counts(const TwoQubitDensity& rho,
                          std::span<const MeasurementSetting> settings,
                          std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw InvalidArgument("shots per setting must be positive");
    CountRecord rec;
    rec.settings.assign(settings.begin(), settings.end());
    rec.shots_per_setting = shots;
    rec.seed = seed;
    std::mt19937_64 gen(seed);
    for (double p : born_probabilities(rho, settings)) {
        std::binomial_distribution<std::uint64_t> draw(shots, p);
        rec.counts.push_back(draw(gen));
    }
    return rec;
}

std::uint64_t cell_seed(std::uint64_t master_seed, int step, int position) {
    std::uint64_t h = splitmix64(master_seed);
    h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(step)));
    h = splitmix64(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(position)) << 32));
    return h;
}

Eigen::Matrix4cd linear_inversion(std::span<const MeasurementSetting> settings,
                                  std::span<const double> frequencies) {
    if (frequencies.size() != settings.size()) {
        throw InvalidArgument("one frequency per setting required");
    }
    const auto where = locate_standard(settings);
    const std::vector<MeasurementSetting> standard = standard_settings();

    // p_k = 1/4 sum_{mu,nu} r_{mu nu} u_mu(alice_k) u_nu(bob_k) with r_00 = 1.
    Eigen::Matrix<double, kSettingCount, 15> design;
    Eigen::Matrix<double, kSettingCount, 1> rhs;
    for (std::size_t k = 0; k < kSettingCount; ++k) {
        const auto ua = pauli_expectations(standard[k].alice);
        const auto ub = pauli_expectations(standard[k].bob);
        rhs(k) = frequencies[where[k]] - 0.25;
        int col = 0;
        for (int mu = 0; mu < 4; ++mu) {
            for (int nu = 0; nu < 4; ++nu) {
                if (mu == 0 && nu == 0) continue;
                design(k, col++) = 0.25 * ua[mu] * ub[nu];
            }
        }
    }
    const Eigen::Matrix<double, 15, 1> r =
        design.colPivHouseholderQr().solve(rhs);

    static const std::array<Matrix2, 4> sigma = pauli_with_identity();
    Eigen::Matrix4cd rho = kron(sigma[0], sigma[0]) / 4.0;
    int col = 0;
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            if (mu == 0 && nu == 0) continue;
            rho += r(col++) / 4.0 * kron(sigma[mu], sigma[nu]);
        }
    }
    return 0.5 * (rho + rho.adjoint());
}

Eigen::Matrix4cd project_to_density(const Eigen::Matrix4cd& hermitian) {
    const Eigen::Matrix4cd h = 0.5 * (hermitian + hermitian.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
    const Eigen::Vector4d mu = es.eigenvalues();

    // Euclidean projection of the spectrum onto the probability simplex.
    std::array<double, 4> sorted{mu(0), mu(1), mu(2), mu(3)};
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double prefix = 0.0;
    double shift = 0.0;
    for (int j = 0; j < 4; ++j) {
        prefix += sorted[j];
        const double candidate = (prefix - 1.0) / (j + 1);
        if (sorted[j] - candidate > 0.0) shift = candidate;
    }
    Eigen::Vector4d lambda = (mu.array() - shift).cwiseMax(0.0);

    Eigen::Matrix4cd out =
        es.eigenvectors() * lambda.cast<Complex>().asDiagonal() *
        es.eigenvectors().adjoint();
    out = 0.5 * (out + out.adjoint()).eval();
    out /= out.trace().real();
    return out;
}

double fidelity(const TwoQubitDensity& rho, const TwoQubitDensity& sigma) {
    const Eigen::Matrix4cd root = psd_sqrt(rho.matrix());
    Eigen::Matrix4cd inner = root * sigma.matrix() * root;
    inner = 0.5 * (inner + inner.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(inner,
                                                       Eigen::EigenvaluesOnly);
    const double tr = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return std::clamp(tr * tr, 0.0, 1.0);
}

ReconstructionReport reconstruct(const CountRecord& counts,
                                 const std::optional<TwoQubitDensity>& truth) {
    if (counts.counts.size() != counts.settings.size()) {
        throw InvalidArgument("count record has mismatched lengths");
    }
    locate_standard(counts.settings);
    if (counts.shots_per_setting == 0) {
        throw InvalidArgument("count record has zero shots per setting");
    }
    const bool all_zero = std::all_of(counts.counts.begin(), counts.counts.end(),
                                      [](std::uint64_t c) { return c == 0; });
    if (all_zero) throw DegenerateCounts("all coincidence counts are zero");

    std::vector<double> freq;
    freq.reserve(counts.counts.size());
    for (std::uint64_t c : counts.counts) {
        freq.push_back(static_cast<double>(c) /
                       static_cast<double>(counts.shots_per_setting));
    }
    return report_for(linear_inversion(counts.settings, freq), truth);
}

ReconstructionReport reconstruct_from_probabilities(
    std::span<const MeasurementSetting> settings,
    std::span<const double> probabilities,
    const std::optional<TwoQubitDensity>& truth) {
    return report_for(linear_inversion(settings, probabilities), truth);
}

PipelineResult tomography_at(const Ensemble& evolved, int position,
                             const Sampling& sampling) {
    const ConditionalDensity cd = condition_on_position(evolved, position);
    const std::vector<MeasurementSetting> settings = standard_settings();
    PipelineResult out;
    out.step = evolved.step();
    out.position = position;
    out.probability = cd.probability;
    if (sampling.shots == 0) {
        const std::vector<double> p = born_probabilities(cd.density, settings);
        out.report = reconstruct_from_probabilities(settings, p, cd.density);
    } else {
        const CountRecord rec =
            sample_counts(cd.density, settings, sampling.shots,
                          cell_seed(sampling.seed, out.step, position));
        out.report = reconstruct(rec, cd.density);
    }
    return out;
}

PipelineResult tomography_pipeline(const Ensemble& initial,
                                   const WalkConfig& config, int position,
                                   const Sampling& sampling) {
    return tomography_at(evolve(initial, config), position, sampling);
}

}  // namespace entwalk
