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

#include "entwalk/entanglement.h"

#include <array>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

namespace entwalk {
namespace {

using Matrix2 = Eigen::Matrix2cd;

std::array<Matrix2, 3> pauli() {
    const Complex i{0.0, 1.0};
    Matrix2 x, y, z;
    x << 0.0, 1.0, 1.0, 0.0;
    y << 0.0, -i, i, 0.0;
    z << 1.0, 0.0, 0.0, -1.0;
    return {x, y, z};
}

Eigen::Matrix4cd kron(const Matrix2& a, const Matrix2& b) {
    Eigen::Matrix4cd out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
    return out;
}

double quantifier_from(double s) {
    const double shifted = (s - 1.0) / 4.0;
    return shifted + std::abs(shifted);
}

}  // namespace

double CorrelationTensor::trace_norm() const {
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(t_matrix);
    return svd.singularValues().sum();
}

CorrelationTensor correlation_tensor(const TwoQubitDensity& rho) {
    static const std::array<Matrix2, 3> sigma = pauli();
    CorrelationTensor out;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const Complex tr = (rho.matrix() * kron(sigma[i], sigma[j])).trace();
            if (std::abs(tr.imag()) >= kImaginaryResidueLimit) {
                std::ostringstream msg;
                msg << "correlation T(" << i << "," << j
                    << ") has imaginary part " << tr.imag();
                throw ImaginaryResidue(msg.str());
            }
            out.t_matrix(i, j) = tr.real();
        }
    }
    return out;
}

double chsh_quantifier(const TwoQubitDensity& rho) {
    return quantifier_from(correlation_tensor(rho).trace_norm());
}

double chsh_quantifier_diagonal(const TwoQubitDensity& rho) {
    const Eigen::Matrix3d t = correlation_tensor(rho).t_matrix;
    return quantifier_from(t.diagonal().cwiseAbs().sum());
}

double purity(const TwoQubitDensity& rho) {
    // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    return rho.matrix().cwiseAbs2().sum();
}

StepEntanglement step_entanglement(const Ensemble& evolved) {
    StepEntanglement rec;
    rec.step = evolved.step();
    const PositionDistribution dist = position_distribution(evolved);
    for (const auto& [x, p] : dist.probs) {
        PositionEntanglement pe;
        pe.position = x;
        pe.probability = p;
        if (p < kEmptyPositionThreshold) {
            pe.low_probability = true;
        } else {
            const ConditionalDensity cd = condition_on_position(evolved, x);
            pe.entanglement = chsh_quantifier(cd.density);
            pe.purity = purity(cd.density);
        }
        rec.average += pe.probability * pe.entanglement;
        rec.positions.push_back(pe);
    }
    return rec;
}

EntanglementCurve entanglement_curve(const Ensemble& initial,
                                     const WalkConfig& config,
                                     bool normalize) {
    if (config.steps < 0) throw InvalidArgument("walk steps must be nonnegative");
    EntanglementCurve curve;
    curve.records.reserve(static_cast<std::size_t>(config.steps) + 1);
    const WalkConfig one{1, config.coin};
    Ensemble state = initial;
    for (int t = 0; t <= config.steps; ++t) {
        if (t > 0) state = evolve(state, one);
        curve.records.push_back(step_entanglement(state));
    }
    if (normalize) {
        const double e0 = curve.records.front().average;
        if (e0 < 1e-12) {
            throw ZeroInitialEntanglement(
                "initial average entanglement is zero; cannot normalize");
        }
        for (auto& rec : curve.records) rec.normalized = rec.average / e0;
    }
    return curve;
}

}  // namespace entwalk
