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

#ifndef ENTWALK_ENTANGLEMENT_H
#define ENTWALK_ENTANGLEMENT_H

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "entwalk/hilbert.h"
#include "entwalk/walk.h"

namespace entwalk {

/// T(i, j) = tr[rho (sigma_i x sigma_j)] for i, j in {x, y, z}.
struct CorrelationTensor {
    Eigen::Matrix3d t_matrix = Eigen::Matrix3d::Zero();

    /// Sum of singular values, i.e. max over local alignments of tr[rho L].
    double trace_norm() const;
};

/// Imaginary parts of the Pauli traces at or above this magnitude raise
/// ImaginaryResidue.
inline constexpr double kImaginaryResidueLimit = 1e-6;

CorrelationTensor correlation_tensor(const TwoQubitDensity& rho);

/// Generalized CHSH quantifier E = s' + |s'| with s' = (s - 1) / 4, where s is
/// the optimal tr[rho L] over sign choices and local rotations of L. Ranges
/// over [0, 1]: zero for every separable state, one for a Bell state.
double chsh_quantifier(const TwoQubitDensity& rho);

/// Same quantifier with L restricted to the diagonal in the fixed H/V, D/A,
/// R/L frame: s = |T_xx| + |T_yy| + |T_zz|. Never exceeds chsh_quantifier.
double chsh_quantifier_diagonal(const TwoQubitDensity& rho);

/// tr(rho^2).
double purity(const TwoQubitDensity& rho);

struct PositionEntanglement {
    int position = 0;
    double probability = 0.0;
    double entanglement = 0.0;
    double purity = 0.0;
    /// Set when probability < 1e-12; entanglement and purity are then zero
    /// and the point does not contribute to the average.
    bool low_probability = false;
};

struct StepEntanglement {
    int step = 0;
    double average = 0.0;
    std::optional<double> normalized;
    std::vector<PositionEntanglement> positions;
};

struct EntanglementCurve {
    std::vector<StepEntanglement> records;
};

/// Average entanglement sum_x P_t(x) E(x, t) for t = 0..config.steps.
///
/// With `normalize` set, each record also carries E(t) / E(0); this throws
/// ZeroInitialEntanglement when E(0) < 1e-12.
EntanglementCurve entanglement_curve(const Ensemble& initial,
                                     const WalkConfig& config,
                                     bool normalize = true);

/// One curve record for an already evolved state.
StepEntanglement step_entanglement(const Ensemble& evolved);

}  // namespace entwalk

#endif  // ENTWALK_ENTANGLEMENT_H
