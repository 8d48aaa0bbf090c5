// Copyright 2026 The xcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Geometric (squared Hilbert-Schmidt) correlation quantifiers.
 *
 *   T_g = |rho - pi_rho|^2         total correlations
 *   D_g = |rho - chi_rho|^2        quantum correlations (geometric discord)
 *   C_g = |chi_rho - pi_chi|^2     classical correlations
 *   L_g = |pi_rho - pi_chi|^2      closure defect
 *
 * pi_rho is the closest product state of rho, chi_rho its closest classical
 * state and pi_chi the closest product state of chi_rho.
 */

#pragma once

#include "xcorr/closest_states.hpp"
#include "xcorr/state.hpp"

namespace xcorr {

struct CorrelationReport {
    double t_g = 0.0;
    double d_g = 0.0;
    double c_g = 0.0;
    double l_g = 0.0;
    CaseLabel case_label;
    double residual_closure = 0.0;  ///< t_g - d_g - c_g
    double residual_with_l = 0.0;   ///< t_g + l_g - d_g - c_g
    ProductPair product_pair;       ///< pi_rho
    XStateParams classical_state;   ///< chi_rho
    ProductPair classical_product;  ///< pi_chi
    bool boundary_flag = false;     ///< k1 == k3 within tolerance
    bool clamped = false;           ///< a tiny negative quantifier was clamped to 0
};

/// D_g = 1/4 (|x|^2 + |T|^2 - k_max) for an arbitrary two-qubit state.
[[nodiscard]] double geometric_discord_general(const BlochForm& b);

/// All four quantifiers of an X state from the closed forms.
[[nodiscard]] CorrelationReport quantifiers_x(const XStateParams& p,
                                              const Tolerances& tol = kDefaultTolerances);

/**
 * @brief Geometric discord as a minimum over projective measurements on A.
 *
 * Evaluates |rho - Pi_n(rho)|^2 with dense matrices for Bloch directions n
 * on a grid_density x grid_density (theta, phi) grid, then polishes the best
 * grid points with Nelder-Mead. Independent of the K-matrix closed form.
 * Requires grid_density >= 64.
 */
[[nodiscard]] double discord_measurement_oracle(const DensityMatrix4& rho, int grid_density = 64,
                                                const Tolerances& tol = kDefaultTolerances);

/// |rho - Pi_n(rho)|^2 for the von Neumann measurement on A along unit vector n.
[[nodiscard]] double measurement_disturbance(const DensityMatrix4& rho, const Vector3& n);

/// Closed forms for Bell-diagonal states rho = 1/4 [1 + sum T_ii s_i x s_i].
/// Throws Error{InvalidState} if the triple is not a physical state.
[[nodiscard]] CorrelationReport bell_diagonal_quantifiers(double t11, double t22, double t33,
                                                          const Tolerances& tol = kDefaultTolerances);

}  // namespace xcorr
