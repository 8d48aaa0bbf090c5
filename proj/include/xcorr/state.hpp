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
 * Two-qubit state encodings: dense 4x4 density matrix, X-state parameters,
 * and the Bloch (local vectors + correlation tensor) form.
 *
 * BASIS CONVENTION. Every 4x4 matrix in this library is written in the basis
 *
 *     { |11>, |10>, |01>, |00> }
 *
 * i.e. row/column 0 is |11> and row/column 3 is |00>. Most libraries put
 * |00> first; this one does not. Single-qubit Pauli matrices are the usual
 * ones with index 0 standing for |1>, so sigma_z |1> = +|1>, and two-qubit
 * operators are plain Kronecker products (qubit A is the left factor).
 */

#pragma once

#include "xcorr/tolerances.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace xcorr {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;
using Matrix2c = Eigen::Matrix2cd;
using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;

/// Pauli matrix sigma_{k+1}, k in {0, 1, 2}.
[[nodiscard]] const Matrix2c& pauli(int k);

/// sigma_i (x) sigma_j, with index 0 meaning the 2x2 identity.
[[nodiscard]] Matrix4c pauli_product(int i, int j);

/**
 * @brief A 4x4 complex matrix meant to be a two-qubit density matrix.
 *
 * Construction does not validate: a matrix assembled from a Bloch form may
 * fail positivity and that is reported by validate(), not by throwing.
 * Operations that need a physical state call require_valid().
 */
class DensityMatrix4 {
  public:
    DensityMatrix4() : m_(Matrix4c::Identity() / 4.0) {}
    explicit DensityMatrix4(const Matrix4c& m) : m_(m) {}

    [[nodiscard]] const Matrix4c& matrix() const noexcept { return m_; }
    [[nodiscard]] Complex operator()(int i, int j) const { return m_(i, j); }

    [[nodiscard]] static DensityMatrix4 maximally_mixed() { return {}; }

  private:
    Matrix4c m_;
};

struct StateValidation {
    double hermiticity_error = 0.0;
    double trace_error = 0.0;
    double min_eigenvalue = 0.0;
    bool hermitian = true;
    bool unit_trace = true;
    bool positive = true;

    [[nodiscard]] bool ok() const noexcept { return hermitian && unit_trace && positive; }
    [[nodiscard]] std::string describe() const;
};

[[nodiscard]] StateValidation validate(const DensityMatrix4& rho,
                                       const Tolerances& tol = kDefaultTolerances);

/// Throws Error{InvalidState} when @p rho is not a density matrix.
void require_valid(const DensityMatrix4& rho, const Tolerances& tol = kDefaultTolerances);

/**
 * @brief The eight real numbers describing an X state.
 *
 * rho_ij are the diagonal populations, rho14/rho23 the moduli of the two
 * anti-diagonal coherences and gamma14/gamma23 their phases in [0, 2pi).
 * The (1,4) entry of the matrix is rho14 * exp(i gamma14).
 */
struct XStateParams {
    double rho11 = 0.25;
    double rho22 = 0.25;
    double rho33 = 0.25;
    double rho44 = 0.25;
    double rho14 = 0.0;
    double rho23 = 0.0;
    double gamma14 = 0.0;
    double gamma23 = 0.0;

    friend bool operator==(const XStateParams&, const XStateParams&) = default;
};

/// Empty string if valid, otherwise a description of every violated invariant.
[[nodiscard]] std::string check(const XStateParams& p, const Tolerances& tol = kDefaultTolerances);

/// Throws Error{InvalidState} listing the violations.
void require_valid(const XStateParams& p, const Tolerances& tol = kDefaultTolerances);

/// Maps any finite angle into [0, 2pi).
[[nodiscard]] double normalize_phase(double angle) noexcept;

struct BlochForm {
    Vector3 x = Vector3::Zero();
    Vector3 y = Vector3::Zero();
    Matrix3 t = Matrix3::Zero();
};

/// x_i = Tr[rho (s_i x 1)], y_i = Tr[rho (1 x s_i)], T_ij = Tr[rho (s_i x s_j)].
[[nodiscard]] BlochForm bloch_decompose(const DensityMatrix4& rho,
                                        const Tolerances& tol = kDefaultTolerances);

/// rho = 1/4 [1x1 + sum x_i s_i x 1 + sum y_i 1 x s_i + sum T_ij s_i x s_j].
[[nodiscard]] DensityMatrix4 bloch_compose(const BlochForm& b);

/// Closed-form Bloch components of an X state; all other components are zero.
[[nodiscard]] BlochForm x_params_to_bloch(const XStateParams& p,
                                          const Tolerances& tol = kDefaultTolerances);

/// Dense matrix of an X state, no validation.
[[nodiscard]] DensityMatrix4 to_density_matrix(const XStateParams& p);

/**
 * @brief Recognizes an X-shaped density matrix and extracts its parameters.
 *
 * Fails with Error{NotXState} naming every off-pattern entry whose modulus
 * exceeds tol.non_x_entry. The phase of a vanishing coherence is 0.
 */
[[nodiscard]] XStateParams matrix_to_x_params(const DensityMatrix4& rho,
                                              const Tolerances& tol = kDefaultTolerances);

/// Entries (row, col) outside the X pattern with modulus above @p threshold.
[[nodiscard]] std::vector<std::array<int, 2>> non_x_entries(const DensityMatrix4& rho,
                                                            double threshold);

/// Tr[(a - b)^2], the squared Hilbert-Schmidt distance.
[[nodiscard]] double hs_distance_sq(const DensityMatrix4& a, const DensityMatrix4& b);

/// Tr[rho^2].
[[nodiscard]] double purity(const DensityMatrix4& rho);

}  // namespace xcorr
