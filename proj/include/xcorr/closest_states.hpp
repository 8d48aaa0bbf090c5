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
 * Closest product and closest classical states under the squared
 * Hilbert-Schmidt distance.
 *
 * For X states everything is analytic: the closest product state has both
 * Bloch vectors along z and its two z components solve a coupled pair of
 * fixed-point equations, which reduce to a quintic in a3. The closest
 * classical state follows from the spectrum of K = x x^T + T T^T and falls
 * into one of two regimes (Case1: k1 <= k3, Case2: k1 > k3).
 *
 * closest_product_general() is a brute-force multi-start search over all six
 * Bloch components, kept as an independent oracle for the X-state solver.
 */

#pragma once

#include "xcorr/error.hpp"
#include "xcorr/state.hpp"

#include <array>
#include <cstdint>

namespace xcorr {

/// Bloch vectors (a, b) of the product state rho_A (x) rho_B.
struct ProductPair {
    Vector3 a = Vector3::Zero();
    Vector3 b = Vector3::Zero();
};

[[nodiscard]] DensityMatrix4 product_state(const ProductPair& pair);

enum class CaseId { Case1, Case2 };

[[nodiscard]] const char* to_string(CaseId id) noexcept;

struct CaseLabel {
    CaseId id = CaseId::Case1;
    double k1 = 0.0;
    double k2 = 0.0;
    double k3 = 0.0;
    bool boundary = false;  // |k1 - k3| within tolerance; both branches give the same distance
};

/// k1 = 4(rho14+rho23)^2, k2 = 4(rho14-rho23)^2, k3 = 2[(rho11-rho33)^2+(rho22-rho44)^2].
/// Case1 iff k1 <= k3.
[[nodiscard]] CaseLabel k_eigenvalues_x(const XStateParams& p,
                                        const Tolerances& tol = kDefaultTolerances);

struct KSpectrum {
    Matrix3 k = Matrix3::Zero();
    Vector3 eigenvalues = Vector3::Zero();  // descending
    Matrix3 eigenvectors = Matrix3::Zero(); // column i pairs with eigenvalues(i)
};

/// K = x x^T + T T^T for an arbitrary two-qubit Bloch form.
[[nodiscard]] KSpectrum k_matrix_general(const BlochForm& b);

/// Squared distance Tr(rho - pi)^2 between a Bloch form and a product state.
[[nodiscard]] double product_distance(const BlochForm& rho, const ProductPair& pi);

/// Largest violation of the six stationarity (fixed-point) equations.
[[nodiscard]] double stationarity_residual(const BlochForm& rho, const ProductPair& pi);

namespace detail {

/// Ascending coefficients of the quintic in a3 obtained by eliminating b3.
[[nodiscard]] std::array<double, 6> a3_quintic(double x3, double y3, double t33) noexcept;

/// b3 as a function of a3 on the stationary curve.
[[nodiscard]] double b3_from_a3(double y3, double t33, double a3) noexcept;

/// 4 * F2(a3, b3): the (a3, b3)-dependent part of the product distance, unscaled.
[[nodiscard]] double f2_scaled(double x3, double y3, double t33, double a3, double b3) noexcept;

}  // namespace detail

struct A3B3 {
    double a3 = 0.0;
    double b3 = 0.0;
};

/// Global minimizer of F2 among all real stationary points.
[[nodiscard]] A3B3 solve_a3b3(double x3, double y3, double t33,
                              const Tolerances& tol = kDefaultTolerances);

/// Closest product state of an X state: a = (0, 0, a3), b = (0, 0, b3).
[[nodiscard]] ProductPair closest_product_x(const XStateParams& p,
                                            const Tolerances& tol = kDefaultTolerances);

struct OracleOptions {
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
    int random_starts = 32;
    double residual_tol = 1e-8;
};

struct ProductSearch {
    ProductPair pair;
    double distance = 0.0;  // F at the returned pair
    double residual = 0.0;  // stationarity residual at the returned pair
    int starts = 0;
};

/// Thrown by closest_product_general when no start reaches a stationary point.
class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string& what, ProductSearch best)
        : Error(ErrorKind::SolverFailure, what), best_(std::move(best)) {}

    [[nodiscard]] const ProductSearch& best_so_far() const noexcept { return best_; }

  private:
    ProductSearch best_;
};

/**
 * Six-parameter numerical minimization of Tr(rho - pi)^2 over product states
 * with Bloch vectors in [-1, 1]^3 x [-1, 1]^3.
 *
 * Starts: the marginals' Bloch vectors plus opts.random_starts points drawn
 * from a generator seeded by opts.seed. Each start runs Nelder-Mead and is
 * then polished with damped Newton steps on the analytic gradient.
 */
[[nodiscard]] ProductSearch closest_product_general(const DensityMatrix4& rho,
                                                    const OracleOptions& opts = {},
                                                    const Tolerances& tol = kDefaultTolerances);

/// The closest-classical-state formula of the given branch, whichever branch
/// the state actually belongs to. Used to compare the two candidates.
[[nodiscard]] XStateParams classical_state_for_case(const XStateParams& p, CaseId which,
                                                    const Tolerances& tol = kDefaultTolerances);

/// Closest classical (classical on A) state chi of an X state.
[[nodiscard]] XStateParams closest_classical_x(const XStateParams& p,
                                               const Tolerances& tol = kDefaultTolerances);

/// Closest product state of chi: identical to closest_product_x in Case1,
/// a = 0, b = (0, 0, y3) in Case2.
[[nodiscard]] ProductPair closest_product_of_classical_x(const XStateParams& p,
                                                         const Tolerances& tol = kDefaultTolerances);

}  // namespace xcorr
