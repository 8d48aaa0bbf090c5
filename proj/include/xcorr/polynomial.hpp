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

#pragma once

#include <span>
#include <vector>

namespace xcorr::poly {

/// Horner evaluation; coefficients in ascending order (c[0] + c[1] x + ...).
[[nodiscard]] double evaluate(std::span<const double> coeffs, double x) noexcept;

/// Coefficients of the derivative, ascending order.
[[nodiscard]] std::vector<double> derivative(std::span<const double> coeffs);

/**
 * Real roots of a polynomial inside [lo, hi], sorted ascending.
 *
 * Two independent sources are merged: the eigenvalues of the companion
 * matrix with negligible imaginary part (catches tangential double roots)
 * and bisection on sign changes over a uniform scan (catches roots the
 * eigen-decomposition perturbs off the real axis). Every candidate is
 * Newton-polished and duplicates closer than @p merge_tol are collapsed.
 */
[[nodiscard]] std::vector<double> real_roots(std::span<const double> coeffs, double lo, double hi,
                                             int scan_intervals = 512, double merge_tol = 1e-9);

}  // namespace xcorr::poly
