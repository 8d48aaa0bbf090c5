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

namespace xcorr {

/**
 * @brief Numerical tolerances used by validation and the solvers.
 *
 * Every threshold the library applies lives here so callers can tighten or
 * relax them in one place. The defaults are the values the test suite pins.
 */
struct Tolerances {
    double hermitian = 1e-12;      ///< |rho_ij - conj(rho_ji)|
    double trace = 1e-12;          ///< |Tr rho - 1|
    double psd = 1e-10;            ///< smallest admissible eigenvalue is -psd
    double x_block = 1e-12;        ///< rho14^2 <= rho11 rho44 + x_block
    double bloch_norm = 1e-10;     ///< |x|, |y|, |T_ij| <= 1 + bloch_norm
    double non_x_entry = 1e-10;    ///< off-X entries treated as zero below this
    double case_boundary = 1e-10;  ///< |k1 - k3| below this sets the boundary flag
    double clamp = 1e-12;          ///< negatives in [-clamp, 0) are clamped to 0
    double stationarity = 1e-10;   ///< fixed-point residual of the (a3, b3) system
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace xcorr
