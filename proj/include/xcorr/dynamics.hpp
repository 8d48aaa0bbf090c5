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
 * Two qubits, each coupled to its own zero-temperature Lorentzian reservoir
 * (non-Markovian amplitude damping). An initial X state stays an X state and
 * the map depends only on t, not on the history.
 */

#pragma once

#include "xcorr/quantifiers.hpp"
#include "xcorr/state.hpp"

#include <vector>

namespace xcorr {

/**
 * Excited-state survival probability
 *
 *     P_t = exp(-lambda t) [cos(d t/2) + (lambda/d) sin(d t/2)]^2,
 *     d = sqrt(2 gamma0 lambda - lambda^2).
 *
 * For lambda > 2 gamma0 d is imaginary and the bracket is evaluated with
 * cosh/sinh; near d = 0 a series is used. Result is clamped to [0, 1].
 */
[[nodiscard]] double p_t(double t, double gamma0, double lambda);

struct DynamicsConfig {
    double gamma0 = 1.0;   ///< spontaneous emission rate
    double lambda = 0.01;  ///< reservoir spectral width
    double t_max = 50.0;   ///< in units of 1/gamma0
    int steps = 2000;      ///< number of uniformly spaced samples, >= 2
    XStateParams initial;
};

struct TrajectoryPoint {
    double t = 0.0;  ///< gamma0 * time
    XStateParams state;
    double k1 = 0.0;
    double k3 = 0.0;
    CorrelationReport report;
};

/// The X state after both qubits decayed with survival probability @p p.
[[nodiscard]] XStateParams damp(const XStateParams& initial, double p);

/// Samples the evolution at cfg.steps uniformly spaced gamma0 t in [0, t_max].
[[nodiscard]] std::vector<TrajectoryPoint> evolve(const DynamicsConfig& cfg,
                                                  const Tolerances& tol = kDefaultTolerances);

/// Times (gamma0 t) where k1 - k3 changes sign between consecutive samples,
/// refined by bisection to 1e-6.
[[nodiscard]] std::vector<double> case_crossings(const DynamicsConfig& cfg,
                                                 const std::vector<TrajectoryPoint>& trajectory);

}  // namespace xcorr
