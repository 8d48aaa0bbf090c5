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

#include "xcorr/dynamics.hpp"

#include "xcorr/error.hpp"
#include "xcorr/kernels/batch.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace xcorr {

double p_t(double t, double gamma0, double lambda) {
    if (!(t >= 0.0))
        throw Error(ErrorKind::InvalidArgument, fmt::format("p_t needs t >= 0, got {}", t));
    const double half = 0.5 * t;
    // z = (d t / 2)^2, negative when d is imaginary (lambda > 2 gamma0).
    const double z = (2.0 * gamma0 * lambda - lambda * lambda) * half * half;
    const double decay = std::exp(-lambda * t);

    double p = 0.0;
    if (std::abs(z) < 0.25e-12) {  // |d| t < 1e-6
        const double c = 1.0 - z / 2.0 + z * z / 24.0;
        const double s = 1.0 - z / 6.0 + z * z / 120.0;
        const double bracket = c + lambda * half * s;
        p = decay * bracket * bracket;
    } else if (z > 0.0) {
        const double w = std::sqrt(z);
        const double bracket = std::cos(w) + lambda * half * std::sin(w) / w;
        p = decay * bracket * bracket;
    } else {
        // exp(-lambda t/2) [cosh w + r sinh w], r = lambda / |d|, written so
        // that no intermediate overflows for large t.
        const double w = std::sqrt(-z);
        const double r = lambda * half / w;
        const double scaled =
            0.5 * std::exp(w - lambda * half) * ((1.0 + r) + (1.0 - r) * std::exp(-2.0 * w));
        p = scaled * scaled;
    }
    return std::clamp(p, 0.0, 1.0);
}

XStateParams damp(const XStateParams& initial, double p) {
    XStateParams s = initial;
    const double leak = initial.rho11 * (p * (1.0 - p));
    s.rho11 = initial.rho11 * (p * p);
    s.rho22 = initial.rho22 * p + leak;
    s.rho33 = initial.rho33 * p + leak;
    const double q = 1.0 - p;
    s.rho44 = initial.rho44 + (q * (initial.rho22 + initial.rho33) + initial.rho11 * (q * q));
    s.rho14 = initial.rho14 * p;
    s.rho23 = initial.rho23 * p;
    return s;
}

namespace {

void check_config(const DynamicsConfig& cfg, const Tolerances& tol) {
    if (!(cfg.gamma0 > 0.0) || !std::isfinite(cfg.gamma0))
        throw Error(ErrorKind::InvalidArgument, "gamma0 must be positive");
    if (!(cfg.lambda > 0.0) || !std::isfinite(cfg.lambda))
        throw Error(ErrorKind::InvalidArgument, "lambda must be positive");
    if (!(cfg.t_max >= 0.0) || !std::isfinite(cfg.t_max))
        throw Error(ErrorKind::InvalidArgument, "t_max must be nonnegative");
    if (cfg.steps < 2)
        throw Error(ErrorKind::InvalidArgument, "steps must be at least 2");
    require_valid(cfg.initial, tol);
}

double grid_time(const DynamicsConfig& cfg, int i) {
    return cfg.t_max * static_cast<double>(i) / static_cast<double>(cfg.steps - 1);
}

double k_gap(const DynamicsConfig& cfg, double tau) {
    const CaseLabel c = k_eigenvalues_x(damp(cfg.initial, p_t(tau / cfg.gamma0, cfg.gamma0, cfg.lambda)));
    return c.k1 - c.k3;
}

}  // namespace

std::vector<TrajectoryPoint> evolve(const DynamicsConfig& cfg, const Tolerances& tol) {
    check_config(cfg, tol);
    const auto n = static_cast<std::size_t>(cfg.steps);

    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i)
        p[i] = p_t(grid_time(cfg, static_cast<int>(i)) / cfg.gamma0, cfg.gamma0, cfg.lambda);

    std::vector<double> r11(n), r22(n), r33(n), r44(n), r14(n), r23(n), k1(n), k2(n), k3(n);
    const kernels::DampingInit init{cfg.initial.rho11, cfg.initial.rho22, cfg.initial.rho33,
                                    cfg.initial.rho44, cfg.initial.rho14, cfg.initial.rho23};
    kernels::amplitude_damping(p.data(), n, init,
                               {r11.data(), r22.data(), r33.data(), r44.data(), r14.data(), r23.data()});
    kernels::x_spectrum({r11.data(), r22.data(), r33.data(), r44.data(), r14.data(), r23.data()},
                        {k1.data(), k2.data(), k3.data()}, n);

    std::vector<TrajectoryPoint> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        TrajectoryPoint& pt = out[i];
        pt.t = grid_time(cfg, static_cast<int>(i));
        pt.state = cfg.initial;
        pt.state.rho11 = r11[i];
        pt.state.rho22 = r22[i];
        pt.state.rho33 = r33[i];
        pt.state.rho44 = r44[i];
        pt.state.rho14 = r14[i];
        pt.state.rho23 = r23[i];
        const std::string problems = check(pt.state, tol);
        if (!problems.empty())
            throw Error(ErrorKind::InvalidState,
                        fmt::format("state at gamma0 t = {:.17g} drifted out of the state space: {}",
                                    pt.t, problems));
        pt.k1 = k1[i];
        pt.k3 = k3[i];
        pt.report = quantifiers_x(pt.state, tol);
    }
    return out;
}

std::vector<double> case_crossings(const DynamicsConfig& cfg,
                                   const std::vector<TrajectoryPoint>& trajectory) {
    std::vector<double> out;
    auto sign = [](double v) { return (v > 0.0) - (v < 0.0); };
    std::size_t prev = 0;
    while (prev < trajectory.size() && sign(trajectory[prev].k1 - trajectory[prev].k3) == 0)
        ++prev;
    for (std::size_t i = prev + 1; i < trajectory.size(); ++i) {
        const int s1 = sign(trajectory[i].k1 - trajectory[i].k3);
        if (s1 == 0)
            continue;
        const int s0 = sign(trajectory[prev].k1 - trajectory[prev].k3);
        if (s0 != s1) {
            double lo = trajectory[prev].t;
            double hi = trajectory[i].t;
            while (hi - lo > 1e-6) {
                const double mid = 0.5 * (lo + hi);
                if (sign(k_gap(cfg, mid)) == s0)
                    lo = mid;
                else
                    hi = mid;
            }
            out.push_back(0.5 * (lo + hi));
        }
        prev = i;
    }
    return out;
}

}  // namespace xcorr
