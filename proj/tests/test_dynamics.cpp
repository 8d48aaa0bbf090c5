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

#include "oracles.hpp"
#include "xcorr/dynamics.hpp"
#include "xcorr/error.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace xcorr;
using doctest::Approx;

namespace {

XStateParams entangled_initial() {
    XStateParams p;
    p.rho11 = 2.0 / 3.0;
    p.rho22 = p.rho33 = 0.0;
    p.rho44 = 1.0 / 3.0;
    p.rho14 = std::sqrt(2.0) / 3.0;
    return p;
}

// Independent evaluation of the survival probability with complex arithmetic.
double p_ref(double t, double g0, double l) {
    const std::complex<double> d = std::sqrt(std::complex<double>(2 * g0 * l - l * l, 0.0));
    const std::complex<double> br = std::cos(d * t / 2.0) + (l / d) * std::sin(d * t / 2.0);
    return std::exp(-l * t) * std::norm(br);
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("survival probability fixtures") {
    CHECK(p_t(0.0, 1.0, 0.01) == 1.0);
    CHECK(p_t(0.0, 1.0, 5.0) == 1.0);
    for (double t : {0.1, 1.0, 3.7, 20.0}) {
        CHECK(p_t(t, 1.0, 2.0) == Approx(std::exp(-2.0 * t) * std::pow(1 + t, 2)).epsilon(1e-13));
        CHECK(p_t(t, 1.0, 0.01) == Approx(p_ref(t, 1.0, 0.01)).epsilon(1e-10));
        CHECK(p_t(t, 1.0, 5.0) == Approx(p_ref(t, 1.0, 5.0)).epsilon(1e-10));
    }
    CHECK_THROWS_AS((void)p_t(-1.0, 1.0, 1.0), Error);
}

TEST_CASE("survival probability is continuous across lambda = 2 gamma0") {
    for (double t : {0.5, 2.0, 10.0}) {
        const double mid = p_t(t, 1.0, 2.0);
        CHECK(p_t(t, 1.0, 2.0 - 1e-9) == Approx(mid).epsilon(1e-7));
        CHECK(p_t(t, 1.0, 2.0 + 1e-9) == Approx(mid).epsilon(1e-7));
    }
}

TEST_CASE("survival probability stays in [0, 1] and never overflows") {
    for (double l : {1e-3, 0.01, 0.5, 1.999999, 2.0, 2.000001, 10.0, 1e3}) {
        for (int i = 0; i <= 1000; ++i) {
            const double t = 1e3 * i / 1000.0;
            const double p = p_t(t, 1.0, l);
            CHECK(std::isfinite(p));
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
        }
    }
}

TEST_CASE("first zero of P_t in the oscillating regime") {
    const double l = 0.01, d = std::sqrt(2 * l - l * l);
    const double tstar = (2 / d) * (M_PI - std::atan(d / l));
    CHECK(p_t(tstar, 1.0, l) < 1e-12);
    CHECK(p_t(tstar * 0.9, 1.0, l) > 1e-3);
}

TEST_CASE("damping map limits") {
    const XStateParams init = entangled_initial();
    const XStateParams same = damp(init, 1.0);
    CHECK(same.rho11 == init.rho11);
    CHECK(same.rho14 == init.rho14);
    const XStateParams ground = damp(init, 0.0);
    CHECK(ground.rho44 == 1.0);
    CHECK(ground.rho11 == 0.0);
    CHECK(ground.rho14 == 0.0);
}

TEST_CASE("damping map equals two single-qubit Kraus channels") {
    std::mt19937_64 g(101);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const XStateParams p = oracle::random_x(g);
        const double pt = u(g);
        oracle::M2 k0, k1;  // |1> excited, basis order |1>, |0>
        k0 << std::sqrt(pt), 0, 0, 1;
        k1 << 0, 0, std::sqrt(1 - pt), 0;
        const oracle::M2 ks[2] = {k0, k1};
        const oracle::M4 rho = oracle::x_matrix(p);
        oracle::M4 out = oracle::M4::Zero();
        for (const auto& a : ks)
            for (const auto& b : ks) {
                const oracle::M4 k = oracle::kron(a, b);
                out += k * rho * k.adjoint();
            }
        CHECK((to_density_matrix(damp(p, pt)).matrix() - out).norm() < 1e-14);
    }
}

TEST_CASE("evolve starts at the initial state and reaches the crossing") {
    DynamicsConfig cfg;
    cfg.initial = entangled_initial();
    const auto traj = evolve(cfg);
    REQUIRE(traj.size() == 2000);
    CHECK(traj.front().t == 0.0);
    CHECK(traj.back().t == 50.0);
    CHECK(traj.front().state == cfg.initial);
    const auto crossings = case_crossings(cfg, traj);
    CHECK(crossings.size() >= 2);
    for (double t : crossings) {
        const XStateParams s = damp(cfg.initial, p_t(t, 1.0, 0.01));
        const CaseLabel c = k_eigenvalues_x(s);
        CHECK(std::abs(c.k1 - c.k3) < 1e-4);
    }
}

TEST_CASE("evolve validates its configuration") {
    DynamicsConfig cfg;
    cfg.steps = 1;
    CHECK_THROWS_AS((void)evolve(cfg), Error);
    cfg.steps = 10;
    cfg.lambda = -1.0;
    CHECK_THROWS_AS((void)evolve(cfg), Error);
    cfg.lambda = 0.1;
    cfg.initial.rho14 = 0.9;
    CHECK_THROWS_AS((void)evolve(cfg), Error);
}

TEST_CASE("long-time limit approaches the ground state") {
    DynamicsConfig cfg;
    cfg.lambda = 5.0;
    cfg.t_max = 200.0;
    cfg.steps = 50;
    cfg.initial = entangled_initial();
    const auto traj = evolve(cfg);
    CHECK(traj.back().state.rho44 == Approx(1.0).epsilon(1e-12));
}

}  // TEST_SUITE
