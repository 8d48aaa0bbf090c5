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
#include "xcorr/closest_states.hpp"
#include "xcorr/polynomial.hpp"
#include "xcorr/quantifiers.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace xcorr;
using doctest::Approx;

namespace {

XStateParams make(double r11, double r22, double r33, double r44, double r14, double r23,
                  double g14 = 0.0, double g23 = 0.0) {
    return {r11, r22, r33, r44, r14, r23, g14, g23};
}

XStateParams bell() { return make(0.5, 0, 0, 0.5, 0.5, 0); }
XStateParams example_state() { return make(0.5, 0.1, 0.1, 0.3, 0.35, 0.05); }

// Bell-diagonal state from its three correlation coefficients.
XStateParams bell_diagonal(double t11, double t22, double t33) {
    XStateParams p;
    p.rho11 = p.rho44 = (1 + t33) / 4;
    p.rho22 = p.rho33 = (1 - t33) / 4;
    const double c14 = (t11 - t22) / 4, c23 = (t11 + t22) / 4;
    p.rho14 = std::abs(c14);
    p.gamma14 = c14 < 0 ? M_PI : 0.0;
    p.rho23 = std::abs(c23);
    p.gamma23 = c23 < 0 ? M_PI : 0.0;
    return p;
}

}  // namespace

TEST_SUITE("closest_states") {

TEST_CASE("k eigenvalue fixtures") {
    const CaseLabel b = k_eigenvalues_x(bell());
    CHECK(b.k1 == Approx(1.0));
    CHECK(b.k2 == Approx(1.0));
    CHECK(b.k3 == Approx(1.0));
    CHECK(b.id == CaseId::Case1);
    CHECK(b.boundary);

    const CaseLabel c = k_eigenvalues_x(make(0.25, 0.25, 0.25, 0.25, 0.2, 0.2));
    CHECK(c.k1 == Approx(0.64));
    CHECK(c.k2 == Approx(0.0));
    CHECK(c.k3 == Approx(0.0));
    CHECK(c.id == CaseId::Case2);
    CHECK_FALSE(c.boundary);

    const CaseLabel z = k_eigenvalues_x(XStateParams{});
    CHECK(z.k1 == 0.0);
    CHECK(z.k3 == 0.0);
    CHECK(z.id == CaseId::Case1);
    CHECK(std::string(to_string(CaseId::Case2)) == "case2");
}

TEST_CASE("k_matrix_general fixtures") {
    const KSpectrum z = k_matrix_general(BlochForm{});
    CHECK(z.k.norm() == 0.0);
    CHECK(z.eigenvalues.norm() == 0.0);

    BlochForm b;
    b.t.diagonal() << 1, -1, 1;
    const KSpectrum s = k_matrix_general(b);
    CHECK((s.k - Matrix3::Identity()).norm() < 1e-15);
    for (int i = 0; i < 3; ++i)
        CHECK(s.eigenvalues(i) == Approx(1.0));
}

TEST_CASE("k_matrix_general reproduces the X-state eigenvalues") {
    std::mt19937_64 g(21);
    for (int trial = 0; trial < 300; ++trial) {
        const XStateParams p = oracle::random_x(g);
        // K assembled from direct traces, independent of x_params_to_bloch.
        const oracle::M4 rho = oracle::x_matrix(p);
        Eigen::Vector3d x;
        Eigen::Matrix3d t;
        for (int i = 0; i < 3; ++i) {
            x(i) = oracle::pauli_expectation(rho, i + 1, 0);
            for (int j = 0; j < 3; ++j)
                t(i, j) = oracle::pauli_expectation(rho, i + 1, j + 1);
        }
        const Eigen::Matrix3d k = x * x.transpose() + t * t.transpose();
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(k);
        std::vector<double> ev{es.eigenvalues()(0), es.eigenvalues()(1), es.eigenvalues()(2)};
        std::sort(ev.begin(), ev.end());

        const CaseLabel c = k_eigenvalues_x(p);
        std::vector<double> closed{c.k1, c.k2, c.k3};
        std::sort(closed.begin(), closed.end());
        for (int i = 0; i < 3; ++i)
            CHECK(closed[i] == Approx(ev[i]).epsilon(1e-12));

        const KSpectrum s = k_matrix_general(x_params_to_bloch(p));
        CHECK(s.eigenvalues(0) == Approx(ev[2]).epsilon(1e-12));
        CHECK(s.eigenvalues(0) >= s.eigenvalues(1));
        CHECK(s.eigenvalues(1) >= s.eigenvalues(2));
        CHECK((c.id == CaseId::Case1) == (c.k1 <= c.k3));
    }
}

TEST_CASE("closest_product_x fixtures") {
    for (const XStateParams& p : {bell(), bell_diagonal(0.5, -0.5, 0.5), bell_diagonal(0.2, 0.1, -0.3)}) {
        const ProductPair pi = closest_product_x(p);
        CHECK(pi.a.norm() == 0.0);
        CHECK(pi.b.norm() == 0.0);
    }

    const ProductPair up = closest_product_x(make(1, 0, 0, 0, 0, 0));
    CHECK(up.a(2) == Approx(1.0));
    CHECK(up.b(2) == Approx(1.0));
    CHECK(product_distance(x_params_to_bloch(make(1, 0, 0, 0, 0, 0)), up) < 1e-20);
}

TEST_CASE("closest_product_x on the reference state agrees with a 2001^2 grid search") {
    const ProductPair pi = closest_product_x(example_state());
    CHECK(pi.a(2) == pi.b(2));
    CHECK(pi.a.head<2>().norm() == 0.0);
    const oracle::A3B3 ref = oracle::grid_a3b3(0.2, 0.2, 0.6);
    CHECK(std::abs(pi.a(2) - ref.a) < 1e-6);
    CHECK(std::abs(pi.b(2) - ref.b) < 1e-6);
    CHECK(detail::f2_scaled(0.2, 0.2, 0.6, pi.a(2), pi.b(2)) <= ref.f + 1e-14);
}

TEST_CASE("solve_a3b3 property: never worse than a grid search and always stationary") {
    std::mt19937_64 g(31);
    for (int trial = 0; trial < 150; ++trial) {
        const XStateParams p = oracle::random_x(g, false);
        const BlochForm b = x_params_to_bloch(p);
        const double x = b.x(2), y = b.y(2), t = b.t(2, 2);
        const A3B3 s = solve_a3b3(x, y, t);
        const oracle::A3B3 ref = oracle::grid_a3b3(x, y, t, 201);
        CHECK(detail::f2_scaled(x, y, t, s.a3, s.b3) <= ref.f + 1e-12);
        // Fixed-point equations of the (a3, b3) system.
        CHECK(std::abs((x - s.a3) + s.b3 * (t - s.a3 * s.b3)) < 1e-10);
        CHECK(std::abs((y - s.b3) + s.a3 * (t - s.a3 * s.b3)) < 1e-10);
        CHECK(std::abs(poly::evaluate(detail::a3_quintic(x, y, t), s.a3)) < 1e-9);
        CHECK(std::abs(s.b3 - detail::b3_from_a3(y, t, s.a3)) < 1e-12);
        CHECK(std::abs(s.a3) <= 1.0 + 1e-12);
        CHECK(std::abs(s.b3) <= 1.0 + 1e-12);
        CHECK(stationarity_residual(b, closest_product_x(p)) < 1e-10);
    }
}

TEST_CASE("solve_a3b3 exchange symmetry") {
    std::mt19937_64 g(33);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    for (int trial = 0; trial < 100; ++trial) {
        const double x = u(g), y = u(g), t = u(g);
        const A3B3 s = solve_a3b3(x, y, t);
        const A3B3 r = solve_a3b3(y, x, t);
        const double fs = detail::f2_scaled(x, y, t, s.a3, s.b3);
        const double fr = detail::f2_scaled(x, y, t, r.b3, r.a3);
        CHECK(fs == Approx(fr).epsilon(1e-12));
    }
}

TEST_CASE("closest_product_general: product input returns its own factors") {
    Eigen::Vector3d a(0.3, -0.2, 0.5), b(-0.1, 0.4, 0.2);
    const DensityMatrix4 rho(oracle::product(a, b));
    const ProductSearch s = closest_product_general(rho);
    CHECK(s.distance < 1e-8);
    CHECK((s.pair.a - a).norm() < 1e-6);
    CHECK((s.pair.b - b).norm() < 1e-6);
}

TEST_CASE("closest_product_general: Bell state minimum at the origin") {
    const ProductSearch s = closest_product_general(to_density_matrix(bell()));
    CHECK(s.distance == Approx(0.75).epsilon(1e-10));
    CHECK(s.pair.a.norm() < 1e-6);
    CHECK(s.pair.b.norm() < 1e-6);
}

TEST_CASE("closest_product_general agrees with the X-state solver") {
    std::mt19937_64 g(41);
    for (int trial = 0; trial < 10; ++trial) {
        const XStateParams p = oracle::random_x(g);
        const ProductSearch s = closest_product_general(to_density_matrix(p));
        const ProductPair pi = closest_product_x(p);
        const double f = oracle::hs2(oracle::x_matrix(p), oracle::product(pi.a, pi.b));
        CHECK(std::abs(s.distance - f) < 1e-8);
        CHECK(std::abs(s.pair.a(0)) < 1e-6);
        CHECK(std::abs(s.pair.a(1)) < 1e-6);
        CHECK(std::abs(s.pair.b(0)) < 1e-6);
        CHECK(std::abs(s.pair.b(1)) < 1e-6);
    }
}

TEST_CASE("product_distance equals the dense Hilbert-Schmidt distance") {
    std::mt19937_64 g(43);
    std::uniform_real_distribution<double> u(-0.55, 0.55);
    for (int trial = 0; trial < 100; ++trial) {
        const XStateParams p = oracle::random_x(g);
        const ProductPair pi{Eigen::Vector3d(u(g), u(g), u(g)), Eigen::Vector3d(u(g), u(g), u(g))};
        CHECK(product_distance(x_params_to_bloch(p), pi) ==
              Approx(oracle::hs2(oracle::x_matrix(p), oracle::product(pi.a, pi.b))).epsilon(1e-12));
        CHECK((product_state(pi).matrix() - oracle::product(pi.a, pi.b)).norm() < 1e-15);
    }
}

TEST_CASE("closest_classical_x fixtures") {
    // Bell-diagonal with |T33| maximal: chi = 1/4 [1 + T33 s3 s3].
    const XStateParams bd = bell_diagonal(0.2, -0.1, 0.6);
    const XStateParams chi = closest_classical_x(bd);
    BlochForm expect;
    expect.t(2, 2) = 0.6;
    CHECK((to_density_matrix(chi).matrix() - bloch_compose(expect).matrix()).norm() < 1e-14);

    // Case2, zero phases: chi = 1/4 [1 + y3 1 s3 + 2(rho14+rho23) s1 s1].
    const XStateParams e = example_state();
    REQUIRE(k_eigenvalues_x(e).id == CaseId::Case2);
    BlochForm e2;
    e2.y(2) = 0.2;
    e2.t(0, 0) = 2 * (0.35 + 0.05);
    CHECK((to_density_matrix(closest_classical_x(e)).matrix() - bloch_compose(e2).matrix()).norm() < 1e-14);

    CHECK(closest_classical_x(XStateParams{}) == XStateParams{});
}

TEST_CASE("closest classical state is classical and beats the other branch") {
    std::mt19937_64 g(47);
    for (int trial = 0; trial < 300; ++trial) {
        const XStateParams p = oracle::random_x(g);
        const XStateParams chi = closest_classical_x(p);
        CHECK(check(chi).empty());
        const CaseId own = k_eigenvalues_x(p).id;
        const CaseId other = own == CaseId::Case1 ? CaseId::Case2 : CaseId::Case1;
        const oracle::M4 rho = oracle::x_matrix(p);
        const double d_own = oracle::hs2(rho, oracle::x_matrix(chi));
        const double d_other = oracle::hs2(rho, oracle::x_matrix(classical_state_for_case(p, other)));
        CHECK(d_own <= d_other + 1e-14);
        // Zero discord: chi is invariant under some measurement on A.
        CHECK(geometric_discord_general(x_params_to_bloch(chi)) < 1e-12);
    }
}

TEST_CASE("closest product of the classical state") {
    std::mt19937_64 g(53);
    int case1 = 0, case2 = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const XStateParams p = oracle::random_x(g);
        const ProductPair pc = closest_product_of_classical_x(p);
        if (k_eigenvalues_x(p).id == CaseId::Case1) {
            ++case1;
            const ProductPair pr = closest_product_x(p);
            CHECK(pc.a == pr.a);
            CHECK(pc.b == pr.b);
        } else {
            ++case2;
            CHECK(pc.a.norm() == 0.0);
            CHECK(pc.b(2) == Approx(x_params_to_bloch(p).y(2)).epsilon(1e-14));
        }
        // It really is the closest product state of chi.
        const ProductPair direct = closest_product_x(closest_classical_x(p));
        const BlochForm cb = x_params_to_bloch(closest_classical_x(p));
        CHECK(product_distance(cb, pc) == Approx(product_distance(cb, direct)).epsilon(1e-12));
    }
    CHECK(case1 > 0);
    CHECK(case2 > 0);

    const ProductPair y02 = closest_product_of_classical_x(example_state());
    CHECK(y02.a.norm() == 0.0);
    CHECK(y02.b(2) == Approx(0.2));

    const ProductPair y0 = closest_product_of_classical_x(make(0.25, 0.25, 0.25, 0.25, 0.2, 0.2));
    CHECK(y0.a.norm() == 0.0);
    CHECK(y0.b.norm() < 1e-15);
}

TEST_CASE("vanishing coherences always land in case 1") {
    std::mt19937_64 g(59);
    for (int trial = 0; trial < 1000; ++trial) {
        XStateParams p = oracle::random_x(g);
        p.rho14 = p.rho23 = 0.0;
        const CaseLabel c = k_eigenvalues_x(p);
        CHECK(c.k1 == 0.0);
        CHECK(c.id == CaseId::Case1);
    }
}

}  // TEST_SUITE
