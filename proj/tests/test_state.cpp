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
#include "xcorr/error.hpp"
#include "xcorr/state.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace xcorr;
using doctest::Approx;

namespace {

XStateParams bell() {
    XStateParams p;
    p.rho11 = p.rho44 = 0.5;
    p.rho22 = p.rho33 = 0.0;
    p.rho14 = 0.5;
    p.rho23 = 0.0;
    return p;
}

XStateParams example_state() {
    XStateParams p;
    p.rho11 = 0.5;
    p.rho22 = 0.1;
    p.rho33 = 0.1;
    p.rho44 = 0.3;
    p.rho14 = 0.35;
    p.rho23 = 0.05;
    return p;
}

bool near(double a, double b, double eps = 1e-12) { return std::abs(a - b) <= eps; }

}  // namespace

TEST_SUITE("state_core") {

TEST_CASE("pauli products match Kronecker products in the |1>,|0> basis") {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK((pauli_product(i, j) - oracle::kron(oracle::sigma(i), oracle::sigma(j))).norm() == 0.0);
}

TEST_CASE("bloch_decompose fixtures") {
    const BlochForm mm = bloch_decompose(DensityMatrix4::maximally_mixed());
    CHECK(mm.x.norm() == 0.0);
    CHECK(mm.y.norm() == 0.0);
    CHECK(mm.t.norm() == 0.0);

    const BlochForm b = bloch_decompose(to_density_matrix(bell()));
    CHECK(b.x.norm() < 1e-15);
    CHECK(b.y.norm() < 1e-15);
    Matrix3 expect = Matrix3::Zero();
    expect.diagonal() << 1, -1, 1;
    CHECK((b.t - expect).norm() < 1e-15);

    const BlochForm e = bloch_decompose(to_density_matrix(example_state()));
    CHECK(near(e.x(2), 0.2));
    CHECK(near(e.y(2), 0.2));
    CHECK(near(e.t(2, 2), 0.6));
    CHECK(near(e.t(0, 0), 0.8));
    CHECK(near(e.t(1, 1), -0.6));
    CHECK(near(e.t(0, 1), 0.0));
    CHECK(near(e.t(1, 0), 0.0));
    CHECK(near(e.x(0), 0.0));
    CHECK(near(e.y(1), 0.0));
}

TEST_CASE("bloch_decompose agrees with direct traces on random dense states") {
    std::mt19937_64 g(11);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        oracle::M4 a;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                a(i, j) = oracle::C(n(g), n(g));
        oracle::M4 rho = a * a.adjoint();
        rho /= rho.trace().real();
        const BlochForm b = bloch_decompose(DensityMatrix4(rho));
        for (int i = 0; i < 3; ++i) {
            CHECK(near(b.x(i), oracle::pauli_expectation(rho, i + 1, 0)));
            CHECK(near(b.y(i), oracle::pauli_expectation(rho, 0, i + 1)));
            for (int j = 0; j < 3; ++j)
                CHECK(near(b.t(i, j), oracle::pauli_expectation(rho, i + 1, j + 1)));
        }
        CHECK((bloch_compose(b).matrix() - rho).norm() < 1e-13);
    }
}

TEST_CASE("bloch_compose fixtures") {
    CHECK((bloch_compose(BlochForm{}).matrix() - Matrix4c::Identity() / 4.0).norm() < 1e-15);

    BlochForm b;
    b.t.diagonal() << 1, -1, 1;
    CHECK((bloch_compose(b).matrix() - oracle::x_matrix(0.5, 0, 0, 0.5, 0.5, 0)).norm() < 1e-15);

    BlochForm up;
    up.x << 0, 0, 1;
    up.y << 0, 0, 1;
    up.t(2, 2) = 1;
    Matrix4c p11 = Matrix4c::Zero();
    p11(0, 0) = 1;
    CHECK((bloch_compose(up).matrix() - p11).norm() < 1e-15);
}

TEST_CASE("bloch_compose does not validate") {
    BlochForm b;
    b.t.diagonal() << 1, 1, 1;  // not a state
    const DensityMatrix4 rho = bloch_compose(b);
    CHECK_FALSE(validate(rho).ok());
    CHECK_THROWS_AS((void)bloch_decompose(rho), Error);
}

TEST_CASE("x_params_to_bloch fixtures") {
    const BlochForm zero = x_params_to_bloch(XStateParams{});
    CHECK(zero.x.norm() == 0.0);
    CHECK(zero.y.norm() == 0.0);
    CHECK(zero.t.norm() == 0.0);

    XStateParams w;
    w.rho11 = w.rho44 = 0.375;
    w.rho22 = w.rho33 = 0.125;
    w.rho14 = 0.25;
    const BlochForm wb = x_params_to_bloch(w);
    CHECK(near(wb.t(0, 0), 0.5));
    CHECK(near(wb.t(1, 1), -0.5));
    CHECK(near(wb.t(2, 2), 0.5));
    CHECK(near(wb.x(2), 0.0));
    CHECK(near(wb.y(2), 0.0));

    XStateParams ph;
    ph.rho14 = ph.rho23 = 0.1;
    ph.gamma14 = M_PI / 2;
    const BlochForm pb = x_params_to_bloch(ph);
    CHECK(near(pb.t(0, 0), 0.2));
    CHECK(near(pb.t(0, 1), -0.2));
    CHECK(near(pb.t(1, 0), -0.2));
    CHECK(near(pb.t(1, 1), 0.2));
}

TEST_CASE("x_params_to_bloch matches direct traces with arbitrary phases") {
    std::mt19937_64 g(3);
    for (int trial = 0; trial < 200; ++trial) {
        const XStateParams p = oracle::random_x(g);
        const oracle::M4 rho = oracle::x_matrix(p);
        const BlochForm b = x_params_to_bloch(p);
        for (int i = 0; i < 3; ++i) {
            CHECK(near(b.x(i), oracle::pauli_expectation(rho, i + 1, 0)));
            CHECK(near(b.y(i), oracle::pauli_expectation(rho, 0, i + 1)));
            for (int j = 0; j < 3; ++j)
                CHECK(near(b.t(i, j), oracle::pauli_expectation(rho, i + 1, j + 1)));
        }
        CHECK((to_density_matrix(p).matrix() - rho).norm() < 1e-15);
    }
}

TEST_CASE("x_params_to_bloch rejects invalid parameters") {
    XStateParams p;
    p.rho14 = 0.3;  // exceeds sqrt(rho11 rho44) = 0.25
    CHECK_THROWS_AS((void)x_params_to_bloch(p), Error);
    try {
        (void)x_params_to_bloch(p);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidState);
    }
    XStateParams q;
    q.rho11 = 0.5;  // trace 1.25
    CHECK_FALSE(check(q).empty());
    XStateParams r;
    r.rho11 = std::nan("");
    CHECK_FALSE(check(r).empty());
}

TEST_CASE("matrix_to_x_params fixtures") {
    CHECK(matrix_to_x_params(DensityMatrix4::maximally_mixed()) == XStateParams{});

    const XStateParams b = matrix_to_x_params(DensityMatrix4(oracle::x_matrix(0.5, 0, 0, 0.5, 0.5, 0)));
    CHECK(b.rho11 == 0.5);
    CHECK(b.rho44 == 0.5);
    CHECK(b.rho14 == 0.5);
    CHECK(b.gamma14 == 0.0);

    Matrix4c m = Matrix4c::Identity() / 4.0;
    m(0, 1) = 0.1;
    m(1, 0) = 0.1;
    try {
        (void)matrix_to_x_params(DensityMatrix4(m));
        FAIL("expected NotXState");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotXState);
        CHECK(std::string(e.what()).find("(1,2)") != std::string::npos);
    }
}

TEST_CASE("matrix_to_x_params round-trips random X states") {
    std::mt19937_64 g(5);
    for (int trial = 0; trial < 200; ++trial) {
        const XStateParams p = oracle::random_x(g);
        const XStateParams q = matrix_to_x_params(to_density_matrix(p));
        CHECK(near(q.rho11, p.rho11, 1e-15));
        CHECK(near(q.rho23, p.rho23, 1e-15));
        CHECK((to_density_matrix(q).matrix() - to_density_matrix(p).matrix()).norm() < 1e-14);
    }
}

TEST_CASE("validate reports each kind of violation") {
    Matrix4c m = Matrix4c::Identity() / 4.0;
    m(0, 1) = oracle::C(0.0, 0.1);  // not Hermitian
    CHECK_FALSE(validate(DensityMatrix4(m)).hermitian);

    CHECK_FALSE(validate(DensityMatrix4(Matrix4c::Identity() / 2.0)).unit_trace);

    Matrix4c neg = Matrix4c::Zero();
    neg.diagonal() << 0.6, 0.6, 0.0, -0.2;
    const StateValidation v = validate(DensityMatrix4(neg));
    CHECK_FALSE(v.positive);
    CHECK(v.min_eigenvalue == Approx(-0.2));
    CHECK_FALSE(v.describe().empty());
    CHECK_THROWS_AS(require_valid(DensityMatrix4(neg)), Error);
}

TEST_CASE("validation property: random X states are valid, perturbations beyond the positivity block are not") {
    std::mt19937_64 g(9);
    for (int trial = 0; trial < 500; ++trial) {
        XStateParams p = oracle::random_x(g);
        CHECK(check(p).empty());
        CHECK(validate(to_density_matrix(p)).ok());
        p.rho14 = std::sqrt(p.rho11 * p.rho44) + 1e-6;
        CHECK_FALSE(check(p).empty());
        CHECK(oracle::min_eigenvalue(oracle::x_matrix(p)) < 0.0);
    }
}

TEST_CASE("normalize_phase") {
    CHECK(normalize_phase(0.0) == 0.0);
    CHECK(normalize_phase(2 * M_PI) == Approx(0.0));
    CHECK(normalize_phase(-M_PI / 2) == Approx(1.5 * M_PI));
    CHECK(normalize_phase(7 * M_PI) == Approx(M_PI));
    for (double a : {-100.0, -1e-300, 3.0, 1e6}) {
        const double r = normalize_phase(a);
        CHECK(r >= 0.0);
        CHECK(r < 2 * M_PI);
    }
}

TEST_CASE("hs distance and purity") {
    const DensityMatrix4 mm;
    CHECK(purity(mm) == Approx(0.25));
    const DensityMatrix4 bellm(oracle::x_matrix(0.5, 0, 0, 0.5, 0.5, 0));
    CHECK(purity(bellm) == Approx(1.0));
    CHECK(hs_distance_sq(bellm, mm) == Approx(0.75));
}

}  // TEST_SUITE
