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

#include "xcorr/state.hpp"

#include "xcorr/error.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

namespace xcorr {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::Parse:
        return "parse error";
    case ErrorKind::InvalidState:
        return "invalid state";
    case ErrorKind::NotXState:
        return "not an X state";
    case ErrorKind::InvalidArgument:
        return "invalid argument";
    case ErrorKind::SolverFailure:
        return "solver failure";
    case ErrorKind::RejectionExhausted:
        return "rejection sampling exhausted";
    }
    return "unknown error";
}

namespace {

constexpr Complex kI{0.0, 1.0};

// X-pattern positions in the 4x4 matrix: main diagonal and anti-diagonal.
constexpr bool on_x_pattern(int i, int j) noexcept { return i == j || i + j == 3; }

std::array<Matrix2c, 4> make_paulis() {
    std::array<Matrix2c, 4> s;
    s[0] = Matrix2c::Identity();
    s[1] << 0.0, 1.0, 1.0, 0.0;
    s[2] << 0.0, -kI, kI, 0.0;
    s[3] << 1.0, 0.0, 0.0, -1.0;
    return s;
}

const std::array<Matrix2c, 4>& paulis() {
    static const std::array<Matrix2c, 4> s = make_paulis();
    return s;
}

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
    Matrix4c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

const std::array<std::array<Matrix4c, 4>, 4>& pauli_products() {
    static const auto table = [] {
        std::array<std::array<Matrix4c, 4>, 4> t;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                t[i][j] = kron(paulis()[i], paulis()[j]);
        return t;
    }();
    return table;
}

// Tr[rho * op] for Hermitian rho and op is real; the imaginary part is roundoff.
double expectation(const Matrix4c& rho, const Matrix4c& op) {
    return (rho * op).trace().real();
}

}  // namespace

const Matrix2c& pauli(int k) { return paulis().at(static_cast<std::size_t>(k) + 1); }

Matrix4c pauli_product(int i, int j) {
    return pauli_products().at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
}

std::string StateValidation::describe() const {
    std::string out;
    auto append = [&out](const std::string& s) {
        if (!out.empty())
            out += "; ";
        out += s;
    };
    if (!hermitian)
        append(fmt::format("not Hermitian (max |rho_ij - conj(rho_ji)| = {:.3e})", hermiticity_error));
    if (!unit_trace)
        append(fmt::format("trace differs from 1 by {:.3e}", trace_error));
    if (!positive)
        append(fmt::format("not positive semidefinite (min eigenvalue {:.3e})", min_eigenvalue));
    return out;
}

StateValidation validate(const DensityMatrix4& rho, const Tolerances& tol) {
    const Matrix4c& m = rho.matrix();
    StateValidation v;
    if (!m.allFinite()) {
        v.hermitian = v.unit_trace = v.positive = false;
        v.hermiticity_error = v.trace_error = std::numeric_limits<double>::infinity();
        v.min_eigenvalue = -std::numeric_limits<double>::infinity();
        return v;
    }
    v.hermiticity_error = (m - m.adjoint()).cwiseAbs().maxCoeff();
    v.hermitian = v.hermiticity_error <= tol.hermitian;
    v.trace_error = std::abs(m.trace() - Complex{1.0, 0.0});
    v.unit_trace = v.trace_error <= tol.trace;

    const Matrix4c herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> eig(herm, Eigen::EigenvaluesOnly);
    v.min_eigenvalue = eig.eigenvalues().minCoeff();
    v.positive = v.min_eigenvalue >= -tol.psd;
    return v;
}

void require_valid(const DensityMatrix4& rho, const Tolerances& tol) {
    const StateValidation v = validate(rho, tol);
    if (!v.ok())
        throw Error(ErrorKind::InvalidState, v.describe());
}

double normalize_phase(double angle) noexcept {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(angle, two_pi);
    if (r < 0.0)
        r += two_pi;
    // fmod of a tiny negative number can round up to exactly 2pi
    if (r >= two_pi)
        r = 0.0;
    return r;
}

std::string check(const XStateParams& p, const Tolerances& tol) {
    std::string out;
    auto append = [&out](const std::string& s) {
        if (!out.empty())
            out += "; ";
        out += s;
    };
    const std::array<double, 8> all{p.rho11, p.rho22, p.rho33, p.rho44,
                                    p.rho14, p.rho23, p.gamma14, p.gamma23};
    for (double v : all) {
        if (!std::isfinite(v)) {
            append("non-finite parameter");
            return out;
        }
    }
    const std::array<std::pair<const char*, double>, 4> diag{
        {{"rho11", p.rho11}, {"rho22", p.rho22}, {"rho33", p.rho33}, {"rho44", p.rho44}}};
    for (const auto& [name, v] : diag) {
        if (v < -tol.x_block)
            append(fmt::format("{} = {:.17g} is negative", name, v));
    }
    const double trace = p.rho11 + p.rho22 + p.rho33 + p.rho44;
    if (std::abs(trace - 1.0) > tol.trace)
        append(fmt::format("diagonal sums to {:.17g}", trace));
    if (p.rho14 < 0.0)
        append("rho14 must be a nonnegative modulus");
    if (p.rho23 < 0.0)
        append("rho23 must be a nonnegative modulus");
    if (p.rho14 * p.rho14 > p.rho11 * p.rho44 + tol.x_block)
        append(fmt::format("outer block not positive: rho14^2 = {:.17g} > rho11*rho44 = {:.17g}",
                           p.rho14 * p.rho14, p.rho11 * p.rho44));
    if (p.rho23 * p.rho23 > p.rho22 * p.rho33 + tol.x_block)
        append(fmt::format("inner block not positive: rho23^2 = {:.17g} > rho22*rho33 = {:.17g}",
                           p.rho23 * p.rho23, p.rho22 * p.rho33));
    constexpr double two_pi = 2.0 * std::numbers::pi;
    if (p.gamma14 < 0.0 || p.gamma14 >= two_pi)
        append("gamma14 outside [0, 2pi)");
    if (p.gamma23 < 0.0 || p.gamma23 >= two_pi)
        append("gamma23 outside [0, 2pi)");
    return out;
}

void require_valid(const XStateParams& p, const Tolerances& tol) {
    const std::string problems = check(p, tol);
    if (!problems.empty())
        throw Error(ErrorKind::InvalidState, problems);
}

BlochForm bloch_decompose(const DensityMatrix4& rho, const Tolerances& tol) {
    require_valid(rho, tol);
    const auto& ops = pauli_products();
    const Matrix4c& m = rho.matrix();
    BlochForm b;
    for (int i = 0; i < 3; ++i) {
        b.x(i) = expectation(m, ops[i + 1][0]);
        b.y(i) = expectation(m, ops[0][i + 1]);
        for (int j = 0; j < 3; ++j)
            b.t(i, j) = expectation(m, ops[i + 1][j + 1]);
    }
    return b;
}

DensityMatrix4 bloch_compose(const BlochForm& b) {
    const auto& ops = pauli_products();
    Matrix4c m = ops[0][0];
    for (int i = 0; i < 3; ++i) {
        m += b.x(i) * ops[i + 1][0];
        m += b.y(i) * ops[0][i + 1];
        for (int j = 0; j < 3; ++j)
            m += b.t(i, j) * ops[i + 1][j + 1];
    }
    return DensityMatrix4(m / 4.0);
}

BlochForm x_params_to_bloch(const XStateParams& p, const Tolerances& tol) {
    require_valid(p, tol);
    const double c14 = std::cos(p.gamma14), s14 = std::sin(p.gamma14);
    const double c23 = std::cos(p.gamma23), s23 = std::sin(p.gamma23);
    BlochForm b;
    b.x(2) = p.rho11 + p.rho22 - p.rho33 - p.rho44;
    b.y(2) = p.rho11 - p.rho22 + p.rho33 - p.rho44;
    b.t(0, 0) = 2.0 * c14 * p.rho14 + 2.0 * c23 * p.rho23;
    b.t(0, 1) = -2.0 * s14 * p.rho14 + 2.0 * s23 * p.rho23;
    b.t(1, 0) = -2.0 * s14 * p.rho14 - 2.0 * s23 * p.rho23;
    b.t(1, 1) = -2.0 * c14 * p.rho14 + 2.0 * c23 * p.rho23;
    b.t(2, 2) = p.rho11 - p.rho22 - p.rho33 + p.rho44;
    return b;
}

DensityMatrix4 to_density_matrix(const XStateParams& p) {
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = p.rho11;
    m(1, 1) = p.rho22;
    m(2, 2) = p.rho33;
    m(3, 3) = p.rho44;
    m(0, 3) = std::polar(p.rho14, p.gamma14);
    m(3, 0) = std::conj(m(0, 3));
    m(1, 2) = std::polar(p.rho23, p.gamma23);
    m(2, 1) = std::conj(m(1, 2));
    return DensityMatrix4(m);
}

std::vector<std::array<int, 2>> non_x_entries(const DensityMatrix4& rho, double threshold) {
    std::vector<std::array<int, 2>> out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!on_x_pattern(i, j) && std::abs(rho(i, j)) > threshold)
                out.push_back({i, j});
    return out;
}

XStateParams matrix_to_x_params(const DensityMatrix4& rho, const Tolerances& tol) {
    require_valid(rho, tol);
    const auto bad = non_x_entries(rho, tol.non_x_entry);
    if (!bad.empty()) {
        std::string msg = "entries outside the X pattern:";
        for (const auto& [i, j] : bad)
            msg += fmt::format(" ({},{})={:.3e}", i + 1, j + 1, std::abs(rho(i, j)));
        throw Error(ErrorKind::NotXState, msg);
    }
    auto phase_of = [](Complex z) { return z == Complex{} ? 0.0 : normalize_phase(std::arg(z)); };
    // Average the two mirror entries so a slightly non-Hermitian input still
    // maps to the nearest X state.
    const Complex c14 = 0.5 * (rho(0, 3) + std::conj(rho(3, 0)));
    const Complex c23 = 0.5 * (rho(1, 2) + std::conj(rho(2, 1)));
    XStateParams p;
    p.rho11 = rho(0, 0).real();
    p.rho22 = rho(1, 1).real();
    p.rho33 = rho(2, 2).real();
    p.rho44 = rho(3, 3).real();
    p.rho14 = std::abs(c14);
    p.rho23 = std::abs(c23);
    p.gamma14 = phase_of(c14);
    p.gamma23 = phase_of(c23);
    return p;
}

double hs_distance_sq(const DensityMatrix4& a, const DensityMatrix4& b) {
    const Matrix4c d = a.matrix() - b.matrix();
    return (d * d).trace().real();
}

double purity(const DensityMatrix4& rho) { return (rho.matrix() * rho.matrix()).trace().real(); }

}  // namespace xcorr
