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

#include "xcorr/quantifiers.hpp"

#include "xcorr/error.hpp"
#include "xcorr/simplex.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace xcorr {

double geometric_discord_general(const BlochForm& b) {
    const KSpectrum k = k_matrix_general(b);
    const double d = 0.25 * (b.x.squaredNorm() + b.t.squaredNorm() - k.eigenvalues(0));
    return std::max(d, 0.0);
}

namespace {

double clamp_small_negative(double v, const Tolerances& tol, bool& flag) {
    if (v < 0.0 && v >= -tol.clamp) {
        flag = true;
        return 0.0;
    }
    return v;
}

}  // namespace

CorrelationReport quantifiers_x(const XStateParams& p, const Tolerances& tol) {
    const BlochForm b = x_params_to_bloch(p, tol);
    CorrelationReport r;
    r.case_label = k_eigenvalues_x(p, tol);
    r.boundary_flag = r.case_label.boundary;
    r.product_pair = closest_product_x(p, tol);

    const double x3 = b.x(2), y3 = b.y(2), t33 = b.t(2, 2);
    const double a3 = r.product_pair.a(2), b3 = r.product_pair.b(2);
    const double dt = t33 - a3 * b3;
    const double z_part =
        0.25 * ((x3 - a3) * (x3 - a3) + (y3 - b3) * (y3 - b3) + dt * dt);
    const double plane_part = 0.25 * b.t.topLeftCorner<2, 2>().squaredNorm();
    r.t_g = z_part + plane_part;

    if (r.case_label.id == CaseId::Case1) {
        r.d_g = 2.0 * (p.rho14 * p.rho14 + p.rho23 * p.rho23);
        r.c_g = z_part;  // pi_chi coincides with pi_rho
        r.l_g = 0.0;
        r.classical_product = r.product_pair;
    } else {
        const double diff = p.rho14 - p.rho23;
        const double sum = p.rho14 + p.rho23;
        const double d13 = p.rho11 - p.rho33;
        const double d24 = p.rho22 - p.rho44;
        r.d_g = diff * diff + 0.5 * (d13 * d13 + d24 * d24);
        r.c_g = sum * sum;
        r.l_g = 0.25 * a3 * a3 * (dt * dt + 1.0 + b3 * b3);
        r.classical_product = ProductPair{};
        r.classical_product.b(2) = y3;
    }
    r.classical_state = classical_state_for_case(p, r.case_label.id, tol);

    r.t_g = clamp_small_negative(r.t_g, tol, r.clamped);
    r.d_g = clamp_small_negative(r.d_g, tol, r.clamped);
    r.c_g = clamp_small_negative(r.c_g, tol, r.clamped);
    r.l_g = clamp_small_negative(r.l_g, tol, r.clamped);
    r.residual_closure = r.t_g - r.d_g - r.c_g;
    r.residual_with_l = r.t_g + r.l_g - r.d_g - r.c_g;
    return r;
}

double measurement_disturbance(const DensityMatrix4& rho, const Vector3& n) {
    Matrix2c dir = Matrix2c::Zero();
    for (int k = 0; k < 3; ++k)
        dir += n(k) * pauli(k);
    const Matrix2c id = Matrix2c::Identity();
    const std::array<Matrix2c, 2> proj{0.5 * (id + dir), 0.5 * (id - dir)};

    Matrix4c measured = Matrix4c::Zero();
    for (const auto& pa : proj) {
        Matrix4c op = Matrix4c::Zero();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                op.block<2, 2>(2 * i, 2 * j) = pa(i, j) * id;
        measured += op * rho.matrix() * op;
    }
    const Matrix4c d = rho.matrix() - measured;
    return (d * d).trace().real();
}

double discord_measurement_oracle(const DensityMatrix4& rho, int grid_density, const Tolerances& tol) {
    if (grid_density < 64)
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("grid_density must be >= 64, got {}", grid_density));
    require_valid(rho, tol);

    auto direction = [](double theta, double phi) {
        return Vector3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                       std::cos(theta));
    };

    struct GridPoint {
        double value, theta, phi;
    };
    std::vector<GridPoint> grid;
    grid.reserve(static_cast<std::size_t>(grid_density) * static_cast<std::size_t>(grid_density));
    for (int i = 0; i < grid_density; ++i) {
        const double theta = std::numbers::pi * i / (grid_density - 1);
        for (int j = 0; j < grid_density; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / grid_density;
            grid.push_back({measurement_disturbance(rho, direction(theta, phi)), theta, phi});
        }
    }
    constexpr std::size_t kPolished = 4;
    std::partial_sort(grid.begin(), grid.begin() + kPolished, grid.end(),
                      [](const GridPoint& a, const GridPoint& b) { return a.value < b.value; });

    const simplex::Objective objective = [&](const Eigen::VectorXd& v) {
        return measurement_disturbance(rho, direction(v(0), v(1)));
    };
    simplex::Options nm;
    nm.initial_step = std::numbers::pi / grid_density;
    nm.f_tol = 1e-17;
    nm.x_tol = 1e-11;
    nm.max_evaluations = 4000;

    double best = grid.front().value;
    for (std::size_t k = 0; k < kPolished; ++k) {
        const simplex::Result r =
            simplex::minimize(objective, Eigen::Vector2d(grid[k].theta, grid[k].phi), nm);
        best = std::min(best, r.value);
    }
    return best;
}

CorrelationReport bell_diagonal_quantifiers(double t11, double t22, double t33, const Tolerances& tol) {
    BlochForm b;
    b.t.diagonal() << t11, t22, t33;
    const DensityMatrix4 rho = bloch_compose(b);
    const StateValidation v = validate(rho, tol);
    if (!v.ok())
        throw Error(ErrorKind::InvalidState,
                    fmt::format("(T11, T22, T33) = ({:.17g}, {:.17g}, {:.17g}) is not a physical "
                                "Bell-diagonal state: {}",
                                t11, t22, t33, v.describe()));

    const double s = t11 * t11 + t22 * t22 + t33 * t33;
    const double tmax = std::max({std::abs(t11), std::abs(t22), std::abs(t33)});

    CorrelationReport r;
    r.t_g = s / 4.0;
    r.d_g = (s - tmax * tmax) / 4.0;
    r.c_g = tmax * tmax / 4.0;
    r.l_g = 0.0;
    r.case_label.k1 = std::max(t11 * t11, t22 * t22);
    r.case_label.k2 = std::min(t11 * t11, t22 * t22);
    r.case_label.k3 = t33 * t33;
    r.case_label.id = r.case_label.k1 <= r.case_label.k3 ? CaseId::Case1 : CaseId::Case2;
    r.case_label.boundary = std::abs(r.case_label.k1 - r.case_label.k3) <= tol.case_boundary;
    r.boundary_flag = r.case_label.boundary;

    BlochForm chi;
    if (r.case_label.id == CaseId::Case1)
        chi.t(2, 2) = t33;
    else if (std::abs(t11) >= std::abs(t22))
        chi.t(0, 0) = t11;
    else
        chi.t(1, 1) = t22;
    r.classical_state = matrix_to_x_params(bloch_compose(chi), tol);
    r.residual_closure = r.t_g - r.d_g - r.c_g;
    r.residual_with_l = r.residual_closure;
    return r;
}

}  // namespace xcorr
