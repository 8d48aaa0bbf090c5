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

#include "xcorr/closest_states.hpp"

#include "xcorr/polynomial.hpp"
#include "xcorr/rng.hpp"
#include "xcorr/simplex.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace xcorr {

const char* to_string(CaseId id) noexcept { return id == CaseId::Case1 ? "case1" : "case2"; }

DensityMatrix4 product_state(const ProductPair& pair) {
    BlochForm b;
    b.x = pair.a;
    b.y = pair.b;
    b.t = pair.a * pair.b.transpose();
    return bloch_compose(b);
}

CaseLabel k_eigenvalues_x(const XStateParams& p, const Tolerances& tol) {
    CaseLabel c;
    const double sum = p.rho14 + p.rho23;
    const double diff = p.rho14 - p.rho23;
    const double d13 = p.rho11 - p.rho33;
    const double d24 = p.rho22 - p.rho44;
    c.k1 = 4.0 * sum * sum;
    c.k2 = 4.0 * diff * diff;
    c.k3 = 2.0 * (d13 * d13 + d24 * d24);
    c.id = c.k1 <= c.k3 ? CaseId::Case1 : CaseId::Case2;
    c.boundary = std::abs(c.k1 - c.k3) <= tol.case_boundary;
    return c;
}

KSpectrum k_matrix_general(const BlochForm& b) {
    KSpectrum s;
    s.k = b.x * b.x.transpose() + b.t * b.t.transpose();
    Eigen::SelfAdjointEigenSolver<Matrix3> eig(s.k);
    for (int i = 0; i < 3; ++i) {
        s.eigenvalues(i) = eig.eigenvalues()(2 - i);
        s.eigenvectors.col(i) = eig.eigenvectors().col(2 - i);
    }
    return s;
}

double product_distance(const BlochForm& rho, const ProductPair& pi) {
    return 0.25 * ((rho.x - pi.a).squaredNorm() + (rho.y - pi.b).squaredNorm() +
                   (rho.t - pi.a * pi.b.transpose()).squaredNorm());
}

double stationarity_residual(const BlochForm& rho, const ProductPair& pi) {
    const Vector3 a_fix = (rho.x + rho.t * pi.b) / (1.0 + pi.b.squaredNorm());
    const Vector3 b_fix = (rho.y + rho.t.transpose() * pi.a) / (1.0 + pi.a.squaredNorm());
    return std::max((pi.a - a_fix).cwiseAbs().maxCoeff(), (pi.b - b_fix).cwiseAbs().maxCoeff());
}

namespace detail {

std::array<double, 6> a3_quintic(double x3, double y3, double t33) noexcept {
    // a [(1+a^2)^2 + (y+Ta)^2] - x (1+a^2)^2 - T (y+Ta)(1+a^2), expanded.
    return {-(x3 + t33 * y3), 1.0 + y3 * y3 - t33 * t33, y3 * t33 - 2.0 * x3, 2.0, -x3, 1.0};
}

double b3_from_a3(double y3, double t33, double a3) noexcept {
    return (y3 + t33 * a3) / (1.0 + a3 * a3);
}

double f2_scaled(double x3, double y3, double t33, double a3, double b3) noexcept {
    const double da = x3 - a3;
    const double db = y3 - b3;
    const double dt = t33 - a3 * b3;
    return da * da + db * db + dt * dt;
}

}  // namespace detail

A3B3 solve_a3b3(double x3, double y3, double t33, const Tolerances& tol) {
    if (x3 == 0.0 && y3 == 0.0 && t33 == 0.0)
        return {};

    // Physical minimizers have |a3| <= 1; the margin absorbs polishing overshoot.
    constexpr double kBracket = 1.25;
    const auto coeffs = detail::a3_quintic(x3, y3, t33);
    std::vector<double> roots = poly::real_roots(coeffs, -kBracket, kBracket);
    if (coeffs[0] == 0.0)
        roots.push_back(0.0);
    if (roots.empty())
        throw Error(ErrorKind::SolverFailure,
                    fmt::format("no real stationary point for x3={:.17g} y3={:.17g} T33={:.17g}", x3,
                                y3, t33));

    struct Candidate {
        double a3, b3, f;
    };
    std::vector<Candidate> cands;
    cands.reserve(roots.size());
    for (double a3 : roots) {
        const double b3 = detail::b3_from_a3(y3, t33, a3);
        cands.push_back({a3, b3, detail::f2_scaled(x3, y3, t33, a3, b3)});
    }
    const double fmin =
        std::min_element(cands.begin(), cands.end(), [](auto& l, auto& r) { return l.f < r.f; })->f;
    // Ties (within roundoff) go to the smallest |a3|, then the smallest a3.
    const double tie = 1e-14 * std::max(1.0, fmin);
    const Candidate* best = nullptr;
    for (const auto& c : cands) {
        if (c.f > fmin + tie)
            continue;
        if (best == nullptr || std::abs(c.a3) < std::abs(best->a3) ||
            (std::abs(c.a3) == std::abs(best->a3) && c.a3 < best->a3))
            best = &c;
    }

    const double res_a = std::abs(best->a3 - (x3 + t33 * best->b3) / (1.0 + best->b3 * best->b3));
    if (!(res_a <= tol.stationarity))
        throw Error(ErrorKind::SolverFailure,
                    fmt::format("stationarity residual {:.3e} at a3={:.17g} exceeds {:.1e}", res_a,
                                best->a3, tol.stationarity));
    return {best->a3, best->b3};
}

ProductPair closest_product_x(const XStateParams& p, const Tolerances& tol) {
    const BlochForm b = x_params_to_bloch(p, tol);
    const A3B3 s = solve_a3b3(b.x(2), b.y(2), b.t(2, 2), tol);
    ProductPair pair;
    pair.a(2) = s.a3;
    pair.b(2) = s.b3;
    return pair;
}

namespace {

using Vector6 = Eigen::Matrix<double, 6, 1>;
using Matrix6 = Eigen::Matrix<double, 6, 6>;

ProductPair split(const Eigen::VectorXd& v) {
    ProductPair p;
    p.a = v.head<3>();
    p.b = v.segment<3>(3);
    return p;
}

Vector6 product_gradient(const BlochForm& rho, const ProductPair& p) {
    const double na = 1.0 + p.a.squaredNorm();
    const double nb = 1.0 + p.b.squaredNorm();
    Vector6 g;
    g.head<3>() = 0.5 * (p.a * nb - rho.x - rho.t * p.b);
    g.tail<3>() = 0.5 * (p.b * na - rho.y - rho.t.transpose() * p.a);
    return g;
}

// Damped Newton on grad F = 0. Stops silently if the Hessian is indefinite;
// the caller keeps whatever point it had. Near degenerate minima F
// is flat to roundoff, so a step is also accepted when F does not rise beyond
// roundoff and the gradient shrinks.
ProductPair newton_polish(const BlochForm& rho, ProductPair p) {
    double f = product_distance(rho, p);
    Vector6 g = product_gradient(rho, p);
    for (int it = 0; it < 200; ++it) {
        if (g.cwiseAbs().maxCoeff() == 0.0)
            break;
        const double na = 1.0 + p.a.squaredNorm();
        const double nb = 1.0 + p.b.squaredNorm();
        Matrix6 h = Matrix6::Zero();
        h.topLeftCorner<3, 3>() = 0.5 * nb * Matrix3::Identity();
        h.bottomRightCorner<3, 3>() = 0.5 * na * Matrix3::Identity();
        const Matrix3 cross = p.a * p.b.transpose() - 0.5 * rho.t;
        h.topRightCorner<3, 3>() = cross;
        h.bottomLeftCorner<3, 3>() = cross.transpose();
        // Levenberg shift of size |g|: negligible against the curvature at a
        // regular minimum, keeps the step bounded where H is nearly singular.
        Eigen::SelfAdjointEigenSolver<Matrix6> es(h);
        const double lmin = es.eigenvalues().minCoeff();
        if (lmin < -1e-12)
            break;
        const double shift = std::max(0.0, -lmin) + g.norm();
        const Vector6 step = -(es.eigenvectors() *
                               (es.eigenvalues().array() + shift).inverse().matrix().asDiagonal() *
                               es.eigenvectors().transpose() * g);
        if (!step.allFinite() || step.norm() < 1e-15)
            break;
        const double flat = f + 8.0 * std::numeric_limits<double>::epsilon() * std::max(f, 1.0);
        double t = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 30; ++ls, t *= 0.5) {
            ProductPair trial = p;
            trial.a += t * step.head<3>();
            trial.b += t * step.tail<3>();
            const double ft = product_distance(rho, trial);
            const Vector6 gt = product_gradient(rho, trial);
            if (ft < f || (ft <= flat && gt.norm() < g.norm())) {
                moved = step.cwiseAbs().maxCoeff() * t > 0.0;
                p = trial;
                f = std::min(f, ft);
                g = gt;
                break;
            }
        }
        if (!moved)
            break;
    }
    return p;
}

}  // namespace

ProductSearch closest_product_general(const DensityMatrix4& rho, const OracleOptions& opts,
                                      const Tolerances& tol) {
    const BlochForm bloch = bloch_decompose(rho, tol);

    const simplex::Objective objective = [&bloch](const Eigen::VectorXd& v) {
        const Eigen::VectorXd clamped = v.cwiseMax(-1.0).cwiseMin(1.0);
        return product_distance(bloch, split(clamped)) + (v - clamped).squaredNorm();
    };

    std::vector<Eigen::VectorXd> starts;
    Eigen::VectorXd marg(6);
    marg << bloch.x, bloch.y;
    starts.push_back(marg.cwiseMax(-1.0).cwiseMin(1.0));
    Rng rng(opts.seed);
    for (int s = 0; s < opts.random_starts; ++s) {
        Eigen::VectorXd v(6);
        for (int i = 0; i < 6; ++i)
            v(i) = rng.uniform(-1.0, 1.0);
        starts.push_back(v);
    }

    simplex::Options nm;
    nm.initial_step = 0.25;
    nm.f_tol = 1e-16;
    nm.x_tol = 1e-10;
    nm.max_evaluations = 6000;
    nm.restarts = 2;

    ProductSearch best;
    best.distance = std::numeric_limits<double>::infinity();
    best.residual = std::numeric_limits<double>::infinity();
    for (const auto& start : starts) {
        const simplex::Result r = simplex::minimize(objective, start, nm);
        ProductPair cand = split(r.x.cwiseMax(-1.0).cwiseMin(1.0));
        cand = newton_polish(bloch, cand);
        const double f = product_distance(bloch, cand);
        const double res = stationarity_residual(bloch, cand);
        const bool better = f < best.distance - 1e-15 ||
                            (std::abs(f - best.distance) <= 1e-15 && res < best.residual);
        if (better) {
            best.pair = cand;
            best.distance = f;
            best.residual = res;
        }
    }
    best.starts = static_cast<int>(starts.size());
    if (!(best.residual <= opts.residual_tol))
        throw ConvergenceError(fmt::format("product-state search ended with stationarity residual "
                                           "{:.3e} (limit {:.1e})",
                                           best.residual, opts.residual_tol),
                               best);
    return best;
}

XStateParams classical_state_for_case(const XStateParams& p, CaseId which, const Tolerances& tol) {
    require_valid(p, tol);
    if (which == CaseId::Case1) {
        // chi = 1/4 [1 + x3 s3 x 1 + y3 1 x s3 + T33 s3 x s3]: the diagonal of rho.
        XStateParams chi = p;
        chi.rho14 = chi.rho23 = 0.0;
        chi.gamma14 = chi.gamma23 = 0.0;
        return chi;
    }
    const BlochForm src = x_params_to_bloch(p, tol);
    const double s = p.rho14 + p.rho23;
    const double c14 = std::cos(p.gamma14), s14 = std::sin(p.gamma14);
    const double c23 = std::cos(p.gamma23), s23 = std::sin(p.gamma23);
    BlochForm chi;
    chi.y(2) = src.y(2);
    chi.t(0, 0) = (c23 + c14) * s;
    chi.t(0, 1) = (s23 - s14) * s;
    chi.t(1, 0) = -(s23 + s14) * s;
    chi.t(1, 1) = (c23 - c14) * s;
    return matrix_to_x_params(bloch_compose(chi), tol);
}

XStateParams closest_classical_x(const XStateParams& p, const Tolerances& tol) {
    return classical_state_for_case(p, k_eigenvalues_x(p, tol).id, tol);
}

ProductPair closest_product_of_classical_x(const XStateParams& p, const Tolerances& tol) {
    if (k_eigenvalues_x(p, tol).id == CaseId::Case1)
        return closest_product_x(p, tol);
    ProductPair pair;
    pair.b(2) = x_params_to_bloch(p, tol).y(2);
    return pair;
}

}  // namespace xcorr
