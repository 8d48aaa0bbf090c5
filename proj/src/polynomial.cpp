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

#include "xcorr/polynomial.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace xcorr::poly {

double evaluate(std::span<const double> coeffs, double x) noexcept {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

std::vector<double> derivative(std::span<const double> coeffs) {
    std::vector<double> d;
    for (std::size_t k = 1; k < coeffs.size(); ++k)
        d.push_back(static_cast<double>(k) * coeffs[k]);
    return d;
}

namespace {

// Drops trailing (highest-order) zero coefficients.
std::vector<double> trimmed(std::span<const double> coeffs) {
    std::vector<double> c(coeffs.begin(), coeffs.end());
    while (!c.empty() && c.back() == 0.0)
        c.pop_back();
    return c;
}

std::vector<double> companion_real_roots(const std::vector<double>& c, double lo, double hi) {
    const auto n = static_cast<Eigen::Index>(c.size()) - 1;
    if (n < 1)
        return {};
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i)
        comp(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < n; ++i)
        comp(i, n - 1) = -c[static_cast<std::size_t>(i)] / c.back();
    Eigen::EigenSolver<Eigen::MatrixXd> eig(comp, false);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto z = eig.eigenvalues()(i);
        // Near-double roots split into a conjugate pair with imaginary part
        // of order sqrt(eps); keep them as candidates.
        if (std::abs(z.imag()) <= 1e-6 * (1.0 + std::abs(z.real())) && z.real() >= lo &&
            z.real() <= hi)
            out.push_back(z.real());
    }
    return out;
}

double bisect(std::span<const double> c, double a, double b, double fa) {
    for (int it = 0; it < 200 && b - a > 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(a));
         ++it) {
        const double m = 0.5 * (a + b);
        const double fm = evaluate(c, m);
        if (fm == 0.0)
            return m;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

double newton_polish(std::span<const double> c, std::span<const double> dc, double x) {
    double fx = std::abs(evaluate(c, x));
    for (int it = 0; it < 8 && fx > 0.0; ++it) {
        const double d = evaluate(dc, x);
        if (d == 0.0)
            break;
        const double next = x - evaluate(c, x) / d;
        const double fn = std::abs(evaluate(c, next));
        if (!(fn < fx))
            break;
        x = next;
        fx = fn;
    }
    return x;
}

}  // namespace

std::vector<double> real_roots(std::span<const double> coeffs, double lo, double hi, int scan_intervals,
                               double merge_tol) {
    const std::vector<double> c = trimmed(coeffs);
    if (c.size() < 2)
        return {};
    const std::vector<double> dc = derivative(c);

    std::vector<double> candidates = companion_real_roots(c, lo, hi);

    const double h = (hi - lo) / scan_intervals;
    double x0 = lo;
    double f0 = evaluate(c, x0);
    if (f0 == 0.0)
        candidates.push_back(x0);
    for (int k = 1; k <= scan_intervals; ++k) {
        const double x1 = k == scan_intervals ? hi : lo + k * h;
        const double f1 = evaluate(c, x1);
        if (f1 == 0.0)
            candidates.push_back(x1);
        else if (f0 != 0.0 && (f0 < 0.0) != (f1 < 0.0))
            candidates.push_back(bisect(c, x0, x1, f0));
        x0 = x1;
        f0 = f1;
    }

    for (double& r : candidates)
        r = std::clamp(newton_polish(c, dc, r), lo, hi);
    std::sort(candidates.begin(), candidates.end());

    std::vector<double> out;
    for (double r : candidates) {
        if (out.empty() || r - out.back() > merge_tol) {
            out.push_back(r);
        } else if (std::abs(evaluate(c, r)) < std::abs(evaluate(c, out.back()))) {
            out.back() = r;
        }
    }
    return out;
}

}  // namespace xcorr::poly
