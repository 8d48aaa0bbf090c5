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

#include "xcorr/simplex.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace xcorr::simplex {

namespace {

struct Run {
    Eigen::VectorXd x;
    double value;
    bool converged;
};

Run descend(const Objective& f, const Eigen::VectorXd& start, double step, const Options& opts,
            int& evaluations) {
    const auto n = start.size();
    std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(n) + 1, start);
    std::vector<double> vals(pts.size());
    for (Eigen::Index i = 0; i < n; ++i)
        pts[static_cast<std::size_t>(i) + 1](i) += step;
    for (std::size_t i = 0; i < pts.size(); ++i)
        vals[i] = f(pts[i]);
    evaluations += static_cast<int>(pts.size());

    std::vector<std::size_t> order(pts.size());
    bool converged = false;
    while (evaluations < opts.max_evaluations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[order.size() - 2];

        double diameter = 0.0;
        for (const auto& p : pts)
            diameter = std::max(diameter, (p - pts[best]).cwiseAbs().maxCoeff());
        if (vals[worst] - vals[best] <= opts.f_tol && diameter <= opts.x_tol) {
            converged = true;
            break;
        }
        if (diameter <= opts.x_tol * 1e-3) {
            converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (i != worst)
                centroid += pts[i];
        centroid /= static_cast<double>(n);

        const Eigen::VectorXd reflected = centroid + (centroid - pts[worst]);
        const double fr = f(reflected);
        ++evaluations;
        if (fr < vals[best]) {
            const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - pts[worst]);
            const double fe = f(expanded);
            ++evaluations;
            if (fe < fr) {
                pts[worst] = expanded;
                vals[worst] = fe;
            } else {
                pts[worst] = reflected;
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second_worst]) {
            pts[worst] = reflected;
            vals[worst] = fr;
            continue;
        }
        const bool outside = fr < vals[worst];
        const Eigen::VectorXd contracted =
            outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                    : Eigen::VectorXd(centroid + 0.5 * (pts[worst] - centroid));
        const double fc = f(contracted);
        ++evaluations;
        if (fc < (outside ? fr : vals[worst])) {
            pts[worst] = contracted;
            vals[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i == best)
                continue;
            pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
            vals[i] = f(pts[i]);
            ++evaluations;
        }
    }
    const auto it = std::min_element(vals.begin(), vals.end());
    return {pts[static_cast<std::size_t>(it - vals.begin())], *it, converged};
}

}  // namespace

Result minimize(const Objective& f, const Eigen::VectorXd& start, const Options& opts) {
    Result res;
    Run run = descend(f, start, opts.initial_step, opts, res.evaluations);
    // Re-seed a fresh, smaller simplex at the current optimum.
    double step = opts.initial_step;
    for (int r = 0; r < opts.restarts && res.evaluations < opts.max_evaluations; ++r) {
        step = std::max(step * 0.1, 1e-6);
        Run again = descend(f, run.x, step, opts, res.evaluations);
        const bool improved = again.value < run.value;
        if (again.value <= run.value)
            run = again;
        if (!improved && run.converged)
            break;
    }
    res.x = run.x;
    res.value = run.value;
    res.converged = run.converged;
    return res;
}

}  // namespace xcorr::simplex
