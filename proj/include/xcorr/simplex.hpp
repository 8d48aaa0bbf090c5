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

#pragma once

#include <Eigen/Dense>

#include <functional>

namespace xcorr::simplex {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct Options {
    double initial_step = 0.1;
    double f_tol = 1e-15;  // spread of objective values across the simplex
    double x_tol = 1e-12;  // simplex diameter
    int max_evaluations = 20000;
    int restarts = 3;      // re-seed a fresh simplex at the optimum this many times
};

struct Result {
    Eigen::VectorXd x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Derivative-free Nelder-Mead descent with standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
[[nodiscard]] Result minimize(const Objective& f, const Eigen::VectorXd& start,
                              const Options& opts = {});

}  // namespace xcorr::simplex
