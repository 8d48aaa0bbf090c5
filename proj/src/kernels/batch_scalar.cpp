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

#include "xcorr/kernels/batch.hpp"

namespace xcorr::kernels::scalar {

void x_spectrum(ConstXColumns in, KColumns out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double s = in.rho14[i] + in.rho23[i];
        const double d = in.rho14[i] - in.rho23[i];
        const double d13 = in.rho11[i] - in.rho33[i];
        const double d24 = in.rho22[i] - in.rho44[i];
        out.k1[i] = 4.0 * (s * s);
        out.k2[i] = 4.0 * (d * d);
        out.k3[i] = 2.0 * ((d13 * d13) + (d24 * d24));
    }
}

void amplitude_damping(const double* p, std::size_t n, const DampingInit& init, XColumns out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double pt = p[i];
        const double leak = init.rho11 * (pt * (1.0 - pt));
        const double r11 = init.rho11 * (pt * pt);
        const double r22 = init.rho22 * pt + leak;
        const double r33 = init.rho33 * pt + leak;
        out.rho11[i] = r11;
        out.rho22[i] = r22;
        out.rho33[i] = r33;
        const double q = 1.0 - pt;
        out.rho44[i] = init.rho44 + (q * (init.rho22 + init.rho33) + init.rho11 * (q * q));
        out.rho14[i] = init.rho14 * pt;
        out.rho23[i] = init.rho23 * pt;
    }
}

}  // namespace xcorr::kernels::scalar
