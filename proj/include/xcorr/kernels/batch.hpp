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

/**
 * @file
 * Batch kernels over structure-of-arrays X-state columns.
 *
 * Each kernel has a scalar reference implementation and an AVX2 variant.
 * The public entry points dispatch once, at first use, on the CPU features
 * detected at runtime. Both variants perform the same IEEE operations in the
 * same order (no FMA contraction), so their outputs are bit-identical.
 */

#pragma once

#include "xcorr/state.hpp"

#include <cstddef>

namespace xcorr::kernels {

enum class Isa { Scalar, Avx2 };

[[nodiscard]] const char* to_string(Isa isa) noexcept;

/// Best instruction set supported by both this build and the running CPU.
[[nodiscard]] Isa detected_isa() noexcept;

/// Six parallel columns of X-state parameters (moduli only, no phases).
struct XColumns {
    double* rho11;
    double* rho22;
    double* rho33;
    double* rho44;
    double* rho14;
    double* rho23;
};

struct ConstXColumns {
    const double* rho11;
    const double* rho22;
    const double* rho33;
    const double* rho44;
    const double* rho14;
    const double* rho23;
};

struct KColumns {
    double* k1;
    double* k2;
    double* k3;
};

/// Initial populations and coherence moduli for the damping map.
struct DampingInit {
    double rho11, rho22, rho33, rho44, rho14, rho23;
};

/// k1 = 4(rho14+rho23)^2, k2 = 4(rho14-rho23)^2, k3 = 2[(rho11-rho33)^2 + (rho22-rho44)^2].
void x_spectrum(ConstXColumns in, KColumns out, std::size_t n);

/// Two independent amplitude-damping channels with excited-state survival p[i]:
/// rho11 = rho11(0) p^2, rho22 = rho22(0) p + rho11(0) p(1-p),
/// rho33 = rho33(0) p + rho11(0) p(1-p),
/// rho44 = rho44(0) + q (rho22(0)+rho33(0)) + q^2 rho11(0) with q = 1-p,
/// rho14 = rho14(0) p, rho23 = rho23(0) p.
void amplitude_damping(const double* p, std::size_t n, const DampingInit& init, XColumns out);

namespace scalar {
void x_spectrum(ConstXColumns in, KColumns out, std::size_t n);
void amplitude_damping(const double* p, std::size_t n, const DampingInit& init, XColumns out);
}  // namespace scalar

namespace avx2 {
/// True when the AVX2 bodies were compiled in (x86-64 builds only).
[[nodiscard]] bool compiled() noexcept;
void x_spectrum(ConstXColumns in, KColumns out, std::size_t n);
void amplitude_damping(const double* p, std::size_t n, const DampingInit& init, XColumns out);
}  // namespace avx2

}  // namespace xcorr::kernels
