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

#if defined(__x86_64__) || defined(_M_X64)
#define XCORR_HAVE_AVX2_BODIES 1
#include <immintrin.h>
#endif

namespace xcorr::kernels::avx2 {

#if XCORR_HAVE_AVX2_BODIES

bool compiled() noexcept { return true; }

// Tails shorter than one vector fall through to the scalar reference, which
// performs the identical operation sequence.

__attribute__((target("avx2"))) void x_spectrum(ConstXColumns in, KColumns out, std::size_t n) {
    const __m256d four = _mm256_set1_pd(4.0);
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r11 = _mm256_loadu_pd(in.rho11 + i);
        const __m256d r22 = _mm256_loadu_pd(in.rho22 + i);
        const __m256d r33 = _mm256_loadu_pd(in.rho33 + i);
        const __m256d r44 = _mm256_loadu_pd(in.rho44 + i);
        const __m256d r14 = _mm256_loadu_pd(in.rho14 + i);
        const __m256d r23 = _mm256_loadu_pd(in.rho23 + i);
        const __m256d s = _mm256_add_pd(r14, r23);
        const __m256d d = _mm256_sub_pd(r14, r23);
        const __m256d d13 = _mm256_sub_pd(r11, r33);
        const __m256d d24 = _mm256_sub_pd(r22, r44);
        _mm256_storeu_pd(out.k1 + i, _mm256_mul_pd(four, _mm256_mul_pd(s, s)));
        _mm256_storeu_pd(out.k2 + i, _mm256_mul_pd(four, _mm256_mul_pd(d, d)));
        const __m256d sq = _mm256_add_pd(_mm256_mul_pd(d13, d13), _mm256_mul_pd(d24, d24));
        _mm256_storeu_pd(out.k3 + i, _mm256_mul_pd(two, sq));
    }
    if (i < n) {
        const ConstXColumns tail{in.rho11 + i, in.rho22 + i, in.rho33 + i,
                                 in.rho44 + i, in.rho14 + i, in.rho23 + i};
        scalar::x_spectrum(tail, KColumns{out.k1 + i, out.k2 + i, out.k3 + i}, n - i);
    }
}

__attribute__((target("avx2"))) void amplitude_damping(const double* p, std::size_t n,
                                                       const DampingInit& init, XColumns out) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d a11 = _mm256_set1_pd(init.rho11);
    const __m256d a22 = _mm256_set1_pd(init.rho22);
    const __m256d a33 = _mm256_set1_pd(init.rho33);
    const __m256d a44 = _mm256_set1_pd(init.rho44);
    const __m256d a2233 = _mm256_set1_pd(init.rho22 + init.rho33);
    const __m256d a14 = _mm256_set1_pd(init.rho14);
    const __m256d a23 = _mm256_set1_pd(init.rho23);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d pt = _mm256_loadu_pd(p + i);
        const __m256d leak = _mm256_mul_pd(a11, _mm256_mul_pd(pt, _mm256_sub_pd(one, pt)));
        const __m256d r11 = _mm256_mul_pd(a11, _mm256_mul_pd(pt, pt));
        const __m256d r22 = _mm256_add_pd(_mm256_mul_pd(a22, pt), leak);
        const __m256d r33 = _mm256_add_pd(_mm256_mul_pd(a33, pt), leak);
        _mm256_storeu_pd(out.rho11 + i, r11);
        _mm256_storeu_pd(out.rho22 + i, r22);
        _mm256_storeu_pd(out.rho33 + i, r33);
        const __m256d q = _mm256_sub_pd(one, pt);
        const __m256d r44 = _mm256_add_pd(
            a44, _mm256_add_pd(_mm256_mul_pd(q, a2233), _mm256_mul_pd(a11, _mm256_mul_pd(q, q))));
        _mm256_storeu_pd(out.rho44 + i, r44);
        _mm256_storeu_pd(out.rho14 + i, _mm256_mul_pd(a14, pt));
        _mm256_storeu_pd(out.rho23 + i, _mm256_mul_pd(a23, pt));
    }
    if (i < n) {
        const XColumns tail{out.rho11 + i, out.rho22 + i, out.rho33 + i,
                            out.rho44 + i, out.rho14 + i, out.rho23 + i};
        scalar::amplitude_damping(p + i, n - i, init, tail);
    }
}

#else

bool compiled() noexcept { return false; }

void x_spectrum(ConstXColumns in, KColumns out, std::size_t n) { scalar::x_spectrum(in, out, n); }

void amplitude_damping(const double* p, std::size_t n, const DampingInit& init, XColumns out) {
    scalar::amplitude_damping(p, n, init, out);
}

#endif

}  // namespace xcorr::kernels::avx2
