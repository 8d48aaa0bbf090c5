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

namespace xcorr::kernels {

const char* to_string(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa detected_isa() noexcept {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    if (avx2::compiled() && __builtin_cpu_supports("avx2"))
        return Isa::Avx2;
#endif
    return Isa::Scalar;
}

namespace {

struct Table {
    void (*x_spectrum)(ConstXColumns, KColumns, std::size_t);
    void (*amplitude_damping)(const double*, std::size_t, const DampingInit&, XColumns);
};

const Table& table() {
    static const Table t = detected_isa() == Isa::Avx2
                               ? Table{&avx2::x_spectrum, &avx2::amplitude_damping}
                               : Table{&scalar::x_spectrum, &scalar::amplitude_damping};
    return t;
}

}  // namespace

void x_spectrum(ConstXColumns in, KColumns out, std::size_t n) { table().x_spectrum(in, out, n); }

void amplitude_damping(const double* p, std::size_t n, const DampingInit& init, XColumns out) {
    table().amplitude_damping(p, n, init, out);
}

}  // namespace xcorr::kernels
