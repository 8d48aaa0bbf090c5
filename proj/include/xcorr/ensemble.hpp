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
 * Random X-state ensembles and non-additivity histograms.
 *
 * Sampling law: the four populations are uniform on the probability simplex
 * (spacings of three sorted uniforms), rho14 = u sqrt(rho11 rho44) and
 * rho23 = v sqrt(rho22 rho33) with u, v uniform on [0, 1], phases uniform on
 * [0, 2pi) or pinned to zero. Positivity holds by construction. This is a
 * convention of this library, not a canonical measure on X states.
 *
 * Output is split into fixed-size shards; shard k draws from a generator
 * seeded with (seed XOR k), so results do not depend on the worker count.
 */

#pragma once

#include "xcorr/quantifiers.hpp"
#include "xcorr/rng.hpp"
#include "xcorr/state.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace xcorr {

enum class PhaseMode { Free, Zero };

struct SamplerConfig {
    std::uint64_t seed = 1;
    std::size_t count = 1;
    std::optional<CaseId> case_filter;
    PhaseMode phase_mode = PhaseMode::Free;
};

inline constexpr std::size_t kShardSize = 1024;

/// Draws below this acceptance rate over one window abort the sampler.
inline constexpr double kMinAcceptanceRate = 1e-4;
inline constexpr std::uint64_t kRejectionWindow = std::uint64_t{1} << 20;

struct SampleStats {
    std::uint64_t drawn = 0;
    std::uint64_t accepted = 0;

    [[nodiscard]] double acceptance_rate() const noexcept {
        return drawn == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(drawn);
    }
};

struct SampleBatch {
    std::vector<XStateParams> states;
    SampleStats stats;
};

/// One unconditioned draw from the sampling law.
[[nodiscard]] XStateParams draw_x_state(Rng& rng, PhaseMode mode);

using AcceptPredicate = std::function<bool(const XStateParams&)>;

/// Exactly cfg.count valid states, filtered by cfg.case_filter when set.
[[nodiscard]] SampleBatch sample_x_states(const SamplerConfig& cfg, unsigned workers = 1);

/// Same, with an arbitrary acceptance test applied after the case filter.
[[nodiscard]] SampleBatch sample_x_states(const SamplerConfig& cfg, const AcceptPredicate& accept,
                                          unsigned workers = 1);

enum class HistogramQuantity { RelResidual, RelResidualWithL };

[[nodiscard]] const char* to_string(HistogramQuantity q) noexcept;

struct HistogramSpec {
    int bin_count = 200;
    double lo = -1.0;
    double hi = 0.0;
    HistogramQuantity quantity = HistogramQuantity::RelResidual;

    /// 200 bins over [-1, 0] for the residual, [0, 0.5] for the residual with L_g.
    [[nodiscard]] static HistogramSpec defaults(HistogramQuantity q);
};

/// (T_g - D_g - C_g)/T_g or (T_g + L_g - D_g - C_g)/T_g; nullopt when T_g <= 1e-12.
[[nodiscard]] std::optional<double> relative_quantity(const CorrelationReport& r,
                                                      HistogramQuantity q);

struct Histogram {
    HistogramSpec spec;
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;      // samples binned (including edge-clamped)
    std::uint64_t dropped = 0;    // T_g <= 1e-12, ratio undefined
    std::uint64_t underflow = 0;  // below lo
    std::uint64_t overflow = 0;   // above hi
    SampleStats sampling;
    std::vector<double> values;   // per-sample quantity in sampling order

    [[nodiscard]] double bin_lo(int i) const noexcept;
    [[nodiscard]] double bin_hi(int i) const noexcept;
};

[[nodiscard]] Histogram run_histogram(const SamplerConfig& cfg, const HistogramSpec& spec,
                                      unsigned workers = 1);

/// Bins precomputed values with the edge handling used by run_histogram.
[[nodiscard]] Histogram bin_values(const std::vector<double>& values, const HistogramSpec& spec);

}  // namespace xcorr
