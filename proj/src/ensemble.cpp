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

#include "xcorr/ensemble.hpp"

#include "xcorr/error.hpp"
#include "xcorr/kernels/batch.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

namespace xcorr {

XStateParams draw_x_state(Rng& rng, PhaseMode mode) {
    std::array<double, 3> u{rng.uniform(), rng.uniform(), rng.uniform()};
    std::sort(u.begin(), u.end());
    XStateParams p;
    p.rho11 = u[0];
    p.rho22 = u[1] - u[0];
    p.rho33 = u[2] - u[1];
    p.rho44 = 1.0 - u[2];
    p.rho14 = rng.uniform() * std::sqrt(p.rho11 * p.rho44);
    p.rho23 = rng.uniform() * std::sqrt(p.rho22 * p.rho33);
    if (mode == PhaseMode::Free) {
        p.gamma14 = rng.uniform(0.0, 2.0 * std::numbers::pi);
        p.gamma23 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    return p;
}

namespace {

constexpr std::size_t kBlock = 64;

struct ShardResult {
    std::vector<XStateParams> states;
    SampleStats stats;
};

ShardResult run_shard(const SamplerConfig& cfg, const AcceptPredicate& accept, std::size_t shard,
                      std::size_t quota) {
    Rng rng(cfg.seed ^ static_cast<std::uint64_t>(shard));
    ShardResult out;
    out.states.reserve(quota);

    std::array<XStateParams, kBlock> block{};
    std::array<double, kBlock> r11{}, r22{}, r33{}, r44{}, r14{}, r23{}, k1{}, k2{}, k3{};
    std::uint64_t window_drawn = 0;
    std::uint64_t window_accepted = 0;

    while (out.states.size() < quota) {
        for (std::size_t i = 0; i < kBlock; ++i) {
            block[i] = draw_x_state(rng, cfg.phase_mode);
            r11[i] = block[i].rho11;
            r22[i] = block[i].rho22;
            r33[i] = block[i].rho33;
            r44[i] = block[i].rho44;
            r14[i] = block[i].rho14;
            r23[i] = block[i].rho23;
        }
        kernels::x_spectrum({r11.data(), r22.data(), r33.data(), r44.data(), r14.data(), r23.data()},
                            {k1.data(), k2.data(), k3.data()}, kBlock);

        for (std::size_t i = 0; i < kBlock && out.states.size() < quota; ++i) {
            ++out.stats.drawn;
            ++window_drawn;
            bool ok = true;
            if (cfg.case_filter)
                ok = (k1[i] <= k3[i]) == (*cfg.case_filter == CaseId::Case1);
            if (ok && accept)
                ok = accept(block[i]);
            if (ok) {
                require_valid(block[i]);
                out.states.push_back(block[i]);
                ++out.stats.accepted;
                ++window_accepted;
            }
            if (window_drawn == kRejectionWindow) {
                const double rate =
                    static_cast<double>(window_accepted) / static_cast<double>(window_drawn);
                if (rate < kMinAcceptanceRate)
                    throw Error(ErrorKind::RejectionExhausted,
                                fmt::format("acceptance rate {:.3e} over {} draws is below {:.0e}; "
                                            "the filter is (nearly) impossible to satisfy",
                                            rate, window_drawn, kMinAcceptanceRate));
                window_drawn = window_accepted = 0;
            }
        }
    }
    return out;
}

}  // namespace

SampleBatch sample_x_states(const SamplerConfig& cfg, unsigned workers) {
    return sample_x_states(cfg, AcceptPredicate{}, workers);
}

SampleBatch sample_x_states(const SamplerConfig& cfg, const AcceptPredicate& accept, unsigned workers) {
    if (cfg.count < 1)
        throw Error(ErrorKind::InvalidArgument, "sample count must be at least 1");
    const std::size_t shards = (cfg.count + kShardSize - 1) / kShardSize;
    std::vector<ShardResult> results(shards);

    auto quota_of = [&](std::size_t s) { return std::min(kShardSize, cfg.count - s * kShardSize); };

    workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(shards));
    if (workers == 1) {
        for (std::size_t s = 0; s < shards; ++s)
            results[s] = run_shard(cfg, accept, s, quota_of(s));
    } else {
        std::mutex mu;
        std::exception_ptr failure;
        std::size_t next = 0;
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t s = 0;
                    {
                        std::lock_guard lock(mu);
                        if (next >= shards || failure)
                            return;
                        s = next++;
                    }
                    try {
                        results[s] = run_shard(cfg, accept, s, quota_of(s));
                    } catch (...) {
                        std::lock_guard lock(mu);
                        if (!failure)
                            failure = std::current_exception();
                    }
                }
            });
        }
        pool.clear();
        if (failure)
            std::rethrow_exception(failure);
    }

    SampleBatch batch;
    batch.states.reserve(cfg.count);
    for (auto& r : results) {
        batch.states.insert(batch.states.end(), r.states.begin(), r.states.end());
        batch.stats.drawn += r.stats.drawn;
        batch.stats.accepted += r.stats.accepted;
    }
    return batch;
}

const char* to_string(HistogramQuantity q) noexcept {
    return q == HistogramQuantity::RelResidual ? "rel_residual" : "rel_residual_with_l";
}

HistogramSpec HistogramSpec::defaults(HistogramQuantity q) {
    HistogramSpec s;
    s.quantity = q;
    if (q == HistogramQuantity::RelResidualWithL) {
        s.lo = 0.0;
        s.hi = 0.5;
    }
    return s;
}

std::optional<double> relative_quantity(const CorrelationReport& r, HistogramQuantity q) {
    if (!(r.t_g > 1e-12))
        return std::nullopt;
    const double num = q == HistogramQuantity::RelResidual ? r.residual_closure : r.residual_with_l;
    return num / r.t_g;
}

double Histogram::bin_lo(int i) const noexcept {
    return spec.lo + (spec.hi - spec.lo) * i / spec.bin_count;
}

double Histogram::bin_hi(int i) const noexcept {
    return i + 1 == spec.bin_count ? spec.hi : bin_lo(i + 1);
}

namespace {

void validate_spec(const HistogramSpec& spec) {
    if (spec.bin_count < 2)
        throw Error(ErrorKind::InvalidArgument, "histogram needs at least 2 bins");
    if (!(spec.lo < spec.hi) || !std::isfinite(spec.lo) || !std::isfinite(spec.hi))
        throw Error(ErrorKind::InvalidArgument, "histogram range must satisfy lo < hi");
}

// Values within this distance of the range ends belong to the edge bins:
// exact additivity produces residuals of +-1e-17 around 0.
constexpr double kEdgeSlack = 1e-10;

}  // namespace

Histogram bin_values(const std::vector<double>& values, const HistogramSpec& spec) {
    validate_spec(spec);
    Histogram h;
    h.spec = spec;
    h.counts.assign(static_cast<std::size_t>(spec.bin_count), 0);
    h.values = values;
    const double width = spec.hi - spec.lo;
    for (double v : values) {
        if (v < spec.lo - kEdgeSlack) {
            ++h.underflow;
            continue;
        }
        if (v > spec.hi + kEdgeSlack) {
            ++h.overflow;
            continue;
        }
        const double c = std::clamp(v, spec.lo, spec.hi);
        auto bin = static_cast<int>(std::floor((c - spec.lo) / width * spec.bin_count));
        bin = std::clamp(bin, 0, spec.bin_count - 1);
        ++h.counts[static_cast<std::size_t>(bin)];
        ++h.total;
    }
    return h;
}

Histogram run_histogram(const SamplerConfig& cfg, const HistogramSpec& spec, unsigned workers) {
    validate_spec(spec);
    const SampleBatch batch = sample_x_states(cfg, workers);
    std::vector<double> values;
    values.reserve(batch.states.size());
    std::uint64_t dropped = 0;
    for (const auto& p : batch.states) {
        const auto v = relative_quantity(quantifiers_x(p), spec.quantity);
        if (v)
            values.push_back(*v);
        else
            ++dropped;
    }
    Histogram h = bin_values(values, spec);
    h.dropped = dropped;
    h.sampling = batch.stats;
    return h;
}

}  // namespace xcorr
