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
 * File formats.
 *
 * State JSON, one of
 *
 *     {"kind": "x", "rho11": .., "rho22": .., "rho33": .., "rho44": ..,
 *      "rho14": .., "rho23": .., "gamma14": .., "gamma23": ..}
 *     {"kind": "dense", "re": [[4 x 4]], "im": [[4 x 4]]}
 *
 * gamma14/gamma23 default to 0 and are reduced into [0, 2pi). Matrices use
 * the {|11>, |10>, |01>, |00>} basis. NaN and infinities are rejected.
 *
 * Every floating-point number written by this module uses 17 significant
 * digits, so output round-trips exactly and diffs cleanly.
 */

#pragma once

#include "xcorr/dynamics.hpp"
#include "xcorr/ensemble.hpp"
#include "xcorr/quantifiers.hpp"
#include "xcorr/state.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace xcorr::io {

using Json = nlohmann::ordered_json;

using LoadedState = std::variant<XStateParams, DensityMatrix4>;

/// Throws Error{Parse} on malformed JSON or schema, Error{InvalidState} on an
/// unphysical state.
[[nodiscard]] LoadedState parse_state(std::string_view text,
                                      const Tolerances& tol = kDefaultTolerances);

[[nodiscard]] LoadedState load_state(const std::filesystem::path& path,
                                     const Tolerances& tol = kDefaultTolerances);

[[nodiscard]] Json state_to_json(const XStateParams& p);
[[nodiscard]] Json state_to_json(const DensityMatrix4& rho);

/// "%.17g".
[[nodiscard]] std::string format_double(double v);

/// Serializes with 17-significant-digit floats; indent < 0 means compact.
[[nodiscard]] std::string dump(const Json& j, int indent = 2);

[[nodiscard]] Json report_to_json(const CorrelationReport& r);

/// case,k1,k2,k3,tg,dg,cg,lg,res,res_l,a3,b3,boundary
[[nodiscard]] std::string report_csv_header();
[[nodiscard]] std::string report_csv_row(const CorrelationReport& r);

/// t,rho11,rho22,rho33,rho44,rho14,rho23,k1,k3,tg,dg,cg,lg,case
[[nodiscard]] std::string trajectory_csv(const std::vector<TrajectoryPoint>& points);

/// bin_lo,bin_hi,count
[[nodiscard]] std::string histogram_csv(const Histogram& h);

[[nodiscard]] Json histogram_sidecar(const SamplerConfig& cfg, const Histogram& h);

void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace xcorr::io
