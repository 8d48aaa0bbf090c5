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

#include "xcorr/io.hpp"

#include "xcorr/error.hpp"

#include <fmt/format.h>

#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace xcorr::io {

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorKind::Parse, msg); }

double finite_number(const Json& j, const std::string& where) {
    if (!j.is_number())
        parse_fail(fmt::format("{} must be a number", where));
    const double v = j.get<double>();
    if (!std::isfinite(v))
        parse_fail(fmt::format("{} is not finite", where));
    return v;
}

Eigen::Matrix4d matrix_field(const Json& obj, const char* key) {
    if (!obj.contains(key))
        parse_fail(fmt::format("dense state needs \"{}\"", key));
    const Json& rows = obj.at(key);
    if (!rows.is_array() || rows.size() != 4)
        parse_fail(fmt::format("\"{}\" must be a 4x4 array", key));
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; ++i) {
        const Json& row = rows.at(static_cast<std::size_t>(i));
        if (!row.is_array() || row.size() != 4)
            parse_fail(fmt::format("\"{}\" must be a 4x4 array", key));
        for (int j = 0; j < 4; ++j)
            m(i, j) = finite_number(row.at(static_cast<std::size_t>(j)), fmt::format("{}[{}][{}]", key, i, j));
    }
    return m;
}

void reject_unknown(const Json& obj, const std::set<std::string>& allowed) {
    for (const auto& [k, v] : obj.items())
        if (!allowed.contains(k))
            parse_fail(fmt::format("unknown field \"{}\"", k));
}

XStateParams parse_x(const Json& obj, const Tolerances& tol) {
    reject_unknown(obj, {"kind", "rho11", "rho22", "rho33", "rho44", "rho14", "rho23", "gamma14",
                         "gamma23"});
    auto required = [&](const char* key) {
        if (!obj.contains(key))
            parse_fail(fmt::format("X state needs \"{}\"", key));
        return finite_number(obj.at(key), key);
    };
    auto optional = [&](const char* key) {
        return obj.contains(key) ? finite_number(obj.at(key), key) : 0.0;
    };
    XStateParams p;
    p.rho11 = required("rho11");
    p.rho22 = required("rho22");
    p.rho33 = required("rho33");
    p.rho44 = required("rho44");
    p.rho14 = required("rho14");
    p.rho23 = required("rho23");
    p.gamma14 = normalize_phase(optional("gamma14"));
    p.gamma23 = normalize_phase(optional("gamma23"));
    require_valid(p, tol);
    return p;
}

void dump_impl(const Json& j, int indent, int depth, std::string& out) {
    const bool pretty = indent >= 0;
    auto newline = [&](int d) {
        if (pretty) {
            out += '\n';
            out.append(static_cast<std::size_t>(indent * d), ' ');
        }
    };
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += '{';
        bool first = true;
        for (const auto& [k, v] : j.items()) {
            if (!first)
                out += ',';
            first = false;
            newline(depth + 1);
            out += Json(k).dump();
            out += pretty ? ": " : ":";
            dump_impl(v, indent, depth + 1, out);
        }
        newline(depth);
        out += '}';
        return;
    }
    case Json::value_t::array: {
        out += '[';
        bool first = true;
        for (const auto& v : j) {
            if (!first)
                out += pretty ? ", " : ",";
            first = false;
            dump_impl(v, indent, depth + 1, out);
        }
        out += ']';
        return;
    }
    case Json::value_t::number_float:
        out += format_double(j.get<double>());
        return;
    default:
        out += j.dump();
        return;
    }
}

Json vec_json(const Vector3& v) { return Json::array({v(0), v(1), v(2)}); }

Json pair_json(const ProductPair& p) {
    Json j;
    j["a"] = vec_json(p.a);
    j["b"] = vec_json(p.b);
    return j;
}

}  // namespace

LoadedState parse_state(std::string_view text, const Tolerances& tol) {
    Json obj;
    try {
        obj = Json::parse(text);
    } catch (const Json::parse_error& e) {
        parse_fail(fmt::format("malformed JSON: {}", e.what()));
    }
    if (!obj.is_object() || !obj.contains("kind") || !obj.at("kind").is_string())
        parse_fail("state file must be an object with a string \"kind\"");
    const std::string kind = obj.at("kind").get<std::string>();
    if (kind == "x")
        return parse_x(obj, tol);
    if (kind == "dense") {
        reject_unknown(obj, {"kind", "re", "im"});
        const Eigen::Matrix4d re = matrix_field(obj, "re");
        const Eigen::Matrix4d im = matrix_field(obj, "im");
        Matrix4c m;
        m.real() = re;
        m.imag() = im;
        DensityMatrix4 rho(m);
        require_valid(rho, tol);
        return rho;
    }
    parse_fail(fmt::format("unknown state kind \"{}\" (expected \"x\" or \"dense\")", kind));
}

LoadedState load_state(const std::filesystem::path& path, const Tolerances& tol) {
    std::ifstream in(path);
    if (!in)
        parse_fail(fmt::format("cannot read {}", path.string()));
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_state(buf.str(), tol);
}

Json state_to_json(const XStateParams& p) {
    Json j;
    j["kind"] = "x";
    j["rho11"] = p.rho11;
    j["rho22"] = p.rho22;
    j["rho33"] = p.rho33;
    j["rho44"] = p.rho44;
    j["rho14"] = p.rho14;
    j["rho23"] = p.rho23;
    j["gamma14"] = p.gamma14;
    j["gamma23"] = p.gamma23;
    return j;
}

Json state_to_json(const DensityMatrix4& rho) {
    Json j;
    j["kind"] = "dense";
    Json re = Json::array(), im = Json::array();
    for (int i = 0; i < 4; ++i) {
        Json rr = Json::array(), ii = Json::array();
        for (int k = 0; k < 4; ++k) {
            rr.push_back(rho(i, k).real());
            ii.push_back(rho(i, k).imag());
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

std::string dump(const Json& j, int indent) {
    std::string out;
    dump_impl(j, indent, 0, out);
    return out;
}

Json report_to_json(const CorrelationReport& r) {
    Json j;
    j["kind"] = "x";
    j["case"] = r.case_label.id == CaseId::Case1 ? 1 : 2;
    j["k1"] = r.case_label.k1;
    j["k2"] = r.case_label.k2;
    j["k3"] = r.case_label.k3;
    j["tg"] = r.t_g;
    j["dg"] = r.d_g;
    j["cg"] = r.c_g;
    j["lg"] = r.l_g;
    j["res"] = r.residual_closure;
    j["res_l"] = r.residual_with_l;
    j["a3"] = r.product_pair.a(2);
    j["b3"] = r.product_pair.b(2);
    j["boundary"] = r.boundary_flag;
    j["clamped"] = r.clamped;
    j["closest_product"] = pair_json(r.product_pair);
    j["closest_classical"] = state_to_json(r.classical_state);
    j["classical_closest_product"] = pair_json(r.classical_product);
    return j;
}

std::string report_csv_header() { return "case,k1,k2,k3,tg,dg,cg,lg,res,res_l,a3,b3,boundary"; }

std::string report_csv_row(const CorrelationReport& r) {
    return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}",
                       r.case_label.id == CaseId::Case1 ? 1 : 2, format_double(r.case_label.k1),
                       format_double(r.case_label.k2), format_double(r.case_label.k3),
                       format_double(r.t_g), format_double(r.d_g), format_double(r.c_g),
                       format_double(r.l_g), format_double(r.residual_closure),
                       format_double(r.residual_with_l), format_double(r.product_pair.a(2)),
                       format_double(r.product_pair.b(2)), r.boundary_flag ? 1 : 0);
}

std::string trajectory_csv(const std::vector<TrajectoryPoint>& points) {
    std::string out = "t,rho11,rho22,rho33,rho44,rho14,rho23,k1,k3,tg,dg,cg,lg,case\n";
    for (const auto& p : points) {
        const std::array<double, 13> cols{p.t,          p.state.rho11, p.state.rho22, p.state.rho33,
                                          p.state.rho44, p.state.rho14, p.state.rho23, p.k1,
                                          p.k3,         p.report.t_g,  p.report.d_g,  p.report.c_g,
                                          p.report.l_g};
        for (double c : cols) {
            out += format_double(c);
            out += ',';
        }
        out += p.report.case_label.id == CaseId::Case1 ? "1\n" : "2\n";
    }
    return out;
}

std::string histogram_csv(const Histogram& h) {
    std::string out = "bin_lo,bin_hi,count\n";
    for (int i = 0; i < h.spec.bin_count; ++i)
        out += fmt::format("{},{},{}\n", format_double(h.bin_lo(i)), format_double(h.bin_hi(i)),
                           h.counts[static_cast<std::size_t>(i)]);
    return out;
}

Json histogram_sidecar(const SamplerConfig& cfg, const Histogram& h) {
    Json j;
    j["seed"] = cfg.seed;
    j["count"] = cfg.count;
    j["filter"] = cfg.case_filter ? Json(*cfg.case_filter == CaseId::Case1 ? 1 : 2) : Json(nullptr);
    j["phase_mode"] = cfg.phase_mode == PhaseMode::Free ? "free" : "zero";
    j["quantity"] = to_string(h.spec.quantity);
    j["bins"] = h.spec.bin_count;
    j["lo"] = h.spec.lo;
    j["hi"] = h.spec.hi;
    j["drawn"] = h.sampling.drawn;
    j["accepted"] = h.sampling.accepted;
    j["acceptance_rate"] = h.sampling.acceptance_rate();
    j["dropped"] = h.dropped;
    j["binned"] = h.total;
    j["underflow"] = h.underflow;
    j["overflow"] = h.overflow;
    return j;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::InvalidArgument, fmt::format("cannot write {}", path.string()));
    out << content;
}

}  // namespace xcorr::io
