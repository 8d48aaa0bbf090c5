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

// xcorr: geometric correlation quantifiers for two-qubit states.
//
// Exit codes: 0 ok, 2 parse / usage error, 3 invalid state, 4 numerical failure.

#include "xcorr/closest_states.hpp"
#include "xcorr/dynamics.hpp"
#include "xcorr/ensemble.hpp"
#include "xcorr/error.hpp"
#include "xcorr/io.hpp"
#include "xcorr/quantifiers.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInvalidState = 3;
constexpr int kExitNumeric = 4;

constexpr const char* kFooter = R"(
Basis convention: 4x4 matrices are written in the basis {|11>, |10>, |01>, |00>}
(row/column 0 is |11>). Pauli matrices act with index 0 = |1>, qubit A is the
left tensor factor.

State file JSON, either
  {"kind": "x", "rho11": 0.5, "rho22": 0.1, "rho33": 0.1, "rho44": 0.3,
   "rho14": 0.35, "rho23": 0.05, "gamma14": 0.0, "gamma23": 0.0}
or
  {"kind": "dense", "re": [[..4..], x4], "im": [[..4..], x4]}
rho14/rho23 are the moduli of the (1,4) and (2,3) entries, gamma14/gamma23 their
phases (default 0). NaN and infinities are rejected.

Exit codes: 0 ok, 2 parse error, 3 invalid state, 4 numerical failure.
)";

int exit_code_for(xcorr::ErrorKind kind) {
    switch (kind) {
    case xcorr::ErrorKind::Parse:
    case xcorr::ErrorKind::InvalidArgument:
        return kExitParse;
    case xcorr::ErrorKind::InvalidState:
    case xcorr::ErrorKind::NotXState:
        return kExitInvalidState;
    case xcorr::ErrorKind::SolverFailure:
    case xcorr::ErrorKind::RejectionExhausted:
        return kExitNumeric;
    }
    return kExitNumeric;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-")
        std::cout << content;
    else
        xcorr::io::write_file(out_path, content);
}

struct AnalyzeArgs {
    std::string state_file;
    std::string out;
    std::string format = "json";
};

int run_analyze(const AnalyzeArgs& args) {
    using namespace xcorr;
    const io::LoadedState loaded = io::load_state(args.state_file);

    std::optional<XStateParams> x;
    if (const auto* p = std::get_if<XStateParams>(&loaded)) {
        x = *p;
    } else {
        const auto& rho = std::get<DensityMatrix4>(loaded);
        if (non_x_entries(rho, kDefaultTolerances.non_x_entry).empty())
            x = matrix_to_x_params(rho);
    }

    if (x) {
        const CorrelationReport r = quantifiers_x(*x);
        if (args.format == "csv")
            emit(args.out, io::report_csv_header() + "\n" + io::report_csv_row(r) + "\n");
        else
            emit(args.out, io::dump(io::report_to_json(r)) + "\n");
        return kExitOk;
    }

    const auto& rho = std::get<DensityMatrix4>(loaded);
    const BlochForm b = bloch_decompose(rho);
    const KSpectrum k = k_matrix_general(b);
    const double dg = geometric_discord_general(b);
    if (args.format == "csv") {
        emit(args.out, "dg\n" + io::format_double(dg) + "\n");
        return kExitOk;
    }
    io::Json j;
    j["kind"] = "dense";
    j["x_state"] = false;
    j["dg"] = dg;
    j["k_eigenvalues"] = io::Json::array({k.eigenvalues(0), k.eigenvalues(1), k.eigenvalues(2)});
    j["note"] = "not an X state: only the geometric discord is reported; the closed forms for "
                "T_g, C_g and L_g require the X structure";
    emit(args.out, io::dump(j) + "\n");
    return kExitOk;
}

struct SampleArgs {
    std::uint64_t seed = 1;
    std::size_t count = 10000;
    int case_id = 0;
    std::string phase_mode = "free";
    std::string quantity = "rel_residual";
    int bins = 200;
    std::optional<double> lo;
    std::optional<double> hi;
    std::string out;
};

int run_sample(const SampleArgs& args) {
    using namespace xcorr;
    SamplerConfig cfg;
    cfg.seed = args.seed;
    cfg.count = args.count;
    if (args.case_id == 1)
        cfg.case_filter = CaseId::Case1;
    else if (args.case_id == 2)
        cfg.case_filter = CaseId::Case2;
    cfg.phase_mode = args.phase_mode == "zero" ? PhaseMode::Zero : PhaseMode::Free;

    const HistogramQuantity q = args.quantity == "rel_residual_with_l"
                                    ? HistogramQuantity::RelResidualWithL
                                    : HistogramQuantity::RelResidual;
    HistogramSpec spec = HistogramSpec::defaults(q);
    spec.bin_count = args.bins;
    if (args.lo)
        spec.lo = *args.lo;
    if (args.hi)
        spec.hi = *args.hi;

    const Histogram h = run_histogram(cfg, spec, std::max(1u, std::thread::hardware_concurrency()));
    emit(args.out, io::histogram_csv(h));
    if (!args.out.empty() && args.out != "-")
        io::write_file(args.out + ".meta.json", io::dump(io::histogram_sidecar(cfg, h)) + "\n");
    return kExitOk;
}

struct EvolveArgs {
    std::string state_file;
    double gamma0 = 1.0;
    double lambda = 0.01;
    double t_max = 50.0;
    int steps = 2000;
    std::string out;
};

int run_evolve(const EvolveArgs& args) {
    using namespace xcorr;
    const io::LoadedState loaded = io::load_state(args.state_file);
    DynamicsConfig cfg;
    cfg.gamma0 = args.gamma0;
    cfg.lambda = args.lambda;
    cfg.t_max = args.t_max;
    cfg.steps = args.steps;
    if (const auto* p = std::get_if<XStateParams>(&loaded))
        cfg.initial = *p;
    else
        cfg.initial = matrix_to_x_params(std::get<DensityMatrix4>(loaded));

    const auto traj = evolve(cfg);
    emit(args.out, io::trajectory_csv(traj));
    if (!args.out.empty() && args.out != "-") {
        const auto crossings = case_crossings(cfg, traj);
        std::cout << fmt::format("{} points written to {}; k1 - k3 changes sign {} time(s)",
                                 traj.size(), args.out, crossings.size());
        for (double t : crossings)
            std::cout << ' ' << io::format_double(t);
        std::cout << '\n';
    }
    return kExitOk;
}

struct OracleArgs {
    std::uint64_t seed = 1;
    int trials = 50;
    std::string out;
};

int run_oracle_check(const OracleArgs& args) {
    using namespace xcorr;
    if (args.trials < 1)
        throw Error(ErrorKind::InvalidArgument, "--trials must be at least 1");
    SamplerConfig cfg;
    cfg.seed = args.seed;
    cfg.count = static_cast<std::size_t>(args.trials);
    const SampleBatch batch = sample_x_states(cfg);

    double max_df = 0.0, max_plane = 0.0, max_dd = 0.0, max_dd_general = 0.0;
    for (std::size_t i = 0; i < batch.states.size(); ++i) {
        const XStateParams& p = batch.states[i];
        const DensityMatrix4 rho = to_density_matrix(p);
        const BlochForm b = x_params_to_bloch(p);

        OracleOptions opts;
        opts.seed = args.seed + 0x9e3779b97f4a7c15ULL * (i + 1);
        const ProductSearch search = closest_product_general(rho, opts);
        const double f_analytic = product_distance(b, closest_product_x(p));
        max_df = std::max(max_df, std::abs(search.distance - f_analytic));
        max_plane = std::max({max_plane, std::abs(search.pair.a(0)), std::abs(search.pair.a(1)),
                              std::abs(search.pair.b(0)), std::abs(search.pair.b(1))});

        const double dg = quantifiers_x(p).d_g;
        const double oracle = discord_measurement_oracle(rho);
        max_dd = std::max(max_dd, std::abs(oracle - dg));
        max_dd_general = std::max(max_dd_general, std::abs(geometric_discord_general(b) - dg));
    }

    struct Row {
        const char* name;
        double value;
        double limit;
    };
    const Row rows[] = {
        {"closest product |F_numeric - F_analytic|", max_df, 1e-8},
        {"closest product max |a1|,|a2|,|b1|,|b2|", max_plane, 1e-6},
        {"discord |D_measurement - D_closed_form|", max_dd, 1e-6},
        {"discord |D_K_matrix - D_closed_form|", max_dd_general, 1e-10},
    };
    bool ok = true;
    io::Json summary;
    summary["seed"] = args.seed;
    summary["trials"] = args.trials;
    summary["checks"] = io::Json::array();
    std::cout << fmt::format("{:<44} {:>12} {:>10}  status\n", "check", "max dev", "limit");
    for (const Row& r : rows) {
        const bool pass = r.value <= r.limit;
        ok = ok && pass;
        std::cout << fmt::format("{:<44} {:>12.3e} {:>10.0e}  {}\n", r.name, r.value, r.limit,
                                 pass ? "ok" : "MISMATCH");
        io::Json row;
        row["check"] = r.name;
        row["max_deviation"] = r.value;
        row["limit"] = r.limit;
        row["pass"] = pass;
        summary["checks"].push_back(row);
    }
    if (!args.out.empty())
        io::write_file(args.out, io::dump(summary) + "\n");
    return ok ? kExitOk : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geometric (Hilbert-Schmidt) correlation quantifiers for two-qubit states"};
    app.footer(kFooter);
    app.require_subcommand(1);

    AnalyzeArgs analyze;
    auto* a = app.add_subcommand("analyze", "Compute T_g, D_g, C_g, L_g and the closest states");
    a->add_option("--state,state_file", analyze.state_file, "State JSON file")->required();
    a->add_option("--out", analyze.out, "Output file (default: stdout)");
    a->add_option("--format", analyze.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    SampleArgs sample;
    auto* s = app.add_subcommand("sample", "Random X-state ensemble and non-additivity histogram");
    s->add_option("--seed", sample.seed, "Generator seed");
    s->add_option("--count", sample.count, "Number of accepted states")->check(CLI::PositiveNumber);
    s->add_option("--case", sample.case_id, "Keep only case 1 (k1 <= k3) or 2 (k1 > k3); 0 = all")
        ->check(CLI::IsMember({0, 1, 2}));
    s->add_option("--phase-mode", sample.phase_mode, "free or zero")
        ->check(CLI::IsMember({"free", "zero"}));
    s->add_option("--quantity", sample.quantity, "rel_residual or rel_residual_with_l")
        ->check(CLI::IsMember({"rel_residual", "rel_residual_with_l"}));
    s->add_option("--bins", sample.bins, "Number of histogram bins");
    s->add_option("--lo", sample.lo, "Histogram lower edge");
    s->add_option("--hi", sample.hi, "Histogram upper edge");
    s->add_option("--out", sample.out, "Histogram CSV (sidecar written to <out>.meta.json)");

    EvolveArgs ev;
    auto* e = app.add_subcommand("evolve", "Non-Markovian amplitude-damping trajectory");
    e->add_option("--state,state_file", ev.state_file, "Initial state JSON (X state)")->required();
    e->add_option("--gamma0", ev.gamma0, "Spontaneous emission rate");
    e->add_option("--lambda", ev.lambda, "Reservoir spectral width");
    e->add_option("--t-max", ev.t_max, "Final time in units of 1/gamma0");
    e->add_option("--steps", ev.steps, "Number of time samples");
    e->add_option("--out", ev.out, "Trajectory CSV (default: stdout)");

    OracleArgs oc;
    auto* o = app.add_subcommand("oracle-check",
                                 "Compare the analytic solvers with brute-force numerical oracles");
    o->add_option("--seed", oc.seed, "Seed for states and multi-starts");
    o->add_option("--trials", oc.trials, "Number of random X states");
    o->add_option("--out", oc.out, "Optional JSON summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (*a)
            return run_analyze(analyze);
        if (*s)
            return run_sample(sample);
        if (*e)
            return run_evolve(ev);
        if (*o)
            return run_oracle_check(oc);
    } catch (const xcorr::Error& err) {
        std::cerr << "xcorr: " << xcorr::to_string(err.kind()) << ": " << err.what() << '\n';
        return exit_code_for(err.kind());
    } catch (const std::exception& err) {
        std::cerr << "xcorr: " << err.what() << '\n';
        return kExitNumeric;
    }
    return kExitParse;
}
