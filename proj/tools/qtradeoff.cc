// Copyright 2026 The qtradeoff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qtradeoff: trade-off curves, property suites and scenario evaluation.
//
// Exit codes: 0 ok, 1 a verification check failed, 2 bad flags,
// 3 malformed scenario file, 4 scenario violates an operator invariant.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qtradeoff/channels.h"
#include "qtradeoff/measures.h"
#include "qtradeoff/parallel.h"
#include "qtradeoff/serialization.h"
#include "qtradeoff/tradeoff.h"
#include "qtradeoff/verify.h"

namespace {

using namespace qtradeoff;
using nlohmann::ordered_json;

constexpr int kExitFailedCheck = 1;
constexpr int kExitBadFlags = 2;
constexpr int kExitSchema = 3;
constexpr int kExitInvariant = 4;

struct Options {
    unsigned workers = 0;
    std::string pair = "HF";
    std::size_t n = 512;
    std::string out;
    std::string suite = "all";
    std::uint64_t seed = 42;
    std::size_t trials = 1000;
    double tol = 0;
    std::string scenario;
    std::size_t samples = kDefaultMcSamples;
};

/// Writes to --out, or stdout when it is empty. Returns false on I/O failure.
bool emit(const std::string &path, const std::string &text) {
    if (path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return std::fflush(stdout) == 0;
    }
    std::ofstream file(path, std::ios::binary);
    file << text;
    return static_cast<bool>(file);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int cmd_curve(const Options &opt) {
    Pairing pairing = *parse_pairing(opt.pair);
    TradeoffCurve curve = composite_curve(pairing, opt.n);
    std::string csv = "disturbance,info_bound,envelope,x\n";
    for (const auto &s : curve.samples) {
        csv += format_double(s.disturbance) + "," + format_double(s.info_bound) + "," + format_double(s.envelope) +
               "," + format_double(s.x) + "\n";
    }
    if (!emit(opt.out, csv)) {
        std::cerr << "error: cannot write " << opt.out << "\n";
        return kExitBadFlags;
    }
    return 0;
}

int cmd_verify(const Options &opt, bool tol_given) {
    VerifyConfig config;
    config.seed = opt.seed;
    config.trials = opt.trials;
    if (tol_given) {
        config.tolerance = opt.tol;
    }
    SuiteReport report = run_suite(*parse_suite(opt.suite), config);
    if (!emit(opt.out, to_json(report).dump(2) + "\n")) {
        std::cerr << "error: cannot write " << opt.out << "\n";
        return kExitBadFlags;
    }
    return report.pass ? 0 : kExitFailedCheck;
}

ordered_json measure_json(const MeasureValue &m) {
    return {{"value", m.value}, {"method", method_name(m.method)}, {"std_error", m.mc_std_error}};
}

bool all_hermitian_psd(const KrausOperation &op) {
    for (const auto &e : op.elements()) {
        if (!is_hermitian(e.a, 1e-12) || !is_psd(e.a, 1e-12)) {
            return false;
        }
    }
    return true;
}

ordered_json evaluate(const KrausOperation &op, const Povm &povm, const Options &opt) {
    const std::size_t d = op.dim();
    MeasureValue h = d <= 3 ? shannon_gain(povm) : shannon_gain_mc(povm, derive_seed(opt.seed, 0), opt.samples);
    MeasureValue f = operation_fidelity_closed(op);
    MeasureValue g = estimation_fidelity(povm);
    MeasureValue b = d == 2 || (d == 3 && all_hermitian_psd(op))
                         ? bures_fidelity(op)
                         : bures_fidelity_mc(op, derive_seed(opt.seed, 1), opt.samples);
    ordered_json out;
    out["dim"] = d;
    out["measures"] = {{"H", measure_json(h)}, {"F", measure_json(f)}, {"G", measure_json(g)}, {"B", measure_json(b)}};
    if (d == 2) {
        QubitMeasures qm{h, f, g, b};
        ordered_json bounds = ordered_json::array();
        for (Pairing p : kAllPairings) {
            BoundReport r = check_bound(qm, p);
            bounds.push_back({{"pairing", pairing_name(p)},
                              {"info", r.info},
                              {"disturbance", r.disturbance},
                              {"bound", r.bound},
                              {"margin", r.margin},
                              {"satisfied", r.satisfied}});
        }
        out["bounds"] = std::move(bounds);
    }
    return out;
}

int cmd_eval(const Options &opt) {
    std::ifstream file(opt.scenario, std::ios::binary);
    std::stringstream buffer;
    buffer << file.rdbuf();
    ordered_json report;
    try {
        nlohmann::json doc = nlohmann::json::parse(buffer.str());
        Scenario scenario = scenario_from_json(doc);
        if (auto *povm = std::get_if<Povm>(&scenario)) {
            report = evaluate(efficient_from_povm(*povm), *povm, opt);
            report["operation"] = "efficient";
        } else {
            const auto &op = std::get<KrausOperation>(scenario);
            report = evaluate(op, induced_povm(op), opt);
            report["operation"] = "kraus";
        }
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "error: malformed scenario: " << e.what() << "\n";
        return kExitSchema;
    } catch (const Error &e) {
        std::cerr << "error: " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
        return e.kind() == ErrorKind::Schema ? kExitSchema : kExitInvariant;
    }
    if (!emit(opt.out, report.dump(2) + "\n")) {
        std::cerr << "error: cannot write " << opt.out << "\n";
        return kExitBadFlags;
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Information-disturbance trade-off toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML/INI file with default flag values");
    Options opt;
    app.add_option("--workers", opt.workers, "Worker threads (0 = hardware concurrency)");

    auto *curve = app.add_subcommand("curve", "Emit a composite trade-off curve as CSV");
    curve->add_option("--pair", opt.pair, "Pairing: HF, GF, HB or GB")
        ->check(CLI::IsMember({"HF", "GF", "HB", "GB"}));
    curve->add_option("--n", opt.n, "Number of samples")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24));
    curve->add_option("--out", opt.out, "Output file (default stdout)");

    auto *verify = app.add_subcommand("verify", "Run a property suite and print a JSON report");
    verify->add_option("--suite", opt.suite, "bound, convexity, efficiency, appendixA, appendixB or all")
        ->check(CLI::IsMember({"bound", "convexity", "efficiency", "appendixA", "appendixB", "all"}));
    verify->add_option("--seed", opt.seed, "Master seed");
    verify->add_option("--trials", opt.trials, "Random trials per check")->check(CLI::PositiveNumber);
    auto *tol = verify->add_option("--tol", opt.tol, "Override the tolerance of every toleranced check")
                    ->check(CLI::NonNegativeNumber);
    verify->add_option("--out", opt.out, "Output file (default stdout)");

    auto *eval = app.add_subcommand("eval", "Evaluate H, F, G, B and the bounds for a scenario file");
    eval->add_option("scenario", opt.scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
    eval->add_option("--seed", opt.seed, "Seed for Monte Carlo paths (d > 3)");
    eval->add_option("--samples", opt.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
    eval->add_option("--out", opt.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitBadFlags;
    }
    if (opt.workers > 0) {
        set_default_workers(opt.workers);
    }

    try {
        if (curve->parsed()) {
            return cmd_curve(opt);
        }
        if (verify->parsed()) {
            return cmd_verify(opt, tol->count() > 0);
        }
        return cmd_eval(opt);
    } catch (const Error &e) {
        std::cerr << "error: " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
        return kExitInvariant;
    }
}
