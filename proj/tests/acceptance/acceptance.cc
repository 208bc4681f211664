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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails. Usage: acceptance <path to qtradeoff>.

#include <array>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include "json.hpp"

#include "qtradeoff/appendixb.h"
#include "qtradeoff/channels.h"
#include "qtradeoff/measures.h"
#include "qtradeoff/parallel.h"
#include "qtradeoff/tradeoff.h"
#include "qtradeoff/verify.h"

using namespace qtradeoff;
using json = nlohmann::json;

namespace {

std::string g_cli;

struct Outcome {
    bool pass = true;
    std::ostringstream notes;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            notes << " [failed: " << what << "]";
        }
    }
};

std::string run_cli(const std::string &args, int &code) {
    std::string cmd = "\"" + g_cli + "\" " + args;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        code = -1;
        return {};
    }
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        out.append(buf.data(), n);
    }
    int status = pclose(pipe);
    code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

std::map<std::string, json> details_by_name(const json &report) {
    std::map<std::string, json> out;
    for (const auto &d : report["details"]) {
        out[d["name"].get<std::string>()] = d;
    }
    return out;
}

// A detail passes iff worst_margin >= -tolerance; the criteria also pin the tolerance.
void require_detail(Outcome &o, const std::map<std::string, json> &details, const std::string &name,
                    double tolerance, std::size_t min_trials) {
    auto it = details.find(name);
    if (it == details.end()) {
        o.require(false, name + " missing");
        return;
    }
    const json &d = it->second;
    double margin = d["worst_margin"].get<double>();
    o.require(d["tolerance"].get<double>() == tolerance, name + " tolerance");
    o.require(d["trials"].get<std::size_t>() >= min_trials, name + " trials");
    o.require(d["pass"].get<bool>() && margin >= -tolerance, name + " margin " + std::to_string(margin));
}

double h_integral(double x) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    auto integrand = [x](double t) {
        double w = 1 + x * t;
        return w > 0 ? w * std::log2(w) : 0.0;
    };
    return 0.5 * integrator.integrate(integrand, -1.0, 1.0, 1e-14);
}

void report(int id, const std::string &title, const Outcome &o) {
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << o.notes.str() << std::endl;
}

Outcome projective_endpoints() {
    Outcome o;
    Povm povm({ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({0.0, 1.0})});
    KrausOperation op = efficient_from_povm(povm);
    const double h1 = 1 - 1 / (2 * std::numbers::ln2);
    const std::size_t samples = 1000000;

    o.require(std::abs(operation_fidelity_closed(op).value - 2.0 / 3) < 1e-12, "F closed");
    o.require(std::abs(estimation_fidelity(povm).value - 2.0 / 3) < 1e-6, "G");
    o.require(std::abs(bures_fidelity(op).value - 0.8) < 1e-6, "B quadrature");
    o.require(std::abs(shannon_gain(povm).value - h1) < 1e-6, "H quadrature");
    o.require(std::abs(b_closed(1) - 0.8) < 1e-12 && std::abs(h_closed(1) - h1) < 1e-12, "closed forms at x = 1");

    auto within = [&](const MeasureValue &v, double exact, const char *what) {
        o.require(v.method == Method::MonteCarlo && std::abs(v.value - exact) < 4 * v.mc_std_error, what);
        o.notes << " " << what << "=" << v.value << "+-" << v.mc_std_error;
    };
    within(operation_fidelity_mc(op, 11, samples), 2.0 / 3, "F_mc");
    within(estimation_fidelity_mc(povm, 12, samples), 2.0 / 3, "G_mc");
    within(bures_fidelity_mc(op, 13, samples), 0.8, "B_mc");
    within(shannon_gain_mc(povm, 14, samples), h1, "H_mc");
    return o;
}

Outcome closed_vs_oracle() {
    Outcome o;
    double worst_sigmas = 0;
    for (std::size_t t = 0; t < 50; t++) {
        Rng rng = make_rng(2024, t);
        std::size_t dim = 2 + t % 3;
        std::uniform_int_distribution<int> outcomes(2, 4);
        Povm povm = random_povm(dim, static_cast<std::size_t>(outcomes(rng)), rng);
        KrausOperation op = random_general_operation(povm, 2, rng);
        double closed = operation_fidelity_closed(op).value;
        MeasureValue mc = operation_fidelity_mc(op, derive_seed(77, t), 200000);
        worst_sigmas = std::max(worst_sigmas, std::abs(closed - mc.value) / mc.mc_std_error);
    }
    o.require(worst_sigmas < 4, "F closed vs MC");
    o.notes << " worst |F_closed - F_mc|/sigma=" << worst_sigmas;

    double worst_h = 0;
    double worst_b = 0;
    for (double x : default_x_grid(64)) {
        worst_h = std::max(worst_h, std::abs(h_closed(x) - h_integral(x)));
        worst_b = std::max(worst_b, std::abs(b_closed(x) - bures_beta_integral(x, 0.0)));
    }
    o.require(worst_h < 1e-9, "h vs integral");
    o.require(worst_b < 1e-8, "b vs beta integral");
    o.notes << " worst h gap=" << worst_h << " worst b gap=" << worst_b;
    return o;
}

Outcome tradeoff_theorem() {
    Outcome o;
    int code = 0;
    std::string out = run_cli("verify --suite bound --trials 10000 --seed 7", code);
    o.require(code == 0, "exit code " + std::to_string(code));
    json r = json::parse(out, nullptr, false);
    if (r.is_discarded()) {
        o.require(false, "unparseable report");
        return o;
    }
    auto d = details_by_name(r);
    for (const char *p : {"HF", "GF", "HB", "GB"}) {
        // Qubit evaluation is deterministic here, so sigma = 0.
        require_detail(o, d, std::string("bound/random/") + p, 1e-7, 10000);
        require_detail(o, d, std::string("bound/saturating/") + p, 1e-7, 9);
    }
    // Slack is (bound - info) - 1e-6, so worst_margin >= 0 means info sits
    // more than 1e-6 below the bound on every trial.
    require_detail(o, d, "equality/unequal_ratio", 0.0, 10000);
    if (d.count("equality/unequal_ratio")) {
        o.notes << " unequal-ratio slack=" << d["equality/unequal_ratio"]["worst_margin"].get<double>();
    }
    return o;
}

Outcome efficiency(const std::map<std::string, json> &d) {
    Outcome o;
    require_detail(o, d, "efficiency/F_efficient_dominates", 1e-9, 1000);
    require_detail(o, d, "efficiency/B_efficient_dominates", 1e-7, 1000);
    require_detail(o, d, "efficiency/H_refinement_gains", 1e-9, 1000);
    return o;
}

Outcome convexity() {
    Outcome o;
    VerifyConfig config;
    config.seed = 42;
    config.trials = 10000;
    SuiteReport r = run_suite(Suite::Convexity, config);
    std::map<std::string, json> d;
    for (const auto &p : r.details) {
        d[p.name] = to_json(p);
    }
    std::size_t commuting = 0;
    std::size_t general = 0;
    std::size_t other = 0;
    for (const auto &[name, entry] : d) {
        double tol = entry["tolerance"].get<double>();
        if (name.find("/commuting") != std::string::npos) {
            o.require(tol == 1e-12, name + " tolerance");
            commuting++;
        } else if (name.find("/general") != std::string::npos) {
            o.require(tol == 1e-9, name + " tolerance");
            general++;
        } else {
            o.require(tol == 1e-9, name + " tolerance");
            other++;
        }
        require_detail(o, d, name, tol, 10000);
    }
    o.require(commuting == 8 && general == 8 && other == 16, "expected 4 components x 2 dims x 4 checks");
    o.notes << " checks=" << d.size();
    return o;
}

Outcome composites(const std::map<std::string, json> &d) {
    Outcome o;
    for (const char *p : {"HF", "GF", "HB", "GB"}) {
        require_detail(o, d, std::string("appendixA/composite_is_concave/") + p, 1e-9, 1);
    }
    require_detail(o, d, "appendixA/envelope_vs_chord_sup", 1e-9, 257);
    o.require(kDefaultEnvelopeResolution >= 4096, "envelope resolution");
    return o;
}

Outcome second_derivative(const std::map<std::string, json> &d) {
    Outcome o;
    // Slack = min(agreement allowance - |closed - fd|, -closed, -fd); strictly positive required.
    require_detail(o, d, "appendixA/second_derivative", 0.0, 1000);
    if (d.count("appendixA/second_derivative")) {
        o.require(d.at("appendixA/second_derivative")["worst_margin"].get<double>() > 0, "strict negativity");
    }
    return o;
}

Outcome appendix_b(const std::map<std::string, json> &d) {
    Outcome o;
    require_detail(o, d, "appendixB/dual_representation", 1e-12, 10000);
    require_detail(o, d, "appendixB/trace_term_vs_matrix", 1e-12, 1000);
    require_detail(o, d, "appendixB/beta_maximum_at_zero", 1e-10, 64);
    require_detail(o, d, "appendixB/alpha_zero_optimal", 1e-12, 1000);
    return o;
}

}  // namespace

int main(int argc, char **argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <qtradeoff binary>\n";
        return 2;
    }
    g_cli = argv[1];
    std::cout.precision(6);
    bool all = true;
    auto record = [&](int id, const std::string &title, const Outcome &o) {
        report(id, title, o);
        all = all && o.pass;
    };

    record(1, "projective endpoints", projective_endpoints());
    record(2, "closed forms vs oracles", closed_vs_oracle());
    record(3, "trade-off bound", tradeoff_theorem());

    // One full report feeds criteria 4, 6, 7, 8 and the determinism check.
    int c1 = 0;
    int c2 = 0;
    int c3 = 0;
    std::string many_a = run_cli("--workers 4 verify --suite all --seed 42", c1);
    std::string many_b = run_cli("--workers 4 verify --suite all --seed 42", c2);
    std::string single = run_cli("--workers 1 verify --suite all --seed 42", c3);
    json full = json::parse(many_a, nullptr, false);
    std::map<std::string, json> details;
    if (!full.is_discarded()) {
        details = details_by_name(full);
    }

    record(4, "efficient operations dominate", efficiency(details));
    record(5, "convexity suite", convexity());
    record(6, "composites equal their concave envelopes", composites(details));
    record(7, "closed-form second derivative", second_derivative(details));
    record(8, "Bloch-sphere Bures analysis", appendix_b(details));

    Outcome det;
    det.require(c1 == 0 && c2 == 0 && c3 == 0, "verify all exit codes");
    det.require(!full.is_discarded(), "unparseable report");
    det.require(many_a == many_b, "two consecutive runs differ");
    det.require(many_a == single, "1 vs 4 workers differ");
    det.notes << " bytes=" << many_a.size();
    record(9, "determinism", det);

    return all ? 0 : 1;
}
