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

#include "qtradeoff/verify.h"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "qtradeoff/appendixb.h"
#include "qtradeoff/channels.h"
#include "qtradeoff/parallel.h"
#include "qtradeoff/tradeoff.h"

namespace qtradeoff {

namespace {

// Streams of the master seed, one per randomized check.
enum Stream : std::uint64_t {
    kBoundRandom = 1,
    kBoundEquality,
    kConvexity,
    kEfficiency,
    kDualRepresentation = 20,
    kTraceTerm,
    kVMatrix,
    kAzimuthal,
    kAlphaOptimality,
    kEnvelopeChords,
};

ProbeReport make_report(std::string name, const std::vector<double> &margins, double tolerance) {
    ProbeReport r;
    r.name = std::move(name);
    r.trials = margins.size();
    r.tolerance = tolerance;
    r.worst_margin = margins.empty() ? 0.0 : *std::min_element(margins.begin(), margins.end());
    r.pass = !margins.empty() && r.worst_margin >= -tolerance;
    return r;
}

/// Evaluates body(trial, rng) in parallel and collects one margin per trial.
std::vector<double> per_trial(std::size_t trials, std::uint64_t seed,
                              const std::function<double(std::size_t, Rng &)> &body) {
    std::vector<double> margins(trials);
    parallel_for(trials, [&](std::size_t t) {
        Rng rng = make_rng(seed, t);
        margins[t] = body(t, rng);
    });
    return margins;
}

KrausOperation random_qubit_operation(Rng &rng) {
    std::uniform_int_distribution<int> outcomes(2, 4);
    std::uniform_int_distribution<int> refinements(1, 3);
    Povm povm = random_povm(2, static_cast<std::size_t>(outcomes(rng)), rng);
    return random_general_operation(povm, static_cast<std::size_t>(refinements(rng)), rng);
}

double h_oracle(double x) {
    // h(x) = (1/2) int_{-1}^{1} (1 + x t) log2(1 + x t) dt
    boost::math::quadrature::tanh_sinh<double> integrator;
    auto integrand = [x](double t) {
        double w = 1 + x * t;
        return w > 0 ? w * std::log2(w) : 0.0;
    };
    return 0.5 * integrator.integrate(integrand, -1.0, 1.0, 1e-14);
}

double finite_difference(const std::function<double(double)> &fn, double x, double step, int order) {
    if (order == 1) {
        return (fn(x + step) - fn(x - step)) / (2 * step);
    }
    return (fn(x + step) - 2 * fn(x) + fn(x - step)) / (step * step);
}

// Sign of the first or second derivative on an interior grid; margin is
// sign * derivative, so a violation shows up negative.
ProbeReport shape_check(std::string name, const std::function<double(double)> &fn, int order, double sign) {
    constexpr std::size_t kGrid = 1024;
    std::vector<double> margins(kGrid);
    for (std::size_t i = 0; i < kGrid; i++) {
        double x = (static_cast<double>(i) + 0.5) / kGrid;
        double step = std::min(1e-4, std::min(x, 1 - x) / 2);
        double d = finite_difference(fn, x, step, order);
        margins[i] = sign * d;
    }
    return make_report(std::move(name), margins, 1e-9);
}

}  // namespace

const char *suite_name(Suite suite) {
    switch (suite) {
        case Suite::Bound:
            return "bound";
        case Suite::Convexity:
            return "convexity";
        case Suite::Efficiency:
            return "efficiency";
        case Suite::AppendixA:
            return "appendixA";
        case Suite::AppendixB:
            return "appendixB";
        case Suite::All:
            return "all";
    }
    return "?";
}

std::optional<Suite> parse_suite(std::string_view name) {
    for (Suite s : {Suite::Bound, Suite::Convexity, Suite::Efficiency, Suite::AppendixA, Suite::AppendixB, Suite::All}) {
        if (name == suite_name(s)) {
            return s;
        }
    }
    return std::nullopt;
}

std::vector<double> chord_sup(const std::vector<double> &x, const std::vector<double> &y) {
    const std::size_t n = x.size();
    std::vector<double> sup(y);
    for (std::size_t k = 0; k < n; k++) {
        for (std::size_t i = 0; i <= k; i++) {
            for (std::size_t j = k; j < n; j++) {
                if (i == j) {
                    continue;
                }
                double t = (x[j] - x[k]) / (x[j] - x[i]);
                sup[k] = std::max(sup[k], t * y[i] + (1 - t) * y[j]);
            }
        }
    }
    return sup;
}

void bound_suite(const VerifyConfig &config, std::vector<ProbeReport> &details) {
    const std::size_t n = config.trials;
    std::vector<std::array<double, 4>> margins(n);
    parallel_for(n, [&](std::size_t t) {
        Rng rng = make_rng(derive_seed(config.seed, kBoundRandom), t);
        QubitMeasures m = evaluate_qubit_measures(random_qubit_operation(rng));
        for (std::size_t p = 0; p < kAllPairings.size(); p++) {
            margins[t][p] = check_bound(m, kAllPairings[p]).margin;
        }
    });
    for (std::size_t p = 0; p < kAllPairings.size(); p++) {
        std::vector<double> column(n);
        for (std::size_t t = 0; t < n; t++) {
            column[t] = margins[t][p];
        }
        details.push_back(make_report(std::string("bound/random/") + pairing_name(kAllPairings[p]), column, 1e-7));
    }

    for (Pairing pairing : kAllPairings) {
        std::vector<double> sat;
        for (int i = 1; i <= 9; i++) {
            sat.push_back(-std::abs(check_bound(saturating_operation(0.1 * i), pairing).margin));
        }
        details.push_back(make_report(std::string("bound/saturating/") + pairing_name(pairing), sat, 1e-7));
    }

    auto eq = equality_condition_check(derive_seed(config.seed, kBoundEquality), n);
    details.push_back(eq.equal_ratio);
    details.push_back(eq.unequal_ratio);
}

void convexity_suite(const VerifyConfig &config, std::vector<ProbeReport> &details) {
    const std::uint64_t seed = derive_seed(config.seed, kConvexity);
    const Component components[] = {Component::Shannon, Component::OperationFidelity, Component::EstimationFidelity,
                                    Component::Bures};
    std::uint64_t stream = 0;
    for (Component c : components) {
        for (std::size_t d : {2, 3}) {
            details.push_back(
                convexity_probe(c, ProbeMode::Commuting, d, config.trials, derive_seed(seed, stream++), 1e-12));
            details.push_back(convexity_probe(c, ProbeMode::General, d, config.trials, derive_seed(seed, stream++), 1e-9));
            details.push_back(homogeneity_probe(c, d, config.trials, derive_seed(seed, stream++), 1e-9));
            details.push_back(unitary_invariance_probe(c, d, config.trials, derive_seed(seed, stream++), 1e-9));
        }
    }
}

void efficiency_suite(const VerifyConfig &config, std::vector<ProbeReport> &details) {
    constexpr std::size_t kRefinements = 10;
    const std::size_t n = config.trials;
    struct Margins {
        double f = HUGE_VAL;
        double b = HUGE_VAL;
        double h = HUGE_VAL;
        double herm = HUGE_VAL;
    };
    std::vector<Margins> margins(n);
    parallel_for(n, [&](std::size_t t) {
        Rng rng = make_rng(derive_seed(config.seed, kEfficiency), t);
        std::uniform_int_distribution<int> outcomes(2, 4);
        std::uniform_int_distribution<int> refinements(1, 3);
        Povm povm = random_povm(2, static_cast<std::size_t>(outcomes(rng)), rng);
        KrausOperation efficient = efficient_from_povm(povm);
        double f_eff = operation_fidelity_closed(efficient).value;
        double b_eff = bures_fidelity(efficient).value;
        double h_coarse = shannon_gain(povm).value;
        Margins &m = margins[t];
        for (std::size_t k = 0; k < kRefinements; k++) {
            KrausOperation op = random_general_operation(povm, static_cast<std::size_t>(refinements(rng)), rng);
            double f = operation_fidelity_closed(op).value;
            m.f = std::min(m.f, f_eff - f);
            m.b = std::min(m.b, b_eff - bures_fidelity(op).value);
            m.h = std::min(m.h, shannon_gain(refined_povm(op)).value - h_coarse);
            m.herm = std::min(m.herm, operation_fidelity_closed(hermitianize(op)).value - f);
        }
    });
    auto column = [&](double Margins::*field) {
        std::vector<double> out(n);
        for (std::size_t t = 0; t < n; t++) {
            out[t] = margins[t].*field;
        }
        return out;
    };
    details.push_back(make_report("efficiency/F_efficient_dominates", column(&Margins::f), 1e-9));
    details.push_back(make_report("efficiency/B_efficient_dominates", column(&Margins::b), 1e-7));
    details.push_back(make_report("efficiency/H_refinement_gains", column(&Margins::h), 1e-9));
    details.push_back(make_report("efficiency/F_hermitianize_gains", column(&Margins::herm), 1e-10));
}

void appendix_a_suite(const VerifyConfig &config, std::vector<ProbeReport> &details) {
    details.push_back(appendix_a_concavity_check(std::max<std::size_t>(64, std::min<std::size_t>(config.trials, 4096))));

    auto xs = default_x_grid();
    std::vector<double> h_margins(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) { h_margins[i] = -std::abs(h_closed(xs[i]) - h_oracle(xs[i])); });
    details.push_back(make_report("appendixA/h_closed_vs_integral", h_margins, 1e-9));

    details.push_back(shape_check("appendixA/f_decreasing", f_closed, 1, -1));
    details.push_back(shape_check("appendixA/f_concave", f_closed, 2, -1));
    details.push_back(shape_check("appendixA/h_increasing", h_closed, 1, 1));
    details.push_back(shape_check("appendixA/h_convex", h_closed, 2, 1));
    details.push_back(shape_check("appendixA/g_increasing", g_closed, 1, 1));
    details.push_back(shape_check("appendixA/b_decreasing", b_closed, 1, -1));
    details.push_back(shape_check("appendixA/b_concave", b_closed, 2, -1));

    for (Pairing p : kAllPairings) {
        auto curve = composite_curve(p, kDefaultEnvelopeResolution);
        details.push_back(make_report(std::string("appendixA/composite_is_concave/") + pairing_name(p),
                                      {-envelope_gap(curve)}, 1e-9));
    }

    // Envelope engine against the chord-sup definition on a dented curve.
    ScalarCurve dented = sample_curve(
        "dented", [](double x) { return std::min(x, 0.4) + 0.2 * std::max(x - 0.7, 0.0); }, 257);
    ScalarCurve env = concave_envelope(dented);
    std::vector<double> x;
    std::vector<double> y;
    for (const auto &s : dented.samples) {
        x.push_back(s.x);
        y.push_back(s.y);
    }
    auto sup = chord_sup(x, y);
    std::vector<double> oracle_margins(x.size());
    for (std::size_t k = 0; k < x.size(); k++) {
        oracle_margins[k] = -std::abs(sup[k] - env.samples[k].y);
    }
    details.push_back(make_report("appendixA/envelope_vs_chord_sup", oracle_margins, 1e-9));

    auto chord_margins = per_trial(config.trials, derive_seed(config.seed, kEnvelopeChords), [&](std::size_t, Rng &rng) {
        std::uniform_int_distribution<std::size_t> pick(0, x.size() - 1);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::size_t i = pick(rng);
        std::size_t j = pick(rng);
        double t = unit(rng);
        double xm = t * x[i] + (1 - t) * x[j];
        return interpolate(env, xm) - (t * y[i] + (1 - t) * y[j]);
    });
    details.push_back(make_report("appendixA/random_chords_below_envelope", chord_margins, 1e-9));
}

void appendix_b_suite(const VerifyConfig &config, std::vector<ProbeReport> &details) {
    const std::size_t n = config.trials;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double pi = std::numbers::pi;

    details.push_back(make_report(
        "appendixB/dual_representation",
        per_trial(10 * n, derive_seed(config.seed, kDualRepresentation),
                  [&](std::size_t, Rng &rng) {
                      PureState psi = haar_sample(2, rng);
                      auto p = make_bloch_params(unit(rng), 2 * pi * unit(rng), pi * unit(rng));
                      return -std::abs(bu_integrand(p, to_bloch(psi).r) - bu_integrand_hilbert(p, psi));
                  }),
        1e-12));

    details.push_back(make_report(
        "appendixB/trace_term_vs_matrix",
        per_trial(n, derive_seed(config.seed, kTraceTerm),
                  [&](std::size_t, Rng &rng) {
                      auto p = make_bloch_params(unit(rng), 2 * pi * unit(rng), pi * unit(rng));
                      double theta = pi * unit(rng);
                      return -std::abs(trace_term(p, theta) - trace_term_matrix(p, theta));
                  }),
        1e-12));

    details.push_back(make_report("appendixB/v_matrix_closed_vs_average",
                                  per_trial(n, derive_seed(config.seed, kVMatrix),
                                            [&](std::size_t, Rng &rng) {
                                                double x = unit(rng);
                                                double theta = pi * unit(rng);
                                                Mat3 a = v_matrix_closed(x, theta);
                                                Mat3 b = v_matrix_average(x, theta);
                                                double worst = 0;
                                                for (int i = 0; i < 3; i++) {
                                                    for (int j = 0; j < 3; j++) {
                                                        worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
                                                    }
                                                }
                                                return -worst;
                                            }),
                                  1e-12));

    details.push_back(make_report(
        "appendixB/azimuthal_bound",
        per_trial(n, derive_seed(config.seed, kAzimuthal),
                  [&](std::size_t, Rng &rng) {
                      auto p = make_bloch_params(unit(rng), 0.0, pi * unit(rng));
                      double theta = pi * unit(rng);
                      return azimuthal_bound(p, theta) - azimuthal_average(p, theta);
                  }),
        1e-10));

    details.push_back(make_report(
        "appendixB/alpha_zero_optimal",
        per_trial(n, derive_seed(config.seed, kAlphaOptimality),
                  [&](std::size_t, Rng &rng) {
                      auto p = make_bloch_params(unit(rng), 2 * pi * unit(rng), pi * unit(rng));
                      double theta = pi * unit(rng);
                      auto p0 = p;
                      p0.alpha = 0;
                      return trace_term(p0, theta) - trace_term(p, theta);
                  }),
        1e-12));

    auto xs = default_x_grid();
    std::vector<double> b_margins(xs.size());
    for (std::size_t i = 0; i < xs.size(); i++) {
        b_margins[i] = -std::abs(bures_beta_integral(xs[i], 0.0) - b_closed(xs[i]));
    }
    details.push_back(make_report("appendixB/beta_integral_at_zero_vs_b", b_margins, 1e-8));

    auto scan = verify_beta_maximum(xs, default_beta_grid());
    std::vector<double> scan_margins;
    for (const auto &p : scan.points) {
        scan_margins.push_back(p.margin);
    }
    details.push_back(make_report("appendixB/beta_maximum_at_zero", scan_margins, scan.tolerance));

    // End to end: the rotated operation's Bures fidelity meets the integral
    // at beta = 0 and stays below it for beta > 0.
    std::vector<double> equal_margins;
    std::vector<double> below_margins;
    for (int i = 0; i <= 8; i++) {
        double x = i / 8.0;
        equal_margins.push_back(-std::abs(bures_fidelity(rotated_saturating_operation(make_bloch_params(x))).value -
                                          bures_beta_integral(x, 0.0)));
        for (double beta : {pi / 8, pi / 2, pi}) {
            double b = bures_fidelity(rotated_saturating_operation(make_bloch_params(x, 0.0, beta))).value;
            below_margins.push_back(bures_beta_integral(x, beta) - b);
        }
    }
    details.push_back(make_report("appendixB/bures_fidelity_matches_at_zero", equal_margins, 1e-8));
    details.push_back(make_report("appendixB/bures_fidelity_below_integral", below_margins, 1e-8));
}

SuiteReport run_suite(Suite suite, const VerifyConfig &config) {
    if (config.trials == 0) {
        throw Error(ErrorKind::OutOfRange, "trials must be positive");
    }
    SuiteReport report;
    report.suite = suite_name(suite);
    report.trials = config.trials;
    auto run = [&](Suite s) {
        switch (s) {
            case Suite::Bound:
                bound_suite(config, report.details);
                break;
            case Suite::Convexity:
                convexity_suite(config, report.details);
                break;
            case Suite::Efficiency:
                efficiency_suite(config, report.details);
                break;
            case Suite::AppendixA:
                appendix_a_suite(config, report.details);
                break;
            case Suite::AppendixB:
                appendix_b_suite(config, report.details);
                break;
            case Suite::All:
                break;
        }
    };
    if (suite == Suite::All) {
        for (Suite s : {Suite::Bound, Suite::Convexity, Suite::Efficiency, Suite::AppendixA, Suite::AppendixB}) {
            run(s);
        }
    } else {
        run(suite);
    }
    report.pass = !report.details.empty();
    report.worst_margin = HUGE_VAL;
    for (auto &d : report.details) {
        if (config.tolerance && d.tolerance > 0) {
            d.tolerance = *config.tolerance;
            d.pass = d.worst_margin >= -d.tolerance;
        }
        report.pass = report.pass && d.pass;
        report.worst_margin = std::min(report.worst_margin, d.worst_margin);
    }
    return report;
}

nlohmann::ordered_json to_json(const ProbeReport &report) {
    return nlohmann::ordered_json{{"name", report.name},
            {"trials", report.trials},
            {"worst_margin", report.worst_margin},
            {"tolerance", report.tolerance},
            {"pass", report.pass}};
}

nlohmann::ordered_json to_json(const SuiteReport &report) {
    nlohmann::ordered_json details = nlohmann::ordered_json::array();
    for (const auto &d : report.details) {
        details.push_back(to_json(d));
    }
    return nlohmann::ordered_json{{"suite", report.suite},
            {"trials", report.trials},
            {"worst_margin", report.worst_margin},
            {"pass", report.pass},
            {"details", std::move(details)}};
}

}  // namespace qtradeoff
