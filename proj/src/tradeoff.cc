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

#include "qtradeoff/tradeoff.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "qtradeoff/parallel.h"

namespace qtradeoff {

namespace {

constexpr double kLn2 = 0.693147180559945309417232121458176568;
constexpr double kHAtOne = 1.0 - 0.5 / kLn2;

// Below this the series for h is used; above it the log1p form has no
// cancellation worth worrying about.
constexpr double kHSeriesCutoff = 0.05;
constexpr double kBSeriesCutoff = 1e-4;

void require_unit(double x) {
    if (!(x >= 0 && x <= 1)) {
        throw Error(ErrorKind::OutOfRange, "reduction parameter x must lie in [0, 1], got " + std::to_string(x));
    }
}

double sqrt_one_minus_sq(double x) {
    return std::sqrt((1 - x) * (1 + x));
}

double cross(const CurvePoint &o, const CurvePoint &a, const CurvePoint &b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Rounding scale of cross(): a chord test is only trusted beyond this.
double cross_scale(const CurvePoint &o, const CurvePoint &a, const CurvePoint &b) {
    return std::abs(a.x - o.x) * std::abs(b.y - o.y) + std::abs(a.y - o.y) * std::abs(b.x - o.x);
}

std::array<double, 3> random_direction(Rng &rng) {
    std::normal_distribution<double> gauss;
    std::array<double, 3> n{};
    double norm = 0;
    while (norm < 1e-8) {
        for (auto &v : n) {
            v = gauss(rng);
        }
        norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    }
    for (auto &v : n) {
        v /= norm;
    }
    return n;
}

std::vector<double> dirichlet(std::size_t k, double total, Rng &rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(k);
    double s = 0;
    for (auto &v : w) {
        v = expo(rng);
        s += v;
    }
    for (auto &v : w) {
        v *= total / s;
    }
    return w;
}

const TradeoffCurve &cached_curve(Pairing pairing) {
    static std::once_flag once;
    static std::array<TradeoffCurve, 4> curves;
    std::call_once(once, [] {
        for (std::size_t i = 0; i < kAllPairings.size(); i++) {
            curves[i] = composite_curve(kAllPairings[i]);
        }
    });
    return curves[static_cast<std::size_t>(pairing)];
}

}  // namespace

double f_closed(double x) {
    require_unit(x);
    return (2 + sqrt_one_minus_sq(x)) / 3;
}

double h_closed(double x) {
    require_unit(x);
    if (x < kHSeriesCutoff) {
        // h ln2 = sum_k x^{2k} / (2k (4k^2 - 1))
        double x2 = x * x;
        double term = x2;
        double s = 0;
        for (int k = 1; k <= 12; k++) {
            s += term / (2.0 * k * (4.0 * k * k - 1));
            term *= x2;
        }
        return s / kLn2;
    }
    if (1 - x < 1e-12) {
        return kHAtOne;
    }
    double up = std::log1p(x) * (1 + x) * (1 + x);
    double down = (1 - x) * (1 - x) * std::log1p(-x);
    return ((up - down) / (4 * x) - 0.5) / kLn2;
}

double g_closed(double x) {
    require_unit(x);
    return (x + 3) / 6;
}

double b_closed(double x) {
    require_unit(x);
    if (x < kBSeriesCutoff) {
        double x2 = x * x;
        return 1 - x2 / 12 - x2 * x2 / 40;
    }
    // Equivalent to (2 / 15 x^2)[(1 + x^2) s + 7 x^2 - 1] with s = sqrt(1 - x^2),
    // rewritten without the 1/x^2 cancellation.
    double s = sqrt_one_minus_sq(x);
    return (2.0 / 15.0) * (s - 1 / (1 + s) + 7);
}

double b_derivative(double x) {
    require_unit(x);
    double s = sqrt_one_minus_sq(x);
    if (s == 0) {
        return -std::numeric_limits<double>::infinity();
    }
    double ds = -x / s;
    return (2.0 / 15.0) * (ds + ds / ((1 + s) * (1 + s)));
}

double f_inverse(double fidelity) {
    constexpr double kSlack = 1e-12;
    if (!(fidelity >= 2.0 / 3.0 - kSlack && fidelity <= 1 + kSlack)) {
        throw Error(ErrorKind::OutOfImage, "F = " + std::to_string(fidelity) + " lies outside [2/3, 1]");
    }
    double f = std::clamp(fidelity, 2.0 / 3.0, 1.0);
    return std::min(1.0, std::sqrt(std::max(0.0, 3 * (1 - f) * (3 * f - 1))));
}

double b_inverse(double fidelity) {
    constexpr double kSlack = 1e-12;
    if (!(fidelity >= 0.8 - kSlack && fidelity <= 1 + kSlack)) {
        throw Error(ErrorKind::OutOfImage, "B = " + std::to_string(fidelity) + " lies outside [4/5, 1]");
    }
    double b = std::clamp(fidelity, 0.8, 1.0);
    return invert_monotone(b_closed, b, 0, 1, b_derivative);
}

double h_composite_second_derivative(double x) {
    if (!(x > 0 && x < 1)) {
        throw Error(ErrorKind::OutOfRange, "second derivative is evaluated on the open interval (0, 1)");
    }
    double s = sqrt_one_minus_sq(x);
    double x2 = x * x;
    double bracket;
    if (s < 0.05) {
        // The two bracket terms cancel to O(s^5) here:
        // bracket ln2 = sum_{k>=2} s^{2k+1} (4k - 4) / (3 (2k + 1)).
        double s2 = s * s;
        double term = s * s2 * s2;
        double series = 0;
        for (int k = 2; k <= 14; k++) {
            series += term * (4.0 * k - 4) / (3.0 * (2 * k + 1));
            term *= s2;
        }
        bracket = series / kLn2;
    } else {
        bracket = std::log2((1 - s) / (1 + s)) + (4 * x2 + 2) * s / (3 * x2 * kLn2);
    }
    double s5 = s * s * s * s * s;
    return -3 * x2 / (4 * s5) * bracket;
}

void validate_curve(const ScalarCurve &curve) {
    if (curve.samples.size() < 2) {
        throw Error(ErrorKind::DegenerateInput, "a curve needs at least two samples");
    }
    for (std::size_t i = 0; i < curve.samples.size(); i++) {
        const auto &p = curve.samples[i];
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw Error(ErrorKind::DegenerateInput, "curve sample is not finite");
        }
        if (i > 0 && !(p.x > curve.samples[i - 1].x)) {
            throw Error(ErrorKind::DegenerateInput, "curve abscissae must be strictly increasing");
        }
    }
}

ScalarCurve sample_curve(std::string meta, const std::function<double(double)> &fn, std::size_t n, double lo,
                         double hi) {
    if (n < 2 || !(hi > lo)) {
        throw Error(ErrorKind::DegenerateInput, "sampling needs n >= 2 and a non-empty interval");
    }
    ScalarCurve curve{std::move(meta), std::vector<CurvePoint>(n)};
    for (std::size_t i = 0; i < n; i++) {
        double x = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        curve.samples[i] = {x, fn(x)};
    }
    return curve;
}

double interpolate(const ScalarCurve &curve, double x) {
    const auto &s = curve.samples;
    if (s.empty()) {
        throw Error(ErrorKind::DegenerateInput, "cannot interpolate an empty curve");
    }
    if (x <= s.front().x) {
        return s.front().y;
    }
    if (x >= s.back().x) {
        return s.back().y;
    }
    auto it = std::upper_bound(s.begin(), s.end(), x, [](double v, const CurvePoint &p) { return v < p.x; });
    const CurvePoint &b = *it;
    const CurvePoint &a = *(it - 1);
    if (x == a.x) {
        return a.y;
    }
    return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

double invert_monotone(const std::function<double(double)> &fn, double y, double lo, double hi,
                       const std::function<double(double)> &derivative) {
    double f_lo = fn(lo);
    double f_hi = fn(hi);
    if (y == f_lo) {
        return lo;
    }
    if (y == f_hi) {
        return hi;
    }
    bool increasing = f_hi > f_lo;
    if (!(y > std::min(f_lo, f_hi) && y < std::max(f_lo, f_hi))) {
        throw Error(ErrorKind::OutOfImage, "value " + std::to_string(y) + " lies outside the image [" +
                                               std::to_string(std::min(f_lo, f_hi)) + ", " +
                                               std::to_string(std::max(f_lo, f_hi)) + "]");
    }
    double a = lo;
    double b = hi;
    for (int it = 0; it < 2000; it++) {
        double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) {
            break;
        }
        if ((fn(mid) < y) == increasing) {
            a = mid;
        } else {
            b = mid;
        }
    }
    double x = std::abs(fn(a) - y) <= std::abs(fn(b) - y) ? a : b;
    if (derivative) {
        for (int it = 0; it < 3; it++) {
            double r = fn(x) - y;
            double d = derivative(x);
            if (r == 0 || !std::isfinite(d) || d == 0) {
                break;
            }
            double next = std::clamp(x - r / d, lo, hi);
            if (!(std::abs(fn(next) - y) < std::abs(r))) {
                break;
            }
            x = next;
        }
    }
    return x;
}

double invert_monotone(const ScalarCurve &curve, double y) {
    validate_curve(curve);
    return invert_monotone([&](double x) { return interpolate(curve, x); }, y, curve.samples.front().x,
                           curve.samples.back().x);
}

std::vector<CurvePoint> upper_hull_vertices(const ScalarCurve &curve) {
    validate_curve(curve);
    std::vector<CurvePoint> hull;
    for (const auto &p : curve.samples) {
        while (hull.size() >= 2) {
            const auto &o = hull[hull.size() - 2];
            const auto &a = hull.back();
            // Pop a only when it lies clearly below the chord o -> p.
            if (cross(o, a, p) > 1e-13 * cross_scale(o, a, p)) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(p);
    }
    return hull;
}

ScalarCurve concave_envelope(const ScalarCurve &curve) {
    auto hull = upper_hull_vertices(curve);
    ScalarCurve out{curve.meta.empty() ? "envelope" : curve.meta + "_envelope", {}};
    out.samples.reserve(curve.samples.size());
    std::size_t j = 0;
    for (const auto &p : curve.samples) {
        while (j + 1 < hull.size() && hull[j + 1].x <= p.x) {
            j++;
        }
        double y;
        if (hull[j].x == p.x) {
            y = hull[j].y;
        } else {
            const auto &a = hull[j];
            const auto &b = hull[j + 1];
            y = a.y + (b.y - a.y) * (p.x - a.x) / (b.x - a.x);
        }
        out.samples.push_back({p.x, y});
    }
    return out;
}

const char *pairing_name(Pairing pairing) {
    switch (pairing) {
        case Pairing::H_vs_F:
            return "HF";
        case Pairing::G_vs_F:
            return "GF";
        case Pairing::H_vs_B:
            return "HB";
        case Pairing::G_vs_B:
            return "GB";
    }
    return "?";
}

std::optional<Pairing> parse_pairing(std::string_view name) {
    for (Pairing p : kAllPairings) {
        if (name == pairing_name(p)) {
            return p;
        }
    }
    return std::nullopt;
}

static bool uses_bures(Pairing pairing) {
    return pairing == Pairing::H_vs_B || pairing == Pairing::G_vs_B;
}

static bool uses_shannon(Pairing pairing) {
    return pairing == Pairing::H_vs_F || pairing == Pairing::H_vs_B;
}

std::array<double, 2> disturbance_domain(Pairing pairing) {
    return uses_bures(pairing) ? std::array<double, 2>{0.8, 1.0} : std::array<double, 2>{2.0 / 3.0, 1.0};
}

double information_reduction(Pairing pairing, double x) {
    return uses_shannon(pairing) ? h_closed(x) : g_closed(x);
}

double disturbance_reduction(Pairing pairing, double x) {
    return uses_bures(pairing) ? b_closed(x) : f_closed(x);
}

double disturbance_inverse(Pairing pairing, double disturbance) {
    return uses_bures(pairing) ? b_inverse(disturbance) : f_inverse(disturbance);
}

double composite_value(Pairing pairing, double disturbance) {
    auto domain = disturbance_domain(pairing);
    if (disturbance > 1 + 1e-9 || !std::isfinite(disturbance)) {
        throw Error(ErrorKind::OutOfImage, "disturbance measure exceeds 1");
    }
    double d = std::clamp(disturbance, domain[0], 1.0);
    return information_reduction(pairing, disturbance_inverse(pairing, d));
}

TradeoffCurve composite_curve(Pairing pairing, std::size_t n) {
    if (n < 2) {
        throw Error(ErrorKind::DegenerateInput, "a trade-off curve needs at least two samples");
    }
    auto domain = disturbance_domain(pairing);
    TradeoffCurve curve{pairing, std::vector<TradeoffSample>(n)};
    parallel_for(n, [&](std::size_t i) {
        double d = i + 1 == n ? domain[1]
                              : domain[0] + (domain[1] - domain[0]) * static_cast<double>(i) / static_cast<double>(n - 1);
        double x = disturbance_inverse(pairing, d);
        curve.samples[i] = {d, information_reduction(pairing, x), 0.0, x};
    });
    ScalarCurve raw{pairing_name(pairing), {}};
    raw.samples.reserve(n);
    for (const auto &s : curve.samples) {
        raw.samples.push_back({s.disturbance, s.info_bound});
    }
    ScalarCurve env = concave_envelope(raw);
    for (std::size_t i = 0; i < n; i++) {
        curve.samples[i].envelope = env.samples[i].y;
    }
    return curve;
}

double envelope_at(const TradeoffCurve &curve, double disturbance) {
    ScalarCurve env{"envelope", {}};
    env.samples.reserve(curve.samples.size());
    for (const auto &s : curve.samples) {
        env.samples.push_back({s.disturbance, s.envelope});
    }
    return interpolate(env, disturbance);
}

double envelope_gap(const TradeoffCurve &curve) {
    double gap = 0;
    for (const auto &s : curve.samples) {
        gap = std::max(gap, std::abs(s.envelope - s.info_bound));
    }
    return gap;
}

QubitMeasures evaluate_qubit_measures(const KrausOperation &op, const BoundOptions &options) {
    if (op.dim() != 2) {
        throw Error(ErrorKind::WrongDim, "the trade-off bounds are derived for a qubit");
    }
    Povm povm = induced_povm(op);
    QubitMeasures m;
    if (options.monte_carlo) {
        m.shannon = shannon_gain_mc(povm, derive_seed(options.seed, 0), options.samples);
        m.operation_fidelity = operation_fidelity_mc(op, derive_seed(options.seed, 1), options.samples);
        m.estimation_fidelity = estimation_fidelity_mc(povm, derive_seed(options.seed, 2), options.samples);
        m.bures = bures_fidelity_mc(op, derive_seed(options.seed, 3), options.samples);
    } else {
        m.shannon = shannon_gain(povm);
        m.operation_fidelity = operation_fidelity_closed(op);
        m.estimation_fidelity = estimation_fidelity(povm);
        m.bures = bures_fidelity(op);
    }
    return m;
}

BoundReport check_bound(const QubitMeasures &measures, Pairing pairing, double tolerance_floor) {
    const MeasureValue &info = uses_shannon(pairing) ? measures.shannon : measures.estimation_fidelity;
    const MeasureValue &dist = uses_bures(pairing) ? measures.bures : measures.operation_fidelity;
    BoundReport r;
    r.pairing = pairing;
    r.info = info.value;
    r.disturbance = dist.value;
    // The sampled envelope alone under-resolves the steep end of the B
    // pairings; the composite is concave, so its exact value is the envelope.
    r.bound = std::max(composite_value(pairing, dist.value), envelope_at(cached_curve(pairing), dist.value));
    r.margin = r.bound - r.info;
    r.tolerance = tolerance_floor + 4 * (info.mc_std_error + dist.mc_std_error);
    r.satisfied = r.margin >= -r.tolerance;
    return r;
}

BoundReport check_bound(const KrausOperation &op, Pairing pairing, const BoundOptions &options) {
    return check_bound(evaluate_qubit_measures(op, options), pairing, options.tolerance_floor);
}

ProbeReport appendix_a_concavity_check(std::size_t n_grid) {
    if (n_grid < 1) {
        throw Error(ErrorKind::OutOfRange, "n_grid must be positive");
    }
    auto composite = [](double x) { return h_closed(sqrt_one_minus_sq(x)); };
    std::vector<double> slack(n_grid);
    parallel_for(n_grid, [&](std::size_t i) {
        double x = static_cast<double>(i + 1) / static_cast<double>(n_grid + 1);
        double step = std::min({1e-4, x / 4, (1 - x) / 4});
        double fd = (composite(x + step) - 2 * composite(x) + composite(x - step)) / (step * step);
        double closed = h_composite_second_derivative(x);
        double agreement = std::max(1e-6, 1e-4 * std::abs(closed)) - std::abs(closed - fd);
        slack[i] = std::min({agreement, -closed, -fd});
    });
    ProbeReport report;
    report.name = "appendixA/second_derivative";
    report.trials = n_grid;
    report.worst_margin = *std::min_element(slack.begin(), slack.end());
    report.tolerance = 0;
    report.pass = report.worst_margin > 0;
    return report;
}

Povm paired_povm(const std::vector<double> &x, const std::vector<double> &xi,
                 const std::vector<std::array<double, 3>> &directions) {
    if (x.size() != xi.size() || x.size() != directions.size()) {
        throw Error(ErrorKind::DimensionMismatch, "paired_povm needs matching parameter lists");
    }
    std::vector<ComplexMatrix> elements;
    for (std::size_t k = 0; k < x.size(); k++) {
        require_unit(x[k]);
        const auto &n = directions[k];
        for (double sign : {1.0, -1.0}) {
            double c = sign * x[k];
            ComplexMatrix m(2);
            m(0, 0) = xi[k] * (1 + c * n[2]);
            m(1, 1) = xi[k] * (1 - c * n[2]);
            m(0, 1) = xi[k] * c * Complex(n[0], -n[1]);
            m(1, 0) = xi[k] * c * Complex(n[0], n[1]);
            elements.push_back(std::move(m));
        }
    }
    return Povm(std::move(elements));
}

EqualityReport equality_condition_check(std::uint64_t seed, std::size_t trials) {
    std::vector<double> equal_slack(trials);
    std::vector<double> unequal_slack(trials);
    parallel_for(trials, [&](std::size_t t) {
        Rng rng = make_rng(seed, t);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::uniform_int_distribution<int> pairs(1, 3);

        // Equal ratios: any number of pairs sharing one x.
        {
            std::size_t k = static_cast<std::size_t>(pairs(rng));
            double x = 0.95 * unit(rng);
            std::vector<std::array<double, 3>> dirs;
            for (std::size_t i = 0; i < k; i++) {
                dirs.push_back(random_direction(rng));
            }
            Povm povm = paired_povm(std::vector<double>(k, x), dirichlet(k, 0.5, rng), dirs);
            auto r = check_bound(efficient_from_povm(povm), Pairing::H_vs_F);
            equal_slack[t] = 1e-7 - std::abs(r.margin);
        }

        // Unequal ratios: two pairs with x spread >= 0.2 and weights bounded
        // away from 0, so the strict concavity gap is well above 1e-6.
        {
            double x1 = 0.75 * unit(rng);
            double x2 = x1 + 0.2 + (0.95 - x1 - 0.2) * unit(rng);
            double xi1 = 0.1 + 0.3 * unit(rng);
            std::vector<std::array<double, 3>> dirs{random_direction(rng), random_direction(rng)};
            Povm povm = paired_povm({x1, x2}, {xi1, 0.5 - xi1}, dirs);
            auto r = check_bound(efficient_from_povm(povm), Pairing::H_vs_F);
            unequal_slack[t] = r.margin - 1e-6;
        }
    });
    auto reduce = [](std::string name, const std::vector<double> &slack) {
        ProbeReport p;
        p.name = std::move(name);
        p.trials = slack.size();
        p.worst_margin = slack.empty() ? 0.0 : *std::min_element(slack.begin(), slack.end());
        p.tolerance = 0;
        p.pass = !slack.empty() && p.worst_margin >= 0;
        return p;
    };
    return {reduce("equality/equal_ratio", equal_slack), reduce("equality/unequal_ratio", unequal_slack)};
}

}  // namespace qtradeoff
