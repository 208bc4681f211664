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

#include "qtradeoff/measures.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

namespace qtradeoff {

namespace {

// 0 log 0 = 0: probabilities are clamped here before the logarithm.
constexpr double kLogFloor = 1e-300;

double xlog2_ratio(double m, double mean) {
    if (m <= 0 || mean <= 0) {
        return 0;
    }
    return m * std::log2(std::max(m, kLogFloor) / mean);
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        s += a[i] * b[i];
    }
    return s;
}

void require_non_negative(std::span<const double> u) {
    for (double v : u) {
        if (!(v >= 0)) {
            throw Error(ErrorKind::NegativeInput, "spectral argument has a negative entry");
        }
    }
}

/// Eigenvalues of a PSD operator with [-tol, 0) clamped to zero.
EigenSystem psd_spectrum(const ComplexMatrix &m) {
    auto sys = eig_hermitian(m, kDefaultTol);
    for (auto &v : sys.values) {
        if (v < -kDefaultTol * std::max(1.0, frobenius_norm(m))) {
            throw Error(ErrorKind::NotPsd, "component functions need a PSD argument");
        }
        v = std::max(v, 0.0);
    }
    return sys;
}

double dim_norm(std::size_t d) {
    return 1.0 / static_cast<double>(d * (d + 1));
}

// ---- general qubit elements -------------------------------------------------

// On the Bloch sphere the integrand of a single element A is
//   sqrt(c0 + c.r) |a0 + t.r|,   A^dagger A = c0 + c.sigma,  A = a0 + t.sigma.
// With the polar axis along c the first factor depends on theta only and can
// vanish only at theta = pi. The second vanishes where the complex affine
// a0 + t.r meets zero: two points, or a circle when A is a phase times a
// Hermitian matrix; in general |a0 + t.r| runs along a valley near such a
// circle. The integral is iterated (phi inside, theta outside). Outer panels
// end at the polar angles of the zeros and where rings touch the valley;
// inner panels end at the minima of the modulus along the ring. Panels use a
// tanh-sinh rule, whose nodes cluster at the ends fast enough to absorb kinks
// there. Rings far from any zero fall back to the trapezoid rule.

constexpr double kTanhSinhStep = 1.0 / 8;
constexpr double kTanhSinhReach = 3.25;
// Panels narrower than this contribute below rounding and are skipped.
constexpr double kMinPanel = 1e-13;
constexpr std::size_t kMinimaScan = 64;
// Rings whose integrand is analytic in a strip at least this wide use a
// plain periodic trapezoid rule.
constexpr double kSmoothStrip = 0.5;
constexpr std::size_t kRingTrapezoid = 64;
// Half-width of the search for a dip when the zero line misses the sphere.
constexpr double kDipBracket = 0.5;

using Vec3d = std::array<double, 3>;

double dot3(const Vec3d &a, const Vec3d &b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double norm3(const Vec3d &a) {
    return std::sqrt(dot3(a, a));
}

Vec3d scaled(const Vec3d &a, double f) {
    return {a[0] * f, a[1] * f, a[2] * f};
}

Vec3d cross3(const Vec3d &a, const Vec3d &b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

struct PauliForm {
    Complex m0;
    std::array<Complex, 3> m;
};

PauliForm pauli_form(const ComplexMatrix &a) {
    const Complex i(0, 1);
    return {(a(0, 0) + a(1, 1)) / 2.0,
            {(a(0, 1) + a(1, 0)) / 2.0, i * (a(0, 1) - a(1, 0)) / 2.0, (a(0, 0) - a(1, 1)) / 2.0}};
}

/// Orthonormal e1, e2 completing the unit vector s.
std::array<Vec3d, 2> tangent_frame(const Vec3d &s) {
    Vec3d helper = std::abs(s[0]) < 0.6 ? Vec3d{1, 0, 0} : Vec3d{0, 1, 0};
    Vec3d e1 = cross3(s, helper);
    e1 = scaled(e1, 1 / norm3(e1));
    return {e1, cross3(s, e1)};
}

struct PanelRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const PanelRule &tanh_sinh_rule() {
    static const PanelRule rule = [] {
        PanelRule r;
        const double half_pi = std::numbers::pi / 2;
        int reach = static_cast<int>(kTanhSinhReach / kTanhSinhStep);
        for (int k = -reach; k <= reach; k++) {
            double t = k * kTanhSinhStep;
            double u = half_pi * std::sinh(t);
            double cu = std::cosh(u);
            r.nodes.push_back(std::tanh(u));
            r.weights.push_back(kTanhSinhStep * half_pi * std::cosh(t) / (cu * cu));
        }
        return r;
    }();
    return rule;
}

template <typename F>
double panel_integral(double lo, double hi, const F &fn) {
    const PanelRule &rule = tanh_sinh_rule();
    double mid = (lo + hi) / 2;
    double half = (hi - lo) / 2;
    double s = 0;
    for (std::size_t k = 0; k < rule.nodes.size(); k++) {
        s += rule.weights[k] * fn(mid + half * rule.nodes[k]);
    }
    return half * s;
}

/// Sorted breaks on [0, 2 pi); integrates once round the circle.
template <typename F>
double periodic_integral(std::vector<double> breaks, const F &fn) {
    const double two_pi = 2 * std::numbers::pi;
    for (double &b : breaks) {
        b -= two_pi * std::floor(b / two_pi);
    }
    if (breaks.empty()) {
        breaks.push_back(0);
    }
    std::sort(breaks.begin(), breaks.end());
    double total = 0;
    for (std::size_t k = 0; k < breaks.size(); k++) {
        double lo = breaks[k];
        double hi = k + 1 < breaks.size() ? breaks[k + 1] : breaks[0] + two_pi;
        if (hi - lo > kMinPanel) {
            total += panel_integral(lo, hi, fn);
        }
    }
    return total;
}

/// |b + x cos(phi) + y sin(phi)|^2 as a trigonometric polynomial of degree two.
struct RingPolynomial {
    double a0 = 0;
    double a1 = 0;
    double b1 = 0;
    double a2 = 0;
    double b2 = 0;

    RingPolynomial(Complex b, Complex x, Complex y)
        : a0(std::norm(b) + (std::norm(x) + std::norm(y)) / 2),
          a1(2 * (std::conj(b) * x).real()),
          b1(2 * (std::conj(b) * y).real()),
          a2((std::norm(x) - std::norm(y)) / 2),
          b2((std::conj(x) * y).real()) {}

    double value(double phi) const {
        double c = std::cos(phi);
        double s = std::sin(phi);
        return a0 + a1 * c + b1 * s + a2 * (c * c - s * s) + 2 * b2 * s * c;
    }

    double slope_at(double c, double s) const {
        return -a1 * s + b1 * c - 4 * a2 * s * c + 2 * b2 * (c * c - s * s);
    }

    double slope(double phi) const {
        return slope_at(std::cos(phi), std::sin(phi));
    }

    /// Panel ends for the ring: the local minima of the polynomial (at most
    /// two, where near-zeros of the modulus sit) and scan points where the
    /// slope comes close to zero without changing sign, which mark a
    /// shoulder about to become a minimum.
    std::vector<double> breaks() const {
        return stationary(true);
    }

    std::vector<double> minima() const {
        return stationary(false);
    }

    std::vector<double> stationary(bool with_shoulders) const {
        // Slope signs on a periodic scan; a band around zero catches minima
        // that fall exactly on a scan point.
        const double band = 1e-13 * (std::abs(a1) + std::abs(b1) + 2 * std::abs(a2) + 2 * std::abs(b2));
        const double step = 2 * std::numbers::pi / kMinimaScan;
        static const auto table = [step] {
            std::array<std::array<double, 2>, kMinimaScan> t{};
            for (std::size_t k = 0; k < kMinimaScan; k++) {
                t[k] = {std::cos(step * static_cast<double>(k)), std::sin(step * static_cast<double>(k))};
            }
            return t;
        }();
        std::array<double, kMinimaScan> values{};
        std::array<int, kMinimaScan> signs{};
        for (std::size_t k = 0; k < kMinimaScan; k++) {
            values[k] = slope_at(table[k][0], table[k][1]);
            signs[k] = values[k] > band ? 1 : (values[k] < -band ? -1 : 0);
        }
        auto fn = [this](double phi) { return slope(phi); };
        std::vector<double> out;
        for (std::size_t k = 0; k < kMinimaScan; k++) {
            std::size_t prev = (k + kMinimaScan - 1) % kMinimaScan;
            std::size_t next = (k + 1) % kMinimaScan;
            double lo = step * static_cast<double>(k);
            if (signs[k] == 0 && signs[prev] < 0 && signs[next] > 0) {
                out.push_back(lo);
            } else if (with_shoulders && signs[k] != 0 && signs[prev] == signs[k] && signs[next] == signs[k] &&
                       std::abs(values[k]) < std::abs(values[prev]) && std::abs(values[k]) <= std::abs(values[next])) {
                out.push_back(lo);
            } else if (signs[k] < 0 && signs[next] > 0) {
                std::uintmax_t iterations = 60;
                auto root = boost::math::tools::toms748_solve(fn, lo, lo + step, values[k], values[next],
                                                              boost::math::tools::eps_tolerance<double>(), iterations);
                out.push_back((root.first + root.second) / 2);
            }
        }
        return out;
    }

    double curvature(double phi) const {
        double c = std::cos(phi);
        double s = std::sin(phi);
        return -a1 * c - b1 * s - 4 * a2 * (c * c - s * s) - 8 * b2 * s * c;
    }

    double third(double phi) const {
        double c = std::cos(phi);
        double s = std::sin(phi);
        return a1 * s - b1 * c + 16 * a2 * s * c - 8 * b2 * (c * c - s * s);
    }

    /// Rough distance from the real axis to the nearest complex zero next to
    /// a break, from the local Taylor expansion.
    double zero_distance(double phi) const {
        double g = std::max(value(phi), 0.0);
        double k2 = std::abs(curvature(phi));
        double k3 = std::abs(third(phi));
        double d = std::numeric_limits<double>::infinity();
        if (k2 > 0) {
            d = std::min(d, std::sqrt(2 * g / k2));
        }
        if (k3 > 0) {
            d = std::min(d, std::cbrt(6 * g / k3));
        }
        return d;
    }

    double floor() const {
        double lowest = a0;
        for (double phi : minima()) {
            lowest = std::min(lowest, value(phi));
        }
        return lowest;
    }
};

double bures_general_qubit_element(const ComplexMatrix &a) {
    const double pi = std::numbers::pi;
    PauliForm gram = pauli_form(mul(adjoint(a), a));
    double c0 = gram.m0.real();
    Vec3d c{gram.m[0].real(), gram.m[1].real(), gram.m[2].real()};
    double c_norm = norm3(c);
    Vec3d e3 = c_norm > 1e-14 * c0 ? scaled(c, 1 / c_norm) : Vec3d{0, 0, 1};
    auto [e1, e2] = tangent_frame(e3);

    PauliForm amp = pauli_form(a);
    auto along = [&](const Vec3d &e) { return amp.m[0] * e[0] + amp.m[1] * e[1] + amp.m[2] * e[2]; };
    const Complex t1 = along(e1);
    const Complex t2 = along(e2);
    const Complex t3 = along(e3);
    auto ring_polynomial = [&](double theta) {
        return RingPolynomial(amp.m0 + t3 * std::cos(theta), t1 * std::sin(theta), t2 * std::sin(theta));
    };

    // Zero set of (p0 + u.r) + i (q0 + v.r), in frame coordinates.
    double p0 = amp.m0.real();
    double q0 = amp.m0.imag();
    Vec3d u{t1.real(), t2.real(), t3.real()};
    Vec3d v{t1.imag(), t2.imag(), t3.imag()};
    double pp = p0 * p0 + dot3(u, u);
    double qq = q0 * q0 + dot3(v, v);
    double pq = p0 * q0 + dot3(u, v);
    double gram_det = pp * qq - pq * pq;
    double gram_scale = std::max(pp * pp, qq * qq);

    std::vector<double> theta_breaks{0, pi};
    // Rotate the phase so the real part dominates; |f| then runs along a
    // valley on the circle where that part vanishes (the whole zero set when
    // A is a phase times a Hermitian matrix). Rings tangent to the valley
    // give the outer integrand its near-singular points.
    double chi = std::atan2(2 * pq, pp - qq) / 2;
    double w0 = std::cos(chi) * p0 + std::sin(chi) * q0;
    Vec3d w{std::cos(chi) * u[0] + std::sin(chi) * v[0], std::cos(chi) * u[1] + std::sin(chi) * v[1],
            std::cos(chi) * u[2] + std::sin(chi) * v[2]};
    double rho = std::hypot(w[0], w[1]);
    double reach = std::hypot(w[2], rho);
    if (reach > 0 && std::abs(w0) <= reach) {
        // w0 + w3 cos(theta) = -+ rho sin(theta).
        double spread = std::acos(-w0 / reach);
        for (double sign : {-1.0, 1.0}) {
            double centre = std::atan2(sign * rho, w[2]);
            for (double th : {centre - spread, centre + spread}) {
                theta_breaks.push_back(std::abs(std::remainder(th, 2 * pi)));
            }
        }
    }
    Vec3d d = cross3(u, v);
    double dn = norm3(d);
    if (gram_det > 1e-16 * gram_scale && dn > 1e-12 * norm3(u) * norm3(v)) {
        double uu = dot3(u, u);
        double uv = dot3(u, v);
        double vv = dot3(v, v);
        double det = dn * dn;
        double ca = (-p0 * vv + q0 * uv) / det;
        double cb = (-q0 * uu + p0 * uv) / det;
        Vec3d r0{ca * u[0] + cb * v[0], ca * u[1] + cb * v[1], ca * u[2] + cb * v[2]};
        double n0 = dot3(r0, r0);
        if (n0 <= 1) {
            double s = std::sqrt(1 - n0) / dn;
            for (double sign : {-1.0, 1.0}) {
                Vec3d z{r0[0] + sign * s * d[0], r0[1] + sign * s * d[1], r0[2] + sign * s * d[2]};
                theta_breaks.push_back(std::acos(std::clamp(z[2] / norm3(z), -1.0, 1.0)));
            }
        } else {
            // The line misses the sphere and the modulus only dips. Its closest
            // point is a first guess for the dip, refined along theta.
            double guess = std::acos(std::clamp(r0[2] / std::sqrt(n0), -1.0, 1.0));
            auto best = boost::math::tools::brent_find_minima(
                [&](double theta) { return ring_polynomial(theta).floor(); }, std::max(0.0, guess - kDipBracket),
                std::min(pi, guess + kDipBracket), 40);
            theta_breaks.push_back(best.first);
        }
    }
    std::sort(theta_breaks.begin(), theta_breaks.end());

    auto ring = [&](double theta) {
        RingPolynomial g = ring_polynomial(theta);
        std::vector<double> ends = g.breaks();
        bool smooth = true;
        for (double phi : ends) {
            smooth = smooth && g.zero_distance(phi) >= kSmoothStrip;
        }
        if (smooth) {
            // Analytic and periodic in a wide strip: the trapezoid rule is
            // spectrally accurate.
            double s = 0;
            for (std::size_t k = 0; k < kRingTrapezoid; k++) {
                s += std::sqrt(std::max(g.value(2 * pi * static_cast<double>(k) / kRingTrapezoid), 0.0));
            }
            return s / kRingTrapezoid;
        }
        double s = periodic_integral(std::move(ends), [&](double phi) { return std::sqrt(std::max(g.value(phi), 0.0)); });
        return s / (2 * pi);
    };

    // (1 / 4 pi) sin(theta) dtheta dphi
    double total = 0;
    for (std::size_t k = 0; k + 1 < theta_breaks.size(); k++) {
        double lo = theta_breaks[k];
        double hi = theta_breaks[k + 1];
        if (hi - lo > kMinPanel) {
            total += panel_integral(lo, hi, [&](double theta) {
                double norm_sq = std::max(c0 + c_norm * std::cos(theta), 0.0);
                return 0.5 * std::sin(theta) * std::sqrt(norm_sq) * ring(theta);
            });
        }
    }
    return total;
}

bool is_hermitian_psd(const ComplexMatrix &a) {
    if (!is_hermitian(a, 1e-12)) {
        return false;
    }
    auto sys = eig_hermitian(a, 1e-12);
    return sys.values.back() >= -1e-12 * std::max(1.0, frobenius_norm(a));
}

std::vector<ComplexMatrix> top_eigenprojectors(const Povm &povm) {
    std::vector<ComplexMatrix> out;
    for (const auto &m : povm.elements()) {
        auto sys = eig_hermitian(m);
        std::vector<Complex> v(m.dim());
        for (std::size_t i = 0; i < m.dim(); i++) {
            v[i] = sys.vectors(i, 0);
        }
        out.push_back(ComplexMatrix::outer(v));
    }
    return out;
}

double margin_for(Component component, double x1, double x2, double x12) {
    switch (component) {
        case Component::Shannon:
        case Component::EstimationFidelity:
            return x1 + x2 - x12;
        case Component::OperationFidelity:
        case Component::Bures:
            return x12 - x1 - x2;
    }
    return 0;
}

ProbeReport reduce_margins(std::string name, const std::vector<double> &margins, double tolerance) {
    ProbeReport report;
    report.name = std::move(name);
    report.trials = margins.size();
    report.tolerance = tolerance;
    report.worst_margin = margins.empty() ? 0.0 : *std::min_element(margins.begin(), margins.end());
    report.pass = !margins.empty() && report.worst_margin >= -tolerance;
    return report;
}

std::vector<double> random_diagonal(std::size_t dim, Rng &rng) {
    std::exponential_distribution<double> expo(1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> u(dim);
    for (auto &v : u) {
        // Occasional exact zeros exercise the rank-deficient boundary.
        v = unit(rng) < 0.1 ? 0.0 : expo(rng);
    }
    return u;
}

}  // namespace

const char *method_name(Method method) {
    switch (method) {
        case Method::ClosedForm:
            return "closed_form";
        case Method::Quadrature:
            return "quadrature";
        case Method::MonteCarlo:
            return "monte_carlo";
    }
    return "unknown";
}

const char *component_name(Component component) {
    switch (component) {
        case Component::Shannon:
            return "H";
        case Component::OperationFidelity:
            return "F";
        case Component::EstimationFidelity:
            return "G";
        case Component::Bures:
            return "B";
    }
    return "?";
}

double phi_fidelity(std::span<const double> u) {
    require_non_negative(u);
    double sum = 0;
    double root_sum = 0;
    for (double v : u) {
        sum += v;
        root_sum += std::sqrt(v);
    }
    return dim_norm(u.size()) * (sum + root_sum * root_sum);
}

double estimation_spectral(std::span<const double> u) {
    require_non_negative(u);
    double sum = std::accumulate(u.begin(), u.end(), 0.0);
    double top = u.empty() ? 0.0 : *std::max_element(u.begin(), u.end());
    return dim_norm(u.size()) * (sum + top);
}

double shannon_spectral(std::span<const double> u, const SimplexRule &rule) {
    require_non_negative(u);
    if (u.size() != rule.dim) {
        throw Error(ErrorKind::DimensionMismatch, "simplex rule dimension differs from the spectrum");
    }
    // <psi|M|psi> = mean + sum (u_i - mean) p_i keeps flat spectra exactly flat.
    double mean = std::accumulate(u.begin(), u.end(), 0.0) / static_cast<double>(u.size());
    std::vector<double> offsets(u.size());
    for (std::size_t i = 0; i < u.size(); i++) {
        offsets[i] = u[i] - mean;
    }
    double s = 0;
    for (std::size_t k = 0; k < rule.size(); k++) {
        s += rule.weights[k] * xlog2_ratio(mean + dot(offsets, rule.point(k)), mean);
    }
    return s;
}

double bures_spectral(std::span<const double> u, const SimplexRule &rule) {
    require_non_negative(u);
    if (u.size() != rule.dim) {
        throw Error(ErrorKind::DimensionMismatch, "simplex rule dimension differs from the spectrum");
    }
    std::vector<double> roots(u.size());
    for (std::size_t i = 0; i < u.size(); i++) {
        roots[i] = std::sqrt(u[i]);
    }
    double s = 0;
    for (std::size_t k = 0; k < rule.size(); k++) {
        auto p = rule.point(k);
        s += rule.weights[k] * std::sqrt(std::max(dot(u, p), 0.0)) * dot(roots, p);
    }
    return s;
}

double component_spectral(Component component, std::span<const double> u) {
    switch (component) {
        case Component::Shannon:
            return shannon_spectral(u, default_simplex_rule(u.size()));
        case Component::OperationFidelity:
            return phi_fidelity(u);
        case Component::EstimationFidelity:
            return estimation_spectral(u);
        case Component::Bures:
            return bures_spectral(u, default_simplex_rule(u.size()));
    }
    return 0;
}

double shannon_component(const ComplexMatrix &m) {
    auto sys = psd_spectrum(m);
    if (m.dim() == 2 || m.dim() == 3) {
        return shannon_spectral(sys.values, default_simplex_rule(m.dim()));
    }
    throw Error(ErrorKind::OutOfRange, "deterministic Shannon component needs dim 2 or 3; use the Monte Carlo path");
}

MeasureValue shannon_component_mc(const ComplexMatrix &m, std::uint64_t seed, std::size_t samples) {
    psd_spectrum(m);
    const std::size_t d = m.dim();
    const double mean = trace(m).real() / static_cast<double>(d);
    auto est = monte_carlo(samples, seed, [&](Rng &rng) {
        PureState psi = haar_sample(d, rng);
        return xlog2_ratio(psi.expectation(m), mean);
    });
    return {est.mean, Method::MonteCarlo, est.std_error};
}

double operation_fidelity_component(const ComplexMatrix &m) {
    auto sys = psd_spectrum(m);
    return phi_fidelity(sys.values);
}

double estimation_fidelity_component(const ComplexMatrix &m) {
    auto sys = psd_spectrum(m);
    return estimation_spectral(sys.values);
}

double bures_component(const ComplexMatrix &m) {
    auto sys = psd_spectrum(m);
    if (m.dim() == 2 || m.dim() == 3) {
        return bures_spectral(sys.values, default_simplex_rule(m.dim()));
    }
    throw Error(ErrorKind::OutOfRange, "deterministic Bures component needs dim 2 or 3; use the Monte Carlo path");
}

MeasureValue bures_component_mc(const ComplexMatrix &m, std::uint64_t seed, std::size_t samples) {
    psd_spectrum(m);
    ComplexMatrix root = psd_sqrt(m);
    const std::size_t d = m.dim();
    auto est = monte_carlo(samples, seed, [&](Rng &rng) {
        PureState psi = haar_sample(d, rng);
        return std::sqrt(std::max(psi.expectation(m), 0.0)) * psi.expectation(root);
    });
    return {est.mean, Method::MonteCarlo, est.std_error};
}

double component_value(Component component, const ComplexMatrix &m) {
    switch (component) {
        case Component::Shannon:
            return shannon_component(m);
        case Component::OperationFidelity:
            return operation_fidelity_component(m);
        case Component::EstimationFidelity:
            return estimation_fidelity_component(m);
        case Component::Bures:
            return bures_component(m);
    }
    return 0;
}

MeasureValue shannon_gain(const Povm &povm) {
    double s = 0;
    for (const auto &m : povm.elements()) {
        s += shannon_component(m);
    }
    return {s, Method::Quadrature, 0.0};
}

MeasureValue shannon_gain_mc(const Povm &povm, std::uint64_t seed, std::size_t samples) {
    const std::size_t d = povm.dim();
    std::vector<double> means;
    for (const auto &m : povm.elements()) {
        means.push_back(trace(m).real() / static_cast<double>(d));
    }
    auto est = monte_carlo(samples, seed, [&](Rng &rng) {
        PureState psi = haar_sample(d, rng);
        double s = 0;
        for (std::size_t r = 0; r < povm.size(); r++) {
            s += xlog2_ratio(psi.expectation(povm[r]), means[r]);
        }
        return s;
    });
    return {est.mean, Method::MonteCarlo, est.std_error};
}

MeasureValue operation_fidelity_closed(const KrausOperation &op) {
    double s = 0;
    for (const auto &e : op.elements()) {
        s += trace(mul(adjoint(e.a), e.a)).real() + std::norm(trace(e.a));
    }
    return {dim_norm(op.dim()) * s, Method::ClosedForm, 0.0};
}

MeasureValue operation_fidelity_mc(const KrausOperation &op, std::uint64_t seed, std::size_t samples) {
    const std::size_t d = op.dim();
    auto est = monte_carlo(samples, seed, [&](Rng &rng) {
        PureState psi = haar_sample(d, rng);
        double s = 0;
        for (const auto &e : op.elements()) {
            s += std::norm(expectation(e.a, psi.amplitudes()));
        }
        return s;
    });
    return {est.mean, Method::MonteCarlo, est.std_error};
}

MeasureValue estimation_fidelity(const Povm &povm) {
    double s = 0;
    for (const auto &m : povm.elements()) {
        s += estimation_fidelity_component(m);
    }
    return {s, Method::ClosedForm, 0.0};
}

MeasureValue estimation_fidelity_mc(const Povm &povm, std::uint64_t seed, std::size_t samples) {
    const std::size_t d = povm.dim();
    auto guesses = top_eigenprojectors(povm);
    auto est = monte_carlo(samples, seed, [&](Rng &rng) {
        PureState psi = haar_sample(d, rng);
        double s = 0;
        for (std::size_t r = 0; r < povm.size(); r++) {
            s += psi.expectation(povm[r]) * psi.expectation(guesses[r]);
        }
        return s;
    });
    return {est.mean, Method::MonteCarlo, est.std_error};
}

MeasureValue bures_fidelity(const KrausOperation &op) {
    double s = 0;
    for (const auto &e : op.elements()) {
        if (is_hermitian_psd(e.a)) {
            s += bures_component(mul(adjoint(e.a), e.a));
        } else if (op.dim() == 2) {
            s += bures_general_qubit_element(e.a);
        } else {
            throw Error(ErrorKind::OutOfRange,
                        "non-Hermitian elements are integrated for qubits only; use the Monte Carlo path for dim > 2");
        }
    }
    return {s, Method::Quadrature, 0.0};
}

MeasureValue bures_fidelity_mc(const KrausOperation &op, std::uint64_t seed, std::size_t samples) {
    const std::size_t d = op.dim();
    std::vector<ComplexMatrix> gram;
    for (const auto &e : op.elements()) {
        gram.push_back(mul(adjoint(e.a), e.a));
    }
    auto est = monte_carlo(samples, seed, [&](Rng &rng) {
        PureState psi = haar_sample(d, rng);
        double s = 0;
        for (std::size_t k = 0; k < gram.size(); k++) {
            s += std::sqrt(std::max(psi.expectation(gram[k]), 0.0)) *
                 std::abs(expectation(op.elements()[k].a, psi.amplitudes()));
        }
        return s;
    });
    return {est.mean, Method::MonteCarlo, est.std_error};
}

ProbeReport convexity_probe(Component component, ProbeMode mode, std::size_t dim, std::size_t trials,
                            std::uint64_t seed, double tolerance) {
    std::vector<double> margins(trials);
    parallel_for(trials, [&](std::size_t t) {
        Rng rng = make_rng(seed, t);
        if (mode == ProbeMode::Commuting) {
            auto u = random_diagonal(dim, rng);
            auto v = random_diagonal(dim, rng);
            std::vector<double> w(dim);
            for (std::size_t i = 0; i < dim; i++) {
                w[i] = u[i] + v[i];
            }
            margins[t] = margin_for(component, component_spectral(component, u), component_spectral(component, v),
                                    component_spectral(component, w));
        } else {
            ComplexMatrix m1 = random_psd(dim, rng);
            ComplexMatrix m2 = random_psd(dim, rng);
            margins[t] = margin_for(component, component_value(component, m1), component_value(component, m2),
                                    component_value(component, m1 + m2));
        }
    });
    std::string name = std::string("convexity/") + component_name(component) + "/" +
                       (mode == ProbeMode::Commuting ? "commuting" : "general") + "/d" + std::to_string(dim);
    return reduce_margins(std::move(name), margins, tolerance);
}

ProbeReport homogeneity_probe(Component component, std::size_t dim, std::size_t trials, std::uint64_t seed,
                              double tolerance) {
    std::vector<double> margins(trials);
    parallel_for(trials, [&](std::size_t t) {
        Rng rng = make_rng(seed, t);
        std::uniform_real_distribution<double> scale(0.0, 10.0);
        double c = 10.0 - scale(rng);  // (0, 10]
        ComplexMatrix m = random_psd(dim, rng);
        margins[t] = -std::abs(component_value(component, c * m) - c * component_value(component, m));
    });
    std::string name = std::string("homogeneity/") + component_name(component) + "/d" + std::to_string(dim);
    return reduce_margins(std::move(name), margins, tolerance);
}

ProbeReport unitary_invariance_probe(Component component, std::size_t dim, std::size_t trials, std::uint64_t seed,
                                     double tolerance) {
    std::vector<double> margins(trials);
    parallel_for(trials, [&](std::size_t t) {
        Rng rng = make_rng(seed, t);
        ComplexMatrix m = random_psd(dim, rng);
        ComplexMatrix u = random_unitary(dim, rng);
        ComplexMatrix rotated = mul(mul(adjoint(u), m), u);
        rotated = 0.5 * (rotated + adjoint(rotated));
        margins[t] = -std::abs(component_value(component, rotated) - component_value(component, m));
    });
    std::string name = std::string("unitary_invariance/") + component_name(component) + "/d" + std::to_string(dim);
    return reduce_margins(std::move(name), margins, tolerance);
}

}  // namespace qtradeoff
