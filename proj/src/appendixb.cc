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

#include "qtradeoff/appendixb.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qtradeoff/parallel.h"

namespace qtradeoff {

namespace {

constexpr double kRadicandSlack = 1e-12;
constexpr std::size_t kBetaIntegralNodes = 128;

double checked_sqrt(double radicand) {
    if (radicand < -kRadicandSlack) {
        throw Error(ErrorKind::NegativeRadicand, "integrand radicand is " + std::to_string(radicand));
    }
    return std::sqrt(std::max(radicand, 0.0));
}

double dot3(const Vec3 &a, const Vec3 &b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double sqrt_one_minus_sq(double x) {
    return std::sqrt((1 - x) * (1 + x));
}

const GaussLegendre &beta_rule() {
    static const GaussLegendre rule = gauss_legendre(kBetaIntegralNodes);
    return rule;
}

}  // namespace

Mat3 rotation_z(double angle) {
    double c = std::cos(angle);
    double s = std::sin(angle);
    return {{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}};
}

Mat3 rotation_x(double angle) {
    double c = std::cos(angle);
    double s = std::sin(angle);
    return {{{1, 0, 0}, {0, c, -s}, {0, s, c}}};
}

Mat3 mat3_mul(const Mat3 &a, const Mat3 &b) {
    Mat3 out{};
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
            for (int k = 0; k < 3; k++) {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return out;
}

Vec3 mat3_apply(const Mat3 &m, const Vec3 &v) {
    return {dot3(m[0], v), dot3(m[1], v), dot3(m[2], v)};
}

double mat3_trace(const Mat3 &m) {
    return m[0][0] + m[1][1] + m[2][2];
}

BlochChannelParams make_bloch_params(double x, double alpha, double beta) {
    if (!(x >= 0 && x <= 1)) {
        throw Error(ErrorKind::OutOfRange, "x must lie in [0, 1]");
    }
    if (!std::isfinite(alpha) || !std::isfinite(beta)) {
        throw Error(ErrorKind::OutOfRange, "rotation angles must be finite");
    }
    return {x, alpha, beta};
}

Mat3 bloch_matrix(const BlochChannelParams &p) {
    double s = sqrt_one_minus_sq(p.x);
    return {{{s, 0, 0}, {0, s, 0}, {0, 0, 1}}};
}

Vec3 bloch_offset(const BlochChannelParams &p) {
    return {0, 0, p.x};
}

Mat3 bloch_rotation(const BlochChannelParams &p) {
    return mat3_mul(rotation_z(p.alpha), rotation_x(p.beta));
}

ComplexMatrix element_operator(const BlochChannelParams &p) {
    return ComplexMatrix::diagonal({std::sqrt(1 + p.x), std::sqrt(1 - p.x)});
}

ComplexMatrix rotation_unitary(const BlochChannelParams &p) {
    const Complex i(0, 1);
    double ca = std::cos(p.alpha / 2);
    double sa = std::sin(p.alpha / 2);
    double cb = std::cos(p.beta / 2);
    double sb = std::sin(p.beta / 2);
    ComplexMatrix rz = ComplexMatrix::diagonal(std::vector<Complex>{ca - i * sa, ca + i * sa});
    ComplexMatrix rx(2, {cb, -i * sb, -i * sb, cb});
    return mul(rz, rx);
}

KrausOperation rotated_saturating_operation(const BlochChannelParams &p) {
    ComplexMatrix u = rotation_unitary(p);
    double up = std::sqrt((1 + p.x) / 2);
    double down = std::sqrt((1 - p.x) / 2);
    return KrausOperation({
        {0, 0, mul(u, ComplexMatrix::diagonal({up, down}))},
        {1, 0, mul(u, ComplexMatrix::diagonal({down, up}))},
    });
}

double bu_integrand(const BlochChannelParams &p, const Vec3 &r, const Mat3 &rotation) {
    Vec3 a = bloch_offset(p);
    Vec3 ar = mat3_apply(bloch_matrix(p), r);
    for (int k = 0; k < 3; k++) {
        ar[k] += a[k];
    }
    double w = 1 + dot3(a, r);
    double radicand = w * w + w * dot3(r, mat3_apply(rotation, ar));
    return checked_sqrt(radicand) / std::numbers::sqrt2;
}

double bu_integrand(const BlochChannelParams &p, const Vec3 &r) {
    return bu_integrand(p, r, bloch_rotation(p));
}

double bu_integrand_hilbert(const BlochChannelParams &p, const PureState &psi) {
    ComplexMatrix a = element_operator(p);
    ComplexMatrix ua = mul(rotation_unitary(p), a);
    double norm_sq = psi.expectation(mul(adjoint(a), a));
    return checked_sqrt(norm_sq) * std::abs(expectation(ua, psi.amplitudes()));
}

Mat3 v_matrix_closed(double x, double theta) {
    double s2 = std::sin(theta) * std::sin(theta);
    double c = std::cos(theta);
    return {{{s2 / 2, 0, 0}, {0, s2 / 2, 0}, {0, 0, x * c + c * c}}};
}

Mat3 v_matrix_average(double x, double theta, std::size_t n_phi) {
    Mat3 v{};
    double st = std::sin(theta);
    double ct = std::cos(theta);
    for (std::size_t k = 0; k < n_phi; k++) {
        double phi = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_phi);
        Vec3 r{st * std::cos(phi), st * std::sin(phi), ct};
        Vec3 shifted{r[0], r[1], r[2] + x};
        for (int i = 0; i < 3; i++) {
            for (int j = 0; j < 3; j++) {
                v[i][j] += shifted[i] * r[j] / static_cast<double>(n_phi);
            }
        }
    }
    return v;
}

double trace_term(const BlochChannelParams &p, double theta) {
    double s2 = std::sin(theta) * std::sin(theta);
    double c = std::cos(theta);
    double cb = std::cos(p.beta);
    return 0.5 * sqrt_one_minus_sq(p.x) * s2 * std::cos(p.alpha) * (1 + cb) + (c * c + p.x * c) * cb;
}

double trace_term_matrix(const BlochChannelParams &p, double theta) {
    Mat3 product = mat3_mul(mat3_mul(bloch_rotation(p), bloch_matrix(p)), v_matrix_closed(p.x, theta));
    return mat3_trace(product);
}

double azimuthal_average(const BlochChannelParams &p, double theta, std::size_t n_phi) {
    Mat3 o = bloch_rotation(p);
    double st = std::sin(theta);
    double ct = std::cos(theta);
    double s = 0;
    for (std::size_t k = 0; k < n_phi; k++) {
        double phi = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_phi);
        s += bu_integrand(p, {st * std::cos(phi), st * std::sin(phi), ct}, o);
    }
    return s / static_cast<double>(n_phi);
}

double azimuthal_bound(const BlochChannelParams &p, double theta) {
    double w = 1 + p.x * std::cos(theta);
    return checked_sqrt(w * w + w * trace_term(p, theta)) / std::numbers::sqrt2;
}

double bures_beta_integral(double x, double beta) {
    if (!(x >= 0 && x <= 1)) {
        throw Error(ErrorKind::OutOfRange, "x must lie in [0, 1]");
    }
    const GaussLegendre &rule = beta_rule();
    double s = sqrt_one_minus_sq(x);
    double cb = std::cos(beta);
    double total = 0;
    // t = -cos(u): the radicand can vanish like 1 - t^2 at the ends, which
    // the substitution turns into a smooth sin(u) factor.
    const double half = std::numbers::pi / 2;
    for (std::size_t k = 0; k < rule.nodes.size(); k++) {
        double u = half * (1 + rule.nodes[k]);
        double t = -std::cos(u);
        double w = 1 + x * t;
        double radicand = 2 * w * w + w * (s * (1 - t * t) * (1 + cb) + 2 * (t * t + x * t) * cb);
        total += half * rule.weights[k] * std::sin(u) * checked_sqrt(radicand);
    }
    return total / 4;
}

std::vector<double> default_beta_grid(std::size_t n) {
    if (n < 2) {
        throw Error(ErrorKind::OutOfRange, "beta grid needs at least two points");
    }
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; i++) {
        grid[i] = i + 1 == n ? std::numbers::pi : std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return grid;
}

std::vector<double> default_x_grid(std::size_t n) {
    if (n < 2) {
        throw Error(ErrorKind::OutOfRange, "x grid needs at least two points");
    }
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; i++) {
        grid[i] = i + 1 == n ? 1.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return grid;
}

BetaScanReport verify_beta_maximum(const std::vector<double> &x_grid, const std::vector<double> &beta_grid,
                                   double tolerance) {
    if (x_grid.empty() || beta_grid.size() < 2 || beta_grid.front() != 0.0 ||
        !std::is_sorted(beta_grid.begin(), beta_grid.end())) {
        throw Error(ErrorKind::OutOfRange, "beta scan needs a non-empty x grid and an ascending beta grid from 0");
    }
    BetaScanReport report;
    report.tolerance = tolerance;
    report.points.resize(x_grid.size());
    parallel_for(x_grid.size(), [&](std::size_t i) {
        double x = x_grid[i];
        std::size_t best = 0;
        double best_value = bures_beta_integral(x, beta_grid[0]);
        for (std::size_t k = 1; k < beta_grid.size(); k++) {
            double v = bures_beta_integral(x, beta_grid[k]);
            if (v > best_value) {
                best_value = v;
                best = k;
            }
        }
        double lo = beta_grid[best == 0 ? 0 : best - 1];
        double hi = beta_grid[std::min(best + 1, beta_grid.size() - 1)];
        const double inv_phi = (std::sqrt(5.0) - 1) / 2;
        double c = hi - inv_phi * (hi - lo);
        double d = lo + inv_phi * (hi - lo);
        double fc = bures_beta_integral(x, c);
        double fd = bures_beta_integral(x, d);
        for (int it = 0; it < 80 && hi - lo > 1e-12; it++) {
            if (fc >= fd) {
                hi = d;
                d = c;
                fd = fc;
                c = hi - inv_phi * (hi - lo);
                fc = bures_beta_integral(x, c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + inv_phi * (hi - lo);
                fd = bures_beta_integral(x, d);
            }
        }
        double refined_beta = fc >= fd ? c : d;
        double refined = std::max(fc, fd);
        BetaScanPoint point;
        point.x = x;
        point.value_at_zero = bures_beta_integral(x, 0.0);
        point.argmax_beta = beta_grid[best];
        point.refined_max = best_value;
        if (refined > best_value) {
            point.refined_max = refined;
            point.argmax_beta = refined_beta;
        }
        point.margin = point.value_at_zero - point.refined_max;
        report.points[i] = point;
    });
    report.worst_margin = 0;
    for (const auto &p : report.points) {
        report.worst_margin = std::min(report.worst_margin, p.margin);
    }
    report.pass = report.worst_margin >= -tolerance;
    return report;
}

}  // namespace qtradeoff
