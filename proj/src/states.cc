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

#include "qtradeoff/states.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace qtradeoff {

namespace {

double squared_norm(std::span<const Complex> v) {
    double s = 0;
    for (const auto &a : v) {
        s += std::norm(a);
    }
    return s;
}

}  // namespace

PureState::PureState(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty() || std::abs(squared_norm(amplitudes_) - 1) > 1e-12) {
        throw Error(ErrorKind::InvalidState, "state vector is not normalized");
    }
}

PureState PureState::normalized(std::vector<Complex> amplitudes) {
    double n = std::sqrt(squared_norm(amplitudes));
    if (!(n > 0)) {
        throw Error(ErrorKind::InvalidState, "cannot normalize a zero vector");
    }
    for (auto &a : amplitudes) {
        a /= n;
    }
    return PureState(std::move(amplitudes));
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
    std::vector<Complex> v(dim);
    v.at(index) = 1;
    return PureState(std::move(v));
}

double PureState::expectation(const ComplexMatrix &m) const {
    return qtradeoff::expectation(m, amplitudes_).real();
}

ComplexMatrix PureState::density() const {
    return ComplexMatrix::outer(amplitudes_);
}

double BlochVector::norm() const {
    return std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
}

PureState haar_sample(std::size_t dim, Rng &rng) {
    if (dim < 2) {
        throw Error(ErrorKind::OutOfRange, "Haar sampling needs dim >= 2");
    }
    std::normal_distribution<double> gauss;
    std::vector<Complex> v(dim);
    for (auto &a : v) {
        double re = gauss(rng);
        double im = gauss(rng);
        a = Complex(re, im);
    }
    return PureState::normalized(std::move(v));
}

ComplexMatrix random_unitary(std::size_t dim, Rng &rng) {
    std::normal_distribution<double> gauss;
    ComplexMatrix u(dim);
    for (std::size_t i = 0; i < dim; i++) {
        for (std::size_t j = 0; j < dim; j++) {
            double re = gauss(rng);
            double im = gauss(rng);
            u(i, j) = Complex(re, im);
        }
    }
    // Modified Gram-Schmidt over columns; R ends up with a positive diagonal.
    for (std::size_t j = 0; j < dim; j++) {
        for (std::size_t k = 0; k < j; k++) {
            Complex overlap = 0;
            for (std::size_t i = 0; i < dim; i++) {
                overlap += std::conj(u(i, k)) * u(i, j);
            }
            for (std::size_t i = 0; i < dim; i++) {
                u(i, j) -= overlap * u(i, k);
            }
        }
        double n = 0;
        for (std::size_t i = 0; i < dim; i++) {
            n += std::norm(u(i, j));
        }
        n = std::sqrt(n);
        for (std::size_t i = 0; i < dim; i++) {
            u(i, j) /= n;
        }
    }
    return u;
}

PureState from_bloch_angles(double theta, double phi) {
    if (!(theta >= 0 && theta <= std::numbers::pi) || !(phi >= 0 && phi < 2 * std::numbers::pi)) {
        throw Error(ErrorKind::OutOfRange, "Bloch angles outside [0, pi] x [0, 2 pi)");
    }
    return PureState({Complex(std::cos(theta / 2)), std::polar(std::sin(theta / 2), phi)});
}

BlochVector to_bloch(const PureState &state) {
    if (state.dim() != 2) {
        throw Error(ErrorKind::WrongDim, "Bloch vectors exist only for qubits");
    }
    Complex a = state[0];
    Complex b = state[1];
    Complex coherence = std::conj(a) * b;
    return BlochVector{{2 * coherence.real(), 2 * coherence.imag(), std::norm(a) - std::norm(b)}};
}

std::array<double, 2> bloch_angles(const PureState &state) {
    auto r = to_bloch(state).r;
    double theta = std::acos(std::clamp(r[2], -1.0, 1.0));
    double phi = std::atan2(r[1], r[0]);
    if (phi < 0) {
        phi += 2 * std::numbers::pi;
    }
    if (phi >= 2 * std::numbers::pi) {
        phi = 0;
    }
    return {theta, phi};
}

GaussLegendre gauss_legendre(std::size_t n) {
    if (n == 0) {
        throw Error(ErrorKind::OutOfRange, "Gauss-Legendre rule needs at least one node");
    }
    GaussLegendre rule{std::vector<double>(n), std::vector<double>(n)};
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; i++) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 1;
        for (int iter = 0; iter < 100; iter++) {
            double p0 = 1;
            double p1 = z;
            for (std::size_t k = 2; k <= n; k++) {
                double p2 = ((2.0 * k - 1) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1);
            double step = p1 / dp;
            z -= step;
            if (std::abs(step) < 1e-16) {
                break;
            }
        }
        // Recompute the derivative at the converged node.
        double p0 = 1;
        double p1 = z;
        for (std::size_t k = 2; k <= n; k++) {
            double p2 = ((2.0 * k - 1) * z * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n == 1 ? 1.0 : n * (z * p1 - p0) / (z * z - 1);
        double w = 2 / ((1 - z * z) * dp * dp);
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[n / 2] = 0;
    }
    return rule;
}

QubitGrid qubit_quadrature_grid(std::size_t n_theta, std::size_t n_phi) {
    if (n_theta == 0 || n_phi == 0) {
        throw Error(ErrorKind::OutOfRange, "grid sizes must be positive");
    }
    auto gl = gauss_legendre(n_theta);
    double total = std::accumulate(gl.weights.begin(), gl.weights.end(), 0.0);
    QubitGrid grid;
    grid.reserve(n_theta * n_phi);
    for (std::size_t i = 0; i < n_theta; i++) {
        double t = gl.nodes[i];
        double theta = std::acos(t);
        double w = gl.weights[i] / total / static_cast<double>(n_phi);
        for (std::size_t j = 0; j < n_phi; j++) {
            double phi = 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_phi);
            grid.push_back(GridPoint{from_bloch_angles(theta, phi), w, t, phi});
        }
    }
    return grid;
}

const QubitGrid &default_qubit_grid() {
    static const QubitGrid grid = qubit_quadrature_grid();
    return grid;
}

SimplexRule simplex_rule(std::size_t dim, std::size_t n) {
    // Each coordinate is (1 - cos a) / 2 with a Gauss-Legendre in a. Nodes
    // crowd the faces, where integrands of rank-deficient operators behave
    // like w log w or sqrt(w).
    auto gl = gauss_legendre(n);
    std::vector<double> coord(n);
    std::vector<double> weight(n);
    const double half_pi = std::numbers::pi / 2;
    for (std::size_t i = 0; i < n; i++) {
        double a = half_pi * (1 + gl.nodes[i]);
        coord[i] = 0.5 * (1 - std::cos(a));
        weight[i] = half_pi * gl.weights[i] * 0.5 * std::sin(a);
    }
    SimplexRule rule;
    rule.dim = dim;
    if (dim == 2) {
        for (std::size_t i = 0; i < n; i++) {
            rule.weights.push_back(weight[i]);
            rule.points.push_back(coord[i]);
            rule.points.push_back(1 - coord[i]);
        }
    } else if (dim == 3) {
        // p = (u, (1-u) v, (1-u)(1-v)); uniform density 2 on the triangle has Jacobian 2 (1-u).
        for (std::size_t i = 0; i < n; i++) {
            double u = coord[i];
            for (std::size_t j = 0; j < n; j++) {
                double v = coord[j];
                rule.weights.push_back(2 * (1 - u) * weight[i] * weight[j]);
                rule.points.push_back(u);
                rule.points.push_back((1 - u) * v);
                rule.points.push_back((1 - u) * (1 - v));
            }
        }
    } else {
        throw Error(ErrorKind::OutOfRange, "simplex quadrature is available for dim 2 and 3 only");
    }
    double total = std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);
    for (auto &w : rule.weights) {
        w /= total;
    }
    return rule;
}

const SimplexRule &default_simplex_rule(std::size_t dim) {
    static const SimplexRule two = simplex_rule(2);
    static const SimplexRule three = simplex_rule(3);
    if (dim == 2) {
        return two;
    }
    if (dim == 3) {
        return three;
    }
    throw Error(ErrorKind::OutOfRange, "simplex quadrature is available for dim 2 and 3 only");
}

}  // namespace qtradeoff
