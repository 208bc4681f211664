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

#include "qtradeoff/channels.h"

#include <algorithm>
#include <cmath>

#include "qtradeoff/states.h"

namespace qtradeoff {

namespace {

constexpr double kZeroProbability = 1e-14;

ComplexMatrix symmetrized(const ComplexMatrix &m) {
    return 0.5 * (m + adjoint(m));
}

void require_density_matrix(const ComplexMatrix &rho) {
    if (!is_psd(rho, kDefaultTol) || std::abs(trace(rho) - 1.0) > kDefaultTol) {
        throw Error(ErrorKind::InvalidState, "rho is not a unit-trace PSD matrix");
    }
}

void require_unit_interval(double v, const char *name) {
    if (!(v >= 0 && v <= 1)) {
        throw Error(ErrorKind::OutOfRange, std::string(name) + " must lie in [0, 1]");
    }
}

std::vector<double> dirichlet_weights(std::size_t k, Rng &rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> q(k);
    double total = 0;
    for (auto &v : q) {
        v = expo(rng);
        total += v;
    }
    for (auto &v : q) {
        v /= total;
    }
    return q;
}

ComplexMatrix diag_roots(double a, double b) {
    return ComplexMatrix::diagonal({std::sqrt(a), std::sqrt(b)});
}

}  // namespace

double completeness_residual(const std::vector<ComplexMatrix> &sum_terms) {
    if (sum_terms.empty()) {
        return HUGE_VAL;
    }
    ComplexMatrix total(sum_terms.front().dim());
    for (const auto &m : sum_terms) {
        total += m;
    }
    return max_abs_diff(total, ComplexMatrix::identity(total.dim()));
}

double completeness_residual(const std::vector<KrausElement> &elements) {
    std::vector<ComplexMatrix> terms;
    terms.reserve(elements.size());
    for (const auto &e : elements) {
        terms.push_back(mul(adjoint(e.a), e.a));
    }
    return completeness_residual(terms);
}

Povm::Povm(std::vector<ComplexMatrix> elements, double tol) : elements_(std::move(elements)) {
    if (elements_.empty()) {
        throw Error(ErrorKind::CompletenessViolated, "a POVM needs at least one element");
    }
    dim_ = elements_.front().dim();
    for (const auto &m : elements_) {
        if (m.dim() != dim_) {
            throw Error(ErrorKind::DimensionMismatch, "POVM elements differ in dimension");
        }
        if (!is_psd(m, tol)) {
            throw Error(ErrorKind::NotPsd, "POVM element is not positive semidefinite");
        }
    }
    double residual = completeness_residual(elements_);
    if (residual > tol) {
        throw Error(ErrorKind::CompletenessViolated, "sum of POVM elements deviates from identity by " +
                                                         std::to_string(residual));
    }
}

KrausOperation::KrausOperation(std::vector<KrausElement> elements, double tol) : elements_(std::move(elements)) {
    if (elements_.empty()) {
        throw Error(ErrorKind::CompletenessViolated, "an operation needs at least one element");
    }
    dim_ = elements_.front().a.dim();
    for (const auto &e : elements_) {
        if (e.a.dim() != dim_) {
            throw Error(ErrorKind::DimensionMismatch, "Kraus elements differ in dimension");
        }
        outcomes_ = std::max(outcomes_, e.r + 1);
    }
    double residual = completeness_residual(elements_);
    if (residual > tol) {
        throw Error(ErrorKind::CompletenessViolated, "sum of A^dagger A deviates from identity by " +
                                                         std::to_string(residual));
    }
}

Povm induced_povm(const KrausOperation &op) {
    std::vector<ComplexMatrix> m(op.outcome_count(), ComplexMatrix::zeros(op.dim()));
    for (const auto &e : op.elements()) {
        m[e.r] += mul(adjoint(e.a), e.a);
    }
    for (auto &x : m) {
        x = symmetrized(x);
    }
    return Povm(std::move(m));
}

Povm refined_povm(const KrausOperation &op) {
    std::vector<ComplexMatrix> m;
    m.reserve(op.elements().size());
    for (const auto &e : op.elements()) {
        m.push_back(symmetrized(mul(adjoint(e.a), e.a)));
    }
    return Povm(std::move(m));
}

double outcome_probability(const Povm &povm, std::size_t r, const ComplexMatrix &rho) {
    require_density_matrix(rho);
    if (r >= povm.size()) {
        throw Error(ErrorKind::OutOfRange, "outcome index out of range");
    }
    return std::clamp(trace(mul(povm[r], rho)).real(), 0.0, 1.0);
}

ComplexMatrix conditional_state(const KrausOperation &op, std::size_t r, const ComplexMatrix &rho) {
    require_density_matrix(rho);
    ComplexMatrix out(op.dim());
    for (const auto &e : op.elements()) {
        if (e.r == r) {
            out += mul(mul(e.a, rho), adjoint(e.a));
        }
    }
    double p = trace(out).real();
    if (!(p > kZeroProbability)) {
        throw Error(ErrorKind::ZeroProbabilityOutcome, "outcome " + std::to_string(r) + " has probability " +
                                                           std::to_string(p));
    }
    out *= 1 / p;
    return symmetrized(out);
}

KrausOperation efficient_from_povm(const Povm &povm) {
    std::vector<KrausElement> elements;
    for (std::size_t r = 0; r < povm.size(); r++) {
        elements.push_back({r, 0, psd_sqrt(povm[r])});
    }
    return KrausOperation(std::move(elements));
}

KrausOperation hermitianize(const KrausOperation &op) {
    std::vector<KrausElement> elements;
    for (const auto &e : op.elements()) {
        elements.push_back({e.r, e.mu, psd_sqrt(symmetrized(mul(adjoint(e.a), e.a)))});
    }
    return KrausOperation(std::move(elements));
}

ComplexMatrix random_psd(std::size_t dim, Rng &rng) {
    std::normal_distribution<double> gauss;
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; i++) {
        for (std::size_t j = 0; j < dim; j++) {
            double re = gauss(rng);
            double im = gauss(rng);
            g(i, j) = Complex(re, im);
        }
    }
    ComplexMatrix m = mul(g, adjoint(g));
    m *= 1.0 / static_cast<double>(dim);
    return symmetrized(m);
}

Povm random_povm(std::size_t dim, std::size_t outcomes, Rng &rng) {
    std::vector<ComplexMatrix> g;
    ComplexMatrix total(dim);
    for (std::size_t r = 0; r < outcomes; r++) {
        g.push_back(random_psd(dim, rng));
        total += g.back();
    }
    ComplexMatrix s = psd_inverse_sqrt(total);
    for (auto &m : g) {
        m = symmetrized(mul(mul(s, m), s));
    }
    return Povm(std::move(g));
}

KrausOperation random_operation(const Povm &povm, std::size_t refinements_per_outcome, Rng &rng,
                                bool randomize_unitaries) {
    if (refinements_per_outcome == 0) {
        throw Error(ErrorKind::OutOfRange, "refinements_per_outcome must be positive");
    }
    std::vector<KrausElement> elements;
    for (std::size_t r = 0; r < povm.size(); r++) {
        ComplexMatrix root = psd_sqrt(povm[r]);
        auto q = dirichlet_weights(refinements_per_outcome, rng);
        for (std::size_t mu = 0; mu < refinements_per_outcome; mu++) {
            ComplexMatrix a = std::sqrt(q[mu]) * root;
            if (randomize_unitaries) {
                a = mul(random_unitary(povm.dim(), rng), a);
            }
            elements.push_back({r, mu, std::move(a)});
        }
    }
    return KrausOperation(std::move(elements), 1e-9);
}

KrausOperation random_general_operation(const Povm &povm, std::size_t refinements_per_outcome, Rng &rng) {
    if (refinements_per_outcome == 0) {
        throw Error(ErrorKind::OutOfRange, "refinements_per_outcome must be positive");
    }
    std::vector<KrausElement> elements;
    for (std::size_t r = 0; r < povm.size(); r++) {
        ComplexMatrix root = psd_sqrt(povm[r]);
        Povm split = random_povm(povm.dim(), refinements_per_outcome, rng);
        for (std::size_t mu = 0; mu < refinements_per_outcome; mu++) {
            ComplexMatrix part = symmetrized(mul(mul(root, split[mu]), root));
            ComplexMatrix a = mul(random_unitary(povm.dim(), rng), psd_sqrt(part));
            elements.push_back({r, mu, std::move(a)});
        }
    }
    return KrausOperation(std::move(elements), 1e-9);
}

KrausOperation saturating_operation(double x) {
    require_unit_interval(x, "x");
    return KrausOperation({
        {0, 0, diag_roots((1 + x) / 2, (1 - x) / 2)},
        {1, 0, diag_roots((1 - x) / 2, (1 + x) / 2)},
    });
}

KrausOperation mixed_saturating_operation(double t, double x1, double x2) {
    require_unit_interval(t, "t");
    require_unit_interval(x1, "x1");
    require_unit_interval(x2, "x2");
    double s = std::sqrt(t);
    double c = std::sqrt(1 - t);
    return KrausOperation({
        {0, 0, s * diag_roots((1 + x1) / 2, (1 - x1) / 2)},
        {1, 0, s * diag_roots((1 - x1) / 2, (1 + x1) / 2)},
        {2, 0, c * diag_roots((1 + x2) / 2, (1 - x2) / 2)},
        {3, 0, c * diag_roots((1 - x2) / 2, (1 + x2) / 2)},
    });
}

}  // namespace qtradeoff
