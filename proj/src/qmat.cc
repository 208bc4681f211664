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

#include "qtradeoff/qmat.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qtradeoff {

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotHermitian:
            return "NotHermitian";
        case ErrorKind::NotPsd:
            return "NotPsd";
        case ErrorKind::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorKind::WrongDim:
            return "WrongDim";
        case ErrorKind::OutOfRange:
            return "OutOfRange";
        case ErrorKind::CompletenessViolated:
            return "CompletenessViolated";
        case ErrorKind::InvalidState:
            return "InvalidState";
        case ErrorKind::ZeroProbabilityOutcome:
            return "ZeroProbabilityOutcome";
        case ErrorKind::NegativeInput:
            return "NegativeInput";
        case ErrorKind::NegativeRadicand:
            return "NegativeRadicand";
        case ErrorKind::OutOfImage:
            return "OutOfImage";
        case ErrorKind::DegenerateInput:
            return "DegenerateInput";
        case ErrorKind::Schema:
            return "Schema";
    }
    return "Unknown";
}

namespace {

void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "matrix dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
    }
}

ComplexMatrix hermitian_part(const ComplexMatrix &m) {
    ComplexMatrix h(m.dim());
    for (std::size_t i = 0; i < m.dim(); i++) {
        h(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < m.dim(); j++) {
            Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

EigenSystem eig_2x2(const ComplexMatrix &h) {
    double a = h(0, 0).real();
    double c = h(1, 1).real();
    Complex b = h(0, 1);
    double mean = 0.5 * (a + c);
    double diff = 0.5 * (a - c);
    double babs = std::abs(b);
    double radius = std::hypot(diff, babs);

    EigenSystem out{{mean + radius, mean - radius}, ComplexMatrix::identity(2)};
    if (radius == 0) {
        return out;
    }
    // Leading eigenvector (cos, e^{i phi} sin) of the Bloch direction of h.
    Complex phase = babs > 0 ? std::conj(b) / babs : Complex(1);
    double cs, sn;
    if (diff >= 0) {
        cs = std::sqrt((radius + diff) / (2 * radius));
        sn = babs / (2 * radius * cs);
    } else {
        sn = std::sqrt((radius - diff) / (2 * radius));
        cs = babs / (2 * radius * sn);
    }
    Complex v0 = cs;
    Complex v1 = phase * sn;
    out.vectors(0, 0) = v0;
    out.vectors(1, 0) = v1;
    out.vectors(0, 1) = -std::conj(v1);
    out.vectors(1, 1) = std::conj(v0);
    return out;
}

double off_diagonal_norm(const ComplexMatrix &a) {
    double s = 0;
    for (std::size_t i = 0; i < a.dim(); i++) {
        for (std::size_t j = 0; j < a.dim(); j++) {
            if (i != j) {
                s += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(s);
}

EigenSystem eig_jacobi(ComplexMatrix a) {
    const std::size_t n = a.dim();
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = std::max(frobenius_norm(a), 1e-300);

    double previous_off = HUGE_VAL;
    for (int sweep = 0; sweep < 64; sweep++) {
        double off = off_diagonal_norm(a);
        // Stop at machine precision or once rounding keeps the residual from shrinking.
        if (off <= 1e-17 * scale || off >= previous_off) {
            break;
        }
        previous_off = off;
        for (std::size_t p = 0; p + 1 < n; p++) {
            for (std::size_t q = p + 1; q < n; q++) {
                Complex apq = a(p, q);
                double mag = std::abs(apq);
                if (mag <= 1e-300) {
                    continue;
                }
                Complex e = apq / mag;
                double app = a(p, p).real();
                double aqq = a(q, q).real();
                double theta = (aqq - app) / (2 * mag);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1);
                double s = t * c;
                // J acts on (p, q): [[c, s e], [-s conj(e), c]].
                Complex jpq = s * e;
                Complex jqp = -s * std::conj(e);
                for (std::size_t k = 0; k < n; k++) {
                    Complex akp = a(k, p);
                    Complex akq = a(k, q);
                    a(k, p) = akp * c + akq * jqp;
                    a(k, q) = akp * jpq + akq * c;
                }
                for (std::size_t k = 0; k < n; k++) {
                    Complex apk = a(p, k);
                    Complex aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + c * aqk;
                }
                a(p, q) = 0;
                a(q, p) = 0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; k++) {
                    Complex vkp = v(k, p);
                    Complex vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * c;
                }
            }
        }
    }

    EigenSystem out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; i++) {
        out.values[i] = a(i, i).real();
    }
    out.vectors = std::move(v);
    return out;
}

void sort_descending(EigenSystem &sys) {
    const std::size_t n = sys.values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return sys.values[i] > sys.values[j]; });
    EigenSystem sorted{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; k++) {
        sorted.values[k] = sys.values[order[k]];
        for (std::size_t row = 0; row < n; row++) {
            sorted.vectors(row, k) = sys.vectors(row, order[k]);
        }
    }
    sys = std::move(sorted);
}

ComplexMatrix spectral_function(const EigenSystem &sys, const std::vector<double> &mapped) {
    const std::size_t n = sys.values.size();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = 0; j < n; j++) {
            Complex s = 0;
            for (std::size_t k = 0; k < n; k++) {
                s += sys.vectors(i, k) * mapped[k] * std::conj(sys.vectors(j, k));
            }
            out(i, j) = s;
        }
    }
    return out;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != dim_ * dim_) {
        throw Error(ErrorKind::DimensionMismatch,
                    "expected " + std::to_string(dim_ * dim_) + " entries, got " + std::to_string(entries_.size()));
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; i++) {
        m(i, i) = 1;
    }
    return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t dim) {
    return ComplexMatrix(dim);
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); i++) {
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); i++) {
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
    ComplexMatrix m(v.size());
    for (std::size_t i = 0; i < v.size(); i++) {
        for (std::size_t j = 0; j < v.size(); j++) {
            m(i, j) = v[i] * std::conj(v[j]);
        }
    }
    return m;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_dim(*this, other);
    for (std::size_t k = 0; k < entries_.size(); k++) {
        entries_[k] += other.entries_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_dim(*this, other);
    for (std::size_t k = 0; k < entries_.size(); k++) {
        entries_[k] -= other.entries_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex factor) {
    for (auto &e : entries_) {
        e *= factor;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    return mul(a, b);
}

ComplexMatrix operator*(Complex factor, ComplexMatrix m) {
    m *= factor;
    return m;
}

ComplexMatrix adjoint(const ComplexMatrix &m) {
    ComplexMatrix out(m.dim());
    for (std::size_t i = 0; i < m.dim(); i++) {
        for (std::size_t j = 0; j < m.dim(); j++) {
            out(j, i) = std::conj(m(i, j));
        }
    }
    return out;
}

ComplexMatrix mul(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b);
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t k = 0; k < n; k++) {
            Complex aik = a(i, k);
            for (std::size_t j = 0; j < n; j++) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

ComplexMatrix add(const ComplexMatrix &a, const ComplexMatrix &b) {
    return a + b;
}

ComplexMatrix scale(const ComplexMatrix &m, Complex factor) {
    return factor * m;
}

Complex trace(const ComplexMatrix &m) {
    Complex s = 0;
    for (std::size_t i = 0; i < m.dim(); i++) {
        s += m(i, i);
    }
    return s;
}

std::vector<Complex> apply(const ComplexMatrix &m, std::span<const Complex> v) {
    if (v.size() != m.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "vector length does not match matrix dimension");
    }
    std::vector<Complex> out(m.dim());
    for (std::size_t i = 0; i < m.dim(); i++) {
        Complex s = 0;
        for (std::size_t j = 0; j < m.dim(); j++) {
            s += m(i, j) * v[j];
        }
        out[i] = s;
    }
    return out;
}

Complex expectation(const ComplexMatrix &m, std::span<const Complex> v) {
    auto mv = apply(m, v);
    Complex s = 0;
    for (std::size_t i = 0; i < v.size(); i++) {
        s += std::conj(v[i]) * mv[i];
    }
    return s;
}

double frobenius_norm(const ComplexMatrix &m) {
    double s = 0;
    for (const auto &e : m.entries()) {
        s += std::norm(e);
    }
    return std::sqrt(s);
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b);
    double worst = 0;
    for (std::size_t k = 0; k < a.entries().size(); k++) {
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return worst;
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    const double bound = tol * std::max(1.0, frobenius_norm(m));
    for (std::size_t i = 0; i < m.dim(); i++) {
        for (std::size_t j = i; j < m.dim(); j++) {
            if (std::abs(m(i, j) - std::conj(m(j, i))) > bound) {
                return false;
            }
        }
    }
    return true;
}

bool is_psd(const ComplexMatrix &m, double tol) {
    if (!is_hermitian(m, tol)) {
        return false;
    }
    auto sys = eig_hermitian(m, tol);
    return sys.values.empty() || sys.values.back() >= -tol;
}

bool is_unitary(const ComplexMatrix &m, double tol) {
    return max_abs_diff(mul(adjoint(m), m), ComplexMatrix::identity(m.dim())) <= tol;
}

EigenSystem eig_hermitian(const ComplexMatrix &m, double tol) {
    if (!is_hermitian(m, tol)) {
        throw Error(ErrorKind::NotHermitian, "matrix deviates from its adjoint beyond tolerance");
    }
    ComplexMatrix h = hermitian_part(m);
    EigenSystem sys;
    if (h.dim() == 1) {
        sys = EigenSystem{{h(0, 0).real()}, ComplexMatrix::identity(1)};
    } else if (h.dim() == 2) {
        sys = eig_2x2(h);
    } else {
        sys = eig_jacobi(std::move(h));
    }
    sort_descending(sys);
    return sys;
}

ComplexMatrix psd_sqrt(const ComplexMatrix &m, double tol) {
    auto sys = eig_hermitian(m, tol);
    std::vector<double> roots(sys.values.size());
    for (std::size_t k = 0; k < roots.size(); k++) {
        double v = sys.values[k];
        if (v < -tol) {
            throw Error(ErrorKind::NotPsd, "eigenvalue " + std::to_string(v) + " below -tol");
        }
        roots[k] = std::sqrt(std::max(v, 0.0));
    }
    return spectral_function(sys, roots);
}

ComplexMatrix psd_inverse_sqrt(const ComplexMatrix &m, double tol) {
    auto sys = eig_hermitian(m, tol);
    std::vector<double> roots(sys.values.size());
    for (std::size_t k = 0; k < roots.size(); k++) {
        if (sys.values[k] <= tol) {
            throw Error(ErrorKind::NotPsd, "matrix is not positive definite");
        }
        roots[k] = 1 / std::sqrt(sys.values[k]);
    }
    return spectral_function(sys, roots);
}

std::vector<double> singular_values(const ComplexMatrix &m) {
    auto sys = eig_hermitian(mul(adjoint(m), m), kDefaultTol);
    std::vector<double> out(sys.values.size());
    for (std::size_t k = 0; k < out.size(); k++) {
        out[k] = std::sqrt(std::max(sys.values[k], 0.0));
    }
    return out;
}

}  // namespace qtradeoff
