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

#ifndef QTRADEOFF_QMAT_H
#define QTRADEOFF_QMAT_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "qtradeoff/error.h"

namespace qtradeoff {

using Complex = std::complex<double>;

/// Default tolerance shared by every Hermitian/PSD predicate and by the
/// eigenvalue clamping window of psd_sqrt.
inline constexpr double kDefaultTol = 1e-10;

/// Dense d x d complex matrix stored row-major.
///
/// Sized for the tiny dimensions of single-system quantum operations (d <= ~16).
/// Structural properties (Hermitian, PSD, unitary) are never assumed; they are
/// queried with an explicit tolerance.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix zeros(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix diagonal(std::initializer_list<double> values);
    static ComplexMatrix diagonal(std::span<const Complex> values);
    /// Projector |v><v| (v is not normalized).
    static ComplexMatrix outer(std::span<const Complex> v);

    std::size_t dim() const noexcept {
        return dim_;
    }
    Complex &operator()(std::size_t row, std::size_t col) {
        return entries_[row * dim_ + col];
    }
    const Complex &operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }
    std::span<const Complex> entries() const noexcept {
        return entries_;
    }

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex factor);

    bool operator==(const ComplexMatrix &other) const = default;

   private:
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator*(Complex factor, ComplexMatrix m);

ComplexMatrix adjoint(const ComplexMatrix &m);
ComplexMatrix mul(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix add(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix scale(const ComplexMatrix &m, Complex factor);
Complex trace(const ComplexMatrix &m);

/// Matrix-vector product m v.
std::vector<Complex> apply(const ComplexMatrix &m, std::span<const Complex> v);
/// Quadratic form <v|m|v>.
Complex expectation(const ComplexMatrix &m, std::span<const Complex> v);

double frobenius_norm(const ComplexMatrix &m);
/// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

bool is_hermitian(const ComplexMatrix &m, double tol = kDefaultTol);
bool is_psd(const ComplexMatrix &m, double tol = kDefaultTol);
bool is_unitary(const ComplexMatrix &m, double tol = kDefaultTol);

struct EigenSystem {
    /// Non-increasing; ties keep first-encountered order.
    std::vector<double> values;
    /// Column k is the eigenvector of values[k].
    ComplexMatrix vectors;
};

/// Spectral decomposition m = V diag(values) V^dagger.
///
/// d = 2 uses the closed-form quadratic solution; larger dimensions use
/// cyclic complex Jacobi rotations. Throws NotHermitian when m deviates from
/// its adjoint by more than tol (entrywise, scaled by max(1, |m|_F)).
EigenSystem eig_hermitian(const ComplexMatrix &m, double tol = kDefaultTol);

/// Hermitian PSD square root. Eigenvalues in [-tol, 0) are clamped to zero;
/// anything more negative raises NotPsd.
ComplexMatrix psd_sqrt(const ComplexMatrix &m, double tol = kDefaultTol);

/// S^{-1/2} for a positive definite S. Throws NotPsd for eigenvalues <= tol.
ComplexMatrix psd_inverse_sqrt(const ComplexMatrix &m, double tol = kDefaultTol);

/// Singular values in non-increasing order (square roots of the spectrum of m^dagger m).
std::vector<double> singular_values(const ComplexMatrix &m);

}  // namespace qtradeoff

#endif
