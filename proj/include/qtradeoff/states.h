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

#ifndef QTRADEOFF_STATES_H
#define QTRADEOFF_STATES_H

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "qtradeoff/parallel.h"
#include "qtradeoff/qmat.h"

namespace qtradeoff {

/// Unit-norm state vector.
class PureState {
   public:
    /// Throws InvalidState unless the squared norm is 1 within 1e-12.
    explicit PureState(std::vector<Complex> amplitudes);
    /// Rescales any non-zero vector to unit norm.
    static PureState normalized(std::vector<Complex> amplitudes);
    static PureState basis(std::size_t dim, std::size_t index);

    std::size_t dim() const noexcept {
        return amplitudes_.size();
    }
    std::span<const Complex> amplitudes() const noexcept {
        return amplitudes_;
    }
    const Complex &operator[](std::size_t i) const {
        return amplitudes_[i];
    }

    /// <psi|m|psi>, real part (m is expected Hermitian).
    double expectation(const ComplexMatrix &m) const;
    ComplexMatrix density() const;

   private:
    std::vector<Complex> amplitudes_;
};

/// Bloch vector of a qubit state: rho = (1 + r . sigma) / 2.
struct BlochVector {
    std::array<double, 3> r{};

    double norm() const;
};

/// Haar-uniform pure state: d independent standard complex Gaussians, normalized.
PureState haar_sample(std::size_t dim, Rng &rng);

/// Haar-random unitary (Gram-Schmidt of a complex Gaussian matrix, which fixes
/// the phases of the triangular factor).
ComplexMatrix random_unitary(std::size_t dim, Rng &rng);

/// (cos(theta/2), e^{i phi} sin(theta/2)). theta in [0, pi], phi in [0, 2 pi).
PureState from_bloch_angles(double theta, double phi);

/// Throws WrongDim unless state.dim() == 2.
BlochVector to_bloch(const PureState &state);

/// Polar and azimuthal angles of a qubit state (phi in [0, 2 pi)).
std::array<double, 2> bloch_angles(const PureState &state);

/// Gauss-Legendre nodes (ascending) and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLegendre gauss_legendre(std::size_t n);

struct GridPoint {
    PureState state;
    double weight;
    double t;    // cos(theta)
    double phi;  // azimuth
};
using QubitGrid = std::vector<GridPoint>;

inline constexpr std::size_t kDefaultGridTheta = 64;
inline constexpr std::size_t kDefaultGridPhi = 64;

/// Product rule for the uniform measure sin(theta) dtheta dphi / 4 pi:
/// Gauss-Legendre in t = cos(theta), periodic trapezoid in phi. Weights sum to 1.
QubitGrid qubit_quadrature_grid(std::size_t n_theta = kDefaultGridTheta, std::size_t n_phi = kDefaultGridPhi);

/// Shared 64 x 64 grid.
const QubitGrid &default_qubit_grid();

/// Quadrature over the populations p_i = |<e_i|psi>|^2 of a Haar state in a
/// fixed basis, which are uniformly distributed on the probability simplex.
/// Any unitarily invariant integral of a spectral integrand reduces to this.
///   d = 2: p_0 = (1 - cos a) / 2 with Gauss-Legendre in a on [0, pi].
///   d = 3: collapsed (Duffy) product of the same rule on the triangle.
struct SimplexRule {
    std::size_t dim = 0;
    std::vector<double> weights;
    std::vector<double> points;  // row-major, dim coordinates per point

    std::size_t size() const noexcept {
        return weights.size();
    }
    std::span<const double> point(std::size_t k) const {
        return {points.data() + k * dim, dim};
    }
};

/// Throws OutOfRange for dim outside {2, 3}.
SimplexRule simplex_rule(std::size_t dim, std::size_t n = kDefaultGridTheta);
const SimplexRule &default_simplex_rule(std::size_t dim);

}  // namespace qtradeoff

#endif
