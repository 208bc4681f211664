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

#ifndef QTRADEOFF_APPENDIXB_H
#define QTRADEOFF_APPENDIXB_H

#include <array>
#include <vector>

#include "qtradeoff/channels.h"
#include "qtradeoff/states.h"

namespace qtradeoff {

// Bloch-sphere form of the Bures-Uhlmann integrand for a qubit element U A,
// where A = diag(sqrt(1 + x), sqrt(1 - x)) and U = exp(-i alpha Z/2) exp(-i beta X/2).
// Under rho = (1 + r.sigma)/2 the element acts through
//   A_bloch = diag(sqrt(1 - x^2), sqrt(1 - x^2), 1),   a = (0, 0, x),
// and U acts as the rotation O = R_z(alpha) R_x(beta).

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

Mat3 rotation_z(double angle);
Mat3 rotation_x(double angle);
Mat3 mat3_mul(const Mat3 &a, const Mat3 &b);
Vec3 mat3_apply(const Mat3 &m, const Vec3 &v);
double mat3_trace(const Mat3 &m);

struct BlochChannelParams {
    double x = 0;
    double alpha = 0;
    double beta = 0;
};

/// Throws OutOfRange unless x lies in [0, 1].
BlochChannelParams make_bloch_params(double x, double alpha = 0, double beta = 0);

Mat3 bloch_matrix(const BlochChannelParams &p);
Vec3 bloch_offset(const BlochChannelParams &p);
Mat3 bloch_rotation(const BlochChannelParams &p);

/// diag(sqrt(1 + x), sqrt(1 - x)).
ComplexMatrix element_operator(const BlochChannelParams &p);
ComplexMatrix rotation_unitary(const BlochChannelParams &p);

/// Two-element qubit operation {U A_+ / sqrt2, U A_- / sqrt2} with A_- the
/// element for -x. Its Bures fidelity is the average of the integrand.
KrausOperation rotated_saturating_operation(const BlochChannelParams &p);

/// (1/sqrt2) sqrt((1 + a.r)^2 + (1 + a.r) r.O(A r + a)). Throws
/// NegativeRadicand below -1e-12; smaller negative rounding is clamped.
double bu_integrand(const BlochChannelParams &p, const Vec3 &r, const Mat3 &rotation);
double bu_integrand(const BlochChannelParams &p, const Vec3 &r);

/// sqrt(<psi|A^dagger A|psi>) |<psi|U A|psi>| evaluated on state vectors.
double bu_integrand_hilbert(const BlochChannelParams &p, const PureState &psi);

/// diag(sin^2(theta)/2, sin^2(theta)/2, x cos(theta) + cos^2(theta)).
Mat3 v_matrix_closed(double x, double theta);
/// Azimuthal average of (r + a) r^T on n_phi equally spaced angles.
Mat3 v_matrix_average(double x, double theta, std::size_t n_phi = 64);

/// Tr(O A V) in closed form.
double trace_term(const BlochChannelParams &p, double theta);
/// Tr(O A V) from explicit 3x3 products.
double trace_term_matrix(const BlochChannelParams &p, double theta);

/// Azimuthal average of bu_integrand at polar angle theta (periodic trapezoid).
double azimuthal_average(const BlochChannelParams &p, double theta, std::size_t n_phi = 512);
/// (1/sqrt2) sqrt((1 + x cos theta)^2 + (1 + x cos theta) Tr(O A V)).
double azimuthal_bound(const BlochChannelParams &p, double theta);

/// (1/4) int_{-1}^{1} dt sqrt(2(1+xt)^2 + (1+xt)[sqrt(1-x^2)(1-t^2)(1+cos beta) + 2(t^2+xt) cos beta]),
/// 128-node Gauss-Legendre after t = -cos(u). Equals b(x) at beta = 0 and upper-bounds the
/// rotated operation's Bures fidelity otherwise.
double bures_beta_integral(double x, double beta);

std::vector<double> default_beta_grid(std::size_t n = 181);
std::vector<double> default_x_grid(std::size_t n = 64);

struct BetaScanPoint {
    double x = 0;
    double argmax_beta = 0;
    double value_at_zero = 0;
    /// Best value found by the scan and golden-section refinement.
    double refined_max = 0;
    /// value_at_zero - refined_max; zero when beta = 0 wins.
    double margin = 0;
};

struct BetaScanReport {
    std::vector<BetaScanPoint> points;
    double worst_margin = 0;
    double tolerance = 0;
    bool pass = false;
};

/// For each x scans beta_grid (which must start at 0 and be ascending), then
/// refines the best grid point by golden section between its neighbours.
BetaScanReport verify_beta_maximum(const std::vector<double> &x_grid, const std::vector<double> &beta_grid,
                                   double tolerance = 1e-10);

}  // namespace qtradeoff

#endif
