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

#ifndef QTRADEOFF_TRADEOFF_H
#define QTRADEOFF_TRADEOFF_H

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qtradeoff/channels.h"
#include "qtradeoff/measures.h"

namespace qtradeoff {

// Single-parameter reductions for a qubit element with eigenvalues 1 +- x
// (trace normalized to 2):
//   f(x) = (2 + sqrt(1 - x^2)) / 3            operation fidelity
//   h(x) = Shannon component, bits            information gain
//   g(x) = (x + 3) / 6                         estimation fidelity
//   b(x) = Bures component                     Bures-Uhlmann fidelity
// All take x in [0, 1] and throw OutOfRange otherwise.

double f_closed(double x);
double h_closed(double x);
double g_closed(double x);
double b_closed(double x);

/// db/dx; -infinity at x = 1.
double b_derivative(double x);

/// Analytic inverse of f: sqrt(1 - (3F - 2)^2). Throws OutOfImage outside [2/3, 1].
double f_inverse(double fidelity);
/// Inverse of b by bisection with Newton polish. Throws OutOfImage outside [4/5, 1].
double b_inverse(double fidelity);

/// d^2/dx^2 h(sqrt(1 - x^2)) in closed form, for x in (0, 1).
double h_composite_second_derivative(double x);

// ---- sampled curves ------------------------------------------------------

struct CurvePoint {
    double x = 0;
    double y = 0;
};

struct ScalarCurve {
    std::string meta;
    std::vector<CurvePoint> samples;
};

/// Throws DegenerateInput unless there are >= 2 finite samples with strictly
/// increasing x.
void validate_curve(const ScalarCurve &curve);

/// fn sampled at n equally spaced points of [lo, hi] (both ends exact).
ScalarCurve sample_curve(std::string meta, const std::function<double(double)> &fn, std::size_t n, double lo = 0,
                         double hi = 1);

/// Piecewise-linear interpolation; clamps to the end samples outside the domain.
double interpolate(const ScalarCurve &curve, double x);

/// Solves fn(x) = y on [lo, hi] for monotone fn. Bisection to adjacent doubles,
/// then Newton steps with `derivative` when given, kept only if they reduce the
/// residual. Throws OutOfImage if y lies outside [fn(lo), fn(hi)].
double invert_monotone(const std::function<double(double)> &fn, double y, double lo = 0, double hi = 1,
                       const std::function<double(double)> &derivative = nullptr);

/// Same, against the piecewise-linear interpolant of a monotone sampled curve.
double invert_monotone(const ScalarCurve &curve, double y);

/// Vertices of the upper concave hull (monotone chain). Points lying on a
/// chord up to rounding are kept.
std::vector<CurvePoint> upper_hull_vertices(const ScalarCurve &curve);

/// The least concave majorant sampled at the input abscissae.
ScalarCurve concave_envelope(const ScalarCurve &curve);

// ---- composite trade-off curves ------------------------------------------

enum class Pairing { H_vs_F, G_vs_F, H_vs_B, G_vs_B };

inline constexpr std::array<Pairing, 4> kAllPairings = {Pairing::H_vs_F, Pairing::G_vs_F, Pairing::H_vs_B,
                                                        Pairing::G_vs_B};

/// Short names HF, GF, HB, GB.
const char *pairing_name(Pairing pairing);
std::optional<Pairing> parse_pairing(std::string_view name);

/// [2/3, 1] for F, [4/5, 1] for B.
std::array<double, 2> disturbance_domain(Pairing pairing);

double information_reduction(Pairing pairing, double x);
double disturbance_reduction(Pairing pairing, double x);
double disturbance_inverse(Pairing pairing, double disturbance);

/// info(disturbance^{-1}(D)). Below the domain the bound is the value at the
/// lower end: lower disturbance cannot be paired with more information than
/// the most disturbing efficient operation yields.
double composite_value(Pairing pairing, double disturbance);

inline constexpr std::size_t kDefaultEnvelopeResolution = 4096;

struct TradeoffSample {
    double disturbance = 0;
    double info_bound = 0;
    double envelope = 0;
    double x = 0;
};

struct TradeoffCurve {
    Pairing pairing = Pairing::H_vs_F;
    /// Ascending in disturbance.
    std::vector<TradeoffSample> samples;
};

/// Samples the composite on n >= 2 equally spaced disturbances and attaches
/// its concave envelope. Throws DegenerateInput for n < 2.
TradeoffCurve composite_curve(Pairing pairing, std::size_t n = kDefaultEnvelopeResolution);

/// Envelope interpolated at D; clamps outside the sampled domain.
double envelope_at(const TradeoffCurve &curve, double disturbance);

/// max |envelope - info_bound| over the samples.
double envelope_gap(const TradeoffCurve &curve);

// ---- bound checks --------------------------------------------------------

struct QubitMeasures {
    MeasureValue shannon;
    MeasureValue operation_fidelity;
    MeasureValue estimation_fidelity;
    MeasureValue bures;
};

struct BoundOptions {
    bool monte_carlo = false;
    std::uint64_t seed = 42;
    std::size_t samples = kDefaultMcSamples;
    double tolerance_floor = 1e-7;
};

/// H and G of the induced POVM, F and B of the operation. Throws WrongDim unless d = 2.
QubitMeasures evaluate_qubit_measures(const KrausOperation &op, const BoundOptions &options = {});

struct BoundReport {
    Pairing pairing = Pairing::H_vs_F;
    double info = 0;
    double disturbance = 0;
    double bound = 0;
    /// bound - info; negative means the operation extracts more than allowed.
    double margin = 0;
    double tolerance = 0;
    bool satisfied = false;
};

BoundReport check_bound(const QubitMeasures &measures, Pairing pairing, double tolerance_floor = 1e-7);
BoundReport check_bound(const KrausOperation &op, Pairing pairing, const BoundOptions &options = {});

// ---- verification reports --------------------------------------------------

/// Interior grid x_i = i / (n + 1). margin = min over points of the slack of
/// both the agreement (max(1e-6, 1e-4 |v|) - |closed - fd|) and negativity
/// (-v) conditions.
ProbeReport appendix_a_concavity_check(std::size_t n_grid);

struct EqualityReport {
    /// slack = 1e-7 - |margin| for equal-ratio POVMs.
    ProbeReport equal_ratio;
    /// slack = margin - 1e-6 for unequal-ratio POVMs: info sits strictly below the bound.
    ProbeReport unequal_ratio;
};

/// x_r-equal POVMs saturate the H-vs-F bound; unequal ones fall strictly below it.
EqualityReport equality_condition_check(std::uint64_t seed, std::size_t trials);

/// Qubit POVM with element pairs xi_k (1 +- x_k n_k.sigma); sum_k 2 xi_k must be 1.
Povm paired_povm(const std::vector<double> &x, const std::vector<double> &xi,
                 const std::vector<std::array<double, 3>> &directions);

}  // namespace qtradeoff

#endif
