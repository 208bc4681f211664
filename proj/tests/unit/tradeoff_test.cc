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


#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "qtradeoff/channels.h"
#include "qtradeoff/measures.h"
#include "qtradeoff/tradeoff.h"
#include "test_support.h"

namespace qtradeoff {
namespace {

using testing::expect_error;

// mpmath, 30+ digits.
constexpr double kH05 = 0.061735292866819065;
constexpr double kH1 = 0.27865247955551831;
constexpr double kF05 = 0.95534180126147955;
constexpr double kB05 = 0.97735026918962576;
constexpr double kB037 = 0.98808492930033479;
// d^2/dx^2 h(sqrt(1 - x^2)); its limit at 0 is -1/(2 ln 2).
constexpr double kD2At05 = -0.46099685688774666;
constexpr double kD2At001 = -0.72048925024261879;
constexpr double kD2At099 = -0.29102738885354715;
constexpr double kD2At1em4 = -0.72134733498269203;

double h_oracle(double x) {
    boost::math::quadrature::tanh_sinh<double> ts;
    return 0.5 * ts.integrate(
                     [x](double t) {
                         double w = 1 + x * t;
                         return w > 0 ? w * std::log2(w) : 0.0;
                     },
                     -1.0, 1.0, 1e-15);
}

TEST(FClosed, Values) {
    EXPECT_DOUBLE_EQ(f_closed(0), 1);
    EXPECT_DOUBLE_EQ(f_closed(1), 2.0 / 3.0);
    EXPECT_NEAR(f_closed(0.5), kF05, 1e-16);
    expect_error(ErrorKind::OutOfRange, [] { f_closed(1.01); });
    expect_error(ErrorKind::OutOfRange, [] { f_closed(-0.01); });
}

TEST(HClosed, Values) {
    EXPECT_EQ(h_closed(0), 0);
    EXPECT_NEAR(h_closed(1), kH1, 1e-16);
    EXPECT_NEAR(h_closed(0.5), kH05, 1e-16);
    expect_error(ErrorKind::OutOfRange, [] { h_closed(std::nan("")); });
}

TEST(HClosed, MatchesQuadratureAcrossRange) {
    for (int i = 0; i <= 200; i++) {
        double x = i / 200.0;
        EXPECT_NEAR(h_closed(x), h_oracle(x), 1e-13) << "x = " << x;
    }
    // Series and direct branches around the switch points.
    for (double x : {1e-6, 1e-4, 0.0499, 0.05, 0.0501, 1 - 1e-9, 1 - 1e-13}) {
        EXPECT_NEAR(h_closed(x), h_oracle(x), 1e-13 + 1e-10 * h_oracle(x)) << "x = " << x;
    }
}

TEST(GAndBClosed, Values) {
    EXPECT_DOUBLE_EQ(g_closed(0), 0.5);
    EXPECT_DOUBLE_EQ(g_closed(1), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(b_closed(0), 1);
    EXPECT_NEAR(b_closed(1), 0.8, 1e-16);
    EXPECT_NEAR(b_closed(0.5), kB05, 1e-15);
    EXPECT_NEAR(b_closed(1e-5), 1 - 1e-10 / 12, 1e-16);
    EXPECT_NEAR(b_closed(0.5), bures_component(ComplexMatrix::diagonal({1.5, 0.5})), 1e-12);
}

TEST(BDerivative, MatchesFiniteDifference) {
    for (double x : {0.1, 0.5, 0.9}) {
        double fd = (b_closed(x + 1e-6) - b_closed(x - 1e-6)) / 2e-6;
        EXPECT_NEAR(b_derivative(x), fd, 1e-8);
    }
    EXPECT_EQ(b_derivative(0), 0);
}

TEST(Inverses, RoundTrips) {
    EXPECT_NEAR(f_inverse(1), 0, 1e-15);
    EXPECT_NEAR(f_inverse(2.0 / 3.0), 1, 1e-7);
    EXPECT_NEAR(b_inverse(kB037), 0.37, 1e-10);
    EXPECT_NEAR(b_inverse(0.8), 1, 1e-10);
    for (int i = 0; i <= 100; i++) {
        double x = i / 100.0;
        EXPECT_NEAR(f_closed(f_inverse(f_closed(x))), f_closed(x), 1e-12);
        EXPECT_NEAR(b_closed(b_inverse(b_closed(x))), b_closed(x), 1e-12);
        auto fn = [](double t) { return f_closed(t); };
        EXPECT_NEAR(invert_monotone(fn, f_closed(x)), f_inverse(f_closed(x)), 1e-6);
    }
    expect_error(ErrorKind::OutOfImage, [] { f_inverse(0.5); });
    expect_error(ErrorKind::OutOfImage, [] { b_inverse(0.79); });
}

TEST(InvertMonotone, SampledCurve) {
    ScalarCurve c = sample_curve("sq", [](double x) { return x * x; }, 101);
    EXPECT_NEAR(invert_monotone(c, 0.25), 0.5, 1e-12);
    expect_error(ErrorKind::OutOfImage, [&] { invert_monotone(c, 2.0); });
}

TEST(ConcaveEnvelope, ConcaveInputUnchanged) {
    ScalarCurve c = sample_curve("sqrt", [](double x) { return std::sqrt(x); }, 256);
    ScalarCurve env = concave_envelope(c);
    for (std::size_t k = 0; k < c.samples.size(); k++) {
        EXPECT_NEAR(env.samples[k].y, c.samples[k].y, 1e-12);
    }
}

TEST(ConcaveEnvelope, ConvexInputBecomesChord) {
    ScalarCurve c = sample_curve("sq", [](double x) { return x * x; }, 129);
    ScalarCurve env = concave_envelope(c);
    for (const auto &s : env.samples) {
        EXPECT_NEAR(s.y, s.x, 1e-12);
    }
    EXPECT_EQ(upper_hull_vertices(c).size(), 2u);
}

TEST(ConcaveEnvelope, DentedCurveAgainstChordSup) {
    auto fn = [](double x) { return std::min(x, 0.4) + 0.2 * std::max(x - 0.7, 0.0); };
    // 251 samples put both kinks (0.4, 0.7) on the grid.
    ScalarCurve c = sample_curve("dent", fn, 251);
    ScalarCurve env = concave_envelope(c);
    Rng rng(61);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 1000; trial++) {
        double x1 = unit(rng);
        double x2 = unit(rng);
        double t = unit(rng);
        double xm = t * x1 + (1 - t) * x2;
        // fn is piecewise linear with breaks on the sample grid, so chords of
        // fn are chords of the sampled curve.
        EXPECT_LE(t * fn(x1) + (1 - t) * fn(x2), interpolate(env, xm) + 1e-9);
    }
    for (const auto &s : env.samples) {
        EXPECT_GE(s.y, fn(s.x) - 1e-12);
    }
    // The hull bridges from (0.4, 0.4) to (1, 0.46).
    EXPECT_NEAR(interpolate(env, 0.7), 0.4 + 0.3 * 0.06 / 0.6, 1e-12);
}

TEST(ConcaveEnvelope, Idempotent) {
    ScalarCurve c = sample_curve("wiggle", [](double x) { return std::sin(12 * x) + x; }, 300);
    ScalarCurve once = concave_envelope(c);
    ScalarCurve twice = concave_envelope(once);
    auto a = upper_hull_vertices(once);
    auto b = upper_hull_vertices(twice);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); k++) {
        EXPECT_EQ(a[k].x, b[k].x);
        EXPECT_EQ(a[k].y, b[k].y);
    }
}

TEST(ConcaveEnvelope, RejectsDegenerateInput) {
    expect_error(ErrorKind::DegenerateInput, [] { concave_envelope(ScalarCurve{"one", {{0, 1}}}); });
    expect_error(ErrorKind::DegenerateInput, [] { concave_envelope(ScalarCurve{"dup", {{0, 1}, {0, 2}}}); });
    expect_error(ErrorKind::DegenerateInput,
                 [] { concave_envelope(ScalarCurve{"nan", {{0, 1}, {1, std::nan("")}}}); });
}

TEST(CompositeCurve, Endpoints) {
    EXPECT_NEAR(composite_value(Pairing::H_vs_F, 1), 0, 1e-15);
    EXPECT_NEAR(composite_value(Pairing::H_vs_F, 2.0 / 3.0), kH1, 1e-12);
    EXPECT_NEAR(composite_value(Pairing::G_vs_B, 0.8), 2.0 / 3.0, 1e-9);
    TradeoffCurve gb = composite_curve(Pairing::G_vs_B, 64);
    EXPECT_EQ(gb.samples.back().disturbance, 1.0);
    EXPECT_NEAR(gb.samples.back().info_bound, 0.5, 1e-15);
    EXPECT_NEAR(gb.samples.back().x, 0, 1e-15);
}

TEST(CompositeCurve, AllPairingsAreConcave) {
    for (Pairing p : kAllPairings) {
        TradeoffCurve c = composite_curve(p, kDefaultEnvelopeResolution);
        EXPECT_LE(envelope_gap(c), 1e-9) << pairing_name(p);
        for (std::size_t k = 1; k + 1 < c.samples.size(); k++) {
            double second = c.samples[k - 1].envelope - 2 * c.samples[k].envelope + c.samples[k + 1].envelope;
            EXPECT_LE(second, 1e-9);
        }
    }
}

TEST(CompositeCurve, QubitBoundMatchesClosedForm) {
    TradeoffCurve c = composite_curve(Pairing::H_vs_F, 1024);
    for (const auto &s : c.samples) {
        double x = std::sqrt(std::max(0.0, 1 - (3 * s.disturbance - 2) * (3 * s.disturbance - 2)));
        EXPECT_NEAR(s.info_bound, h_closed(std::min(x, 1.0)), 1e-10);
    }
}

TEST(Pairing, NamesRoundTrip) {
    for (Pairing p : kAllPairings) {
        EXPECT_EQ(parse_pairing(pairing_name(p)), p);
    }
    EXPECT_FALSE(parse_pairing("XY").has_value());
}

TEST(CheckBound, SaturatingFamilySaturates) {
    for (int i = 1; i <= 9; i++) {
        for (Pairing p : kAllPairings) {
            EXPECT_LT(std::abs(check_bound(saturating_operation(0.1 * i), p).margin), 1e-7) << pairing_name(p);
        }
    }
}

TEST(CheckBound, IdentityOperation) {
    KrausOperation id({{0, 0, ComplexMatrix::identity(2)}});
    BoundReport r = check_bound(id, Pairing::H_vs_F);
    EXPECT_NEAR(r.info, 0, 1e-15);
    EXPECT_NEAR(r.bound, 0, 1e-15);
    EXPECT_TRUE(r.satisfied);
}

TEST(CheckBound, RandomOperationsSatisfyAllPairings) {
    Rng rng(62);
    for (int trial = 0; trial < 300; trial++) {
        KrausOperation op = random_general_operation(random_povm(2, 2 + trial % 3, rng), 1 + trial % 3, rng);
        for (Pairing p : kAllPairings) {
            EXPECT_TRUE(check_bound(op, p).satisfied) << pairing_name(p);
        }
    }
}

TEST(CheckBound, MonteCarloToleranceWidens) {
    BoundOptions opt;
    opt.monte_carlo = true;
    opt.samples = 20000;
    BoundReport r = check_bound(saturating_operation(0.5), Pairing::H_vs_B, opt);
    EXPECT_GT(r.tolerance, 1e-7);
    EXPECT_TRUE(r.satisfied);
    Rng rng(63);
    expect_error(ErrorKind::WrongDim, [&] { check_bound(efficient_from_povm(random_povm(3, 2, rng)), Pairing::H_vs_F); });
}

TEST(Saturation, MeasuredValuesFollowReductions) {
    for (int i = 0; i < 256; i++) {
        double x = i / 255.0;
        KrausOperation op = saturating_operation(x);
        EXPECT_NEAR(operation_fidelity_closed(op).value, f_closed(x), 1e-12);
        EXPECT_NEAR(shannon_gain(induced_povm(op)).value, h_closed(x), 1e-9);
    }
}

TEST(Saturation, MixturesLandOnChords) {
    Rng rng(64);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 50; trial++) {
        double t = unit(rng);
        double x1 = unit(rng);
        double x2 = unit(rng);
        KrausOperation op = mixed_saturating_operation(t, x1, x2);
        EXPECT_NEAR(operation_fidelity_closed(op).value, t * f_closed(x1) + (1 - t) * f_closed(x2), 1e-12);
        EXPECT_NEAR(shannon_gain(induced_povm(op)).value, t * h_closed(x1) + (1 - t) * h_closed(x2), 1e-9);
    }
}

TEST(AppendixA, SecondDerivativeValues) {
    EXPECT_NEAR(h_composite_second_derivative(0.5), kD2At05, 1e-12);
    EXPECT_NEAR(h_composite_second_derivative(0.01), kD2At001, 1e-10);
    EXPECT_NEAR(h_composite_second_derivative(0.99), kD2At099, 1e-10);
    // Tends to -1/(2 ln 2) at the left end, not to zero.
    EXPECT_NEAR(h_composite_second_derivative(1e-4), kD2At1em4, 1e-12);
    EXPECT_NEAR(h_composite_second_derivative(1e-7), -1 / (2 * std::numbers::ln2), 1e-9);
    auto g = [](double x) { return h_closed(std::sqrt(1 - x * x)); };
    for (double x : {0.5, 0.99}) {
        double step = 1e-4 * std::min(1.0, (1 - x) * 10);
        double fd = (g(x + step) - 2 * g(x) + g(x - step)) / (step * step);
        double closed = h_composite_second_derivative(x);
        EXPECT_LT(closed, 0);
        EXPECT_LT(fd, 0);
        EXPECT_NEAR(closed, fd, std::max(1e-6, 1e-4 * std::abs(closed)));
    }
}

TEST(AppendixA, ConcavityCheckPasses) {
    ProbeReport r = appendix_a_concavity_check(4096);
    EXPECT_TRUE(r.pass) << r.worst_margin;
}

TEST(EqualityCondition, EqualAndUnequalRatios) {
    Povm equal = paired_povm({0.5, 0.5}, {0.2, 0.3}, {{0, 0, 1}, {1, 0, 0}});
    Povm unequal = paired_povm({0.2, 0.8}, {0.25, 0.25}, {{0, 0, 1}, {0, 1, 0}});
    auto margin = [](const Povm &povm) {
        return check_bound(efficient_from_povm(povm), Pairing::H_vs_F).margin;
    };
    EXPECT_LT(std::abs(margin(equal)), 1e-7);
    EXPECT_GT(margin(unequal), 1e-6);
    EXPECT_LT(std::abs(margin(Povm({ComplexMatrix::identity(2)}))), 1e-12);
    EqualityReport r = equality_condition_check(65, 200);
    EXPECT_TRUE(r.equal_ratio.pass) << r.equal_ratio.worst_margin;
    EXPECT_TRUE(r.unequal_ratio.pass) << r.unequal_ratio.worst_margin;
}

}  // namespace
}  // namespace qtradeoff
