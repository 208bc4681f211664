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

#ifndef QTRADEOFF_MEASURES_H
#define QTRADEOFF_MEASURES_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "qtradeoff/channels.h"
#include "qtradeoff/states.h"

namespace qtradeoff {

// Information gain and disturbance functionals under the uniform (Haar) prior.
//
// Each functional is a sum over POVM or Kraus elements of a component
// function of a single PSD operator:
//   H  = sum_r  H(M_r)                   Shannon information gain, bits
//   F  = sum_rmu F(A^dagger A)            operation fidelity (Hermitian A)
//   G  = sum_r  G(M_r)                   estimation fidelity
//   B  = sum_rmu B(A^dagger A)            Bures-Uhlmann fidelity (Hermitian A)
// All four components are unitarily invariant and positively homogeneous of
// degree one; H and G are convex, F and B concave.

enum class Method { ClosedForm, Quadrature, MonteCarlo };

const char *method_name(Method method);

struct MeasureValue {
    double value = 0;
    Method method = Method::ClosedForm;
    double mc_std_error = 0;
};

enum class Component { Shannon, OperationFidelity, EstimationFidelity, Bures };

const char *component_name(Component component);

/// Default Monte Carlo sample count for the *_mc estimators.
inline constexpr std::size_t kDefaultMcSamples = 100000;

// ---- spectral forms ------------------------------------------------------
// A component evaluated on diag(u) in a fixed basis. The Shannon and Bures
// forms integrate over the simplex rule of dim u.size() (2 or 3).

/// phi(u) = (sum u_i + (sum sqrt u_i)^2) / (d (d + 1)). Throws NegativeInput.
double phi_fidelity(std::span<const double> u);
double estimation_spectral(std::span<const double> u);
double shannon_spectral(std::span<const double> u, const SimplexRule &rule);
double bures_spectral(std::span<const double> u, const SimplexRule &rule);
double component_spectral(Component component, std::span<const double> u);

// ---- components on operators ---------------------------------------------

/// Shannon component of a PSD operator in bits: shannon_spectral of its
/// eigenvalues on the default simplex rule (d = 2, 3).
/// Throws NotPsd, or OutOfRange for d >= 4 (use shannon_component_mc).
double shannon_component(const ComplexMatrix &m);
MeasureValue shannon_component_mc(const ComplexMatrix &m, std::uint64_t seed,
                                  std::size_t samples = kDefaultMcSamples);

/// (Tr M + (Tr sqrt M)^2) / (d (d + 1)), any d.
double operation_fidelity_component(const ComplexMatrix &m);

/// (Tr M + lambda_max(M)) / (d (d + 1)), any d.
double estimation_fidelity_component(const ComplexMatrix &m);

/// Integral of sqrt(<psi|M|psi>) <psi|sqrt M|psi>; same quadrature paths as shannon_component.
double bures_component(const ComplexMatrix &m);
MeasureValue bures_component_mc(const ComplexMatrix &m, std::uint64_t seed, std::size_t samples = kDefaultMcSamples);

/// Deterministic evaluation of any component (dims 2 and 3 for Shannon/Bures).
double component_value(Component component, const ComplexMatrix &m);

// ---- functionals ---------------------------------------------------------

MeasureValue shannon_gain(const Povm &povm);
MeasureValue shannon_gain_mc(const Povm &povm, std::uint64_t seed, std::size_t samples = kDefaultMcSamples);

MeasureValue operation_fidelity_closed(const KrausOperation &op);
MeasureValue operation_fidelity_mc(const KrausOperation &op, std::uint64_t seed,
                                   std::size_t samples = kDefaultMcSamples);

MeasureValue estimation_fidelity(const Povm &povm);
MeasureValue estimation_fidelity_mc(const Povm &povm, std::uint64_t seed, std::size_t samples = kDefaultMcSamples);

/// Hermitian PSD elements go through bures_component(A^dagger A).
/// Any other qubit element is integrated from the defining integrand as an
/// iterated integral with panel ends at its non-smooth points (d = 2 only).
MeasureValue bures_fidelity(const KrausOperation &op);
MeasureValue bures_fidelity_mc(const KrausOperation &op, std::uint64_t seed, std::size_t samples = kDefaultMcSamples);

// ---- property probes -----------------------------------------------------

enum class ProbeMode { Commuting, General };

struct ProbeReport {
    std::string name;
    std::size_t trials = 0;
    /// Smallest observed slack; the check passes iff worst_margin >= -tolerance.
    double worst_margin = 0;
    double tolerance = 0;
    bool pass = false;
};

/// Super-additivity of H and G, sub-additivity of F and B, under merging two
/// PSD operators. Commuting mode draws non-negative diagonals and evaluates
/// the spectral forms in their shared basis; general mode draws independent
/// random PSD matrices. margin = slack of the expected inequality.
ProbeReport convexity_probe(Component component, ProbeMode mode, std::size_t dim, std::size_t trials,
                            std::uint64_t seed, double tolerance);

/// |X(cM) - c X(M)| for c in (0, 10]; margin = -worst deviation.
ProbeReport homogeneity_probe(Component component, std::size_t dim, std::size_t trials, std::uint64_t seed,
                              double tolerance);

/// |X(U^dagger M U) - X(M)| for Haar U; margin = -worst deviation.
ProbeReport unitary_invariance_probe(Component component, std::size_t dim, std::size_t trials, std::uint64_t seed,
                                     double tolerance);

}  // namespace qtradeoff

#endif
