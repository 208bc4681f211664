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

#ifndef QTRADEOFF_CHANNELS_H
#define QTRADEOFF_CHANNELS_H

#include <cstddef>
#include <vector>

#include "qtradeoff/parallel.h"
#include "qtradeoff/qmat.h"

namespace qtradeoff {

/// Finite POVM {M_r}: PSD elements summing to the identity.
class Povm {
   public:
    /// Validates positivity and completeness (entrywise) within tol.
    explicit Povm(std::vector<ComplexMatrix> elements, double tol = kDefaultTol);

    std::size_t dim() const noexcept {
        return dim_;
    }
    std::size_t size() const noexcept {
        return elements_.size();
    }
    const ComplexMatrix &operator[](std::size_t r) const {
        return elements_[r];
    }
    const std::vector<ComplexMatrix> &elements() const noexcept {
        return elements_;
    }

   private:
    std::size_t dim_ = 0;
    std::vector<ComplexMatrix> elements_;
};

struct KrausElement {
    std::size_t r = 0;   // classical outcome
    std::size_t mu = 0;  // refinement index hidden from the observer
    ComplexMatrix a;
};

/// Trace-preserving operation {A_{r mu}} with sum A^dagger A = 1.
class KrausOperation {
   public:
    /// Throws CompletenessViolated when the entrywise residual exceeds tol.
    explicit KrausOperation(std::vector<KrausElement> elements, double tol = kDefaultTol);

    std::size_t dim() const noexcept {
        return dim_;
    }
    /// 1 + the largest outcome label.
    std::size_t outcome_count() const noexcept {
        return outcomes_;
    }
    const std::vector<KrausElement> &elements() const noexcept {
        return elements_;
    }

   private:
    std::size_t dim_ = 0;
    std::size_t outcomes_ = 0;
    std::vector<KrausElement> elements_;
};

/// Largest entrywise deviation of sum_k m_k from the identity.
double completeness_residual(const std::vector<ComplexMatrix> &sum_terms);
double completeness_residual(const std::vector<KrausElement> &elements);

/// M_r = sum_mu A_{r mu}^dagger A_{r mu}.
Povm induced_povm(const KrausOperation &op);

/// The POVM {A_{r mu}^dagger A_{r mu}} obtained when mu is observed too,
/// one outcome per element in element order.
Povm refined_povm(const KrausOperation &op);

/// Tr(M_r rho), clamped to [0, 1]. Throws InvalidState unless rho is a density matrix.
double outcome_probability(const Povm &povm, std::size_t r, const ComplexMatrix &rho);

/// Post-measurement state for outcome r. Throws ZeroProbabilityOutcome below 1e-14.
ComplexMatrix conditional_state(const KrausOperation &op, std::size_t r, const ComplexMatrix &rho);

/// {sqrt(M_r)}: one Hermitian PSD element per outcome.
KrausOperation efficient_from_povm(const Povm &povm);

/// Replaces every A by sqrt(A^dagger A); the induced POVM is unchanged.
KrausOperation hermitianize(const KrausOperation &op);

/// Wishart-type random PSD matrix G G^dagger / dim with complex Gaussian G.
ComplexMatrix random_psd(std::size_t dim, Rng &rng);

/// M_r = S^{-1/2} G_r S^{-1/2} with S = sum G_r, G_r random PSD.
Povm random_povm(std::size_t dim, std::size_t outcomes, Rng &rng);

/// A_{r mu} = U_{r mu} sqrt(q_{r mu}) sqrt(M_r) with Haar U and Dirichlet(1) weights q.
/// With randomize_unitaries = false every U is the identity.
KrausOperation random_operation(const Povm &povm, std::size_t refinements_per_outcome, Rng &rng,
                                bool randomize_unitaries = true);

/// A_{r mu} = U_{r mu} sqrt(M_r^{1/2} Q_mu M_r^{1/2}) with {Q_mu} a random POVM.
/// By the polar decomposition every Kraus decomposition of a POVM has this form,
/// so unlike random_operation this family reaches non-proportional refinements.
KrausOperation random_general_operation(const Povm &povm, std::size_t refinements_per_outcome, Rng &rng);

/// {diag(sqrt((1+x)/2), sqrt((1-x)/2)), diag(sqrt((1-x)/2), sqrt((1+x)/2))}, x in [0, 1].
KrausOperation saturating_operation(double x);

/// {sqrt(t) A_1(x1), sqrt(t) A_2(x1), sqrt(1-t) A_1(x2), sqrt(1-t) A_2(x2)} as four outcomes.
KrausOperation mixed_saturating_operation(double t, double x1, double x2);

}  // namespace qtradeoff

#endif
