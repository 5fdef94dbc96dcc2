// Copyright 2026 The mixcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MIXCERT_CORE_POVM_H
#define MIXCERT_CORE_POVM_H

#include <vector>

#include "core/complex_matrix.h"
#include "core/rng.h"
#include "core/states.h"

namespace mixcert {

/// Finite POVM: Hermitian PSD elements summing to the identity. Outcomes are
/// 0-based element indices.
///
/// The general constructor runs the eigensolver on every element (PSD check,
/// min eigenvalue >= -1e-10), requires each trace > 1e-12, and checks
/// completeness max |sum M_x - I| <= 1e-9; violations raise ConsistencyError.
/// The basis factory skips the per-element eigendecompositions because
/// rank-one projectors onto the columns of a unitarity-checked matrix are PSD
/// by construction; it still verifies completeness.
class Povm {
  public:
    explicit Povm(std::vector<HermitianMatrix> elements);

    /// Rank-one POVM {|u_x><u_x|} from the columns of a unitary.
    static Povm basis(const ComplexMatrix& u);

    /// Computational-basis POVM in dimension d.
    static Povm standard_basis(int d);

    /// Basis POVM from a fresh Haar unitary.
    static Povm haar_basis(int d, Rng& rng);

    int dim() const { return d_; }
    int size() const { return static_cast<int>(elements_.size()); }
    const HermitianMatrix& element(int x) const {
        return elements_[static_cast<std::size_t>(x)];
    }
    double element_trace(int x) const { return traces_[static_cast<std::size_t>(x)]; }

    /// True when this POVM was built as rank-one projectors onto the columns
    /// of a unitary; basis_matrix() is then that unitary.
    bool is_basis() const { return is_basis_; }
    const ComplexMatrix& basis_matrix() const;

  private:
    Povm() = default;

    int d_ = 0;
    bool is_basis_ = false;
    ComplexMatrix basis_u_;
    std::vector<HermitianMatrix> elements_;
    std::vector<double> traces_;
};

/// Outcome probabilities q_x = Tr(rho M_x). Validates nonnegativity within
/// -1e-12 and total within 1e-6 of 1 (ConsistencyError otherwise), clamps
/// tiny negatives to zero, and renormalizes to an exact unit sum.
std::vector<double> outcome_distribution(const DensityMatrix& rho, const Povm& m);

/// n i.i.d. draws from the distribution q by inverse-CDF sampling (one
/// uniform per draw). Validates q like outcome_distribution. Throws
/// ArgumentError if n < 0.
std::vector<int> sample_outcomes(const std::vector<double>& q, std::int64_t n, Rng& rng);

}  // namespace mixcert

#endif
