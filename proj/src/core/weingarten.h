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

#ifndef MIXCERT_CORE_WEINGARTEN_H
#define MIXCERT_CORE_WEINGARTEN_H

#include "core/complex_matrix.h"

namespace mixcert {

// The two elements of S_2: the identity and the transposition (tau star).
enum class PermS2 {
    kIdentity,
    kTauStar,
};

// Degree-2 Weingarten coefficient of U(d): 1/(d^2-1) for the identity,
// -1/(d(d^2-1)) for the transposition. Needs d >= 2.
double wg2(PermS2 pi, int d);

// Power-trace contraction of a square matrix over a permutation's cycles:
// identity -> Tr(A)^2, transposition -> Tr(A^2).
Complex power_trace_product(const ComplexMatrix& a, PermS2 pi);

// E_U [ (Tr(A U^dagger B U))^2 ] over Haar U, from the exact degree-2
// moment sum over S_2 x S_2. A and B must be Hermitian with equal dimension.
double second_moment_trace(const HermitianMatrix& a, const HermitianMatrix& b);

// E_U [ g^2 ] for the tilt of a single trace-normalized POVM element m_hat
// against the signed perturbation of strength eps: exactly
// eps^2 d (Tr(m_hat^2)/(d^2-1) - 1/(d(d^2-1))), which is at most
// eps^2/(d+1) with equality for rank-one elements.
// Requires Tr(m_hat) = 1 within 1e-9 and even d >= 2.
double expected_g_squared(const HermitianMatrix& m_hat, double eps);

}  // namespace mixcert

#endif
