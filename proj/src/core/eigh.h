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

#ifndef MIXCERT_CORE_EIGH_H
#define MIXCERT_CORE_EIGH_H

#include <vector>

#include "core/complex_matrix.h"

namespace mixcert {

/// Spectral decomposition H = V diag(lambda) V^dagger.
struct EighResult {
    /// Ascending real eigenvalues.
    std::vector<double> eigenvalues;
    /// Unitary whose column j is the eigenvector of eigenvalues[j].
    ComplexMatrix eigenvectors;
};

/// Cyclic Jacobi eigensolver for complex Hermitian matrices. Sweeps rotate
/// every off-diagonal pair per pass; converged when the off-diagonal
/// Hilbert-Schmidt norm falls below 1e-12 times the input's HS norm. Throws
/// NumericalError (with the residual in the message) if 100 sweeps do not
/// reach that target.
EighResult jacobi_eigh(const HermitianMatrix& h);

/// Sum of absolute eigenvalues (Schatten 1-norm).
double trace_norm(const HermitianMatrix& h);

}  // namespace mixcert

#endif
