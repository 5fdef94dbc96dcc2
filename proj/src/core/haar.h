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

#ifndef MIXCERT_CORE_HAAR_H
#define MIXCERT_CORE_HAAR_H

#include "core/complex_matrix.h"
#include "core/rng.h"

namespace mixcert {

/// Haar-distributed d x d unitary: complex Ginibre matrix, Householder QR,
/// then a column phase correction making the R diagonal real positive (the
/// correction is what turns plain QR into an exactly Haar sample). The result
/// satisfies max |U^dagger U - I| <= 1e-10; a draw violating that raises
/// NumericalError. Throws ArgumentError if d < 1.
ComplexMatrix haar_unitary(int d, Rng& rng);

/// Uniform random unit vector on the complex sphere in dimension d (a
/// normalized complex Gaussian vector). Throws ArgumentError if d < 1.
ComplexVector random_unit_vector(int d, Rng& rng);

}  // namespace mixcert

#endif
