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

#include "core/haar.h"

#include <cmath>
#include <cstddef>

#include "core/errors.h"

namespace mixcert {

namespace {

double unitarity_defect(const ComplexMatrix& u) {
    const int d = u.dim();
    double worst = 0.0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            Complex s(0.0, 0.0);
            for (int k = 0; k < d; ++k) {
                s += std::conj(u(k, i)) * u(k, j);
            }
            if (i == j) {
                s -= 1.0;
            }
            worst = std::max(worst, std::abs(s));
        }
    }
    return worst;
}

}  // namespace

ComplexMatrix haar_unitary(int d, Rng& rng) {
    if (d < 1) {
        throw ArgumentError("haar_unitary needs dimension at least 1");
    }
    ComplexMatrix a(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            a(i, j) = rng.next_complex_gaussian();
        }
    }

    // Householder QR with explicit Q accumulation.
    ComplexMatrix q = ComplexMatrix::identity(d);
    ComplexVector v(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        double norm2 = 0.0;
        for (int i = k; i < d; ++i) {
            norm2 += std::norm(a(i, k));
        }
        const double norm = std::sqrt(norm2);
        if (norm == 0.0) {
            continue;
        }
        // Reflect x = A[k:, k] onto -e^{i arg(x_0)} ||x|| e_1; adding the
        // aligned phase avoids cancellation in v = x + e^{i theta} ||x|| e_1.
        const Complex x0 = a(k, k);
        const Complex phase =
            (std::abs(x0) == 0.0) ? Complex(1.0, 0.0) : x0 / std::abs(x0);
        double vnorm2 = 0.0;
        for (int i = k; i < d; ++i) {
            Complex vi = a(i, k);
            if (i == k) {
                vi += phase * norm;
            }
            v[static_cast<std::size_t>(i)] = vi;
            vnorm2 += std::norm(vi);
        }
        if (vnorm2 == 0.0) {
            continue;
        }
        const double inv = 1.0 / std::sqrt(vnorm2);
        for (int i = k; i < d; ++i) {
            v[static_cast<std::size_t>(i)] *= inv;
        }
        // A[k:, j] -= 2 (v^dagger A[k:, j]) v for all remaining columns.
        for (int j = k; j < d; ++j) {
            Complex w(0.0, 0.0);
            for (int i = k; i < d; ++i) {
                w += std::conj(v[static_cast<std::size_t>(i)]) * a(i, j);
            }
            w *= 2.0;
            for (int i = k; i < d; ++i) {
                a(i, j) -= w * v[static_cast<std::size_t>(i)];
            }
        }
        // Q <- Q H with H = I - 2 v v^dagger embedded in rows/cols k..d-1.
        for (int i = 0; i < d; ++i) {
            Complex w(0.0, 0.0);
            for (int m = k; m < d; ++m) {
                w += q(i, m) * v[static_cast<std::size_t>(m)];
            }
            w *= 2.0;
            for (int m = k; m < d; ++m) {
                q(i, m) -= w * std::conj(v[static_cast<std::size_t>(m)]);
            }
        }
    }

    // Column phase correction: make each R diagonal entry real positive.
    for (int j = 0; j < d; ++j) {
        const Complex rjj = a(j, j);
        const double mag = std::abs(rjj);
        const Complex phase = (mag == 0.0) ? Complex(1.0, 0.0) : rjj / mag;
        for (int i = 0; i < d; ++i) {
            q(i, j) *= phase;
        }
    }

    const double defect = unitarity_defect(q);
    if (defect > 1e-10) {
        throw NumericalError("haar_unitary produced a matrix with unitarity defect " +
                             std::to_string(defect));
    }
    return q;
}

ComplexVector random_unit_vector(int d, Rng& rng) {
    if (d < 1) {
        throw ArgumentError("random_unit_vector needs dimension at least 1");
    }
    ComplexVector v(static_cast<std::size_t>(d));
    double norm = 0.0;
    // A fresh Gaussian vector is zero with probability zero; redraw if the
    // norm underflows anyway.
    do {
        for (auto& z : v) {
            z = rng.next_complex_gaussian();
        }
        norm = vector_norm(v);
    } while (norm < 1e-150);
    for (auto& z : v) {
        z /= norm;
    }
    return v;
}

}  // namespace mixcert
