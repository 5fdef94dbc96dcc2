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

#include "core/eigh.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "core/errors.h"

namespace mixcert {

namespace {

double offdiagonal_hs_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int p = 0; p < a.dim(); ++p) {
        for (int q = 0; q < a.dim(); ++q) {
            if (p != q) {
                s += std::norm(a(p, q));
            }
        }
    }
    return std::sqrt(s);
}

}  // namespace

EighResult jacobi_eigh(const HermitianMatrix& h) {
    const int d = h.dim();
    ComplexMatrix a = h.matrix();
    ComplexMatrix v = ComplexMatrix::identity(d);

    const double scale = a.hs_norm();
    const double target = 1e-12 * scale;
    constexpr int kMaxSweeps = 100;

    double off = offdiagonal_hs_norm(a);
    int sweep = 0;
    while (off > target && sweep < kMaxSweeps) {
        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                // Rotations on entries far below the target only cost time.
                if (mag <= target / (10.0 * d)) {
                    continue;
                }
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const Complex phase = apq / mag;
                // tan(theta) solves t^2 - 2 tau t - 1 = 0; smaller-magnitude
                // root keeps the rotation angle below pi/4.
                const double tau = (aqq - app) / (2.0 * mag);
                double t;
                if (tau >= 0.0) {
                    t = -1.0 / (tau + std::sqrt(1.0 + tau * tau));
                } else {
                    t = 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Plane rotation J: J(p,p) = J(q,q) = c, J(p,q) = -s e^{i phi},
                // J(q,p) = s e^{-i phi} with e^{i phi} = apq/|apq|. Apply
                // A <- J^dagger A J (columns first, then rows) and V <- V J.
                const Complex spq = s * phase;
                for (int k = 0; k < d; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * c + akq * s * std::conj(phase);
                    a(k, q) = -akp * spq + akq * c;
                }
                for (int k = 0; k < d; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk + spq * aqk;
                    a(q, k) = -s * std::conj(phase) * apk + c * aqk;
                }
                a(p, q) = Complex(0.0, 0.0);
                a(q, p) = Complex(0.0, 0.0);
                a(p, p) = Complex(a(p, p).real(), 0.0);
                a(q, q) = Complex(a(q, q).real(), 0.0);
                for (int k = 0; k < d; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * s * std::conj(phase);
                    v(k, q) = -vkp * spq + vkq * c;
                }
            }
        }
        off = offdiagonal_hs_norm(a);
        ++sweep;
    }

    if (off > target) {
        throw NumericalError("jacobi_eigh did not converge in 100 sweeps; off-diagonal residual " +
                             std::to_string(off) + " vs target " + std::to_string(target));
    }

    std::vector<int> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&a](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EighResult result;
    result.eigenvalues.resize(static_cast<std::size_t>(d));
    result.eigenvectors = ComplexMatrix(d);
    for (int j = 0; j < d; ++j) {
        const int src = order[static_cast<std::size_t>(j)];
        result.eigenvalues[static_cast<std::size_t>(j)] = a(src, src).real();
        for (int i = 0; i < d; ++i) {
            result.eigenvectors(i, j) = v(i, src);
        }
    }
    return result;
}

double trace_norm(const HermitianMatrix& h) {
    EighResult e = jacobi_eigh(h);
    double s = 0.0;
    for (double lambda : e.eigenvalues) {
        s += std::abs(lambda);
    }
    return s;
}

}  // namespace mixcert
