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

#include "core/weingarten.h"

#include <cmath>

#include "core/errors.h"

namespace mixcert {

double wg2(PermS2 pi, int d) {
    if (d < 2) {
        throw ArgumentError("wg2 needs d >= 2");
    }
    const double dd = static_cast<double>(d);
    if (pi == PermS2::kIdentity) {
        return 1.0 / (dd * dd - 1.0);
    }
    return -1.0 / (dd * (dd * dd - 1.0));
}

Complex power_trace_product(const ComplexMatrix& a, PermS2 pi) {
    if (pi == PermS2::kIdentity) {
        const Complex tr = a.trace();
        return tr * tr;
    }
    return multiply(a, a).trace();
}

double second_moment_trace(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) {
        throw ArgumentError("second_moment_trace needs matching dimensions");
    }
    const int d = a.dim();
    const double a_e = power_trace_product(a.matrix(), PermS2::kIdentity).real();
    const double a_t = power_trace_product(a.matrix(), PermS2::kTauStar).real();
    const double b_e = power_trace_product(b.matrix(), PermS2::kIdentity).real();
    const double b_t = power_trace_product(b.matrix(), PermS2::kTauStar).real();
    // Sum over (sigma, tau) in S_2 x S_2 with coefficient wg2(sigma tau^-1):
    // matching permutations hit the identity coefficient, mixed ones the
    // transposition coefficient.
    return wg2(PermS2::kIdentity, d) * (a_e * b_e + a_t * b_t) +
           wg2(PermS2::kTauStar, d) * (a_e * b_t + a_t * b_e);
}

double expected_g_squared(const HermitianMatrix& m_hat, double eps) {
    const double tr = m_hat.trace_real();
    if (std::abs(tr - 1.0) > 1e-9) {
        throw ArgumentError("expected_g_squared needs a trace-normalized element");
    }
    const int d = m_hat.dim();
    if (d < 2 || d % 2 != 0) {
        throw ArgumentError("expected_g_squared needs even d >= 2");
    }
    const double dd = static_cast<double>(d);
    const double purity = power_trace_product(m_hat.matrix(), PermS2::kTauStar).real();
    return eps * eps * dd * (purity / (dd * dd - 1.0) - 1.0 / (dd * (dd * dd - 1.0)));
}

}  // namespace mixcert
