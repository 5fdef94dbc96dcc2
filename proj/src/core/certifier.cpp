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

#include "core/certifier.h"

#include <cmath>
#include <vector>

#include "core/calibration.h"
#include "core/collision.h"
#include "core/errors.h"
#include "core/haar.h"
#include "core/povm.h"

namespace mixcert {

const char* certify_verdict_name(CertifyVerdict verdict) {
    return verdict == CertifyVerdict::kYes ? "YES" : "NO";
}

std::int64_t copies_needed(int d, double eps) {
    if (d < 1) {
        throw ArgumentError("copies_needed requires d >= 1");
    }
    if (!(eps > 0.0) || eps > 1.0) {
        throw ArgumentError("copies_needed requires eps in (0, 1]");
    }
    const double dd = static_cast<double>(d);
    return static_cast<std::int64_t>(
        std::ceil(kCertifierSampleConstant * dd * std::sqrt(dd) / (eps * eps)));
}

CertifyResult test_mixed(const StateSource& source, int d, double eps, Rng& rng) {
    return test_mixed_with_samples(source, d, eps, copies_needed(d, eps), rng);
}

CertifyResult test_mixed_with_samples(const StateSource& source, int d, double eps,
                                      std::int64_t n, Rng& rng) {
    if (source.dim() != d) {
        throw ArgumentError("test_mixed state source dimension mismatch");
    }
    if (!(eps > 0.0) || eps > 1.0) {
        throw ArgumentError("test_mixed requires eps in (0, 1]");
    }
    if (n < 2) {
        throw ArgumentError("test_mixed needs at least 2 samples");
    }

    Rng basis_rng = rng.derive(0);
    Rng state_rng = rng.derive(1);
    Rng sample_rng = rng.derive(2);

    const DensityMatrix rho = source.draw(state_rng);
    const ComplexMatrix u = haar_unitary(d, basis_rng);

    // Outcome law of the basis measurement: q_x = (U^dagger rho U)_xx.
    const ComplexMatrix ru = multiply(rho.matrix(), u);
    std::vector<double> q(static_cast<std::size_t>(d));
    double total = 0.0;
    for (int x = 0; x < d; ++x) {
        Complex v(0.0, 0.0);
        for (int i = 0; i < d; ++i) {
            v += std::conj(u(i, x)) * ru(i, x);
        }
        double p = v.real();
        if (p < -1e-12) {
            throw ConsistencyError("test_mixed produced a negative outcome probability");
        }
        p = std::max(p, 0.0);
        q[static_cast<std::size_t>(x)] = p;
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-6) {
        throw ConsistencyError("test_mixed outcome probabilities do not sum to 1");
    }
    for (double& p : q) {
        p /= total;
    }

    const std::vector<int> samples = sample_outcomes(q, n, sample_rng);
    const CollisionTest ct =
        collision_verdict(samples, d, eps / (2.0 * std::sqrt(static_cast<double>(d))));

    CertifyResult result;
    result.verdict = (ct.verdict == UniformityVerdict::kUniform) ? CertifyVerdict::kYes
                                                                 : CertifyVerdict::kNo;
    result.d = d;
    result.eps = eps;
    result.n = n;
    result.s = ct.s;
    result.threshold = ct.threshold;
    result.seed = rng.seed();
    return result;
}

}  // namespace mixcert
