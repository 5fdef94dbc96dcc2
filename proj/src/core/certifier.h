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

#ifndef MIXCERT_CORE_CERTIFIER_H
#define MIXCERT_CORE_CERTIFIER_H

#include <cstdint>

#include "core/rng.h"
#include "core/states.h"

namespace mixcert {

enum class CertifyVerdict {
    kYes,  // consistent with the maximally mixed state
    kNo,   // far from it
};

const char* certify_verdict_name(CertifyVerdict verdict);

// Copies required to certify mixedness at trace distance eps:
// ceil(kCertifierSampleConstant * d^{3/2} / eps^2).
// Requires d >= 1 and eps in (0, 1].
std::int64_t copies_needed(int d, double eps);

struct CertifyResult {
    CertifyVerdict verdict = CertifyVerdict::kYes;
    int d = 0;
    double eps = 0.0;
    std::int64_t n = 0;          // samples drawn
    std::int64_t s = 0;          // collision statistic
    double threshold = 0.0;
    RngSeed seed = 0;            // seed of the rng handed in
};

// One mixedness certification: draw a state from `source`, measure
// copies_needed(d, eps) samples in a single Haar-random basis, and accept
// iff the collision count stays below the uniformity threshold at inner
// detection radius eps/(2d) in L2 (parameter eps/(2 sqrt(d))). The halved
// radius leaves room for the far case's basis-dependent L2 fluctuation.
// The rng covers basis choice, state draw, and outcome sampling through
// derived streams, so the verdict is a function of (seed, source).
CertifyResult test_mixed(const StateSource& source, int d, double eps, Rng& rng);

// Same procedure with an explicit sample count (n >= 2) instead of
// copies_needed; the guarantee then scales with the caller's n.
CertifyResult test_mixed_with_samples(const StateSource& source, int d, double eps,
                                      std::int64_t n, Rng& rng);

}  // namespace mixcert

#endif
