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

#ifndef MIXCERT_CORE_COLLISION_H
#define MIXCERT_CORE_COLLISION_H

#include <cstdint>
#include <vector>

namespace mixcert {

enum class UniformityVerdict {
    kUniform,
    kFar,
};

const char* uniformity_verdict_name(UniformityVerdict verdict);

// Number of equal pairs among the samples, computed from per-symbol counts
// as sum_j C(c_j, 2). Samples must lie in [0, d).
std::int64_t collision_count(const std::vector<int>& samples, int d);

// Samples needed to detect L2 distance eps'/sqrt(d) from uniform over [d]:
// ceil(kL2SampleConstant * sqrt(d) / eps'^2). Requires eps' in (0, 1].
std::int64_t required_samples_l2(int d, double eps_prime);

// Full record of one collision test, for reporting.
struct CollisionTest {
    int d = 0;
    double eps_prime = 0.0;
    std::int64_t n = 0;
    std::int64_t s = 0;
    double threshold = 0.0;
    UniformityVerdict verdict = UniformityVerdict::kUniform;
};

// Collision verdict with no sample-count floor: uniform iff
// S <= C(N,2) (1 + eps'^2/2)/d. The midpoint splits E[S] under uniformity
// (||q||_2^2 = 1/d) from the far case (||q||_2^2 >= (1 + eps'^2)/d).
// Callers own the guarantee that N is large enough for their error budget;
// use test_uniformity_l2 for the standalone guarantee. Needs N >= 2.
CollisionTest collision_verdict(const std::vector<int>& samples, int d, double eps_prime);

// Guarded tester: rejects inputs with fewer than required_samples_l2
// samples, then applies collision_verdict.
UniformityVerdict test_uniformity_l2(const std::vector<int>& samples, int d, double eps_prime);

}  // namespace mixcert

#endif
