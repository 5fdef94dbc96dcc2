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

#include "core/collision.h"

#include <cmath>

#include "core/calibration.h"
#include "core/errors.h"

namespace mixcert {

const char* uniformity_verdict_name(UniformityVerdict verdict) {
    return verdict == UniformityVerdict::kUniform ? "uniform" : "far";
}

std::int64_t collision_count(const std::vector<int>& samples, int d) {
    if (d < 1) {
        throw ArgumentError("collision_count needs d >= 1");
    }
    std::vector<std::int64_t> counts(static_cast<std::size_t>(d), 0);
    for (int x : samples) {
        if (x < 0 || x >= d) {
            throw ArgumentError("collision_count sample out of range");
        }
        ++counts[static_cast<std::size_t>(x)];
    }
    std::int64_t s = 0;
    for (std::int64_t c : counts) {
        s += c * (c - 1) / 2;
    }
    return s;
}

std::int64_t required_samples_l2(int d, double eps_prime) {
    if (d < 1) {
        throw ArgumentError("required_samples_l2 needs d >= 1");
    }
    if (!(eps_prime > 0.0) || eps_prime > 1.0) {
        throw ArgumentError("required_samples_l2 needs eps_prime in (0, 1]");
    }
    const double n =
        std::ceil(kL2SampleConstant * std::sqrt(static_cast<double>(d)) /
                  (eps_prime * eps_prime));
    return static_cast<std::int64_t>(n);
}

CollisionTest collision_verdict(const std::vector<int>& samples, int d, double eps_prime) {
    if (!(eps_prime > 0.0) || eps_prime > 1.0) {
        throw ArgumentError("collision_verdict needs eps_prime in (0, 1]");
    }
    const std::int64_t n = static_cast<std::int64_t>(samples.size());
    if (n < 2) {
        throw ArgumentError("collision_verdict needs at least 2 samples");
    }
    CollisionTest result;
    result.d = d;
    result.eps_prime = eps_prime;
    result.n = n;
    result.s = collision_count(samples, d);
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    result.threshold =
        pairs * (1.0 + eps_prime * eps_prime / 2.0) / static_cast<double>(d);
    result.verdict = (static_cast<double>(result.s) <= result.threshold)
                         ? UniformityVerdict::kUniform
                         : UniformityVerdict::kFar;
    return result;
}

UniformityVerdict test_uniformity_l2(const std::vector<int>& samples, int d,
                                     double eps_prime) {
    const std::int64_t need = required_samples_l2(d, eps_prime);
    if (static_cast<std::int64_t>(samples.size()) < need) {
        throw ArgumentError("test_uniformity_l2 needs at least required_samples_l2 samples");
    }
    return collision_verdict(samples, d, eps_prime).verdict;
}

}  // namespace mixcert
