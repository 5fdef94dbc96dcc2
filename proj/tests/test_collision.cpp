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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "core/collision.h"
#include "core/errors.h"
#include "core/povm.h"
#include "core/rng.h"

using namespace mixcert;
using Catch::Approx;

namespace {

// Marginal with alternating per-symbol tilt (1 +- eps')/d: its L2 distance
// from uniform is exactly eps'/sqrt(d).
std::vector<double> alternating_far_law(int d, double eps_prime) {
    std::vector<double> q(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        q[static_cast<std::size_t>(j)] = (1.0 + (j % 2 == 0 ? eps_prime : -eps_prime)) / d;
    }
    return q;
}

}  // namespace

TEST_CASE("collision counting", "[collision]") {
    SECTION("hand values") {
        REQUIRE(collision_count({0, 1, 2}, 3) == 0);
        REQUIRE(collision_count({0, 0, 1}, 2) == 1);
        // Counts 3 and 2: C(3,2) + C(2,2) = 4.
        REQUIRE(collision_count({0, 0, 0, 1, 1}, 2) == 4);
        REQUIRE(collision_count({5, 5, 5, 5}, 6) == 6);
        REQUIRE(collision_count({}, 4) == 0);
    }
    SECTION("out-of-range samples are rejected") {
        REQUIRE_THROWS_AS(collision_count({0, 3}, 3), ArgumentError);
        REQUIRE_THROWS_AS(collision_count({-1}, 3), ArgumentError);
        REQUIRE_THROWS_AS(collision_count({0}, 0), ArgumentError);
    }
}

TEST_CASE("sample-size rule for l2 testing", "[collision]") {
    SECTION("exact values") {
        // ceil(16 sqrt(d) / eps'^2).
        REQUIRE(required_samples_l2(100, 1.0) == 160);
        REQUIRE(required_samples_l2(100, 0.5) == 640);
        REQUIRE(required_samples_l2(4, 1.0) == 32);
        REQUIRE(required_samples_l2(2, 1.0) ==
                static_cast<std::int64_t>(std::ceil(16.0 * std::sqrt(2.0))));
    }
    SECTION("domain checks") {
        REQUIRE_THROWS_AS(required_samples_l2(0, 0.5), ArgumentError);
        REQUIRE_THROWS_AS(required_samples_l2(4, 0.0), ArgumentError);
        REQUIRE_THROWS_AS(required_samples_l2(4, 1.5), ArgumentError);
    }
}

TEST_CASE("collision verdict", "[collision]") {
    SECTION("threshold matches the closed form") {
        std::vector<int> samples = {0, 1, 2, 3, 0};
        CollisionTest t = collision_verdict(samples, 8, 0.5);
        const double pairs = 5.0 * 4.0 / 2.0;
        REQUIRE(t.threshold == Approx(pairs * (1.0 + 0.25 / 2.0) / 8.0).margin(1e-12));
        REQUIRE(t.n == 5);
        REQUIRE(t.s == 1);
        REQUIRE(t.d == 8);
        REQUIRE(t.eps_prime == 0.5);
    }

    SECTION("extreme inputs decide both ways") {
        // All distinct: zero collisions, always uniform.
        CollisionTest u = collision_verdict({0, 1, 2, 3}, 4, 0.5);
        REQUIRE(u.verdict == UniformityVerdict::kUniform);
        // All equal: C(N,2) collisions, far beyond any threshold with d >= 2.
        CollisionTest f = collision_verdict({1, 1, 1, 1, 1, 1}, 4, 0.5);
        REQUIRE(f.verdict == UniformityVerdict::kFar);
    }

    SECTION("needs at least two samples") {
        REQUIRE_THROWS_AS(collision_verdict({0}, 4, 0.5), ArgumentError);
    }

    SECTION("verdict names") {
        REQUIRE(std::string(uniformity_verdict_name(UniformityVerdict::kUniform)) ==
                "uniform");
        REQUIRE(std::string(uniformity_verdict_name(UniformityVerdict::kFar)) == "far");
    }
}

TEST_CASE("guarded l2 tester", "[collision]") {
    SECTION("rejects underpowered inputs") {
        // d = 100 at eps' = 1 needs 160 samples.
        std::vector<int> few(159, 0);
        REQUIRE_THROWS_AS(test_uniformity_l2(few, 100, 1.0), ArgumentError);
    }

    SECTION("separates uniform from an exactly calibrated far law") {
        const int d = 100;
        const double eps_prime = 1.0;
        const std::int64_t n = required_samples_l2(d, eps_prime);
        std::vector<double> uniform(static_cast<std::size_t>(d), 1.0 / d);
        std::vector<double> far = alternating_far_law(d, eps_prime);

        int uniform_ok = 0;
        int far_ok = 0;
        const int trials = 100;
        Rng root(2024);
        for (int t = 0; t < trials; ++t) {
            Rng ru = root.derive(static_cast<std::uint64_t>(2 * t));
            Rng rf = root.derive(static_cast<std::uint64_t>(2 * t + 1));
            std::vector<int> su = sample_outcomes(uniform, n, ru);
            std::vector<int> sf = sample_outcomes(far, n, rf);
            if (test_uniformity_l2(su, d, eps_prime) == UniformityVerdict::kUniform) {
                uniform_ok++;
            }
            if (test_uniformity_l2(sf, d, eps_prime) == UniformityVerdict::kFar) {
                far_ok++;
            }
        }
        REQUIRE(uniform_ok >= 85);
        REQUIRE(far_ok >= 85);
    }
}
