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

#include <cstdint>
#include <string>

#include "core/certifier.h"
#include "core/errors.h"
#include "core/rng.h"
#include "core/states.h"

using namespace mixcert;
using Catch::Approx;

TEST_CASE("copy budget", "[certifier]") {
    SECTION("exact values") {
        // ceil(24 d^{3/2} / eps^2).
        REQUIRE(copies_needed(16, 0.5) == 6144);
        REQUIRE(copies_needed(8, 0.5) == 2173);
        REQUIRE(copies_needed(4, 1.0) == 192);
        REQUIRE(copies_needed(100, 0.25) == 384000);
    }
    SECTION("domain checks") {
        REQUIRE_THROWS_AS(copies_needed(0, 0.5), ArgumentError);
        REQUIRE_THROWS_AS(copies_needed(4, 0.0), ArgumentError);
        REQUIRE_THROWS_AS(copies_needed(4, 1.5), ArgumentError);
    }
    SECTION("verdict names") {
        REQUIRE(std::string(certify_verdict_name(CertifyVerdict::kYes)) == "YES");
        REQUIRE(std::string(certify_verdict_name(CertifyVerdict::kNo)) == "NO");
    }
}

TEST_CASE("mixedness certification verdicts", "[certifier]") {
    const int d = 16;
    const double eps = 0.5;

    SECTION("accepts the flat state and rejects planted far states") {
        StateSource mixed = StateSource::mixed(d);
        StateSource hard = StateSource::hard(d, eps);
        int yes = 0;
        int no = 0;
        const int trials = 30;
        Rng root(512);
        for (int t = 0; t < trials; ++t) {
            Rng rm = root.derive(static_cast<std::uint64_t>(2 * t));
            Rng rh = root.derive(static_cast<std::uint64_t>(2 * t + 1));
            if (test_mixed(mixed, d, eps, rm).verdict == CertifyVerdict::kYes) {
                yes++;
            }
            if (test_mixed(hard, d, eps, rh).verdict == CertifyVerdict::kNo) {
                no++;
            }
        }
        REQUIRE(yes >= 24);
        REQUIRE(no >= 24);
    }

    SECTION("rejects a pure state") {
        StateSource pure = StateSource::pure(d);
        Rng rng(77);
        REQUIRE(test_mixed(pure, d, eps, rng).verdict == CertifyVerdict::kNo);
    }

    SECTION("result record is filled in") {
        StateSource mixed = StateSource::mixed(d);
        Rng rng(99);
        CertifyResult r = test_mixed(mixed, d, eps, rng);
        REQUIRE(r.d == d);
        REQUIRE(r.eps == eps);
        REQUIRE(r.n == copies_needed(d, eps));
        REQUIRE(r.seed == 99);
        REQUIRE(r.threshold > 0.0);
        REQUIRE(r.s >= 0);
    }

    SECTION("deterministic in the seed") {
        StateSource hard = StateSource::hard(d, eps);
        Rng r1(123);
        Rng r2(123);
        CertifyResult a = test_mixed(hard, d, eps, r1);
        CertifyResult b = test_mixed(hard, d, eps, r2);
        REQUIRE(a.verdict == b.verdict);
        REQUIRE(a.s == b.s);
        REQUIRE(a.threshold == b.threshold);
    }
}

TEST_CASE("certification with explicit sample counts", "[certifier]") {
    const int d = 8;
    const double eps = 0.5;
    StateSource mixed = StateSource::mixed(d);

    SECTION("uses the caller's n") {
        Rng rng(5);
        CertifyResult r = test_mixed_with_samples(mixed, d, eps, 500, rng);
        REQUIRE(r.n == 500);
    }

    SECTION("needs at least two samples") {
        Rng rng(6);
        REQUIRE_THROWS_AS(test_mixed_with_samples(mixed, d, eps, 1, rng), ArgumentError);
    }

    SECTION("dimension must match the source") {
        Rng rng(7);
        REQUIRE_THROWS_AS(test_mixed_with_samples(mixed, 4, eps, 100, rng),
                          ArgumentError);
    }

    SECTION("matches the default tester at the default budget") {
        Rng r1(11);
        Rng r2(11);
        CertifyResult a = test_mixed(mixed, d, eps, r1);
        CertifyResult b = test_mixed_with_samples(mixed, d, eps, copies_needed(d, eps), r2);
        REQUIRE(a.verdict == b.verdict);
        REQUIRE(a.s == b.s);
    }
}
