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
#include <vector>

#include "core/errors.h"
#include "core/paninski.h"

using namespace mixcert;
using Catch::Approx;

namespace {

// All sign vectors of the given length, for brute-force cross-checks.
std::vector<std::vector<int>> all_signs(int m) {
    std::vector<std::vector<int>> out;
    for (int mask = 0; mask < (1 << m); ++mask) {
        std::vector<int> z(static_cast<std::size_t>(m));
        for (int a = 0; a < m; ++a) {
            z[static_cast<std::size_t>(a)] = (mask >> a) & 1 ? 1 : -1;
        }
        out.push_back(z);
    }
    return out;
}

// Likelihood ratio of a transcript by direct averaging over sign vectors.
double delta_by_enumeration(const std::vector<int>& outcomes, int d, double eps) {
    double acc = 0.0;
    auto signs = all_signs(d / 2);
    for (const auto& z : signs) {
        double prod = 1.0;
        for (int x : outcomes) {
            prod *= 1.0 + classical_g(z, eps, x);
        }
        acc += prod;
    }
    return acc / static_cast<double>(signs.size());
}

// Sign-overlap expectation by direct averaging over pairs of sign vectors.
double inner_psi_by_enumeration(const std::vector<int>& outcomes, int d, double eps) {
    double acc = 0.0;
    auto signs = all_signs(d / 2);
    for (const auto& z : signs) {
        for (const auto& zp : signs) {
            double inner = 0.0;
            for (std::size_t a = 0; a < z.size(); ++a) {
                inner += static_cast<double>(z[a] * zp[a]);
            }
            double prod = 1.0;
            for (int x : outcomes) {
                prod *= (1.0 + classical_g(z, eps, x)) * (1.0 + classical_g(zp, eps, x));
            }
            acc += inner * prod;
        }
    }
    return acc / static_cast<double>(signs.size() * signs.size());
}

}  // namespace

TEST_CASE("planted-bias marginals", "[paninski]") {
    SECTION("two-outcome case") {
        std::vector<double> q = paninski_marginals({1}, 0.3);
        // Even index is the minus outcome of its pair.
        REQUIRE(q.size() == 2);
        REQUIRE(q[0] == Approx((1.0 - 0.3) / 2.0).margin(1e-15));
        REQUIRE(q[1] == Approx((1.0 + 0.3) / 2.0).margin(1e-15));
    }

    SECTION("marginals sum to one and deviate by eps/2 in total variation") {
        const double eps = 0.4;
        std::vector<int> z = {1, -1, 1};
        std::vector<double> q = paninski_marginals(z, eps);
        REQUIRE(q.size() == 6);
        double sum = 0.0;
        double tv = 0.0;
        for (double qx : q) {
            sum += qx;
            tv += std::abs(qx - 1.0 / 6.0);
        }
        REQUIRE(sum == Approx(1.0).margin(1e-14));
        REQUIRE(0.5 * tv == Approx(eps / 2.0).margin(1e-14));
    }

    SECTION("domain checks") {
        REQUIRE_THROWS_AS(paninski_marginals({2}, 0.3), ArgumentError);
        REQUIRE_THROWS_AS(paninski_marginals({1}, -0.1), ArgumentError);
        REQUIRE_THROWS_AS(paninski_marginals({1}, 1.5), ArgumentError);
        REQUIRE_THROWS_AS(paninski_marginals({}, 0.3), ArgumentError);
    }
}

TEST_CASE("per-outcome tilt", "[paninski]") {
    const double eps = 0.25;
    std::vector<int> z = {1, -1};
    std::vector<double> q = paninski_marginals(z, eps);
    const double u = 1.0 / 4.0;
    for (int x = 0; x < 4; ++x) {
        double g = classical_g(z, eps, x);
        // Tilt is exactly the relative deviation of the marginal.
        REQUIRE(g == Approx(q[static_cast<std::size_t>(x)] / u - 1.0).margin(1e-14));
        REQUIRE(std::abs(g) <= eps + 1e-15);
    }
    // Sign pattern: minus on even outcomes, plus on odd, scaled by z.
    REQUIRE(classical_g(z, eps, 0) == Approx(-eps).margin(1e-15));
    REQUIRE(classical_g(z, eps, 1) == Approx(eps).margin(1e-15));
    REQUIRE(classical_g(z, eps, 2) == Approx(eps).margin(1e-15));
    REQUIRE(classical_g(z, eps, 3) == Approx(-eps).margin(1e-15));
}

TEST_CASE("tilt cross-correlation", "[paninski]") {
    const double eps = 0.5;
    SECTION("equal signs give eps squared") {
        std::vector<int> z = {1, -1, 1, 1};
        REQUIRE(classical_phi(z, z, eps) == Approx(eps * eps).margin(1e-14));
    }
    SECTION("scales with the sign overlap") {
        std::vector<int> z = {1, 1};
        std::vector<int> zp = {1, -1};
        // <z, z'> = 0 over d = 4 outcomes.
        REQUIRE(classical_phi(z, zp, eps) == Approx(0.0).margin(1e-15));
        std::vector<int> zm = {-1, -1};
        REQUIRE(classical_phi(z, zm, eps) == Approx(-eps * eps).margin(1e-14));
    }
    SECTION("matches the direct expectation over outcomes") {
        std::vector<int> z = {1, -1, -1};
        std::vector<int> zp = {1, 1, -1};
        const int d = 6;
        double acc = 0.0;
        for (int x = 0; x < d; ++x) {
            acc += classical_g(z, eps, x) * classical_g(zp, eps, x) / d;
        }
        REQUIRE(classical_phi(z, zp, eps) == Approx(acc).margin(1e-14));
    }
}

TEST_CASE("pair average coefficients", "[paninski]") {
    const double eps = 0.3;
    SECTION("hand values") {
        AbPair p10 = ab_coefficients(1, 0, eps);
        REQUIRE(p10.a == Approx(1.0).margin(1e-15));
        REQUIRE(p10.b == Approx(-eps).margin(1e-15));
        AbPair p00 = ab_coefficients(0, 0, eps);
        REQUIRE(p00.a == Approx(1.0).margin(1e-15));
        REQUIRE(p00.b == Approx(0.0).margin(1e-15));
        AbPair p20 = ab_coefficients(2, 0, eps);
        REQUIRE(p20.a == Approx(1.0 + eps * eps).margin(1e-15));
        AbPair p01 = ab_coefficients(0, 1, eps);
        REQUIRE(p01.b == Approx(eps).margin(1e-15));
    }
    SECTION("equal counts kill the odd part") {
        REQUIRE(ab_coefficients(3, 3, eps).b == Approx(0.0).margin(1e-15));
        REQUIRE(ab_coefficients(7, 7, eps).b == Approx(0.0).margin(1e-15));
    }
    SECTION("matches direct averaging over the pair sign") {
        const std::int64_t h1 = 3;
        const std::int64_t h2 = 5;
        // z = +1 tilts the pair to ((1-e)/d, (1+e)/d).
        const double plus = std::pow(1.0 - eps, static_cast<double>(h1)) *
                            std::pow(1.0 + eps, static_cast<double>(h2));
        const double minus = std::pow(1.0 + eps, static_cast<double>(h1)) *
                             std::pow(1.0 - eps, static_cast<double>(h2));
        AbPair p = ab_coefficients(h1, h2, eps);
        REQUIRE(p.a == Approx(0.5 * (plus + minus)).margin(1e-14));
        REQUIRE(p.b == Approx(0.5 * (plus - minus)).margin(1e-14));
    }
    SECTION("domain checks") {
        REQUIRE_THROWS_AS(ab_coefficients(-1, 0, eps), ArgumentError);
        REQUIRE_THROWS_AS(ab_coefficients(0, 0, -0.5), ArgumentError);
    }
}

TEST_CASE("closed-form likelihood ratio", "[paninski]") {
    SECTION("empty and single-outcome transcripts are neutral") {
        REQUIRE(delta_closed_form({}, 4, 0.5) == Approx(1.0).margin(1e-15));
        for (int x = 0; x < 4; ++x) {
            REQUIRE(delta_closed_form({x}, 4, 0.5) == Approx(1.0).margin(1e-14));
        }
    }

    SECTION("matches brute-force enumeration") {
        const int d = 4;
        for (double eps : {0.25, 0.5, 0.9}) {
            for (const std::vector<int>& outcomes :
                 {std::vector<int>{0, 1, 2}, std::vector<int>{0, 0, 0, 0},
                  std::vector<int>{3, 2, 1, 0, 3}, std::vector<int>{1, 1, 3}}) {
                REQUIRE(delta_closed_form(outcomes, d, eps) ==
                        Approx(delta_by_enumeration(outcomes, d, eps)).margin(1e-13));
            }
        }
    }

    SECTION("repeating one outcome tilts the ratio up") {
        // All mass on outcome 0: the a-factor of its pair is
        // ((1-e)^t + (1+e)^t)/2 > 1 for t >= 2.
        const double eps = 0.5;
        std::vector<int> run(6, 0);
        const double expect =
            0.5 * (std::pow(1.0 - eps, 6.0) + std::pow(1.0 + eps, 6.0));
        REQUIRE(delta_closed_form(run, 4, eps) == Approx(expect).margin(1e-13));
    }
}

TEST_CASE("closed-form sign overlap", "[paninski]") {
    SECTION("empty transcript has zero overlap") {
        REQUIRE(inner_psi_closed_form({}, 4, 0.5) == Approx(0.0).margin(1e-15));
    }
    SECTION("matches brute-force enumeration") {
        const int d = 4;
        for (double eps : {0.25, 0.5}) {
            for (const std::vector<int>& outcomes :
                 {std::vector<int>{0}, std::vector<int>{0, 1, 2},
                  std::vector<int>{0, 0, 2, 3}, std::vector<int>{1, 3, 3, 1, 0}}) {
                REQUIRE(inner_psi_closed_form(outcomes, d, eps) ==
                        Approx(inner_psi_by_enumeration(outcomes, d, eps)).margin(1e-13));
            }
        }
    }
}

TEST_CASE("exact chi-squared divergence", "[paninski]") {
    SECTION("no data means no divergence") {
        REQUIRE(chisq_exact(4, 0, 0.5) == 0.0);
    }
    SECTION("one draw is uninformative") {
        // The sign overlap has mean zero, so the N = 1 value vanishes up to
        // cancellation noise in the binomial sum.
        REQUIRE(chisq_exact(4, 1, 0.5) == Approx(0.0).margin(1e-14));
        REQUIRE(chisq_exact(16, 1, 0.25) == Approx(0.0).margin(1e-13));
    }
    SECTION("two draws at d = 2 give eps to the fourth") {
        for (double eps : {0.25, 0.5, 1.0}) {
            REQUIRE(chisq_exact(2, 2, eps) == Approx(std::pow(eps, 4.0)).margin(1e-14));
        }
    }
    SECTION("grows with the number of draws") {
        double prev = 0.0;
        for (std::int64_t n = 0; n <= 6; ++n) {
            double cur = chisq_exact(8, n, 0.5);
            REQUIRE(cur >= prev - 1e-15);
            prev = cur;
        }
    }
}

TEST_CASE("exact chain-rule terms", "[paninski]") {
    SECTION("first step is free") {
        REQUIRE(zt_exact(4, 0.5, 1) == Approx(0.0).margin(1e-15));
    }
    SECTION("second step hand value") {
        // Z_2 = 2 eps^4 / d: the prior draw lands in the step's pair with
        // probability 2/d and contributes b^2/a = eps^2 there.
        REQUIRE(zt_exact(4, 0.5, 2) == Approx(2.0 * std::pow(0.5, 4.0) / 4.0).margin(1e-14));
        REQUIRE(zt_exact(8, 0.25, 2) == Approx(2.0 * std::pow(0.25, 4.0) / 8.0).margin(1e-14));
    }
    SECTION("terms are nonnegative") {
        for (std::int64_t t = 1; t <= 8; ++t) {
            REQUIRE(zt_exact(6, 0.5, t) >= 0.0);
        }
    }
}

TEST_CASE("enumeration oracle", "[paninski]") {
    SECTION("closed forms agree with enumeration to machine precision") {
        for (int d : {2, 4}) {
            PaninskiExactTables tbl = enumeration_oracle(d, 0.5, 4);
            REQUIRE(tbl.max_delta_deviation <= 1e-12);
            REQUIRE(tbl.max_inner_psi_deviation <= 1e-12);
            REQUIRE(tbl.chisq.size() == 5);
            REQUIRE(tbl.kl.size() == 5);
            REQUIRE(tbl.zt.size() == 5);
            REQUIRE(tbl.delta_min.size() == 5);
        }
    }

    SECTION("single-draw divergences vanish") {
        PaninskiExactTables tbl = enumeration_oracle(4, 0.5, 3);
        REQUIRE(tbl.chisq[0] == 0.0);
        REQUIRE(tbl.kl[0] == 0.0);
        REQUIRE(tbl.kl[1] == Approx(0.0).margin(1e-14));
        REQUIRE(tbl.zt[0] == 0.0);
        REQUIRE(tbl.zt[1] == Approx(0.0).margin(1e-14));
        REQUIRE(tbl.delta_min[0] == Approx(1.0).margin(1e-15));
        REQUIRE(tbl.delta_min[1] == Approx(1.0).margin(1e-12));
    }

    SECTION("chain rule dominates the kl divergence") {
        PaninskiExactTables tbl = enumeration_oracle(4, 0.5, 5);
        double running = 0.0;
        for (std::size_t t = 1; t < tbl.kl.size(); ++t) {
            running += tbl.zt[t];
            REQUIRE(tbl.kl[t] <= running + 1e-12);
        }
    }

    SECTION("likelihood ratio floor decays at most like a half power") {
        for (double eps : {0.25, 0.5}) {
            PaninskiExactTables tbl = enumeration_oracle(4, eps, 5);
            for (std::size_t len = 0; len < tbl.delta_min.size(); ++len) {
                const double floor =
                    std::pow(1.0 - eps * eps, static_cast<double>(len) / 2.0);
                REQUIRE(tbl.delta_min[len] >= floor - 1e-12);
            }
        }
    }

    SECTION("tables match the standalone closed forms") {
        PaninskiExactTables tbl = enumeration_oracle(4, 0.5, 4);
        for (std::size_t n = 0; n < tbl.chisq.size(); ++n) {
            REQUIRE(tbl.chisq[n] ==
                    Approx(chisq_exact(4, static_cast<std::int64_t>(n), 0.5)).margin(1e-12));
        }
        for (std::size_t t = 1; t < tbl.zt.size(); ++t) {
            REQUIRE(tbl.zt[t] ==
                    Approx(zt_exact(4, 0.5, static_cast<std::int64_t>(t))).margin(1e-12));
        }
    }

    SECTION("budget guard") {
        REQUIRE_THROWS_AS(enumeration_oracle(30, 0.5, 10), ArgumentError);
        REQUIRE_THROWS_AS(enumeration_oracle(4, 0.5, -1), ArgumentError);
    }
}
