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

#ifndef MIXCERT_CORE_PANINSKI_H
#define MIXCERT_CORE_PANINSKI_H

#include <cstdint>
#include <vector>

namespace mixcert {

/// Classical planted-bias family on d outcomes (d even): outcomes come in
/// d/2 consecutive pairs, and a sign vector z in {-1,+1}^{d/2} tilts each
/// pair's two outcomes to (1 -+ eps * z_a)/d. Outcome indices are 0-based;
/// even index = the minus outcome of its pair, odd index = the plus outcome.
/// The alternative hypothesis draws z uniformly; the null is the uniform
/// distribution, recovered at eps = 0 or by averaging over z. The total
/// variation distance from uniform is eps/2 for every z.
///
/// All functions validate z entries in {-1,+1} and eps in [0,1] and throw
/// ArgumentError on violations.

/// Marginal distribution q_z over d = 2 |z| outcomes.
std::vector<double> paninski_marginals(const std::vector<int>& z, double eps);

/// Per-outcome likelihood tilt: q_z(x)/u(x) - 1 = eps * s(x) * z_{x/2},
/// with s(x) = -1 for even x, +1 for odd x. Bounded by eps in magnitude.
double classical_g(const std::vector<int>& z, double eps, int outcome);

/// Cross-correlation of two tilts under the uniform outcome law:
/// E_x[g_z g_z'] = (2 eps^2 / d) <z, z'>.
double classical_phi(const std::vector<int>& z, const std::vector<int>& zp, double eps);

/// Pair-level averages over one sign: for a pair whose minus outcome was seen
/// h1 times and plus outcome h2 times,
///   a = E_z1[prod of step factors] = ((1-e)^h1 (1+e)^h2 + (1-e)^h2 (1+e)^h1)/2
///   b = E_z1[z1 * prod]            = ((1-e)^h1 (1+e)^h2 - (1-e)^h2 (1+e)^h1)/2.
struct AbPair {
    double a;
    double b;
};
AbPair ab_coefficients(std::int64_t h1, std::int64_t h2, double eps);

/// Exact likelihood ratio of a transcript against the uniform law:
/// Delta = E_z[prod_i (1 + g_z(x_i))] = prod over pairs of their a-factor.
/// Products switch to log space when t * eps^2 > 30; the result can still
/// overflow to +inf for enormous transcripts at small eps.
double delta_closed_form(const std::vector<int>& outcomes, int d, double eps);

/// Exact sign-overlap expectation
/// E_{z,z'}[<z,z'> prod_i (1+g_z(x_i))(1+g_z'(x_i))]
///   = sum_a b_a^2 prod_{a' != a} a_{a'}^2.
double inner_psi_closed_form(const std::vector<int>& outcomes, int d, double eps);

/// Exact chi-squared divergence of N-step product laws,
/// chi2(p1^N || p0^N) = E_{z,z'}[(1 + 2 eps^2 <z,z'> / d)^N] - 1, evaluated
/// through the binomial law of <z,z'>. Returns 0 for N = 0; may overflow to
/// +inf when N eps^2 is extreme.
double chisq_exact(int d, std::int64_t n, double eps);

/// Exact per-step chain-rule term of the KL decomposition at step t >= 1
/// (the step observes t-1 prior draws under the null):
///   Z_t = eps^2 * E_{l ~ Bin(t-1, 2/d)} E_{h1 ~ Bin(l, 1/2)}[b^2/a](h1, l-h1).
double zt_exact(int d, double eps, std::int64_t t);

/// Brute-force enumeration over all sign vectors and all transcripts up to
/// length t_max: exact divergences, chain-rule terms, likelihood-ratio
/// extremes, and the worst deviation of the closed forms above from direct
/// enumeration. Guard: 2^{d/2} * d^t_max <= 1e8 (ArgumentError beyond).
struct PaninskiExactTables {
    int d = 0;
    double eps = 0.0;
    int t_max = 0;
    /// chi2(p1^N || p0^N), N = 0..t_max.
    std::vector<double> chisq;
    /// KL(p1^N || p0^N) in nats, N = 0..t_max.
    std::vector<double> kl;
    /// Z_t for t = 1..t_max; zt[0] = 0 placeholder.
    std::vector<double> zt;
    /// min over transcripts of length t of the likelihood ratio, t = 0..t_max.
    std::vector<double> delta_min;
    /// max |delta_closed_form - enumerated Delta| over all transcripts.
    double max_delta_deviation = 0.0;
    /// max |inner_psi_closed_form - enumerated value| over all transcripts.
    double max_inner_psi_deviation = 0.0;
};
PaninskiExactTables enumeration_oracle(int d, double eps, int t_max);

}  // namespace mixcert

#endif
