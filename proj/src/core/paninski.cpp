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

#include "core/paninski.h"

#include <cmath>
#include <limits>

#include "core/errors.h"
#include "core/stats.h"

namespace mixcert {

namespace {

void check_eps(double eps) {
    if (!(eps >= 0.0) || eps > 1.0) {
        throw ArgumentError("eps must lie in [0, 1]");
    }
}

void check_signs(const std::vector<int>& z) {
    if (z.empty()) {
        throw ArgumentError("sign vector must be nonempty");
    }
    for (int s : z) {
        if (s != 1 && s != -1) {
            throw ArgumentError("sign vector entries must be +1 or -1");
        }
    }
}

void check_dim(int d) {
    if (d < 2 || d % 2 != 0) {
        throw ArgumentError("outcome dimension must be even and >= 2");
    }
}

int outcome_sign(int x) { return (x % 2 == 0) ? -1 : 1; }

// log A(h1, h2); -inf when A = 0 (only possible at eps = 1).
double log_a(std::int64_t h1, std::int64_t h2, double eps) {
    const double lm = std::log1p(-eps);  // log(1-eps), -inf at eps = 1
    const double lp = std::log1p(eps);
    const double t1 = static_cast<double>(h1) * lm + static_cast<double>(h2) * lp;
    const double t2 = static_cast<double>(h2) * lm + static_cast<double>(h1) * lp;
    const double hi = std::max(t1, t2);
    if (hi == -std::numeric_limits<double>::infinity()) {
        return hi;
    }
    return hi + std::log(0.5 * (std::exp(t1 - hi) + std::exp(t2 - hi)));
}

// log |B(h1, h2)| and the sign of B; sign 0 when B = 0.
struct SignedLog {
    double log_abs;
    int sign;
};
SignedLog log_b(std::int64_t h1, std::int64_t h2, double eps) {
    if (h1 == h2 || eps == 0.0) {
        return {-std::numeric_limits<double>::infinity(), 0};
    }
    const double lm = std::log1p(-eps);
    const double lp = std::log1p(eps);
    const double t1 = static_cast<double>(h1) * lm + static_cast<double>(h2) * lp;
    const double t2 = static_cast<double>(h2) * lm + static_cast<double>(h1) * lp;
    // t1 > t2 iff h1 < h2 (more plus observations tilt toward z = +1).
    const double hi = std::max(t1, t2);
    const double lo = std::min(t1, t2);
    if (hi == -std::numeric_limits<double>::infinity()) {
        return {hi, 0};
    }
    const double diff = -std::expm1(lo - hi);  // 1 - exp(lo - hi) in (0, 1]
    return {hi + std::log(0.5 * diff), (t1 > t2) ? 1 : -1};
}

// b^2 / a for one pair; defined as 0 when a = 0 (then b = 0 too).
double b_squared_over_a(std::int64_t h1, std::int64_t h2, double eps) {
    const double la = log_a(h1, h2, eps);
    if (la == -std::numeric_limits<double>::infinity()) {
        return 0.0;
    }
    const SignedLog lb = log_b(h1, h2, eps);
    if (lb.sign == 0) {
        return 0.0;
    }
    return std::exp(2.0 * lb.log_abs - la);
}

std::vector<std::int64_t> outcome_histogram(const std::vector<int>& outcomes, int d) {
    std::vector<std::int64_t> h(static_cast<std::size_t>(d), 0);
    for (int x : outcomes) {
        if (x < 0 || x >= d) {
            throw ArgumentError("transcript outcome out of range");
        }
        ++h[static_cast<std::size_t>(x)];
    }
    return h;
}

}  // namespace

std::vector<double> paninski_marginals(const std::vector<int>& z, double eps) {
    check_signs(z);
    check_eps(eps);
    const int d = 2 * static_cast<int>(z.size());
    std::vector<double> q(static_cast<std::size_t>(d));
    for (int x = 0; x < d; ++x) {
        q[static_cast<std::size_t>(x)] =
            (1.0 + eps * outcome_sign(x) * z[static_cast<std::size_t>(x / 2)]) / d;
    }
    return q;
}

double classical_g(const std::vector<int>& z, double eps, int outcome) {
    check_signs(z);
    check_eps(eps);
    const int d = 2 * static_cast<int>(z.size());
    if (outcome < 0 || outcome >= d) {
        throw ArgumentError("outcome index out of range");
    }
    return eps * outcome_sign(outcome) * z[static_cast<std::size_t>(outcome / 2)];
}

double classical_phi(const std::vector<int>& z, const std::vector<int>& zp, double eps) {
    check_signs(z);
    check_signs(zp);
    check_eps(eps);
    if (z.size() != zp.size()) {
        throw ArgumentError("sign vectors must have equal length");
    }
    const double d = 2.0 * static_cast<double>(z.size());
    double inner = 0.0;
    for (std::size_t a = 0; a < z.size(); ++a) {
        inner += static_cast<double>(z[a] * zp[a]);
    }
    return 2.0 * eps * eps * inner / d;
}

AbPair ab_coefficients(std::int64_t h1, std::int64_t h2, double eps) {
    if (h1 < 0 || h2 < 0) {
        throw ArgumentError("ab_coefficients needs nonnegative counts");
    }
    check_eps(eps);
    const double t1 = std::pow(1.0 - eps, static_cast<double>(h1)) *
                      std::pow(1.0 + eps, static_cast<double>(h2));
    const double t2 = std::pow(1.0 - eps, static_cast<double>(h2)) *
                      std::pow(1.0 + eps, static_cast<double>(h1));
    return {0.5 * (t1 + t2), 0.5 * (t1 - t2)};
}

double delta_closed_form(const std::vector<int>& outcomes, int d, double eps) {
    check_dim(d);
    check_eps(eps);
    const std::vector<std::int64_t> h = outcome_histogram(outcomes, d);
    const auto t = static_cast<double>(outcomes.size());

    if (t * eps * eps > 30.0) {
        double log_total = 0.0;
        for (int a = 0; a < d / 2; ++a) {
            const double la = log_a(h[static_cast<std::size_t>(2 * a)],
                                    h[static_cast<std::size_t>(2 * a + 1)], eps);
            if (la == -std::numeric_limits<double>::infinity()) {
                return 0.0;
            }
            log_total += la;
        }
        return std::exp(log_total);
    }

    double total = 1.0;
    for (int a = 0; a < d / 2; ++a) {
        total *= ab_coefficients(h[static_cast<std::size_t>(2 * a)],
                                 h[static_cast<std::size_t>(2 * a + 1)], eps)
                     .a;
    }
    return total;
}

double inner_psi_closed_form(const std::vector<int>& outcomes, int d, double eps) {
    check_dim(d);
    check_eps(eps);
    const std::vector<std::int64_t> h = outcome_histogram(outcomes, d);
    const auto t = static_cast<double>(outcomes.size());
    const int pairs = d / 2;

    if (t * eps * eps > 30.0) {
        // sum_a exp(2 log|b_a| + sum_{a' != a} 2 log a_{a'}); track the zero
        // a-factors separately since their logs are -inf.
        std::vector<double> la(static_cast<std::size_t>(pairs));
        int zeros = 0;
        int zero_at = -1;
        double log_prod_nonzero = 0.0;
        for (int a = 0; a < pairs; ++a) {
            la[static_cast<std::size_t>(a)] = log_a(h[static_cast<std::size_t>(2 * a)],
                                                    h[static_cast<std::size_t>(2 * a + 1)], eps);
            if (la[static_cast<std::size_t>(a)] == -std::numeric_limits<double>::infinity()) {
                ++zeros;
                zero_at = a;
            } else {
                log_prod_nonzero += 2.0 * la[static_cast<std::size_t>(a)];
            }
        }
        if (zeros >= 2) {
            return 0.0;
        }
        if (zeros == 1) {
            const SignedLog lb = log_b(h[static_cast<std::size_t>(2 * zero_at)],
                                       h[static_cast<std::size_t>(2 * zero_at + 1)], eps);
            if (lb.sign == 0) {
                return 0.0;
            }
            return std::exp(2.0 * lb.log_abs + log_prod_nonzero);
        }
        double total = 0.0;
        for (int a = 0; a < pairs; ++a) {
            const SignedLog lb = log_b(h[static_cast<std::size_t>(2 * a)],
                                       h[static_cast<std::size_t>(2 * a + 1)], eps);
            if (lb.sign == 0) {
                continue;
            }
            total += std::exp(2.0 * lb.log_abs + log_prod_nonzero -
                              2.0 * la[static_cast<std::size_t>(a)]);
        }
        return total;
    }

    std::vector<AbPair> ab(static_cast<std::size_t>(pairs));
    for (int a = 0; a < pairs; ++a) {
        ab[static_cast<std::size_t>(a)] = ab_coefficients(
            h[static_cast<std::size_t>(2 * a)], h[static_cast<std::size_t>(2 * a + 1)], eps);
    }
    double total = 0.0;
    for (int a = 0; a < pairs; ++a) {
        double term = ab[static_cast<std::size_t>(a)].b * ab[static_cast<std::size_t>(a)].b;
        for (int ap = 0; ap < pairs; ++ap) {
            if (ap != a) {
                term *= ab[static_cast<std::size_t>(ap)].a * ab[static_cast<std::size_t>(ap)].a;
            }
        }
        total += term;
    }
    return total;
}

double chisq_exact(int d, std::int64_t n, double eps) {
    check_dim(d);
    check_eps(eps);
    if (n < 0) {
        throw ArgumentError("chisq_exact needs n >= 0");
    }
    if (n == 0 || eps == 0.0) {
        return 0.0;
    }
    // <z,z'> has the law of d/2 - 2k with k ~ Bin(d/2, 1/2).
    const int half = d / 2;
    const double log_half_pow = static_cast<double>(half) * std::log(2.0);
    double total = 0.0;
    for (int k = 0; k <= half; ++k) {
        const double inner = static_cast<double>(half - 2 * k);
        const double base = 1.0 + 2.0 * eps * eps * inner / d;
        const double log_w = log_binomial_coeff(half, k) - log_half_pow;
        if (base <= 0.0) {
            // base = 0 happens only at eps = 1 with inner = -d/2: term 0.
            continue;
        }
        total += std::exp(log_w + static_cast<double>(n) * std::log(base));
    }
    return total - 1.0;
}

double zt_exact(int d, double eps, std::int64_t t) {
    check_dim(d);
    check_eps(eps);
    if (t < 1) {
        throw ArgumentError("zt_exact needs t >= 1");
    }
    const std::int64_t m = t - 1;  // null draws observed before step t
    const double p = 2.0 / d;
    double expectation = 0.0;
    for (std::int64_t l = 0; l <= m; ++l) {
        double log_pmf;
        if (p == 1.0) {
            if (l < m) {
                continue;
            }
            log_pmf = 0.0;
        } else {
            log_pmf = log_binomial_coeff(m, l) + static_cast<double>(l) * std::log(p) +
                      static_cast<double>(m - l) * std::log1p(-p);
        }
        double inner = 0.0;
        for (std::int64_t h1 = 0; h1 <= l; ++h1) {
            const double log_w =
                log_binomial_coeff(l, h1) - static_cast<double>(l) * std::log(2.0);
            inner += std::exp(log_w) * b_squared_over_a(h1, l - h1, eps);
        }
        expectation += std::exp(log_pmf) * inner;
    }
    return eps * eps * expectation;
}

PaninskiExactTables enumeration_oracle(int d, double eps, int t_max) {
    check_dim(d);
    check_eps(eps);
    if (t_max < 0) {
        throw ArgumentError("enumeration_oracle needs t_max >= 0");
    }
    const int half = d / 2;
    double work = std::pow(2.0, half) * std::pow(static_cast<double>(d), t_max);
    if (work > 1e8) {
        throw ArgumentError("enumeration_oracle workload 2^(d/2) * d^t exceeds 1e8");
    }

    const std::size_t num_z = static_cast<std::size_t>(1) << half;
    // Sign vectors encoded by bit masks; bit a set means z_a = +1.
    std::vector<std::vector<int>> zs(num_z, std::vector<int>(static_cast<std::size_t>(half)));
    for (std::size_t mask = 0; mask < num_z; ++mask) {
        for (int a = 0; a < half; ++a) {
            zs[mask][static_cast<std::size_t>(a)] = (mask >> a) & 1 ? 1 : -1;
        }
    }
    // Pairwise sign overlaps <z, z'>.
    std::vector<double> overlap(num_z * num_z);
    for (std::size_t i = 0; i < num_z; ++i) {
        for (std::size_t j = 0; j < num_z; ++j) {
            int s = 0;
            for (int a = 0; a < half; ++a) {
                s += zs[i][static_cast<std::size_t>(a)] * zs[j][static_cast<std::size_t>(a)];
            }
            overlap[i * num_z + j] = static_cast<double>(s);
        }
    }
    // Step factors 1 + g_z(x) for every (z, x).
    std::vector<double> factor(num_z * static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < num_z; ++i) {
        for (int x = 0; x < d; ++x) {
            factor[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(x)] =
                1.0 + classical_g(zs[i], eps, x);
        }
    }

    PaninskiExactTables tables;
    tables.d = d;
    tables.eps = eps;
    tables.t_max = t_max;
    tables.chisq.assign(static_cast<std::size_t>(t_max) + 1, 0.0);
    tables.kl.assign(static_cast<std::size_t>(t_max) + 1, 0.0);
    tables.zt.assign(static_cast<std::size_t>(t_max) + 1, 0.0);
    tables.delta_min.assign(static_cast<std::size_t>(t_max) + 1,
                            std::numeric_limits<double>::infinity());

    std::vector<int> outcomes;
    outcomes.reserve(static_cast<std::size_t>(t_max));
    std::vector<double> prod(num_z, 1.0);

    // Depth-first walk over all transcripts up to length t_max, carrying the
    // per-z running products prod[z] = prod_i (1 + g_z(x_i)).
    auto visit = [&](auto&& self) -> void {
        const int t = static_cast<int>(outcomes.size());
        const double inv_dt = std::pow(static_cast<double>(d), -t);

        double delta = 0.0;
        for (std::size_t i = 0; i < num_z; ++i) {
            delta += prod[i];
        }
        delta /= static_cast<double>(num_z);

        double inner_psi = 0.0;
        for (std::size_t i = 0; i < num_z; ++i) {
            for (std::size_t j = 0; j < num_z; ++j) {
                inner_psi += overlap[i * num_z + j] * prod[i] * prod[j];
            }
        }
        inner_psi /= static_cast<double>(num_z * num_z);

        tables.max_delta_deviation = std::max(
            tables.max_delta_deviation, std::abs(delta - delta_closed_form(outcomes, d, eps)));
        tables.max_inner_psi_deviation =
            std::max(tables.max_inner_psi_deviation,
                     std::abs(inner_psi - inner_psi_closed_form(outcomes, d, eps)));

        tables.chisq[static_cast<std::size_t>(t)] += inv_dt * delta * delta;
        if (delta > 0.0) {
            tables.kl[static_cast<std::size_t>(t)] += inv_dt * delta * std::log(delta);
        }
        tables.delta_min[static_cast<std::size_t>(t)] =
            std::min(tables.delta_min[static_cast<std::size_t>(t)], delta);
        // This node is the history of step t + 1.
        if (t + 1 <= t_max && delta > 0.0) {
            tables.zt[static_cast<std::size_t>(t) + 1] +=
                inv_dt * (2.0 * eps * eps / d) * inner_psi / delta;
        }

        if (t == t_max) {
            return;
        }
        for (int x = 0; x < d; ++x) {
            outcomes.push_back(x);
            std::vector<double> saved = prod;
            for (std::size_t i = 0; i < num_z; ++i) {
                prod[i] *= factor[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(x)];
            }
            self(self);
            prod = std::move(saved);
            outcomes.pop_back();
        }
    };
    visit(visit);

    for (int t = 0; t <= t_max; ++t) {
        tables.chisq[static_cast<std::size_t>(t)] -= 1.0;
    }
    return tables;
}

}  // namespace mixcert
