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

#include "core/likelihood.h"

#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "core/errors.h"
#include "core/haar.h"
#include "core/parallel.h"

namespace mixcert {

LikelihoodContext::LikelihoodContext(int d, double eps) : d_(d), eps_(eps) {
    if (d < 2 || d % 2 != 0) {
        throw ArgumentError("LikelihoodContext needs even d >= 2");
    }
    if (!(eps >= 0.0) || eps > 1.0) {
        throw ArgumentError("LikelihoodContext needs eps in [0, 1]");
    }
}

HermitianMatrix LikelihoodContext::x_matrix() const {
    std::vector<double> diag(static_cast<std::size_t>(d_));
    for (int i = 0; i < d_; ++i) {
        diag[static_cast<std::size_t>(i)] = (i < d_ / 2) ? eps_ : -eps_;
    }
    return HermitianMatrix::diagonal(diag);
}

namespace {

bool is_identity(const ComplexMatrix& m) {
    for (int i = 0; i < m.dim(); ++i) {
        for (int j = 0; j < m.dim(); ++j) {
            const Complex want = (i == j) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
            if (m(i, j) != want) {
                return false;
            }
        }
    }
    return true;
}

// Tilt values of one rotation against one POVM: g(x) for every outcome and
// the null outcome law p(x) = Tr(M_x)/d.
struct GTable {
    std::vector<double> g;
    std::vector<double> p;

    GTable(const Povm& m, const ComplexMatrix& u, const LikelihoodContext& ctx) {
        const int d = ctx.dim();
        if (m.dim() != d || u.dim() != d) {
            throw ArgumentError("POVM, rotation, and context dimensions must match");
        }
        const int outcomes = m.size();
        g.resize(static_cast<std::size_t>(outcomes));
        p.resize(static_cast<std::size_t>(outcomes));
        for (int x = 0; x < outcomes; ++x) {
            p[static_cast<std::size_t>(x)] = m.element_trace(x) / d;
        }
        const double eps = ctx.eps();
        if (eps == 0.0) {
            return;
        }

        if (m.is_basis()) {
            // Rank-one path: g(x) = eps * balance of the rotated column.
            const ComplexMatrix& v = m.basis_matrix();
            const ComplexMatrix w = is_identity(v) ? u : multiply(u, v);
            ComplexVector col(static_cast<std::size_t>(d));
            for (int x = 0; x < outcomes; ++x) {
                for (int i = 0; i < d; ++i) {
                    col[static_cast<std::size_t>(i)] = w(i, x);
                }
                g[static_cast<std::size_t>(x)] =
                    eps * delta_statistic(col) / m.element_trace(x);
            }
            return;
        }

        // General path: C = U^dagger X U once, then g(x) = Tr(M_x C)/Tr(M_x).
        ComplexMatrix xu = u;
        for (int i = 0; i < d; ++i) {
            const double sign = (i < d / 2) ? eps : -eps;
            for (int j = 0; j < d; ++j) {
                xu(i, j) *= sign;
            }
        }
        const ComplexMatrix c = multiply(u.adjoint(), xu);
        for (int x = 0; x < outcomes; ++x) {
            g[static_cast<std::size_t>(x)] =
                hs_inner(m.element(x).matrix(), c).real() / m.element_trace(x);
        }
    }
};

double phi_from_tables(const GTable& a, const GTable& b) {
    double s = 0.0;
    for (std::size_t x = 0; x < a.g.size(); ++x) {
        s += a.p[x] * a.g[x] * b.g[x];
    }
    return s;
}

// POVM of every step of a fixed transcript; adaptive schedules replay their
// per-step streams. `owned` must outlive the returned pointers.
std::vector<const Povm*> resolve_step_povms(const Schedule& schedule, const Transcript& tr,
                                            std::vector<Povm>& owned) {
    const int n = tr.length();
    std::vector<const Povm*> out(static_cast<std::size_t>(n));
    if (schedule.nonadaptive()) {
        for (int t = 0; t < n; ++t) {
            out[static_cast<std::size_t>(t)] = &schedule.fixed_povm(t);
        }
        return out;
    }
    owned.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        owned.push_back(schedule.povm_at(tr.prefix(t)));
    }
    for (int t = 0; t < n; ++t) {
        out[static_cast<std::size_t>(t)] = &owned[static_cast<std::size_t>(t)];
    }
    return out;
}

// One-sided likelihood product prod_i (1 + g_U,i(x_i)) with a per-POVM table
// cache shared across steps that repeat a POVM.
double one_sided_product(const std::vector<const Povm*>& povms, const Transcript& tr,
                         const ComplexMatrix& u, const LikelihoodContext& ctx,
                         std::map<const Povm*, GTable>& cache) {
    double prod = 1.0;
    for (int t = 0; t < tr.length(); ++t) {
        const Povm* m = povms[static_cast<std::size_t>(t)];
        auto it = cache.find(m);
        if (it == cache.end()) {
            it = cache.emplace(m, GTable(*m, u, ctx)).first;
        }
        prod *= 1.0 + it->second.g[static_cast<std::size_t>(
                    tr.outcomes[static_cast<std::size_t>(t)])];
    }
    return prod;
}

void check_budget(std::int64_t value, const char* what) {
    if (value < 2) {
        throw ArgumentError(std::string(what) + " must be at least 2");
    }
}

}  // namespace

double g_factor(const Povm& m, int x, const ComplexMatrix& u, const LikelihoodContext& ctx) {
    if (x < 0 || x >= m.size()) {
        throw ArgumentError("outcome index out of range");
    }
    return GTable(m, u, ctx).g[static_cast<std::size_t>(x)];
}

double phi(const Povm& m, const ComplexMatrix& u, const ComplexMatrix& uq,
           const LikelihoodContext& ctx) {
    const GTable a(m, u, ctx);
    const GTable b(m, uq, ctx);
    return phi_from_tables(a, b);
}

double k_statistic(const Povm& m, const ComplexMatrix& u, const ComplexMatrix& uq,
                   const LikelihoodContext& ctx) {
    const GTable a(m, u, ctx);
    const GTable b(m, uq, ctx);
    double s = 0.0;
    for (std::size_t x = 0; x < a.g.size(); ++x) {
        const double sum = a.g[x] + b.g[x];
        s += a.p[x] * sum * sum;
    }
    return s;
}

double psi(const Transcript& transcript, const Schedule& schedule, const ComplexMatrix& u,
           const ComplexMatrix& uq, const LikelihoodContext& ctx) {
    std::vector<Povm> owned;
    const std::vector<const Povm*> povms = resolve_step_povms(schedule, transcript, owned);
    std::map<const Povm*, GTable> cache_u;
    std::map<const Povm*, GTable> cache_uq;
    return one_sided_product(povms, transcript, u, ctx, cache_u) *
           one_sided_product(povms, transcript, uq, ctx, cache_uq);
}

McEstimate delta_mc(const Transcript& transcript, const Schedule& schedule, std::int64_t num_u,
                    Rng& rng, const LikelihoodContext& ctx) {
    check_budget(num_u, "num_u");
    std::vector<Povm> owned;
    const std::vector<const Povm*> povms = resolve_step_povms(schedule, transcript, owned);
    std::vector<double> samples(static_cast<std::size_t>(num_u));
    for (std::int64_t i = 0; i < num_u; ++i) {
        Rng draw = rng.derive(static_cast<std::uint64_t>(i));
        const ComplexMatrix u = haar_unitary(ctx.dim(), draw);
        std::map<const Povm*, GTable> cache;
        samples[static_cast<std::size_t>(i)] =
            one_sided_product(povms, transcript, u, ctx, cache);
    }
    return summarize(samples, "delta_mc");
}

McEstimate chisq_bound_mc(const Schedule& schedule, int n, std::int64_t num_pairs, Rng& rng,
                          const LikelihoodContext& ctx, int jobs) {
    if (!schedule.nonadaptive()) {
        throw ArgumentError("chisq_bound_mc applies to nonadaptive schedules only");
    }
    if (n < 0) {
        throw ArgumentError("chisq_bound_mc needs n >= 0");
    }
    check_budget(num_pairs, "num_pairs");

    McEstimate best;
    bool have = false;
    for (std::size_t id = 0; id < schedule.fixed_count(); ++id) {
        const Povm& m = schedule.fixed_povm(static_cast<int>(id));
        Rng povm_rng = rng.derive(static_cast<std::uint64_t>(id));
        std::vector<double> samples = parallel_map<double>(
            num_pairs, jobs, [&](std::int64_t k) {
                Rng ru = povm_rng.derive(static_cast<std::uint64_t>(2 * k));
                Rng rv = povm_rng.derive(static_cast<std::uint64_t>(2 * k + 1));
                const ComplexMatrix u = haar_unitary(ctx.dim(), ru);
                const ComplexMatrix uq = haar_unitary(ctx.dim(), rv);
                const double f = phi(m, u, uq, ctx);
                // (1 + phi)^n - 1; 1 + phi >= 1 - eps^2 >= 0.
                return std::expm1(static_cast<double>(n) * std::log1p(f));
            });
        McEstimate e = summarize(samples, "chisq_bound_mc");
        if (!have || e.mean > best.mean) {
            best = std::move(e);
            have = true;
        }
    }
    return best;
}

McEstimate chain_rule_bound_mc(const Schedule& schedule, int n, std::int64_t num_outer,
                               std::int64_t num_pairs, Rng& rng, const LikelihoodContext& ctx,
                               std::vector<McEstimate>* per_term, int jobs) {
    if (n < 0) {
        throw ArgumentError("chain_rule_bound_mc needs n >= 0");
    }
    check_budget(num_outer, "num_outer");
    check_budget(num_pairs, "num_pairs");
    const StateSource null_source = StateSource::mixed(ctx.dim());

    struct OuterSample {
        double total;
        std::vector<double> terms;
    };
    std::vector<OuterSample> outer = parallel_map<OuterSample>(
        num_outer, jobs, [&](std::int64_t j) {
            Rng hist_rng = rng.derive(static_cast<std::uint64_t>(2 * j));
            Rng pair_root = rng.derive(static_cast<std::uint64_t>(2 * j + 1));
            const Transcript tr = run_schedule(null_source, schedule, n, hist_rng);
            std::vector<Povm> owned;
            const std::vector<const Povm*> povms = resolve_step_povms(schedule, tr, owned);

            std::vector<double> num_sum(static_cast<std::size_t>(n), 0.0);
            std::vector<double> den_sum(static_cast<std::size_t>(n), 0.0);
            for (std::int64_t k = 0; k < num_pairs; ++k) {
                Rng ru = pair_root.derive(static_cast<std::uint64_t>(2 * k));
                Rng rv = pair_root.derive(static_cast<std::uint64_t>(2 * k + 1));
                const ComplexMatrix u = haar_unitary(ctx.dim(), ru);
                const ComplexMatrix uq = haar_unitary(ctx.dim(), rv);
                std::map<const Povm*, GTable> cache_u;
                std::map<const Povm*, GTable> cache_uq;
                std::map<const Povm*, double> phi_cache;

                double pair_prod = 1.0;
                double prod_u = 1.0;
                double prod_uq = 1.0;
                for (int t = 0; t < n; ++t) {
                    const Povm* m = povms[static_cast<std::size_t>(t)];
                    auto iu = cache_u.find(m);
                    if (iu == cache_u.end()) {
                        iu = cache_u.emplace(m, GTable(*m, u, ctx)).first;
                    }
                    auto iv = cache_uq.find(m);
                    if (iv == cache_uq.end()) {
                        iv = cache_uq.emplace(m, GTable(*m, uq, ctx)).first;
                    }
                    auto ip = phi_cache.find(m);
                    if (ip == phi_cache.end()) {
                        ip = phi_cache.emplace(m, phi_from_tables(iu->second, iv->second)).first;
                    }
                    // Step t's term uses the products over steps < t.
                    num_sum[static_cast<std::size_t>(t)] += ip->second * pair_prod;
                    den_sum[static_cast<std::size_t>(t)] += prod_u + prod_uq;

                    const int x = tr.outcomes[static_cast<std::size_t>(t)];
                    const double gu = 1.0 + iu->second.g[static_cast<std::size_t>(x)];
                    const double gv = 1.0 + iv->second.g[static_cast<std::size_t>(x)];
                    pair_prod *= gu * gv;
                    prod_u *= gu;
                    prod_uq *= gv;
                }
            }

            OuterSample s;
            s.total = 0.0;
            s.terms.resize(static_cast<std::size_t>(n));
            for (int t = 0; t < n; ++t) {
                const double num = num_sum[static_cast<std::size_t>(t)] /
                                   static_cast<double>(num_pairs);
                const double den = den_sum[static_cast<std::size_t>(t)] /
                                   static_cast<double>(2 * num_pairs);
                if (!(den > 0.0)) {
                    throw NumericalError(
                        "chain_rule_bound_mc denominator estimate not positive; "
                        "increase num_pairs");
                }
                s.terms[static_cast<std::size_t>(t)] = num / den;
                s.total += num / den;
            }
            return s;
        });

    if (per_term) {
        per_term->clear();
        for (int t = 0; t < n; ++t) {
            std::vector<double> vals(static_cast<std::size_t>(num_outer));
            for (std::int64_t j = 0; j < num_outer; ++j) {
                vals[static_cast<std::size_t>(j)] =
                    outer[static_cast<std::size_t>(j)].terms[static_cast<std::size_t>(t)];
            }
            per_term->push_back(summarize(vals, "chain_rule_term_" + std::to_string(t + 1)));
        }
    }
    std::vector<double> totals(static_cast<std::size_t>(num_outer));
    for (std::int64_t j = 0; j < num_outer; ++j) {
        totals[static_cast<std::size_t>(j)] = outer[static_cast<std::size_t>(j)].total;
    }
    return summarize(totals, "chain_rule_bound_mc");
}

McEstimate kl_plugin_mc(const Schedule& schedule, int n, std::int64_t num_outer,
                        std::int64_t num_inner, Rng& rng, const LikelihoodContext& ctx,
                        int jobs) {
    if (n < 0) {
        throw ArgumentError("kl_plugin_mc needs n >= 0");
    }
    check_budget(num_outer, "num_outer");
    check_budget(num_inner, "num_inner");
    const StateSource source = (ctx.eps() > 0.0)
                                   ? StateSource::hard(ctx.dim(), ctx.eps())
                                   : StateSource::mixed(ctx.dim());

    std::vector<double> values = parallel_map<double>(
        num_outer, jobs, [&](std::int64_t j) {
            Rng hist_rng = rng.derive(static_cast<std::uint64_t>(2 * j));
            Rng inner_root = rng.derive(static_cast<std::uint64_t>(2 * j + 1));
            const Transcript tr = run_schedule(source, schedule, n, hist_rng);
            std::vector<Povm> owned;
            const std::vector<const Povm*> povms = resolve_step_povms(schedule, tr, owned);
            double sum = 0.0;
            for (std::int64_t i = 0; i < num_inner; ++i) {
                Rng draw = inner_root.derive(static_cast<std::uint64_t>(i));
                const ComplexMatrix u = haar_unitary(ctx.dim(), draw);
                std::map<const Povm*, GTable> cache;
                sum += one_sided_product(povms, tr, u, ctx, cache);
            }
            const double delta_hat = sum / static_cast<double>(num_inner);
            if (!(delta_hat > 0.0)) {
                throw NumericalError(
                    "kl_plugin_mc inner likelihood-ratio estimate not positive; "
                    "increase num_inner");
            }
            return std::log(delta_hat);
        });
    return summarize(values, "kl_plugin_mc");
}

}  // namespace mixcert
