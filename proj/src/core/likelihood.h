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

#ifndef MIXCERT_CORE_LIKELIHOOD_H
#define MIXCERT_CORE_LIKELIHOOD_H

#include <vector>

#include "core/complex_matrix.h"
#include "core/povm.h"
#include "core/rng.h"
#include "core/schedule.h"
#include "core/states.h"
#include "core/stats.h"

namespace mixcert {

/// Problem parameters for likelihood statistics against the planted state
/// family: dimension d (even) and bias eps in [0, 1]. The planted
/// perturbation is X = eps * diag(+1 x d/2, -1 x d/2); eps = 0 degenerates
/// every statistic to its null value.
class LikelihoodContext {
  public:
    LikelihoodContext(int d, double eps);

    int dim() const { return d_; }
    double eps() const { return eps_; }

    /// X as a matrix: trace zero, operator norm eps.
    HermitianMatrix x_matrix() const;

  private:
    int d_;
    double eps_;
};

/// Per-outcome tilt of a planted state rho_U = U^dagger (I + X) U / d seen
/// through POVM element M_x: g(x) = <M_x / Tr M_x, U^dagger X U>. Satisfies
/// |g| <= eps and E_{x ~ p}[g] = 0 for p(x) = Tr(M_x)/d, the outcome law of
/// the maximally mixed state.
double g_factor(const Povm& m, int x, const ComplexMatrix& u, const LikelihoodContext& ctx);

/// Cross-correlation of two rotations' tilts under the null outcome law:
/// phi = E_{x ~ p}[g_U(x) g_U'(x)], bounded by eps^2 in magnitude.
double phi(const Povm& m, const ComplexMatrix& u, const ComplexMatrix& uq,
           const LikelihoodContext& ctx);

/// Paired tilt second moment K = E_{x ~ p}[(g_U(x) + g_U'(x))^2].
double k_statistic(const Povm& m, const ComplexMatrix& u, const ComplexMatrix& uq,
                   const LikelihoodContext& ctx);

/// Paired likelihood product over a transcript:
/// Psi = prod_i (1 + g_U,i(x_i)) (1 + g_U',i(x_i)), where step i's POVM is
/// replayed from the schedule. E over independent Haar (U, U') of Psi equals
/// the squared mixture likelihood ratio Delta^2 of the transcript.
double psi(const Transcript& transcript, const Schedule& schedule, const ComplexMatrix& u,
           const ComplexMatrix& uq, const LikelihoodContext& ctx);

/// Monte-Carlo mixture likelihood ratio of a transcript:
/// Delta = E_U[prod_i (1 + g_U,i(x_i))], estimated over num_u Haar draws
/// (num_u >= 2). The caller's rng is used as a seed root. An empty
/// transcript or eps = 0 gives exactly 1 with stderr 0.
McEstimate delta_mc(const Transcript& transcript, const Schedule& schedule, std::int64_t num_u,
                    Rng& rng, const LikelihoodContext& ctx);

/// Monte-Carlo chi-squared upper bound for a nonadaptive schedule over n
/// steps: max over the schedule's distinct POVMs of
/// E_{U,U'}[(1 + phi)^n] - 1, estimated over num_pairs Haar pairs.
/// Throws ArgumentError on adaptive schedules.
McEstimate chisq_bound_mc(const Schedule& schedule, int n, std::int64_t num_pairs, Rng& rng,
                          const LikelihoodContext& ctx, int jobs = 1);

/// Monte-Carlo chain-rule KL upper bound over n steps:
/// sum_t E_{hist ~ null}[ E_{U,U'}[phi_t Psi_t] / Delta(hist) ], the
/// per-step terms estimated with num_pairs Haar pairs nested inside
/// num_outer null histories. Each history's denominator reuses the same
/// pair draws, making the per-history totals i.i.d.; the returned stderr is
/// taken across histories. The ratio makes this a plug-in estimate with
/// O(1/num_pairs) bias. Optional per_term receives the n per-step terms.
McEstimate chain_rule_bound_mc(const Schedule& schedule, int n, std::int64_t num_outer,
                               std::int64_t num_pairs, Rng& rng, const LikelihoodContext& ctx,
                               std::vector<McEstimate>* per_term = nullptr, int jobs = 1);

/// Plug-in Monte-Carlo KL divergence (nats) between the planted alternative
/// and the null over n steps: average of ln Delta_hat over num_outer
/// alternative transcripts, Delta_hat estimated with num_inner Haar draws.
/// Jensen's inequality biases each term down by about
/// Var(Delta_hat) / (2 num_inner Delta^2); results are reported as-is.
/// Throws NumericalError if an inner estimate is not positive (possible only
/// at eps = 1).
McEstimate kl_plugin_mc(const Schedule& schedule, int n, std::int64_t num_outer,
                        std::int64_t num_inner, Rng& rng, const LikelihoodContext& ctx,
                        int jobs = 1);

}  // namespace mixcert

#endif
