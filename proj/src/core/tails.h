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

#ifndef MIXCERT_CORE_TAILS_H
#define MIXCERT_CORE_TAILS_H

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "core/povm.h"
#include "core/rng.h"
#include "core/schedule.h"
#include "core/stats.h"

namespace mixcert {

// Haar-sampled statistics whose tails are compared against analytic
// concentration shapes.
enum class TailStatistic {
    kDiagNorm,  // ||diag(U^dagger S U)||_HS, S the half-sign diagonal
    kPhi,       // |phi(M, U, U')| over independent Haar pairs
    kKStat,     // k_statistic(M, U, U') over independent Haar pairs
};

const char* tail_statistic_name(TailStatistic statistic);

struct TailCurve {
    std::string statistic;
    int d = 0;
    double eps = 0.0;
    std::vector<double> thresholds;  // ascending
    std::vector<double> empirical;   // P(statistic > threshold) estimates
    std::vector<double> stderr_;     // binomial standard errors
    std::vector<double> bound;       // analytic bound at each threshold
    std::int64_t samples = 0;
    RngSeed seed = 0;
};

// Analytic tail bound with the frozen rate constants.
double tail_bound(TailStatistic statistic, int d, double eps, double threshold);

// Geometric threshold grid from a tenth of the bound's onset scale up to
// the statistic's maximum value.
std::vector<double> default_tail_thresholds(TailStatistic statistic, int d, double eps);

// Empirical exceedance curve of `statistic` over `num_samples` Haar draws
// (pairs for phi and k_stat), with the analytic bound evaluated alongside.
// kDiagNorm ignores the POVM beyond a dimension check. Pass an empty
// threshold list to use the default grid. num_samples must be >= 1000.
TailCurve tail_experiment(TailStatistic statistic, int d, double eps, const Povm& m,
                          std::int64_t num_samples, std::vector<double> thresholds, Rng& rng,
                          int jobs = 1);

// MC estimate of E[(1 + gamma K)^n] over Haar pairs, the generating
// function controlling likelihood-ratio moment growth. Requires gamma >= 0
// and the regime guard n <= 0.1 d^2/eps^2 (always met at eps = 0).
McEstimate moment_growth_experiment(int d, double eps, int n, double gamma, const Povm& m,
                                    std::int64_t num_pairs, Rng& rng, int jobs = 1);

// MC estimate of E[Psi^2] over (null transcript, Haar pair) triples for a
// length-t run of `schedule`. Requires t <= 0.1 d^2/eps^2.
McEstimate psi_second_moment_experiment(int d, double eps, int t, const Schedule& schedule,
                                        std::int64_t num, Rng& rng, int jobs = 1);

// POVM chosen per dimension for scaling studies.
using PovmFamily = std::function<Povm(int d)>;

struct FluctuationReport {
    std::vector<int> d_values;
    std::vector<double> phi_std;  // empirical std of phi per d
    double slope = 0.0;           // least-squares slope of log(std) vs log(d)
    double eps = 0.0;
    std::int64_t num_pairs = 0;
    RngSeed seed = 0;
};

// Empirical fluctuation scale of phi across dimensions with a log-log
// slope fit. Needs at least 3 dimensions. Pair draws depend only on the
// grid position and the seed, so runs at different eps share unitaries.
FluctuationReport fluctuation_scaling(const std::vector<int>& d_list, double eps,
                                      const PovmFamily& family, std::int64_t num_pairs,
                                      Rng& rng, int jobs = 1);

}  // namespace mixcert

#endif
