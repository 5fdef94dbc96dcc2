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

#include "core/tails.h"

#include <algorithm>
#include <cmath>

#include "core/calibration.h"
#include "core/errors.h"
#include "core/haar.h"
#include "core/likelihood.h"
#include "core/parallel.h"
#include "core/states.h"

namespace mixcert {

namespace {

// ||diag(U^dagger S U)||_HS without forming the conjugated matrix:
// the x-th diagonal entry is sum_i s_i |U_{ix}|^2.
double diag_norm_sample(int d, Rng& rng) {
    const ComplexMatrix u = haar_unitary(d, rng);
    double total = 0.0;
    for (int x = 0; x < d; ++x) {
        double delta = 0.0;
        for (int i = 0; i < d; ++i) {
            const double mag = std::norm(u(i, x));
            delta += (i < d / 2) ? mag : -mag;
        }
        total += delta * delta;
    }
    return std::sqrt(total);
}

std::vector<double> geometric_grid(double lo, double hi, int points) {
    std::vector<double> grid(static_cast<std::size_t>(points));
    const double ratio = std::log(hi / lo) / static_cast<double>(points - 1);
    for (int i = 0; i < points; ++i) {
        grid[static_cast<std::size_t>(i)] = lo * std::exp(ratio * i);
    }
    return grid;
}

void check_tail_args(int d, double eps) {
    if (d < 2 || d % 2 != 0) {
        throw ArgumentError("tail statistics need even d >= 2");
    }
    if (!(eps > 0.0) || eps > 1.0) {
        throw ArgumentError("tail statistics need eps in (0, 1]");
    }
}

}  // namespace

const char* tail_statistic_name(TailStatistic statistic) {
    switch (statistic) {
        case TailStatistic::kDiagNorm:
            return "diag_norm";
        case TailStatistic::kPhi:
            return "phi";
        case TailStatistic::kKStat:
            return "k_stat";
    }
    throw ArgumentError("unknown tail statistic");
}

double tail_bound(TailStatistic statistic, int d, double eps, double threshold) {
    check_tail_args(d, eps);
    const double dd = static_cast<double>(d);
    switch (statistic) {
        case TailStatistic::kDiagNorm: {
            const double excess = std::max(0.0, threshold - 1.0);
            return std::exp(-kDiagNormTailRate * dd * excess * excess);
        }
        case TailStatistic::kPhi: {
            const double e2 = eps * eps;
            const double quad = dd * dd * dd * threshold * threshold / (e2 * e2);
            const double lin = dd * dd * threshold / e2;
            return std::exp(-kPhiTailRate * std::min(quad, lin));
        }
        case TailStatistic::kKStat: {
            const double excess = std::max(0.0, threshold - kKTailFloor * eps * eps / dd);
            return std::exp(-kKTailRate * excess * dd * dd / (eps * eps));
        }
    }
    throw ArgumentError("unknown tail statistic");
}

std::vector<double> default_tail_thresholds(TailStatistic statistic, int d, double eps) {
    check_tail_args(d, eps);
    const double dd = static_cast<double>(d);
    const int points = 16;
    switch (statistic) {
        case TailStatistic::kDiagNorm:
            // Onset scale 1 (the mean is just below it); max sqrt(d).
            return geometric_grid(0.1, std::sqrt(dd), points);
        case TailStatistic::kPhi:
            // Onset scale eps^2/d^{3/2} (one std of phi); max eps^2.
            return geometric_grid(eps * eps / (10.0 * dd * std::sqrt(dd)), eps * eps, points);
        case TailStatistic::kKStat:
            // Onset scale eps^2/d (the mean's order); max (2 eps)^2.
            return geometric_grid(eps * eps / (10.0 * dd), 4.0 * eps * eps, points);
    }
    throw ArgumentError("unknown tail statistic");
}

TailCurve tail_experiment(TailStatistic statistic, int d, double eps, const Povm& m,
                          std::int64_t num_samples, std::vector<double> thresholds, Rng& rng,
                          int jobs) {
    check_tail_args(d, eps);
    if (m.dim() != d) {
        throw ArgumentError("tail_experiment POVM dimension mismatch");
    }
    if (num_samples < 1000) {
        throw ArgumentError("tail_experiment needs at least 1000 samples");
    }
    if (thresholds.empty()) {
        thresholds = default_tail_thresholds(statistic, d, eps);
    }
    if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
        throw ArgumentError("tail thresholds must be ascending");
    }

    const LikelihoodContext ctx(d, eps);
    std::vector<double> values = parallel_map<double>(
        num_samples, jobs, [&](std::int64_t i) {
            if (statistic == TailStatistic::kDiagNorm) {
                Rng draw = rng.derive(static_cast<std::uint64_t>(i));
                return diag_norm_sample(d, draw);
            }
            Rng ru = rng.derive(static_cast<std::uint64_t>(2 * i));
            Rng rv = rng.derive(static_cast<std::uint64_t>(2 * i + 1));
            const ComplexMatrix u = haar_unitary(d, ru);
            const ComplexMatrix uq = haar_unitary(d, rv);
            if (statistic == TailStatistic::kPhi) {
                return std::abs(phi(m, u, uq, ctx));
            }
            return k_statistic(m, u, uq, ctx);
        });

    TailCurve curve;
    curve.statistic = tail_statistic_name(statistic);
    curve.d = d;
    curve.eps = eps;
    curve.samples = num_samples;
    curve.seed = rng.seed();
    curve.thresholds = std::move(thresholds);
    const double n = static_cast<double>(num_samples);
    for (double tau : curve.thresholds) {
        std::int64_t exceed = 0;
        for (double v : values) {
            if (v > tau) {
                ++exceed;
            }
        }
        const double p = static_cast<double>(exceed) / n;
        curve.empirical.push_back(p);
        curve.stderr_.push_back(std::sqrt(p * (1.0 - p) / n));
        curve.bound.push_back(tail_bound(statistic, d, eps, tau));
    }
    return curve;
}

McEstimate moment_growth_experiment(int d, double eps, int n, double gamma, const Povm& m,
                                    std::int64_t num_pairs, Rng& rng, int jobs) {
    check_tail_args(d, eps);
    if (m.dim() != d) {
        throw ArgumentError("moment_growth_experiment POVM dimension mismatch");
    }
    if (n < 0 || gamma < 0.0) {
        throw ArgumentError("moment_growth_experiment needs n >= 0 and gamma >= 0");
    }
    if (static_cast<double>(n) > 0.1 * d * d / (eps * eps)) {
        throw ArgumentError("moment_growth_experiment regime guard: n <= 0.1 d^2/eps^2");
    }
    if (num_pairs < 2) {
        throw ArgumentError("moment_growth_experiment needs num_pairs >= 2");
    }
    const LikelihoodContext ctx(d, eps);
    std::vector<double> values = parallel_map<double>(
        num_pairs, jobs, [&](std::int64_t i) {
            Rng ru = rng.derive(static_cast<std::uint64_t>(2 * i));
            Rng rv = rng.derive(static_cast<std::uint64_t>(2 * i + 1));
            const ComplexMatrix u = haar_unitary(d, ru);
            const ComplexMatrix uq = haar_unitary(d, rv);
            const double k = k_statistic(m, u, uq, ctx);
            return std::exp(static_cast<double>(n) * std::log1p(gamma * k));
        });
    return summarize(values, "moment_growth");
}

McEstimate psi_second_moment_experiment(int d, double eps, int t, const Schedule& schedule,
                                        std::int64_t num, Rng& rng, int jobs) {
    check_tail_args(d, eps);
    if (schedule.dim() != d) {
        throw ArgumentError("psi_second_moment_experiment schedule dimension mismatch");
    }
    if (t < 0) {
        throw ArgumentError("psi_second_moment_experiment needs t >= 0");
    }
    if (static_cast<double>(t) > 0.1 * d * d / (eps * eps)) {
        throw ArgumentError("psi_second_moment_experiment regime guard: t <= 0.1 d^2/eps^2");
    }
    if (num < 2) {
        throw ArgumentError("psi_second_moment_experiment needs num >= 2");
    }
    const StateSource null_source = StateSource::mixed(d);
    const LikelihoodContext ctx(d, eps);
    std::vector<double> values = parallel_map<double>(
        num, jobs, [&](std::int64_t i) {
            Rng base = rng.derive(static_cast<std::uint64_t>(i));
            Rng hist = base.derive(0);
            Rng ru = base.derive(1);
            Rng rv = base.derive(2);
            const Transcript tr = run_schedule(null_source, schedule, t, hist);
            const ComplexMatrix u = haar_unitary(d, ru);
            const ComplexMatrix uq = haar_unitary(d, rv);
            const double v = psi(tr, schedule, u, uq, ctx);
            return v * v;
        });
    return summarize(values, "psi_second_moment");
}

FluctuationReport fluctuation_scaling(const std::vector<int>& d_list, double eps,
                                      const PovmFamily& family, std::int64_t num_pairs,
                                      Rng& rng, int jobs) {
    if (d_list.size() < 3) {
        throw ArgumentError("fluctuation_scaling needs at least 3 dimensions");
    }
    if (num_pairs < 2) {
        throw ArgumentError("fluctuation_scaling needs num_pairs >= 2");
    }
    FluctuationReport report;
    report.d_values = d_list;
    report.eps = eps;
    report.num_pairs = num_pairs;
    report.seed = rng.seed();
    std::vector<double> log_d;
    std::vector<double> log_std;
    for (std::size_t k = 0; k < d_list.size(); ++k) {
        const int d = d_list[k];
        check_tail_args(d, eps);
        const Povm m = family(d);
        if (m.dim() != d) {
            throw ArgumentError("fluctuation_scaling family dimension mismatch");
        }
        const LikelihoodContext ctx(d, eps);
        Rng child = rng.derive(static_cast<std::uint64_t>(k));
        std::vector<double> values = parallel_map<double>(
            num_pairs, jobs, [&](std::int64_t i) {
                Rng ru = child.derive(static_cast<std::uint64_t>(2 * i));
                Rng rv = child.derive(static_cast<std::uint64_t>(2 * i + 1));
                const ComplexMatrix u = haar_unitary(d, ru);
                const ComplexMatrix uq = haar_unitary(d, rv);
                return phi(m, u, uq, ctx);
            });
        const McEstimate e = summarize(values, "phi");
        const double sd = e.stderr_ * std::sqrt(static_cast<double>(e.samples));
        report.phi_std.push_back(sd);
        log_d.push_back(std::log(static_cast<double>(d)));
        log_std.push_back(std::log(sd));
    }
    report.slope = least_squares_line(log_d, log_std).slope;
    return report;
}

}  // namespace mixcert
