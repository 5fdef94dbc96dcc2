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

#include "core/experiments.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "core/calibration.h"
#include "core/certifier.h"
#include "core/collision.h"
#include "core/eigh.h"
#include "core/errors.h"
#include "core/haar.h"
#include "core/likelihood.h"
#include "core/matrix_io.h"
#include "core/paninski.h"
#include "core/parallel.h"
#include "core/povm.h"
#include "core/schedule.h"
#include "core/states.h"
#include "core/stats.h"
#include "core/tails.h"
#include "core/version.h"
#include "core/weingarten.h"

namespace mixcert {

StateSource state_source_from_spec(const std::string& state, int d, double eps) {
    if (state == "mixed") {
        return StateSource::mixed(d);
    }
    if (state == "hard") {
        return StateSource::hard(d, eps);
    }
    if (state == "pure") {
        return StateSource::pure(d);
    }
    if (state.rfind("file:", 0) == 0) {
        const std::string path = state.substr(5);
        const ComplexMatrix m = read_matrix_file(path);
        if (m.dim() != d) {
            throw ArgumentError("state file dimension does not match --d");
        }
        return StateSource::fixed(DensityMatrix(HermitianMatrix(m)), "file");
    }
    throw ArgumentError("unknown state: " + state +
                        " (expected mixed|hard|pure|file:<path>)");
}

Schedule schedule_from_spec(const std::string& kind, int d, RngSeed seed) {
    if (kind == "fixed") {
        return Schedule::standard_basis(d);
    }
    if (kind == "fresh-haar") {
        return Schedule::fresh_haar(d, rng_derive(seed, 7100 + static_cast<std::uint64_t>(d)));
    }
    if (kind == "greedy-realign") {
        return Schedule::greedy_realign(d,
                                        rng_derive(seed, 7200 + static_cast<std::uint64_t>(d)));
    }
    throw ArgumentError("unknown schedule: " + kind +
                        " (expected fixed|fresh-haar|greedy-realign)");
}

namespace {

ExperimentReport make_report(const ExperimentConfig& config) {
    ExperimentReport report;
    report.version = kVersion;
    report.command = config.command;
    report.config = config.to_json();
    report.summary = nullptr;
    return report;
}

// ----------------------------------------------------------------- certify

ExperimentReport cmd_certify(const ExperimentConfig& config) {
    ExperimentReport report = make_report(config);
    report.columns = {"trial", "d", "eps", "state", "N", "S", "threshold", "verdict", "seed"};

    const auto d_count = static_cast<std::int64_t>(config.d_grid.size());
    const std::int64_t total = d_count * config.trials;
    std::vector<CertifyResult> results = parallel_map<CertifyResult>(
        total, config.jobs, [&](std::int64_t unit) {
            const int d = config.d_grid[static_cast<std::size_t>(unit / config.trials)];
            const StateSource source = state_source_from_spec(config.state, d, config.eps);
            Rng trial_rng(rng_derive(config.seed, static_cast<std::uint64_t>(unit)));
            if (config.n > 0) {
                return test_mixed_with_samples(source, d, config.eps, config.n, trial_rng);
            }
            return test_mixed(source, d, config.eps, trial_rng);
        });

    nlohmann::json summary = nlohmann::json::array();
    for (std::int64_t di = 0; di < d_count; ++di) {
        std::int64_t yes = 0;
        for (std::int64_t t = 0; t < config.trials; ++t) {
            const CertifyResult& r = results[static_cast<std::size_t>(di * config.trials + t)];
            report.rows.push_back({{"trial", t},
                                   {"d", r.d},
                                   {"eps", r.eps},
                                   {"state", config.state},
                                   {"N", r.n},
                                   {"S", r.s},
                                   {"threshold", r.threshold},
                                   {"verdict", certify_verdict_name(r.verdict)},
                                   {"seed", r.seed}});
            if (r.verdict == CertifyVerdict::kYes) {
                ++yes;
            }
        }
        if (config.trials > 0) {
            const WilsonInterval w = wilson_interval(yes, config.trials);
            summary.push_back({{"d", config.d_grid[static_cast<std::size_t>(di)]},
                               {"trials", config.trials},
                               {"yes", yes},
                               {"yes_rate", w.rate},
                               {"wilson_lo", w.lo},
                               {"wilson_hi", w.hi}});
        }
    }
    report.summary = summary;
    return report;
}

// ------------------------------------------------------------------- sweep

ExperimentReport cmd_sweep(const ExperimentConfig& config) {
    if (config.d_grid.size() < 2) {
        throw ArgumentError("sweep needs at least 2 grid dimensions");
    }
    ExperimentReport report = make_report(config);
    report.columns = {"d",      "eps",          "multiplier", "N",       "trials",
                      "yes_rate_mixed", "no_rate_hard", "success", "degenerate", "seed"};

    struct Cell {
        int d;
        double multiplier;
        std::int64_t n;
        bool degenerate;
    };
    std::vector<Cell> cells;
    for (int d : config.d_grid) {
        for (double m : config.multipliers) {
            const double dd = static_cast<double>(d);
            const auto n = static_cast<std::int64_t>(
                std::ceil(m * dd * std::sqrt(dd) / (config.eps * config.eps)));
            cells.push_back({d, m, n, n < 2});
        }
    }

    // Unit layout: cell-major, then side (0 = mixed, 1 = hard), then trial.
    const std::int64_t per_cell = 2 * config.trials;
    const std::int64_t total = static_cast<std::int64_t>(cells.size()) * per_cell;
    std::vector<char> success = parallel_map<char>(
        total, config.jobs, [&](std::int64_t unit) -> char {
            const Cell& cell = cells[static_cast<std::size_t>(unit / per_cell)];
            if (cell.degenerate) {
                return 0;
            }
            const std::int64_t rem = unit % per_cell;
            const bool hard_side = rem >= config.trials;
            const StateSource source = hard_side ? StateSource::hard(cell.d, config.eps)
                                                 : StateSource::mixed(cell.d);
            Rng trial_rng(rng_derive(config.seed, static_cast<std::uint64_t>(unit)));
            const CertifyResult r =
                test_mixed_with_samples(source, cell.d, config.eps, cell.n, trial_rng);
            return (hard_side ? r.verdict == CertifyVerdict::kNo
                              : r.verdict == CertifyVerdict::kYes)
                       ? 1
                       : 0;
        });

    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const Cell& cell = cells[ci];
        double yes_rate = 0.5;
        double no_rate = 0.5;
        if (!cell.degenerate && config.trials > 0) {
            std::int64_t mixed_ok = 0;
            std::int64_t hard_ok = 0;
            const std::int64_t base = static_cast<std::int64_t>(ci) * per_cell;
            for (std::int64_t t = 0; t < config.trials; ++t) {
                mixed_ok += success[static_cast<std::size_t>(base + t)];
                hard_ok += success[static_cast<std::size_t>(base + config.trials + t)];
            }
            yes_rate = static_cast<double>(mixed_ok) / static_cast<double>(config.trials);
            no_rate = static_cast<double>(hard_ok) / static_cast<double>(config.trials);
        }
        report.rows.push_back({{"d", cell.d},
                               {"eps", config.eps},
                               {"multiplier", cell.multiplier},
                               {"N", cell.n},
                               {"trials", config.trials},
                               {"yes_rate_mixed", yes_rate},
                               {"no_rate_hard", no_rate},
                               {"success", 0.5 * (yes_rate + no_rate)},
                               {"degenerate", cell.degenerate ? 1 : 0},
                               {"seed", config.seed}});
    }

    PlotSpec plot;
    plot.x_column = "multiplier";
    plot.y_columns = {"success"};
    plot.group_columns = {"d"};
    plot.x_label = "sample multiplier m (N = m d^1.5 / eps^2)";
    plot.y_label = "two-sided success rate";
    report.plot = plot;
    return report;
}

// ---------------------------------------------------------------- paninski

ExperimentReport cmd_paninski(const ExperimentConfig& config) {
    ExperimentReport report = make_report(config);
    report.columns = {"d",       "eps",     "t",        "zt_exact",  "sum_zt",
                      "chisq_exact", "kl_exact", "delta_min", "dev_chisq", "dev_zt"};

    const int t_max = (config.n > 0) ? static_cast<int>(config.n) : config.t_max;
    nlohmann::json summary = nlohmann::json::array();
    for (int d : config.d_grid) {
        const PaninskiExactTables tables = enumeration_oracle(d, config.eps, t_max);
        double sum_zt = 0.0;
        for (int t = 0; t <= t_max; ++t) {
            const auto ti = static_cast<std::size_t>(t);
            sum_zt += tables.zt[ti];
            const double chisq_closed = chisq_exact(d, t, config.eps);
            const double zt_closed = (t >= 1) ? zt_exact(d, config.eps, t) : 0.0;
            report.rows.push_back(
                {{"d", d},
                 {"eps", config.eps},
                 {"t", t},
                 {"zt_exact", tables.zt[ti]},
                 {"sum_zt", sum_zt},
                 {"chisq_exact", tables.chisq[ti]},
                 {"kl_exact", tables.kl[ti]},
                 {"delta_min", tables.delta_min[ti]},
                 {"dev_chisq", std::abs(chisq_closed - tables.chisq[ti])},
                 {"dev_zt", std::abs(zt_closed - tables.zt[ti])}});
        }
        summary.push_back({{"d", d},
                           {"max_delta_deviation", tables.max_delta_deviation},
                           {"max_inner_psi_deviation", tables.max_inner_psi_deviation}});
    }
    report.summary = summary;
    return report;
}

// ------------------------------------------------------------------- tails

ExperimentReport cmd_tails(const ExperimentConfig& config) {
    ExperimentReport report = make_report(config);
    report.columns = {"statistic", "d",       "eps",     "threshold", "empirical_p",
                      "stderr",    "bound_p", "samples", "seed"};
    const std::int64_t num_samples = std::max<std::int64_t>(1000, 5 * config.mc_pairs);
    const Rng root(config.seed);

    const TailStatistic stats[] = {TailStatistic::kDiagNorm, TailStatistic::kPhi,
                                   TailStatistic::kKStat};
    for (std::size_t di = 0; di < config.d_grid.size(); ++di) {
        const int d = config.d_grid[di];
        const Povm basis = Povm::standard_basis(d);
        for (std::size_t si = 0; si < 3; ++si) {
            Rng child = root.derive(static_cast<std::uint64_t>(di * 3 + si));
            const TailCurve curve = tail_experiment(stats[si], d, config.eps, basis,
                                                    num_samples, {}, child, config.jobs);
            for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
                report.rows.push_back({{"statistic", curve.statistic},
                                       {"d", curve.d},
                                       {"eps", curve.eps},
                                       {"threshold", curve.thresholds[i]},
                                       {"empirical_p", curve.empirical[i]},
                                       {"stderr", curve.stderr_[i]},
                                       {"bound_p", curve.bound[i]},
                                       {"samples", curve.samples},
                                       {"seed", curve.seed}});
            }
        }
    }

    PlotSpec plot;
    plot.x_column = "threshold";
    plot.y_columns = {"empirical_p", "bound_p"};
    plot.group_columns = {"statistic", "d"};
    plot.x_label = "threshold";
    plot.y_label = "exceedance probability";
    plot.log_y = true;
    report.plot = plot;
    return report;
}

// ---------------------------------------------------------------- simulate

ExperimentReport cmd_simulate(const ExperimentConfig& config) {
    ExperimentReport report = make_report(config);
    report.columns = {"d",     "eps",  "schedule", "state", "trial",
                      "step",  "outcome", "povm_id", "seed"};
    const int n = (config.n > 0) ? static_cast<int>(config.n) : 16;

    for (std::size_t di = 0; di < config.d_grid.size(); ++di) {
        const int d = config.d_grid[di];
        const Schedule schedule = schedule_from_spec(config.schedule, d, config.seed);
        const StateSource source = state_source_from_spec(config.state, d, config.eps);
        std::vector<Transcript> transcripts = parallel_map<Transcript>(
            config.trials, config.jobs, [&](std::int64_t t) {
                Rng trial_rng(rng_derive(
                    config.seed,
                    static_cast<std::uint64_t>(di) * static_cast<std::uint64_t>(config.trials) +
                        static_cast<std::uint64_t>(t)));
                return run_schedule(source, schedule, n, trial_rng);
            });
        for (std::int64_t t = 0; t < config.trials; ++t) {
            const Transcript& tr = transcripts[static_cast<std::size_t>(t)];
            const RngSeed trial_seed = rng_derive(
                config.seed,
                static_cast<std::uint64_t>(di) * static_cast<std::uint64_t>(config.trials) +
                    static_cast<std::uint64_t>(t));
            for (int step = 0; step < tr.length(); ++step) {
                report.rows.push_back(
                    {{"d", d},
                     {"eps", config.eps},
                     {"schedule", schedule.name()},
                     {"state", config.state},
                     {"trial", t},
                     {"step", step},
                     {"outcome", tr.outcomes[static_cast<std::size_t>(step)]},
                     {"povm_id", tr.povm_ids[static_cast<std::size_t>(step)]},
                     {"seed", trial_seed}});
            }
        }
    }
    return report;
}

// ------------------------------------------------------------------ verify

struct CheckRecorder {
    ExperimentReport* report;

    // relation: true for "observed <= target", false for "observed >= target".
    void add(const std::string& check, int d, double eps, double observed, double target,
             bool leq) {
        const bool ok = leq ? (observed <= target) : (observed >= target);
        report->rows.push_back({{"check", check},
                                {"d", d},
                                {"eps", eps},
                                {"observed", observed},
                                {"target", target},
                                {"relation", leq ? "<=" : ">="},
                                {"status", ok ? "pass" : "fail"}});
        if (!ok) {
            auto& failed = report->failed_checks;
            if (std::find(failed.begin(), failed.end(), check) == failed.end()) {
                failed.push_back(check);
            }
        }
    }
};

HermitianMatrix random_hermitian(int d, Rng& rng) {
    ComplexMatrix g(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            g(i, j) = rng.next_complex_gaussian();
        }
    }
    ComplexMatrix h = g;
    const ComplexMatrix ga = g.adjoint();
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            h(i, j) = 0.5 * (g(i, j) + ga(i, j));
        }
    }
    return HermitianMatrix(h);
}

// Two-element POVM {P, I - P} with P = B / (2 lambda_max(B)), B Wishart.
Povm random_two_element_povm(int d, Rng& rng) {
    ComplexMatrix g(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            g(i, j) = rng.next_complex_gaussian();
        }
    }
    const ComplexMatrix b = multiply(g.adjoint(), g);
    const EighResult eig = jacobi_eigh(HermitianMatrix(b));
    const double lambda_max = eig.eigenvalues.back();
    ComplexMatrix p = b;
    p *= Complex(0.5 / lambda_max, 0.0);
    ComplexMatrix q = ComplexMatrix::identity(d);
    q -= p;
    return Povm({HermitianMatrix(p), HermitianMatrix(q)});
}

void verify_weingarten(const ExperimentConfig& config, CheckRecorder& rec, const Rng& root) {
    // Exact coefficient values at d = 2 plus the row-sum identity.
    double dev = std::abs(wg2(PermS2::kIdentity, 2) - 1.0 / 3.0) +
                 std::abs(wg2(PermS2::kTauStar, 2) + 1.0 / 6.0);
    for (int d : config.d_grid) {
        dev = std::max(dev, std::abs(wg2(PermS2::kIdentity, d) +
                                     static_cast<double>(d) * wg2(PermS2::kTauStar, d)));
    }
    rec.add("weingarten-values", 0, config.eps, dev, 1e-12, true);

    // Closed form vs MC for random Hermitian pairs, shared Haar draws.
    const std::int64_t draws = std::max<std::int64_t>(10 * config.mc_pairs, 1000);
    for (std::size_t di = 0; di < config.d_grid.size(); ++di) {
        const int d = config.d_grid[di];
        Rng pair_rng = root.derive(100 + di);
        std::vector<HermitianMatrix> as;
        std::vector<HermitianMatrix> bs;
        for (int p = 0; p < 3; ++p) {
            as.push_back(random_hermitian(d, pair_rng));
            bs.push_back(random_hermitian(d, pair_rng));
        }
        Rng mc_root = root.derive(110 + di);
        std::vector<std::vector<double>> values(3);
        for (auto& v : values) {
            v.resize(static_cast<std::size_t>(draws));
        }
        parallel_for_chunks(draws, config.jobs, [&](std::int64_t begin, std::int64_t end) {
            for (std::int64_t i = begin; i < end; ++i) {
                Rng draw = mc_root.derive(static_cast<std::uint64_t>(i));
                const ComplexMatrix u = haar_unitary(d, draw);
                const ComplexMatrix ua = u.adjoint();
                for (int p = 0; p < 3; ++p) {
                    const ComplexMatrix c =
                        multiply(ua, multiply(bs[static_cast<std::size_t>(p)].matrix(), u));
                    const double tr =
                        hs_inner(as[static_cast<std::size_t>(p)].matrix(), c).real();
                    values[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)] = tr * tr;
                }
            }
        });
        double max_z = 0.0;
        for (int p = 0; p < 3; ++p) {
            const McEstimate e = summarize(values[static_cast<std::size_t>(p)], "second_moment");
            const double exact = second_moment_trace(as[static_cast<std::size_t>(p)],
                                                     bs[static_cast<std::size_t>(p)]);
            max_z = std::max(max_z, std::abs(e.mean - exact) / e.stderr_);
        }
        rec.add("second-moment-mc", d, config.eps, max_z, 3.0, true);
    }

    // Exact identities: projector vs sign matrix, rank-one trace-normalized
    // element, and the flat element's vanishing tilt.
    for (int d : config.d_grid) {
        const double dd = static_cast<double>(d);
        std::vector<double> e1(static_cast<std::size_t>(d), 0.0);
        e1[0] = 1.0;
        const HermitianMatrix projector = HermitianMatrix::diagonal(e1);
        const HermitianMatrix signs = half_sign_diagonal(d);
        const double proj_val = second_moment_trace(projector, signs);
        rec.add("projector-second-moment", d, config.eps,
                std::abs(proj_val - 1.0 / (dd + 1.0)), 1e-12, true);

        const double rank_one = expected_g_squared(projector, config.eps);
        const double expected = config.eps * config.eps / (dd + 1.0);
        std::vector<double> flat(static_cast<std::size_t>(d), 1.0 / dd);
        const double flat_val =
            expected_g_squared(HermitianMatrix::diagonal(flat), config.eps);
        rec.add("rank-one-g-squared", d, config.eps,
                std::max(std::abs(rank_one - expected), std::abs(flat_val)), 1e-14, true);
    }

    // MC mean of g^2 for a random rank-one element vs the closed form.
    {
        const int d = config.d_grid.front();
        const LikelihoodContext ctx(d, config.eps);
        Rng vec_rng = root.derive(120);
        const ComplexVector v = random_unit_vector(d, vec_rng);
        const HermitianMatrix m_hat(ComplexMatrix::outer(v));
        const double exact = expected_g_squared(m_hat, config.eps);
        Rng mc_root = root.derive(121);
        std::vector<double> values = parallel_map<double>(
            draws, config.jobs, [&](std::int64_t i) {
                Rng draw = mc_root.derive(static_cast<std::uint64_t>(i));
                const ComplexMatrix u = haar_unitary(d, draw);
                const ComplexMatrix c =
                    multiply(u.adjoint(), multiply(m_hat.matrix(), u));
                double g = 0.0;
                for (int k = 0; k < d; ++k) {
                    const double sign = (k < d / 2) ? config.eps : -config.eps;
                    g += sign * c(k, k).real();
                }
                return g * g;
            });
        const McEstimate e = summarize(values, "g_squared");
        rec.add("expected-g-squared-mc", d, config.eps, std::abs(e.mean - exact) / e.stderr_,
                3.0, true);
    }

    // E[delta(v)^2] = 1/(d+1) for Haar unit vectors.
    for (std::size_t di = 0; di < config.d_grid.size(); ++di) {
        const int d = config.d_grid[di];
        Rng mc_root = root.derive(130 + di);
        std::vector<double> values = parallel_map<double>(
            draws, config.jobs, [&](std::int64_t i) {
                Rng draw = mc_root.derive(static_cast<std::uint64_t>(i));
                const ComplexVector v = random_unit_vector(d, draw);
                const double delta = delta_statistic(v);
                return delta * delta;
            });
        const McEstimate e = summarize(values, "delta_squared");
        rec.add("delta-squared-mean", d, config.eps,
                std::abs(e.mean - 1.0 / (d + 1.0)) / e.stderr_, 3.0, true);
    }
}

void verify_likelihood_identities(const ExperimentConfig& config, CheckRecorder& rec,
                                  const Rng& root) {
    // g mean-zero under the null law, |g| <= eps, |phi| <= eps^2 across
    // basis and general POVMs.
    for (std::size_t di = 0; di < config.d_grid.size(); ++di) {
        const int d = config.d_grid[di];
        const LikelihoodContext ctx(d, config.eps);
        Rng case_rng = root.derive(200 + di);
        double max_mean = 0.0;
        double max_range = 0.0;
        for (int c = 0; c < 25; ++c) {
            Rng u_rng = case_rng.derive(static_cast<std::uint64_t>(3 * c));
            Rng m_rng = case_rng.derive(static_cast<std::uint64_t>(3 * c + 1));
            Rng uq_rng = case_rng.derive(static_cast<std::uint64_t>(3 * c + 2));
            const ComplexMatrix u = haar_unitary(d, u_rng);
            const ComplexMatrix uq = haar_unitary(d, uq_rng);
            Povm m = (c % 3 == 0)   ? Povm::standard_basis(d)
                     : (c % 3 == 1) ? Povm::haar_basis(d, m_rng)
                                    : random_two_element_povm(d, m_rng);
            double mean = 0.0;
            for (int x = 0; x < m.size(); ++x) {
                const double g = g_factor(m, x, u, ctx);
                mean += m.element_trace(x) / d * g;
                max_range = std::max(max_range, std::abs(g) - config.eps);
            }
            max_mean = std::max(max_mean, std::abs(mean));
            max_range = std::max(
                max_range, std::abs(phi(m, u, uq, ctx)) - config.eps * config.eps);
        }
        rec.add("g-mean-zero", d, config.eps, max_mean, 1e-10, true);
        rec.add("g-phi-range", d, config.eps, max_range, 1e-12, true);
    }

    // Mixture likelihood ratio floor on a null transcript.
    for (std::size_t di = 0; di < config.d_grid.size(); ++di) {
        const int d = config.d_grid[di];
        const LikelihoodContext ctx(d, config.eps);
        const Schedule schedule = Schedule::standard_basis(d);
        const int t = 20;
        Rng hist_rng = root.derive(210 + di);
        const Transcript tr =
            run_schedule(StateSource::mixed(d), schedule, t, hist_rng);
        Rng mc_rng = root.derive(220 + di);
        const McEstimate e = delta_mc(tr, schedule, config.mc_inner, mc_rng, ctx);
        // Per-step floor 1 - E[g^2] >= 1 - eps^2/(d+1), relaxed to eps^2/d.
        const double bound =
            std::pow(1.0 - kDeltaShrinkRate * config.eps * config.eps / d, t);
        rec.add("delta-lower-bound", d, config.eps, e.mean - (bound - 3.0 * e.stderr_), 0.0,
                false);
    }

    // Delta^2 vs E[Psi] on random null transcripts.
    for (std::size_t di = 0; di < config.d_grid.size(); ++di) {
        const int d = config.d_grid[di];
        const LikelihoodContext ctx(d, config.eps);
        const Schedule schedule = Schedule::standard_basis(d);
        double max_z = 0.0;
        for (int rep = 0; rep < 5; ++rep) {
            Rng hist_rng = root.derive(230 + 10 * di + static_cast<std::uint64_t>(rep));
            const Transcript tr =
                run_schedule(StateSource::mixed(d), schedule, 12, hist_rng);
            Rng delta_rng = root.derive(260 + 10 * di + static_cast<std::uint64_t>(rep));
            const McEstimate de = delta_mc(tr, schedule, config.mc_inner, delta_rng, ctx);
            Rng pair_root = root.derive(290 + 10 * di + static_cast<std::uint64_t>(rep));
            std::vector<double> values = parallel_map<double>(
                config.mc_pairs, config.jobs, [&](std::int64_t i) {
                    Rng ru = pair_root.derive(static_cast<std::uint64_t>(2 * i));
                    Rng rv = pair_root.derive(static_cast<std::uint64_t>(2 * i + 1));
                    const ComplexMatrix u = haar_unitary(d, ru);
                    const ComplexMatrix uq = haar_unitary(d, rv);
                    return psi(tr, schedule, u, uq, ctx);
                });
            const McEstimate pe = summarize(values, "psi_mean");
            const double se = std::hypot(2.0 * de.mean * de.stderr_, pe.stderr_);
            max_z = std::max(max_z, std::abs(de.mean * de.mean - pe.mean) / se);
        }
        rec.add("delta-psi-identity", d, config.eps, max_z, 3.0, true);
    }

    // Mean of the pair statistic K against the single-copy bound. The
    // observed mean sits near twice the target; reported as measured.
    for (std::size_t di = 0; di < config.d_grid.size(); ++di) {
        const int d = config.d_grid[di];
        const LikelihoodContext ctx(d, config.eps);
        const Povm basis = Povm::standard_basis(d);
        const std::int64_t pairs = 5 * config.mc_pairs;
        Rng pair_root = root.derive(320 + di);
        std::vector<double> values = parallel_map<double>(
            pairs, config.jobs, [&](std::int64_t i) {
                Rng ru = pair_root.derive(static_cast<std::uint64_t>(2 * i));
                Rng rv = pair_root.derive(static_cast<std::uint64_t>(2 * i + 1));
                const ComplexMatrix u = haar_unitary(d, ru);
                const ComplexMatrix uq = haar_unitary(d, rv);
                return k_statistic(basis, u, uq, ctx);
            });
        const McEstimate e = summarize(values, "k_mean");
        rec.add("k-mean-bound", d, config.eps, e.mean,
                config.eps * config.eps / (d + 1.0) * 1.05, true);
    }
}

void verify_tails_and_growth(const ExperimentConfig& config, CheckRecorder& rec,
                             const Rng& root) {
    const std::int64_t samples = std::max<std::int64_t>(1000, 5 * config.mc_pairs);

    // Fluctuation scale of phi across dimensions.
    {
        Rng rng = root.derive(400);
        const FluctuationReport fl = fluctuation_scaling(
            {8, 16, 32, 64}, config.eps, [](int d) { return Povm::standard_basis(d); },
            config.mc_pairs, rng, config.jobs);
        rec.add("phi-fluctuation-slope", 0, config.eps, std::abs(fl.slope + 1.5), 0.2, true);
    }

    // Spot tail probabilities at fixed design points.
    {
        const int d = 32;
        Rng rng = root.derive(410);
        const TailCurve curve =
            tail_experiment(TailStatistic::kDiagNorm, d, config.eps, Povm::standard_basis(d),
                            samples, {1.0 + 10.0 / std::sqrt(static_cast<double>(d))}, rng,
                            config.jobs);
        rec.add("tail-diag-norm", d, config.eps, curve.empirical[0], 0.01, true);
    }
    {
        const int d = 16;
        const double eps = 0.5;
        Rng rng = root.derive(420);
        const double tau = 5.0 * eps * eps / std::pow(static_cast<double>(d), 1.5);
        const TailCurve curve = tail_experiment(TailStatistic::kPhi, d, eps,
                                                Povm::standard_basis(d), samples, {tau}, rng,
                                                config.jobs);
        rec.add("tail-phi", d, eps, curve.empirical[0], 0.02, true);
    }

    // Calibrated bound curves must dominate the empirical exceedance.
    const TailStatistic stats[] = {TailStatistic::kDiagNorm, TailStatistic::kPhi,
                                   TailStatistic::kKStat};
    for (std::size_t di = 0; di < config.d_grid.size(); ++di) {
        const int d = config.d_grid[di];
        const Povm basis = Povm::standard_basis(d);
        for (std::size_t si = 0; si < 3; ++si) {
            Rng rng = root.derive(430 + 3 * di + si);
            const TailCurve curve = tail_experiment(stats[si], d, config.eps, basis, samples,
                                                    {}, rng, config.jobs);
            double worst = -1.0;
            for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
                worst = std::max(worst, curve.empirical[i] - 3.0 * curve.stderr_[i] -
                                            curve.bound[i]);
            }
            rec.add(std::string("tail-bound-dominates-") + curve.statistic, d, config.eps,
                    worst, 0.0, true);
        }
    }

    // Moment growth of (1 + K)^n against the exponential envelope.
    for (std::size_t di = 0; di < config.d_grid.size(); ++di) {
        const int d = config.d_grid[di];
        const double regime = 0.1 * d * d / (config.eps * config.eps);
        const int n = static_cast<int>(std::min(64.0, std::floor(regime)));
        Rng rng = root.derive(460 + di);
        const McEstimate e =
            moment_growth_experiment(d, config.eps, n, 1.0, Povm::standard_basis(d),
                                     config.mc_pairs, rng, config.jobs);
        const double bound =
            std::exp(kMomentGrowthRate * n * config.eps * config.eps / d);
        rec.add("moment-growth", d, config.eps, (e.mean - 3.0 * e.stderr_) / bound, 1.0, true);
    }

    // Pair-likelihood second moment along null transcripts.
    for (std::size_t di = 0; di < config.d_grid.size(); ++di) {
        const int d = config.d_grid[di];
        const double regime = 0.1 * d * d / (config.eps * config.eps);
        const int t = static_cast<int>(std::min(50.0, std::floor(regime)));
        const Schedule schedule = Schedule::standard_basis(d);
        Rng rng = root.derive(470 + di);
        const McEstimate e = psi_second_moment_experiment(d, config.eps, t, schedule,
                                                          config.mc_pairs, rng, config.jobs);
        const double bound =
            std::exp(kPsiSecondMomentRate * t * config.eps * config.eps / d);
        rec.add("psi-second-moment", d, config.eps, (e.mean - 3.0 * e.stderr_) / bound, 1.0,
                true);
    }
}

void verify_divergences(const ExperimentConfig& config, CheckRecorder& rec, const Rng& root) {
    // Nonadaptive chi-squared bound stays small in the o(d^{3/2}/eps^2)
    // sample regime.
    {
        const int d = 16;
        const LikelihoodContext ctx(d, config.eps);
        const Schedule schedule = Schedule::standard_basis(d);
        const int n = static_cast<int>(
            std::floor(0.1 * std::pow(static_cast<double>(d), 1.5) /
                       (config.eps * config.eps)));
        Rng rng = root.derive(500);
        const McEstimate e =
            chisq_bound_mc(schedule, n, config.mc_pairs, rng, ctx, config.jobs);
        rec.add("chisq-bound-regime", d, config.eps, e.mean + 3.0 * e.stderr_, 0.5, true);
    }

    // Chain-rule bound is nonnegative up to noise.
    {
        const int d = 8;
        const LikelihoodContext ctx(d, config.eps);
        const Schedule schedule = Schedule::standard_basis(d);
        Rng rng = root.derive(510);
        const McEstimate e = chain_rule_bound_mc(schedule, 10, config.mc_outer,
                                                 config.mc_pairs, rng, ctx, nullptr,
                                                 config.jobs);
        rec.add("chain-rule-nonneg", d, config.eps, e.mean + 3.0 * e.stderr_, 0.0, false);
    }

    // Plug-in KL stays below the chain-rule bound.
    {
        const int d = 4;
        const LikelihoodContext ctx(d, config.eps);
        const Schedule schedule = Schedule::standard_basis(d);
        Rng kl_rng = root.derive(520);
        const McEstimate kl = kl_plugin_mc(schedule, 8, config.mc_outer, config.mc_inner,
                                           kl_rng, ctx, config.jobs);
        Rng chain_rng = root.derive(521);
        const McEstimate chain = chain_rule_bound_mc(schedule, 8, config.mc_outer,
                                                     config.mc_pairs, chain_rng, ctx, nullptr,
                                                     config.jobs);
        const double se = std::hypot(kl.stderr_, chain.stderr_);
        rec.add("kl-vs-chain-rule", d, config.eps, kl.mean - chain.mean - 3.0 * se, 0.0, true);
    }

    // Pinsker at desk scale: empirical TV between null and alternative
    // transcript histograms vs the plug-in KL.
    {
        const int d = 4;
        const int n = 3;
        const LikelihoodContext ctx(d, config.eps);
        const Schedule schedule = Schedule::standard_basis(d);
        const std::int64_t per_side = 25 * config.mc_pairs;
        std::int64_t cells = 1;
        for (int i = 0; i < n; ++i) {
            cells *= d;
        }
        std::vector<std::int64_t> hist_null(static_cast<std::size_t>(cells), 0);
        std::vector<std::int64_t> hist_alt(static_cast<std::size_t>(cells), 0);
        const StateSource null_source = StateSource::mixed(d);
        const StateSource alt_source = StateSource::hard(d, config.eps);
        Rng null_rng = root.derive(530);
        Rng alt_rng = root.derive(531);
        for (std::int64_t i = 0; i < per_side; ++i) {
            Rng a = null_rng.derive(static_cast<std::uint64_t>(i));
            Rng b = alt_rng.derive(static_cast<std::uint64_t>(i));
            const Transcript t0 = run_schedule(null_source, schedule, n, a);
            const Transcript t1 = run_schedule(alt_source, schedule, n, b);
            std::int64_t i0 = 0;
            std::int64_t i1 = 0;
            for (int s = 0; s < n; ++s) {
                i0 = i0 * d + t0.outcomes[static_cast<std::size_t>(s)];
                i1 = i1 * d + t1.outcomes[static_cast<std::size_t>(s)];
            }
            ++hist_null[static_cast<std::size_t>(i0)];
            ++hist_alt[static_cast<std::size_t>(i1)];
        }
        double tv = 0.0;
        for (std::int64_t c = 0; c < cells; ++c) {
            tv += std::abs(static_cast<double>(hist_alt[static_cast<std::size_t>(c)]) -
                           static_cast<double>(hist_null[static_cast<std::size_t>(c)]));
        }
        tv /= 2.0 * static_cast<double>(per_side);
        Rng kl_rng = root.derive(532);
        const McEstimate kl = kl_plugin_mc(schedule, n, config.mc_outer, config.mc_inner,
                                           kl_rng, ctx, config.jobs);
        rec.add("pinsker-ordering", d, config.eps, 2.0 * tv * tv,
                kl.mean + 3.0 * kl.stderr_, true);
    }

    // Exact classical cross-checks at small d.
    for (int d : {2, 4}) {
        const PaninskiExactTables tables = enumeration_oracle(d, config.eps, 5);
        rec.add("classical-closed-forms", d, config.eps,
                std::max(tables.max_delta_deviation, tables.max_inner_psi_deviation), 1e-12,
                true);
        double worst_chain = -1.0;
        double worst_closed = 0.0;
        double sum_zt = 0.0;
        for (int t = 0; t <= 5; ++t) {
            const auto ti = static_cast<std::size_t>(t);
            sum_zt += tables.zt[ti];
            worst_chain = std::max(worst_chain, tables.kl[ti] - sum_zt);
            worst_closed = std::max(
                worst_closed, std::abs(chisq_exact(d, t, config.eps) - tables.chisq[ti]));
            if (t >= 1) {
                worst_closed = std::max(
                    worst_closed, std::abs(zt_exact(d, config.eps, t) - tables.zt[ti]));
            }
        }
        rec.add("classical-kl-chain", d, config.eps, worst_chain, 1e-12, true);
        rec.add("classical-chisq-closed", d, config.eps, worst_closed, 1e-10, true);
    }
}

ExperimentReport cmd_verify(const ExperimentConfig& config) {
    ExperimentReport report = make_report(config);
    report.columns = {"check", "d", "eps", "observed", "target", "relation", "status"};
    CheckRecorder rec{&report};
    const Rng root(config.seed);

    verify_weingarten(config, rec, root);
    verify_likelihood_identities(config, rec, root);
    verify_tails_and_growth(config, rec, root);
    verify_divergences(config, rec, root);

    nlohmann::json summary;
    summary["checks"] = report.rows.size();
    summary["failed"] = report.failed_checks.size();
    report.summary = summary;
    return report;
}

}  // namespace

// ------------------------------------------------------------------ config

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["d_grid"] = d_grid;
    j["eps"] = eps;
    j["n"] = n;
    j["trials"] = trials;
    j["seed"] = seed;
    j["mc_outer"] = mc_outer;
    j["mc_pairs"] = mc_pairs;
    j["mc_inner"] = mc_inner;
    j["schedule"] = schedule;
    j["state"] = state;
    j["out"] = out;
    j["format"] = format;
    j["jobs"] = jobs;
    j["multipliers"] = multipliers;
    j["t_max"] = t_max;
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw ArgumentError("config must be a JSON object");
    }
    ExperimentConfig c;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "command") {
                c.command = value.get<std::string>();
            } else if (key == "d_grid") {
                c.d_grid = value.get<std::vector<int>>();
            } else if (key == "eps") {
                c.eps = value.get<double>();
            } else if (key == "n") {
                c.n = value.get<std::int64_t>();
            } else if (key == "trials") {
                c.trials = value.get<std::int64_t>();
            } else if (key == "seed") {
                c.seed = value.get<RngSeed>();
            } else if (key == "mc_outer") {
                c.mc_outer = value.get<std::int64_t>();
            } else if (key == "mc_pairs") {
                c.mc_pairs = value.get<std::int64_t>();
            } else if (key == "mc_inner") {
                c.mc_inner = value.get<std::int64_t>();
            } else if (key == "schedule") {
                c.schedule = value.get<std::string>();
            } else if (key == "state") {
                c.state = value.get<std::string>();
            } else if (key == "out") {
                c.out = value.get<std::string>();
            } else if (key == "format") {
                c.format = value.get<std::string>();
            } else if (key == "jobs") {
                c.jobs = value.get<int>();
            } else if (key == "multipliers") {
                c.multipliers = value.get<std::vector<double>>();
            } else if (key == "t_max") {
                c.t_max = value.get<int>();
            } else {
                throw ArgumentError("unknown config key: " + key);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("bad config value: ") + e.what());
    }
    return c;
}

ExperimentConfig ExperimentConfig::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open config file: " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("config file is not valid JSON: ") + e.what());
    }
    return from_json(j);
}

void ExperimentConfig::validate() const {
    if (d_grid.empty()) {
        throw ArgumentError("d grid must not be empty");
    }
    for (int d : d_grid) {
        if (d < 1) {
            throw ArgumentError("dimensions must be >= 1");
        }
    }
    if (!(eps > 0.0) || eps > 1.0) {
        throw ArgumentError("eps must lie in (0, 1]");
    }
    if (trials < 0) {
        throw ArgumentError("trials must be >= 0");
    }
    if (mc_outer < 2 || mc_pairs < 2 || mc_inner < 2) {
        throw ArgumentError("mc budgets must be >= 2");
    }
    if (jobs < 1) {
        throw ArgumentError("jobs must be >= 1");
    }
    if (t_max < 0) {
        throw ArgumentError("t_max must be >= 0");
    }
    if (schedule != "fixed" && schedule != "fresh-haar" && schedule != "greedy-realign") {
        throw ArgumentError("unknown schedule: " + schedule);
    }
    if (state != "mixed" && state != "hard" && state != "pure" &&
        state.rfind("file:", 0) != 0) {
        throw ArgumentError("unknown state: " + state);
    }
    parse_report_format(format);
}

ExperimentReport run_command(const ExperimentConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport report;
    if (config.command == "certify") {
        report = cmd_certify(config);
    } else if (config.command == "sweep") {
        report = cmd_sweep(config);
    } else if (config.command == "paninski") {
        report = cmd_paninski(config);
    } else if (config.command == "verify") {
        report = cmd_verify(config);
    } else if (config.command == "tails") {
        report = cmd_tails(config);
    } else if (config.command == "simulate") {
        report = cmd_simulate(config);
    } else {
        throw ArgumentError("unknown command: " + config.command);
    }
    const auto end = std::chrono::steady_clock::now();
    report.wall_clock_seconds =
        std::chrono::duration_cast<std::chrono::duration<double>>(end - start).count();
    return report;
}

}  // namespace mixcert
