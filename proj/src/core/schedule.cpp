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

#include "core/schedule.h"

#include <utility>

#include <json.hpp>

#include "core/eigh.h"
#include "core/errors.h"
#include "core/haar.h"

namespace mixcert {

Transcript Transcript::prefix(int t) const {
    if (t < 0 || t > length()) {
        throw ArgumentError("transcript prefix length out of range");
    }
    Transcript p;
    p.outcomes.assign(outcomes.begin(), outcomes.begin() + t);
    p.povm_ids.assign(povm_ids.begin(), povm_ids.begin() + t);
    return p;
}

Schedule Schedule::fixed(std::vector<Povm> sequence, std::string name) {
    if (sequence.empty()) {
        throw ArgumentError("fixed schedule needs at least one POVM");
    }
    const int d = sequence.front().dim();
    for (const Povm& p : sequence) {
        if (p.dim() != d) {
            throw ArgumentError("fixed schedule POVMs must share one dimension");
        }
    }
    Schedule s(d, 0, std::move(name));
    s.sequence_ = std::move(sequence);
    return s;
}

Schedule Schedule::standard_basis(int d) {
    std::vector<Povm> seq;
    seq.push_back(Povm::standard_basis(d));
    return fixed(std::move(seq), "fixed");
}

Schedule Schedule::fresh_haar(int d, RngSeed seed) {
    if (d < 1) {
        throw ArgumentError("fresh_haar schedule needs d >= 1");
    }
    Schedule s(d, seed, "fresh-haar");
    s.rule_ = [d](const Transcript&, Rng& rng) { return Povm::haar_basis(d, rng); };
    return s;
}

Schedule Schedule::greedy_realign(int d, RngSeed seed) {
    if (d < 1) {
        throw ArgumentError("greedy_realign schedule needs d >= 1");
    }
    Schedule s(d, seed, "greedy-realign");
    s.rule_ = [d](const Transcript& prefix, Rng&) {
        const int t = prefix.length();
        if (t == 0) {
            return Povm::standard_basis(d);
        }
        // Replay the prefix to rebuild the estimate the earlier steps used.
        ComplexMatrix accum(d);
        ComplexMatrix basis = ComplexMatrix::identity(d);
        for (int i = 0; i < t; ++i) {
            const int x = prefix.outcomes[static_cast<std::size_t>(i)];
            if (x < 0 || x >= d) {
                throw ArgumentError("greedy_realign transcript outcome out of range");
            }
            ComplexVector col(static_cast<std::size_t>(d));
            for (int r = 0; r < d; ++r) {
                col[static_cast<std::size_t>(r)] = basis(r, x);
            }
            accum += ComplexMatrix::outer(col);
            if (i + 1 == t) {
                break;
            }
            ComplexMatrix est = accum;
            est *= Complex(1.0 / (i + 1.0), 0.0);
            // Blend toward flat to keep the spectrum simple early on.
            ComplexMatrix flat = ComplexMatrix::identity(d);
            flat *= Complex(0.5 / d, 0.0);
            est *= Complex(0.5, 0.0);
            est += flat;
            basis = jacobi_eigh(HermitianMatrix(est)).eigenvectors;
        }
        ComplexMatrix est = accum;
        est *= Complex(1.0 / t, 0.0);
        ComplexMatrix flat = ComplexMatrix::identity(d);
        flat *= Complex(0.5 / d, 0.0);
        est *= Complex(0.5, 0.0);
        est += flat;
        return Povm::basis(jacobi_eigh(HermitianMatrix(est)).eigenvectors);
    };
    return s;
}

Schedule Schedule::adaptive(int d, RngSeed seed,
                            std::function<Povm(const Transcript&, Rng&)> rule,
                            std::string name) {
    if (d < 1) {
        throw ArgumentError("adaptive schedule needs d >= 1");
    }
    if (!rule) {
        throw ArgumentError("adaptive schedule needs a rule");
    }
    Schedule s(d, seed, std::move(name));
    s.rule_ = std::move(rule);
    return s;
}

std::size_t Schedule::fixed_count() const {
    if (!nonadaptive()) {
        throw ArgumentError("schedule is adaptive");
    }
    return sequence_.size();
}

const Povm& Schedule::fixed_povm(int step) const {
    if (!nonadaptive()) {
        throw ArgumentError("schedule is adaptive");
    }
    return sequence_[static_cast<std::size_t>(step) % sequence_.size()];
}

Povm Schedule::povm_at(const Transcript& prefix) const {
    if (nonadaptive()) {
        return fixed_povm(prefix.length());
    }
    Rng step_rng(rng_derive(seed_, static_cast<std::uint64_t>(prefix.length())));
    Povm p = rule_(prefix, step_rng);
    if (p.dim() != d_) {
        throw ConsistencyError("adaptive rule produced a POVM of dimension " +
                               std::to_string(p.dim()) + ", schedule dimension is " +
                               std::to_string(d_));
    }
    return p;
}

Transcript run_schedule(const StateSource& source, const Schedule& schedule, int n, Rng& rng) {
    if (n < 0) {
        throw ArgumentError("run_schedule needs n >= 0");
    }
    if (source.dim() != schedule.dim()) {
        throw ConsistencyError("state and schedule dimensions do not match");
    }
    Rng state_rng = rng.derive(0);
    Rng sample_rng = rng.derive(1);
    const DensityMatrix rho = source.draw(state_rng);

    Transcript t;
    t.outcomes.reserve(static_cast<std::size_t>(n));
    t.povm_ids.reserve(static_cast<std::size_t>(n));

    if (schedule.nonadaptive()) {
        // One distribution per distinct POVM, computed on first use.
        const auto count = schedule.fixed_count();
        std::vector<std::vector<double>> dists(count);
        for (int step = 0; step < n; ++step) {
            const auto id = static_cast<std::size_t>(step) % count;
            if (dists[id].empty()) {
                dists[id] = outcome_distribution(rho, schedule.fixed_povm(step));
            }
            t.outcomes.push_back(sample_outcomes(dists[id], 1, sample_rng).front());
            t.povm_ids.push_back(static_cast<int>(id));
        }
        return t;
    }

    for (int step = 0; step < n; ++step) {
        const Povm povm = schedule.povm_at(t);
        const std::vector<double> q = outcome_distribution(rho, povm);
        t.outcomes.push_back(sample_outcomes(q, 1, sample_rng).front());
        t.povm_ids.push_back(step);
    }
    return t;
}

std::string transcripts_to_jsonl(const std::vector<Transcript>& transcripts,
                                 const std::string& schedule_name) {
    std::string out;
    for (std::size_t i = 0; i < transcripts.size(); ++i) {
        nlohmann::json line{{"trial", i},
                            {"outcomes", transcripts[i].outcomes},
                            {"povm", schedule_name}};
        out += line.dump();
        out += "\n";
    }
    return out;
}

}  // namespace mixcert
