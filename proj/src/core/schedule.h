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

#ifndef MIXCERT_CORE_SCHEDULE_H
#define MIXCERT_CORE_SCHEDULE_H

#include <functional>
#include <string>
#include <vector>

#include "core/povm.h"
#include "core/rng.h"
#include "core/states.h"

namespace mixcert {

/// Record of one measurement run: the outcome index of each step and the id
/// of the POVM used there (for a fixed schedule, the index into its sequence;
/// for adaptive schedules, the step number).
struct Transcript {
    std::vector<int> outcomes;
    std::vector<int> povm_ids;

    int length() const { return static_cast<int>(outcomes.size()); }
    Transcript prefix(int t) const;
};

/// Measurement plan for a run of single-copy measurements. Either a fixed
/// (nonadaptive) sequence of POVMs, cycled when shorter than the run, or an
/// adaptive rule mapping the transcript so far to the next POVM.
///
/// Adaptive rules are deterministic given the prefix: any internal
/// randomness comes from a per-step stream derived from the schedule's own
/// seed and the step index, so replaying a transcript reproduces the exact
/// POVMs that generated it.
class Schedule {
  public:
    /// Nonadaptive sequence; step t uses entry t mod size.
    static Schedule fixed(std::vector<Povm> sequence, std::string name = "fixed");

    /// Single computational-basis POVM at every step.
    static Schedule standard_basis(int d);

    /// Adaptive: an independent fresh Haar basis at every step (prefix
    /// content is ignored, only its length selects the stream).
    static Schedule fresh_haar(int d, RngSeed seed);

    /// Adaptive: measures in the eigenbasis of the running empirical state
    /// estimate (average of the projectors of the outcomes seen so far,
    /// blended with the flat state for stability). Step 0 uses the standard
    /// basis. Reconstruction costs O(t) eigendecompositions per call.
    static Schedule greedy_realign(int d, RngSeed seed);

    /// Custom adaptive rule; rng is the derived per-step stream.
    static Schedule adaptive(int d, RngSeed seed,
                             std::function<Povm(const Transcript&, Rng&)> rule,
                             std::string name);

    bool nonadaptive() const { return !rule_; }
    int dim() const { return d_; }
    const std::string& name() const { return name_; }
    RngSeed seed() const { return seed_; }

    /// Nonadaptive only: number of distinct POVMs and access by step.
    std::size_t fixed_count() const;
    const Povm& fixed_povm(int step) const;

    /// POVM for the step following the given prefix (any schedule kind).
    Povm povm_at(const Transcript& prefix) const;

  private:
    Schedule(int d, RngSeed seed, std::string name)
        : d_(d), seed_(seed), name_(std::move(name)) {}

    int d_;
    RngSeed seed_;
    std::string name_;
    std::vector<Povm> sequence_;
    std::function<Povm(const Transcript&, Rng&)> rule_;
};

/// Runs n single-copy measurements of a state drawn from `source` under
/// `schedule`. The caller's rng covers the state draw and outcome sampling;
/// adaptive POVM randomness comes from the schedule's own seed. Throws
/// ConsistencyError if a schedule produces a POVM of the wrong dimension.
Transcript run_schedule(const StateSource& source, const Schedule& schedule, int n, Rng& rng);

/// Serializes transcripts as JSON lines:
/// {"trial": i, "outcomes": [...], "povm": "<schedule name>"}.
std::string transcripts_to_jsonl(const std::vector<Transcript>& transcripts,
                                 const std::string& schedule_name);

}  // namespace mixcert

#endif
