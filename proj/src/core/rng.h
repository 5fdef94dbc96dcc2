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

#ifndef MIXCERT_CORE_RNG_H
#define MIXCERT_CORE_RNG_H

#include <complex>
#include <cstdint>
#include <random>

namespace mixcert {

/// Root of every random stream in the library. All randomness in a run flows
/// from one RngSeed through rng_derive, so a run is reproducible from a single
/// 64-bit value.
using RngSeed = std::uint64_t;

/// Derives the seed of a child stream. The map (seed, stream_index) -> child
/// is a fixed-point-free 64-bit mixer, so distinct indices give decorrelated,
/// pairwise-distinct children in practice. Never reuse one (seed, index) pair
/// for two purposes.
RngSeed rng_derive(RngSeed seed, std::uint64_t stream_index);

/// Deterministic random stream. Identical seed and identical call sequence
/// reproduce the stream bit for bit; the uniform and Gaussian maps are
/// implemented here rather than taken from <random> because the standard
/// leaves distribution algorithms unspecified.
class Rng {
  public:
    explicit Rng(RngSeed seed) : seed_(seed), engine_(seed) {}

    RngSeed seed() const { return seed_; }

    /// Child stream derived from the construction seed (not from the current
    /// engine position, so consumption does not shift the children).
    Rng derive(std::uint64_t stream_index) const {
        return Rng(rng_derive(seed_, stream_index));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; the second value of each pair is
    /// cached, so draws come in deterministically interleaved pairs.
    double next_gaussian();

    /// Complex Gaussian with independent standard normal real and imaginary
    /// parts. Only used where the overall scale cancels (QR, normalization).
    std::complex<double> next_complex_gaussian() {
        double re = next_gaussian();
        double im = next_gaussian();
        return {re, im};
    }

  private:
    RngSeed seed_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace mixcert

#endif
