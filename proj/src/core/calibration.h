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

#ifndef MIXCERT_CORE_CALIBRATION_H
#define MIXCERT_CORE_CALIBRATION_H

// Frozen experiment constants. Each entry records how it was fixed; change
// one only together with a fresh calibration run.

namespace mixcert {

// Sample-count constant of the collision uniformity tester,
// N = ceil(kL2SampleConstant * sqrt(d) / eps'^2). Frozen from a two-sided
// success sweep at d in {64, 256}: 16 gives >= 0.9 accept and reject rates
// over 500 trials on uniform and on an exactly eps'/sqrt(d)-far input.
inline constexpr double kL2SampleConstant = 16.0;

// Copy-count constant of the mixedness certifier,
// N = ceil(kCertifierSampleConstant * d^{3/2} / eps^2). Frozen together
// with the halved inner detection radius eps/(2d): 24 gives >= 0.75
// two-sided success at d = 16, eps = 0.5 over 200 trials with margin.
inline constexpr double kCertifierSampleConstant = 24.0;

// Rate constant of the mixture-likelihood-ratio floor
// (1 - kDeltaShrinkRate * eps^2 / d)^{t-1} used as a Monte-Carlo lower
// bound for delta estimates. The exact single-basis shrink rate is
// eps^2/(d+1) per step, so 1.0 is valid with (d+1)/d slack.
inline constexpr double kDeltaShrinkRate = 1.0;

// Growth-rate constant of the classical pair second moment:
// E[Psi^2] <= (1 + kClassicalPsiGrowth * eps^2)^{t-1}. The exact per-step
// factor is 1 + 6 eps^2 + eps^4 at d = 2 and smaller for larger d, so 9
// leaves headroom for every even d.
inline constexpr double kClassicalPsiGrowth = 9.0;

// Exponent constant of the generating-function growth check:
// E[(1 + gamma K)^n] <= exp(kMomentGrowthRate * gamma * n * eps^2 / d).
// The mean of K alone forces a rate of ~2; 8 absorbs the fluctuation
// contribution seen at d in {8, 16}, eps = 0.5, n up to 0.1 d^2/eps^2.
inline constexpr double kMomentGrowthRate = 8.0;

// Exponent constant of the transcript pair-likelihood second moment:
// E[Psi^2] <= exp(kPsiSecondMomentRate * t * eps^2 / d) for null
// transcripts. Observed per-step growth at d in {8, 16} is below
// exp(5 eps^2 / d); 10 doubles that margin.
inline constexpr double kPsiSecondMomentRate = 10.0;

// Tail-bound rates. Each bound must stay above the empirical exceedance
// curve within 3 binomial standard errors at every default-grid threshold;
// rates were frozen from 2e4-sample runs at d in {8, 16, 32}, eps in
// {0.25, 0.5}, which kept roughly a 2x probability margin through the
// resolved decay region. The clamped head of each curve carries no margin
// by construction, and isolated single-hit grid points in the far tail are
// covered only in the 3-standard-error sense.
//
// P(||diag(U^dagger S U)||_HS > tau) <= exp(-kDiagNormTailRate d (tau-1)^2).
inline constexpr double kDiagNormTailRate = 0.25;
// P(|phi| > tau) <= exp(-kPhiTailRate min(d^3 tau^2/eps^4, d^2 tau/eps^2)).
inline constexpr double kPhiTailRate = 0.25;
// P(K > tau) <= exp(-kKTailRate (tau - kKTailFloor eps^2/d) d^2/eps^2),
// clamped to 1 below the floor. The floor sits above the observed mean
// 2 eps^2/(d+1); the linear exponent matches the subexponential right tail.
inline constexpr double kKTailRate = 0.25;
inline constexpr double kKTailFloor = 3.0;

}  // namespace mixcert

#endif
