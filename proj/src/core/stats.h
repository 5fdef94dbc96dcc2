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

#ifndef MIXCERT_CORE_STATS_H
#define MIXCERT_CORE_STATS_H

#include <cstdint>
#include <string>
#include <vector>

namespace mixcert {

/// Monte-Carlo estimate with its standard error. stderr is the sample
/// standard deviation divided by sqrt(samples); samples >= 2 except for
/// structurally exact results, which carry stderr 0.
struct McEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::int64_t samples = 0;
    std::string estimator;
};

/// Mean, sample variance (n-1 denominator), and standard error of a sample.
/// Throws ArgumentError on an empty sample; a single value has stderr 0.
McEstimate summarize(const std::vector<double>& values, const std::string& estimator);

/// Wilson score interval for a binomial proportion at z = 1.96 (95%).
struct WilsonInterval {
    double rate;
    double lo;
    double hi;
};
WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials);

/// Ordinary least squares fit y = slope * x + intercept.
/// Throws ArgumentError if fewer than two points or x has zero variance.
struct LineFit {
    double slope;
    double intercept;
};
LineFit least_squares_line(const std::vector<double>& x, const std::vector<double>& y);

/// log of the binomial coefficient C(n, k) via lgamma.
double log_binomial_coeff(std::int64_t n, std::int64_t k);

}  // namespace mixcert

#endif
