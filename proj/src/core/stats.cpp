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

#include "core/stats.h"

#include <cmath>

#include "core/errors.h"

namespace mixcert {

McEstimate summarize(const std::vector<double>& values, const std::string& estimator) {
    if (values.empty()) {
        throw ArgumentError("summarize needs at least one value");
    }
    const auto n = static_cast<std::int64_t>(values.size());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) {
        const double dv = v - mean;
        ss += dv * dv;
    }
    McEstimate e;
    e.mean = mean;
    e.samples = n;
    e.estimator = estimator;
    if (n >= 2) {
        const double var = ss / static_cast<double>(n - 1);
        e.stderr_ = std::sqrt(var / static_cast<double>(n));
    }
    return e;
}

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials) {
    if (trials <= 0 || successes < 0 || successes > trials) {
        throw ArgumentError("wilson_interval needs 0 <= successes <= trials, trials > 0");
    }
    constexpr double z = 1.96;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = (z / denom) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return {p, center - half, center + half};
}

LineFit least_squares_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw ArgumentError("least_squares_line needs two equal-length samples of size >= 2");
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) {
        throw ArgumentError("least_squares_line needs x values that are not all equal");
    }
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

double log_binomial_coeff(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 0 || k > n) {
        throw ArgumentError("log_binomial_coeff needs 0 <= k <= n");
    }
    return std::lgamma(static_cast<double>(n + 1)) - std::lgamma(static_cast<double>(k + 1)) -
           std::lgamma(static_cast<double>(n - k + 1));
}

}  // namespace mixcert
