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

#include "core/povm.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/eigh.h"
#include "core/errors.h"
#include "core/haar.h"

namespace mixcert {

namespace {

void check_completeness(const std::vector<HermitianMatrix>& elements, int d) {
    ComplexMatrix sum(d);
    for (const HermitianMatrix& m : elements) {
        sum += m.matrix();
    }
    sum -= ComplexMatrix::identity(d);
    const double defect = sum.max_abs();
    if (defect > 1e-9) {
        throw ConsistencyError("POVM elements sum to identity with defect " +
                               std::to_string(defect));
    }
}

}  // namespace

Povm::Povm(std::vector<HermitianMatrix> elements) {
    if (elements.empty()) {
        throw ArgumentError("POVM needs at least one element");
    }
    d_ = elements.front().dim();
    for (const HermitianMatrix& m : elements) {
        if (m.dim() != d_) {
            throw ArgumentError("POVM elements must share one dimension");
        }
        EighResult e = jacobi_eigh(m);
        if (e.eigenvalues.front() < -1e-10) {
            throw ConsistencyError("POVM element has eigenvalue " +
                                   std::to_string(e.eigenvalues.front()));
        }
        const double tr = m.trace_real();
        if (tr <= 1e-12) {
            throw ConsistencyError("POVM element has non-positive trace");
        }
        traces_.push_back(tr);
    }
    check_completeness(elements, d_);
    elements_ = std::move(elements);
}

Povm Povm::basis(const ComplexMatrix& u) {
    const int d = u.dim();
    std::vector<HermitianMatrix> elements;
    elements.reserve(static_cast<std::size_t>(d));
    for (int x = 0; x < d; ++x) {
        ComplexVector col(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            col[static_cast<std::size_t>(i)] = u(i, x);
        }
        elements.emplace_back(ComplexMatrix::outer(col));
    }
    check_completeness(elements, d);

    Povm p;
    p.d_ = d;
    p.is_basis_ = true;
    p.basis_u_ = u;
    p.elements_ = std::move(elements);
    p.traces_.assign(static_cast<std::size_t>(d), 1.0);
    // Column norms equal the element traces; record the true values so a
    // mildly non-unit input is visible rather than silently assumed.
    for (int x = 0; x < d; ++x) {
        p.traces_[static_cast<std::size_t>(x)] = p.elements_[static_cast<std::size_t>(x)].trace_real();
    }
    return p;
}

Povm Povm::standard_basis(int d) {
    if (d < 1) {
        throw ArgumentError("standard_basis needs d >= 1");
    }
    return basis(ComplexMatrix::identity(d));
}

Povm Povm::haar_basis(int d, Rng& rng) { return basis(haar_unitary(d, rng)); }

const ComplexMatrix& Povm::basis_matrix() const {
    if (!is_basis_) {
        throw ArgumentError("POVM was not built from a basis");
    }
    return basis_u_;
}

namespace {

std::vector<double> validated_probabilities(std::vector<double> q) {
    double sum = 0.0;
    for (double& v : q) {
        if (v < 0.0) {
            if (v < -1e-12) {
                throw ConsistencyError("outcome probability " + std::to_string(v) +
                                       " below zero");
            }
            v = 0.0;
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
        throw ConsistencyError("outcome probabilities sum to " + std::to_string(sum));
    }
    for (double& v : q) {
        v /= sum;
    }
    return q;
}

}  // namespace

std::vector<double> outcome_distribution(const DensityMatrix& rho, const Povm& m) {
    if (rho.dim() != m.dim()) {
        throw ArgumentError("state and POVM dimensions do not match");
    }
    std::vector<double> q(static_cast<std::size_t>(m.size()));
    for (int x = 0; x < m.size(); ++x) {
        q[static_cast<std::size_t>(x)] =
            hs_inner(m.element(x).matrix(), rho.matrix()).real();
    }
    return validated_probabilities(std::move(q));
}

std::vector<int> sample_outcomes(const std::vector<double>& q, std::int64_t n, Rng& rng) {
    if (n < 0) {
        throw ArgumentError("sample_outcomes needs n >= 0");
    }
    if (q.empty()) {
        throw ArgumentError("sample_outcomes needs a nonempty distribution");
    }
    std::vector<double> p = validated_probabilities(q);
    std::vector<double> cdf(p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;

    std::vector<int> out(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        const double u = rng.next_double();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        out[static_cast<std::size_t>(i)] =
            static_cast<int>(std::distance(cdf.begin(), it));
    }
    return out;
}

}  // namespace mixcert
