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

#include "core/states.h"

#include <cmath>
#include <string>
#include <utility>

#include "core/eigh.h"
#include "core/errors.h"
#include "core/haar.h"

namespace mixcert {

DensityMatrix::DensityMatrix(const HermitianMatrix& h) : h_(h) {
    const double tr = h.trace_real();
    if (std::abs(tr - 1.0) > 1e-10) {
        throw ConsistencyError("density matrix trace deviates from 1 by " +
                               std::to_string(std::abs(tr - 1.0)));
    }
    EighResult e = jacobi_eigh(h);
    if (e.eigenvalues.front() < -1e-10) {
        throw ConsistencyError("density matrix has eigenvalue " +
                               std::to_string(e.eigenvalues.front()));
    }
}

DensityMatrix maximally_mixed(int d) {
    if (d < 1) {
        throw ArgumentError("maximally_mixed needs d >= 1");
    }
    ComplexMatrix m = ComplexMatrix::identity(d);
    m *= Complex(1.0 / d, 0.0);
    return DensityMatrix(HermitianMatrix(m));
}

DensityMatrix pure_basis_state(int d) {
    if (d < 1) {
        throw ArgumentError("pure_basis_state needs d >= 1");
    }
    ComplexMatrix m(d);
    m(0, 0) = 1.0;
    return DensityMatrix(HermitianMatrix(m));
}

HermitianMatrix half_sign_diagonal(int d) {
    if (d < 2 || d % 2 != 0) {
        throw ArgumentError("half_sign_diagonal needs even d >= 2");
    }
    std::vector<double> diag(static_cast<std::size_t>(d), -1.0);
    for (int i = 0; i < d / 2; ++i) {
        diag[static_cast<std::size_t>(i)] = 1.0;
    }
    return HermitianMatrix::diagonal(diag);
}

DensityMatrix hard_instance_state(int d, double eps, const ComplexMatrix& u) {
    if (d < 2 || d % 2 != 0) {
        throw ArgumentError("hard_instance_state needs even d >= 2");
    }
    if (!(eps > 0.0) || eps > 1.0) {
        throw ArgumentError("hard_instance_state needs eps in (0, 1]");
    }
    if (u.dim() != d) {
        throw ArgumentError("hard_instance_state rotation dimension mismatch");
    }
    std::vector<double> diag(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        const double sign = (i < d / 2) ? 1.0 : -1.0;
        diag[static_cast<std::size_t>(i)] = (1.0 + sign * eps) / d;
    }
    HermitianMatrix lambda = HermitianMatrix::diagonal(diag);
    return DensityMatrix(conjugate(lambda, u));
}

HardInstance HardInstance::sample(int d, double eps, Rng& rng) {
    if (d < 2 || d % 2 != 0) {
        throw ArgumentError("HardInstance needs even d >= 2");
    }
    if (!(eps > 0.0) || eps > 1.0) {
        throw ArgumentError("HardInstance needs eps in (0, 1]");
    }
    return HardInstance{d, eps, haar_unitary(d, rng)};
}

StateSource::StateSource(int d, double eps, bool resample, std::string name)
    : d_(d), eps_(eps), resample_(resample), name_(std::move(name)) {}

StateSource StateSource::fixed(DensityMatrix rho, std::string name) {
    StateSource s(rho.dim(), 0.0, false, std::move(name));
    s.fixed_.push_back(std::move(rho));
    return s;
}

StateSource StateSource::mixed(int d) { return fixed(maximally_mixed(d), "mixed"); }

StateSource StateSource::pure(int d) { return fixed(pure_basis_state(d), "pure"); }

StateSource StateSource::hard(int d, double eps) {
    if (d < 2 || d % 2 != 0) {
        throw ArgumentError("StateSource::hard needs even d >= 2");
    }
    if (!(eps > 0.0) || eps > 1.0) {
        throw ArgumentError("StateSource::hard needs eps in (0, 1]");
    }
    return StateSource(d, eps, true, "hard");
}

DensityMatrix StateSource::draw(Rng& rng) const {
    if (!resample_) {
        return fixed_.front();
    }
    return HardInstance::sample(d_, eps_, rng).state();
}

}  // namespace mixcert
