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

#ifndef MIXCERT_CORE_STATES_H
#define MIXCERT_CORE_STATES_H

#include <string>
#include <vector>

#include "core/complex_matrix.h"
#include "core/rng.h"

namespace mixcert {

/// Trace-one positive semidefinite matrix. Construction validates
/// |trace - 1| <= 1e-10 and min eigenvalue >= -1e-10 (ConsistencyError
/// otherwise); the eigenvalue check runs the eigensolver, so construction
/// costs O(d^3) per sweep.
class DensityMatrix {
  public:
    explicit DensityMatrix(const HermitianMatrix& h);

    int dim() const { return h_.dim(); }
    const HermitianMatrix& hermitian() const { return h_; }
    const ComplexMatrix& matrix() const { return h_.matrix(); }

  private:
    HermitianMatrix h_;
};

/// The maximally mixed state I/d.
DensityMatrix maximally_mixed(int d);

/// Pure state |0><0| in the standard basis.
DensityMatrix pure_basis_state(int d);

/// Signature diagonal diag(+1 x d/2, -1 x d/2): trace zero, operator norm 1.
/// Throws ArgumentError unless d is even and >= 2.
HermitianMatrix half_sign_diagonal(int d);

/// Planted far-from-mixed state: rho = U^dagger (I + eps * S) U / d with S
/// the signature diagonal. Unit trace by construction, eigenvalues
/// (1 +- eps)/d, and trace distance ||rho - I/d||_1 = eps exactly.
/// Throws ArgumentError unless d is even and >= 2 and eps in (0, 1].
DensityMatrix hard_instance_state(int d, double eps, const ComplexMatrix& u);

/// A sampled hard instance: remembers the rotation that produced the state so
/// likelihood statistics can be evaluated against the same rotation.
struct HardInstance {
    int d;
    double eps;
    ComplexMatrix u;

    static HardInstance sample(int d, double eps, Rng& rng);
    DensityMatrix state() const { return hard_instance_state(d, eps, u); }
};

/// Source of per-trial states: either one fixed density matrix or a fresh
/// hard instance (new Haar rotation) per draw.
class StateSource {
  public:
    static StateSource fixed(DensityMatrix rho, std::string name = "fixed");
    static StateSource mixed(int d);
    static StateSource hard(int d, double eps);
    static StateSource pure(int d);

    int dim() const { return d_; }
    const std::string& name() const { return name_; }
    bool resamples() const { return resample_; }

    /// Fixed sources ignore rng; the hard source consumes one Haar draw.
    DensityMatrix draw(Rng& rng) const;

  private:
    StateSource(int d, double eps, bool resample, std::string name);

    int d_;
    double eps_ = 0.0;
    bool resample_;
    std::string name_;
    std::vector<DensityMatrix> fixed_;  // singleton when not resampling
};

}  // namespace mixcert

#endif
