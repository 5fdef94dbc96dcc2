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

#ifndef MIXCERT_CORE_COMPLEX_MATRIX_H
#define MIXCERT_CORE_COMPLEX_MATRIX_H

#include <complex>
#include <vector>

namespace mixcert {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense square complex matrix, row-major. Dimensions up to a few hundred;
/// all algebra is plain O(d^3) loops, no blocking.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;

    /// Zero matrix of dimension d. Throws ArgumentError if d < 1.
    explicit ComplexMatrix(int d);

    static ComplexMatrix identity(int d);

    /// Diagonal matrix from a vector of real entries.
    static ComplexMatrix diagonal(const std::vector<double>& entries);

    /// Outer product v v^dagger of a column vector with itself.
    static ComplexMatrix outer(const ComplexVector& v);

    int dim() const { return d_; }

    Complex& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * d_ + j]; }
    const Complex& operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * d_ + j];
    }

    ComplexMatrix adjoint() const;
    Complex trace() const;

    /// True when every entry is finite.
    bool is_finite() const;

    /// max_ij |A_ij|.
    double max_abs() const;

    /// Hilbert-Schmidt norm sqrt(sum |A_ij|^2).
    double hs_norm() const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
        return lhs += rhs;
    }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
        return lhs -= rhs;
    }
    friend ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }

  private:
    int d_ = 0;
    std::vector<Complex> a_;
};

/// Matrix product A B. Throws ArgumentError on dimension mismatch.
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hilbert-Schmidt inner product Tr(A^dagger B).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Matrix-vector product A v.
ComplexVector apply(const ComplexMatrix& a, const ComplexVector& v);

/// Euclidean norm of a complex vector.
double vector_norm(const ComplexVector& v);

/// Hermitian matrix: wraps a ComplexMatrix and guarantees A = A^dagger.
/// Construction symmetrizes (A + A^dagger)/2 and rejects inputs whose
/// asymmetry max_ij |A_ij - conj(A_ji)| exceeds 1e-12.
class HermitianMatrix {
  public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(const ComplexMatrix& m);

    static HermitianMatrix identity(int d) { return HermitianMatrix(ComplexMatrix::identity(d)); }
    static HermitianMatrix diagonal(const std::vector<double>& entries) {
        return HermitianMatrix(ComplexMatrix::diagonal(entries));
    }

    int dim() const { return m_.dim(); }
    const ComplexMatrix& matrix() const { return m_; }
    const Complex& operator()(int i, int j) const { return m_(i, j); }

    double trace_real() const { return m_.trace().real(); }

  private:
    ComplexMatrix m_;
};

/// Conjugation U^dagger H U of a Hermitian matrix by a (typically unitary) U.
HermitianMatrix conjugate(const HermitianMatrix& h, const ComplexMatrix& u);

/// Balance statistic of a vector on a space of even dimension d: the
/// probability weight of the first d/2 coordinates minus the weight of the
/// last d/2, using squared moduli. Equals v^dagger D v for the diagonal sign
/// matrix D = diag(+1 x d/2, -1 x d/2). Throws ArgumentError if the size of
/// v is odd.
double delta_statistic(const ComplexVector& v);

}  // namespace mixcert

#endif
