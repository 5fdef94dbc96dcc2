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

#include "core/complex_matrix.h"

#include <cmath>
#include <cstddef>

#include "core/errors.h"

namespace mixcert {

ComplexMatrix::ComplexMatrix(int d) : d_(d) {
    if (d < 1) {
        throw ArgumentError("matrix dimension must be at least 1");
    }
    a_.assign(static_cast<std::size_t>(d) * d, Complex(0.0, 0.0));
}

ComplexMatrix ComplexMatrix::identity(int d) {
    ComplexMatrix m(d);
    for (int i = 0; i < d; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& entries) {
    ComplexMatrix m(static_cast<int>(entries.size()));
    for (int i = 0; i < m.dim(); ++i) {
        m(i, i) = entries[static_cast<std::size_t>(i)];
    }
    return m;
}

ComplexMatrix ComplexMatrix::outer(const ComplexVector& v) {
    ComplexMatrix m(static_cast<int>(v.size()));
    for (int i = 0; i < m.dim(); ++i) {
        for (int j = 0; j < m.dim(); ++j) {
            m(i, j) = v[static_cast<std::size_t>(i)] * std::conj(v[static_cast<std::size_t>(j)]);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(d_);
    for (int i = 0; i < d_; ++i) {
        for (int j = 0; j < d_; ++j) {
            m(j, i) = std::conj((*this)(i, j));
        }
    }
    return m;
}

Complex ComplexMatrix::trace() const {
    Complex t(0.0, 0.0);
    for (int i = 0; i < d_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

bool ComplexMatrix::is_finite() const {
    for (const Complex& z : a_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const Complex& z : a_) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

double ComplexMatrix::hs_norm() const {
    double s = 0.0;
    for (const Complex& z : a_) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) {
        throw ArgumentError("matrix dimensions do not match");
    }
}

}  // namespace

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs);
    for (int i = 0; i < d_; ++i) {
        for (int j = 0; j < d_; ++j) {
            (*this)(i, j) += rhs(i, j);
        }
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs);
    for (int i = 0; i < d_; ++i) {
        for (int j = 0; j < d_; ++j) {
            (*this)(i, j) -= rhs(i, j);
        }
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
    for (Complex& z : a_) {
        z *= scale;
    }
    return *this;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b);
    const int d = a.dim();
    ComplexMatrix c(d);
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0, 0.0)) {
                continue;
            }
            for (int j = 0; j < d; ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b);
    Complex s(0.0, 0.0);
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < a.dim(); ++j) {
            s += std::conj(a(i, j)) * b(i, j);
        }
    }
    return s;
}

ComplexVector apply(const ComplexMatrix& a, const ComplexVector& v) {
    if (static_cast<int>(v.size()) != a.dim()) {
        throw ArgumentError("matrix and vector dimensions do not match");
    }
    ComplexVector out(v.size(), Complex(0.0, 0.0));
    for (int i = 0; i < a.dim(); ++i) {
        Complex s(0.0, 0.0);
        for (int j = 0; j < a.dim(); ++j) {
            s += a(i, j) * v[static_cast<std::size_t>(j)];
        }
        out[static_cast<std::size_t>(i)] = s;
    }
    return out;
}

double vector_norm(const ComplexVector& v) {
    double s = 0.0;
    for (const Complex& z : v) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) : m_(m.dim()) {
    const int d = m.dim();
    double asym = 0.0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            asym = std::max(asym, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    if (asym > 1e-12) {
        throw ArgumentError("matrix is not Hermitian within 1e-12");
    }
    for (int i = 0; i < d; ++i) {
        m_(i, i) = Complex(m(i, i).real(), 0.0);
        for (int j = i + 1; j < d; ++j) {
            Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m_(i, j) = v;
            m_(j, i) = std::conj(v);
        }
    }
}

HermitianMatrix conjugate(const HermitianMatrix& h, const ComplexMatrix& u) {
    ComplexMatrix hu = multiply(h.matrix(), u);
    return HermitianMatrix(multiply(u.adjoint(), hu));
}

double delta_statistic(const ComplexVector& v) {
    const std::size_t d = v.size();
    if (d == 0 || d % 2 != 0) {
        throw ArgumentError("delta_statistic needs a vector of even positive dimension");
    }
    double top = 0.0;
    double bottom = 0.0;
    for (std::size_t i = 0; i < d / 2; ++i) {
        top += std::norm(v[i]);
    }
    for (std::size_t i = d / 2; i < d; ++i) {
        bottom += std::norm(v[i]);
    }
    return top - bottom;
}

}  // namespace mixcert
