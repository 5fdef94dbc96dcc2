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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "core/complex_matrix.h"
#include "core/eigh.h"
#include "core/errors.h"
#include "core/haar.h"
#include "core/matrix_io.h"
#include "core/parallel.h"
#include "core/rng.h"
#include "core/stats.h"

using namespace mixcert;
using Catch::Approx;

namespace {

// Hermitian matrix with Gaussian entries, for eigensolver round trips.
HermitianMatrix random_hermitian(int d, Rng& rng) {
    ComplexMatrix a(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            a(i, j) = rng.next_complex_gaussian();
        }
    }
    ComplexMatrix h = a + a.adjoint();
    return HermitianMatrix(h);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix diff = a - b;
    return diff.max_abs();
}

}  // namespace

TEST_CASE("complex matrix constructors and accessors", "[matrix]") {
    SECTION("zero constructor") {
        ComplexMatrix m(3);
        REQUIRE(m.dim() == 3);
        REQUIRE(m.max_abs() == 0.0);
        REQUIRE(m.trace() == Complex(0.0, 0.0));
    }

    SECTION("identity") {
        ComplexMatrix id = ComplexMatrix::identity(4);
        REQUIRE(id.trace() == Complex(4.0, 0.0));
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                REQUIRE(id(i, j) == Complex(i == j ? 1.0 : 0.0, 0.0));
            }
        }
    }

    SECTION("diagonal") {
        ComplexMatrix m = ComplexMatrix::diagonal({1.0, -2.0, 0.5});
        REQUIRE(m.dim() == 3);
        REQUIRE(m(1, 1) == Complex(-2.0, 0.0));
        REQUIRE(m(0, 1) == Complex(0.0, 0.0));
        REQUIRE(m.trace().real() == Approx(-0.5).margin(1e-15));
    }

    SECTION("outer product of (1, i)/sqrt(2)") {
        const double s = 1.0 / std::sqrt(2.0);
        ComplexVector v = {Complex(s, 0.0), Complex(0.0, s)};
        ComplexMatrix p = ComplexMatrix::outer(v);
        // v v^dagger = [[1/2, -i/2], [i/2, 1/2]].
        REQUIRE(p(0, 0).real() == Approx(0.5).margin(1e-15));
        REQUIRE(p(0, 1).imag() == Approx(-0.5).margin(1e-15));
        REQUIRE(p(1, 0).imag() == Approx(0.5).margin(1e-15));
        REQUIRE(p(1, 1).real() == Approx(0.5).margin(1e-15));
        REQUIRE(p.trace().real() == Approx(1.0).margin(1e-15));
        // Projector: p^2 = p.
        REQUIRE(max_abs_diff(multiply(p, p), p) < 1e-14);
    }

    SECTION("dimension must be positive") {
        REQUIRE_THROWS_AS(ComplexMatrix(0), ArgumentError);
        REQUIRE_THROWS_AS(ComplexMatrix(-2), ArgumentError);
    }
}

TEST_CASE("complex matrix algebra", "[matrix]") {
    ComplexMatrix a(2);
    a(0, 0) = Complex(1.0, 2.0);
    a(0, 1) = Complex(0.0, -1.0);
    a(1, 0) = Complex(3.0, 0.0);
    a(1, 1) = Complex(-1.0, 1.0);

    SECTION("adjoint conjugates and transposes") {
        ComplexMatrix ad = a.adjoint();
        REQUIRE(ad(0, 0) == Complex(1.0, -2.0));
        REQUIRE(ad(0, 1) == Complex(3.0, 0.0));
        REQUIRE(ad(1, 0) == Complex(0.0, 1.0));
        REQUIRE(ad(1, 1) == Complex(-1.0, -1.0));
    }

    SECTION("multiply known 2x2 product") {
        ComplexMatrix b(2);
        b(0, 0) = Complex(0.0, 1.0);
        b(0, 1) = Complex(2.0, 0.0);
        b(1, 0) = Complex(1.0, 0.0);
        b(1, 1) = Complex(0.0, 0.0);
        ComplexMatrix c = multiply(a, b);
        // Row 0: (1+2i)*i + (-i)*1 = -2 + i - i = -2; (1+2i)*2 = 2+4i.
        REQUIRE(c(0, 0) == Complex(-2.0, 0.0));
        REQUIRE(c(0, 1) == Complex(2.0, 4.0));
        // Row 1: 3i + (-1+i) = -1+4i; 6.
        REQUIRE(c(1, 0) == Complex(-1.0, 4.0));
        REQUIRE(c(1, 1) == Complex(6.0, 0.0));
    }

    SECTION("multiply rejects mismatched dimensions") {
        REQUIRE_THROWS_AS(multiply(a, ComplexMatrix(3)), ArgumentError);
    }

    SECTION("hs_inner is Tr(A^dagger B)") {
        Complex self = hs_inner(a, a);
        REQUIRE(self.imag() == Approx(0.0).margin(1e-15));
        REQUIRE(self.real() == Approx(a.hs_norm() * a.hs_norm()).margin(1e-12));
        REQUIRE(hs_inner(ComplexMatrix::identity(2), a) == a.trace());
    }

    SECTION("apply and vector_norm") {
        ComplexVector v = {Complex(1.0, 0.0), Complex(0.0, 1.0)};
        ComplexVector w = mixcert::apply(a, v);
        // Row 0: (1+2i) + (-i)(i) = 2+2i. Row 1: 3 + (-1+i)(i) = 2-i.
        REQUIRE(w[0] == Complex(2.0, 2.0));
        REQUIRE(w[1] == Complex(2.0, -1.0));
        REQUIRE(vector_norm({Complex(3.0, 0.0), Complex(0.0, 4.0)}) == Approx(5.0).margin(1e-15));
    }

    SECTION("norms and entrywise extremes") {
        REQUIRE(a.max_abs() == Approx(3.0).margin(1e-15));
        // Sum of squared moduli: 5 + 1 + 9 + 2 = 17.
        REQUIRE(a.hs_norm() == Approx(std::sqrt(17.0)).margin(1e-14));
    }

    SECTION("in-place arithmetic") {
        ComplexMatrix b = a;
        b += a;
        REQUIRE(b(1, 0) == Complex(6.0, 0.0));
        b -= a;
        REQUIRE(max_abs_diff(b, a) == 0.0);
        b *= Complex(0.0, 1.0);
        REQUIRE(b(0, 0) == Complex(-2.0, 1.0));
    }

    SECTION("is_finite flags NaN and infinity") {
        REQUIRE(a.is_finite());
        ComplexMatrix b = a;
        b(0, 1) = Complex(std::nan(""), 0.0);
        REQUIRE_FALSE(b.is_finite());
        ComplexMatrix c = a;
        c(1, 1) = Complex(0.0, std::numeric_limits<double>::infinity());
        REQUIRE_FALSE(c.is_finite());
    }
}

TEST_CASE("hermitian matrix construction", "[matrix]") {
    SECTION("accepts and symmetrizes tiny asymmetry") {
        ComplexMatrix m(2);
        m(0, 0) = Complex(1.0, 0.0);
        m(0, 1) = Complex(0.5, 1e-14);
        m(1, 0) = Complex(0.5, 0.0);
        m(1, 1) = Complex(2.0, 0.0);
        HermitianMatrix h(m);
        // Symmetrized: (A + A^dagger)/2 is exactly Hermitian.
        REQUIRE(h(0, 1) == std::conj(h(1, 0)));
        REQUIRE(h(0, 0).imag() == 0.0);
        REQUIRE(h.trace_real() == Approx(3.0).margin(1e-15));
    }

    SECTION("rejects visible asymmetry") {
        ComplexMatrix m(2);
        m(0, 1) = Complex(1.0, 0.0);
        m(1, 0) = Complex(0.0, 0.0);
        REQUIRE_THROWS_AS(HermitianMatrix(m), ArgumentError);
    }

    SECTION("conjugate by a unitary preserves spectrum and trace") {
        Rng rng(41);
        HermitianMatrix h = random_hermitian(4, rng);
        ComplexMatrix u = haar_unitary(4, rng);
        HermitianMatrix g = conjugate(h, u);
        REQUIRE(g.trace_real() == Approx(h.trace_real()).margin(1e-10));
        auto eh = jacobi_eigh(h);
        auto eg = jacobi_eigh(g);
        for (std::size_t i = 0; i < eh.eigenvalues.size(); ++i) {
            REQUIRE(eg.eigenvalues[i] == Approx(eh.eigenvalues[i]).margin(1e-9));
        }
    }
}

TEST_CASE("balance statistic of basis and uniform vectors", "[matrix]") {
    SECTION("first-half basis vector gives +1") {
        ComplexVector e0 = {Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0),
                            Complex(0.0, 0.0)};
        REQUIRE(delta_statistic(e0) == Approx(1.0).margin(1e-15));
    }
    SECTION("last-half basis vector gives -1") {
        ComplexVector e3 = {Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0),
                            Complex(0.0, 1.0)};
        REQUIRE(delta_statistic(e3) == Approx(-1.0).margin(1e-15));
    }
    SECTION("uniform vector balances to zero") {
        ComplexVector v(6, Complex(1.0 / std::sqrt(6.0), 0.0));
        REQUIRE(delta_statistic(v) == Approx(0.0).margin(1e-15));
    }
    SECTION("odd length is rejected") {
        ComplexVector v(3, Complex(1.0, 0.0));
        REQUIRE_THROWS_AS(delta_statistic(v), ArgumentError);
    }
}

TEST_CASE("jacobi eigensolver", "[matrix]") {
    SECTION("diagonal input is exact and sorted ascending") {
        HermitianMatrix h = HermitianMatrix::diagonal({3.0, -1.0, 2.0});
        auto r = jacobi_eigh(h);
        REQUIRE(r.eigenvalues.size() == 3);
        REQUIRE(r.eigenvalues[0] == Approx(-1.0).margin(1e-12));
        REQUIRE(r.eigenvalues[1] == Approx(2.0).margin(1e-12));
        REQUIRE(r.eigenvalues[2] == Approx(3.0).margin(1e-12));
    }

    SECTION("random hermitian reconstructs and diagonalizes") {
        Rng rng(7);
        HermitianMatrix h = random_hermitian(6, rng);
        auto r = jacobi_eigh(h);
        for (std::size_t i = 1; i < r.eigenvalues.size(); ++i) {
            REQUIRE(r.eigenvalues[i] >= r.eigenvalues[i - 1]);
        }
        // V is unitary.
        ComplexMatrix vtv = multiply(r.eigenvectors.adjoint(), r.eigenvectors);
        REQUIRE(max_abs_diff(vtv, ComplexMatrix::identity(6)) < 1e-10);
        // V diag(lambda) V^dagger = H.
        ComplexMatrix lam = ComplexMatrix::diagonal(r.eigenvalues);
        ComplexMatrix rec = multiply(multiply(r.eigenvectors, lam), r.eigenvectors.adjoint());
        REQUIRE(max_abs_diff(rec, h.matrix()) < 1e-9);
    }

    SECTION("trace norm sums absolute eigenvalues") {
        REQUIRE(trace_norm(HermitianMatrix::diagonal({1.0, -2.0, 3.0})) ==
                Approx(6.0).margin(1e-12));
        REQUIRE(trace_norm(HermitianMatrix::diagonal({0.0, 0.0})) == Approx(0.0).margin(1e-12));
    }
}

TEST_CASE("haar unitary sampling", "[matrix]") {
    SECTION("samples are unitary") {
        Rng rng(11);
        for (int d : {1, 2, 5, 16}) {
            ComplexMatrix u = haar_unitary(d, rng);
            ComplexMatrix utu = multiply(u.adjoint(), u);
            REQUIRE(max_abs_diff(utu, ComplexMatrix::identity(d)) < 1e-10);
        }
    }

    SECTION("same seed reproduces the same matrix") {
        Rng r1(99);
        Rng r2(99);
        ComplexMatrix u1 = haar_unitary(3, r1);
        ComplexMatrix u2 = haar_unitary(3, r2);
        REQUIRE(max_abs_diff(u1, u2) == 0.0);
    }

    SECTION("dimension must be positive") {
        Rng rng(1);
        REQUIRE_THROWS_AS(haar_unitary(0, rng), ArgumentError);
    }

    SECTION("first entry has mean squared modulus 1/d") {
        // For Haar U in dimension d, E|U_00|^2 = 1/d with variance
        // 2/(d(d+1)) - 1/d^2, so 5000 draws at d = 4 put the sample mean
        // within 0.015 of 0.25 with wide margin.
        const int d = 4;
        const int n = 5000;
        Rng rng(123);
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            ComplexMatrix u = haar_unitary(d, rng);
            acc += std::norm(u(0, 0));
        }
        REQUIRE(acc / n == Approx(1.0 / d).margin(0.015));
    }
}

TEST_CASE("random unit vectors", "[matrix]") {
    Rng rng(5);
    ComplexVector v = random_unit_vector(8, rng);
    REQUIRE(v.size() == 8);
    REQUIRE(vector_norm(v) == Approx(1.0).margin(1e-12));
    Rng r1(31);
    Rng r2(31);
    ComplexVector a = random_unit_vector(4, r1);
    ComplexVector b = random_unit_vector(4, r2);
    for (int i = 0; i < 4; ++i) {
        REQUIRE(a[i] == b[i]);
    }
    REQUIRE_THROWS_AS(random_unit_vector(0, rng), ArgumentError);
}

TEST_CASE("rng streams", "[rng]") {
    SECTION("same seed gives the same sequence") {
        Rng a(42);
        Rng b(42);
        for (int i = 0; i < 100; ++i) {
            REQUIRE(a.next_u64() == b.next_u64());
        }
    }

    SECTION("next_double lies in [0, 1)") {
        Rng rng(9);
        for (int i = 0; i < 10000; ++i) {
            double x = rng.next_double();
            REQUIRE(x >= 0.0);
            REQUIRE(x < 1.0);
        }
    }

    SECTION("derive depends on the construction seed, not the position") {
        Rng a(7);
        Rng b(7);
        b.next_u64();
        b.next_u64();
        Rng ca = a.derive(3);
        Rng cb = b.derive(3);
        REQUIRE(ca.seed() == cb.seed());
        REQUIRE(ca.next_u64() == cb.next_u64());
        REQUIRE(a.derive(3).seed() != a.derive(4).seed());
    }

    SECTION("derived child seeds are pairwise distinct") {
        std::set<RngSeed> seen;
        for (std::uint64_t i = 0; i <= 100; ++i) {
            seen.insert(rng_derive(0, i));
            seen.insert(rng_derive(12345, i));
        }
        REQUIRE(seen.size() == 202);
        REQUIRE(rng_derive(1, 0) != rng_derive(2, 0));
    }

    SECTION("gaussian moments") {
        Rng rng(77);
        const int n = 20000;
        double sum = 0.0;
        double sumsq = 0.0;
        for (int i = 0; i < n; ++i) {
            double g = rng.next_gaussian();
            sum += g;
            sumsq += g * g;
        }
        // Standard errors ~0.007 (mean) and ~0.010 (second moment).
        REQUIRE(sum / n == Approx(0.0).margin(0.04));
        REQUIRE(sumsq / n == Approx(1.0).margin(0.06));
    }
}

TEST_CASE("sample summaries", "[stats]") {
    SECTION("known mean and standard error") {
        McEstimate e = summarize({1.0, 2.0, 3.0, 4.0}, "toy");
        REQUIRE(e.mean == Approx(2.5).margin(1e-15));
        // Sample variance 5/3, so stderr = sqrt(5/12).
        REQUIRE(e.stderr_ == Approx(std::sqrt(5.0 / 12.0)).margin(1e-15));
        REQUIRE(e.samples == 4);
        REQUIRE(e.estimator == "toy");
    }
    SECTION("single value has stderr zero") {
        McEstimate e = summarize({3.25}, "one");
        REQUIRE(e.mean == 3.25);
        REQUIRE(e.stderr_ == 0.0);
        REQUIRE(e.samples == 1);
    }
    SECTION("empty sample is rejected") {
        REQUIRE_THROWS_AS(summarize({}, "none"), ArgumentError);
    }
}

TEST_CASE("wilson score intervals", "[stats]") {
    SECTION("matches independently computed values") {
        WilsonInterval w = wilson_interval(160, 200);
        REQUIRE(w.rate == Approx(0.8).margin(1e-15));
        REQUIRE(w.lo == Approx(0.7391436038882958).margin(1e-12));
        REQUIRE(w.hi == Approx(0.8495487925607118).margin(1e-12));
        WilsonInterval v = wilson_interval(30, 100);
        REQUIRE(v.lo == Approx(0.21894753866228117).margin(1e-12));
        REQUIRE(v.hi == Approx(0.3958503843281196).margin(1e-12));
    }
    SECTION("degenerate counts stay inside [0, 1]") {
        WilsonInterval z = wilson_interval(0, 50);
        REQUIRE(z.lo == Approx(0.0).margin(1e-12));
        REQUIRE(z.hi > 0.0);
        REQUIRE(z.hi < 0.2);
        WilsonInterval o = wilson_interval(50, 50);
        REQUIRE(o.hi == Approx(1.0).margin(1e-12));
        REQUIRE(o.lo > 0.8);
    }
    SECTION("interval is symmetric at half") {
        WilsonInterval h = wilson_interval(100, 200);
        REQUIRE(h.rate - h.lo == Approx(h.hi - h.rate).margin(1e-12));
    }
    SECTION("domain checks") {
        REQUIRE_THROWS_AS(wilson_interval(-1, 10), ArgumentError);
        REQUIRE_THROWS_AS(wilson_interval(11, 10), ArgumentError);
        REQUIRE_THROWS_AS(wilson_interval(0, 0), ArgumentError);
    }
}

TEST_CASE("least squares line fit", "[stats]") {
    SECTION("recovers an exact line") {
        std::vector<double> x = {0.0, 1.0, 2.0, 3.0};
        std::vector<double> y = {1.0, 3.0, 5.0, 7.0};
        LineFit f = least_squares_line(x, y);
        REQUIRE(f.slope == Approx(2.0).margin(1e-14));
        REQUIRE(f.intercept == Approx(1.0).margin(1e-14));
    }
    SECTION("rejects degenerate inputs") {
        REQUIRE_THROWS_AS(least_squares_line({1.0}, {2.0}), ArgumentError);
        REQUIRE_THROWS_AS(least_squares_line({1.0, 2.0}, {1.0}), ArgumentError);
        REQUIRE_THROWS_AS(least_squares_line({2.0, 2.0}, {1.0, 3.0}), ArgumentError);
    }
}

TEST_CASE("log binomial coefficients", "[stats]") {
    REQUIRE(log_binomial_coeff(5, 2) == Approx(std::log(10.0)).margin(1e-12));
    REQUIRE(log_binomial_coeff(50, 20) == Approx(31.483914142189384).margin(1e-9));
    REQUIRE(log_binomial_coeff(7, 0) == Approx(0.0).margin(1e-12));
    REQUIRE(log_binomial_coeff(7, 7) == Approx(0.0).margin(1e-12));
    REQUIRE_THROWS_AS(log_binomial_coeff(3, 4), ArgumentError);
    REQUIRE_THROWS_AS(log_binomial_coeff(-1, 0), ArgumentError);
}

TEST_CASE("parallel execution is deterministic in the worker count", "[parallel]") {
    SECTION("chunks cover the range exactly once") {
        for (int jobs : {1, 3, 7}) {
            for (std::int64_t n : {0LL, 1LL, 10LL, 101LL}) {
                std::vector<int> hits(static_cast<std::size_t>(n), 0);
                parallel_for_chunks(n, jobs, [&](std::int64_t b, std::int64_t e) {
                    for (std::int64_t i = b; i < e; ++i) {
                        hits[static_cast<std::size_t>(i)]++;
                    }
                });
                for (int h : hits) {
                    REQUIRE(h == 1);
                }
            }
        }
    }

    SECTION("map output is independent of jobs") {
        auto fn = [](std::int64_t i) {
            Rng rng(rng_derive(900, static_cast<std::uint64_t>(i)));
            return rng.next_double() + static_cast<double>(i);
        };
        std::vector<double> serial = parallel_map<double>(64, 1, fn);
        std::vector<double> threaded = parallel_map<double>(64, 3, fn);
        REQUIRE(serial == threaded);
    }
}

TEST_CASE("matrix file round trips", "[io]") {
    Rng rng(21);
    ComplexMatrix m(3);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            m(i, j) = rng.next_complex_gaussian();
        }
    }

    SECTION("json round trip is exact") {
        ComplexMatrix back = matrix_from_json(matrix_to_json(m));
        REQUIRE(back.dim() == 3);
        REQUIRE(max_abs_diff(back, m) == 0.0);
    }

    SECTION("file round trip is exact") {
        const std::string path = "test_matrix_roundtrip.json";
        write_matrix_file(m, path);
        ComplexMatrix back = read_matrix_file(path);
        REQUIRE(max_abs_diff(back, m) == 0.0);
        std::remove(path.c_str());
    }

    SECTION("missing file raises io error") {
        REQUIRE_THROWS_AS(read_matrix_file("does_not_exist_9321.json"), IoError);
    }

    SECTION("malformed content raises io error") {
        REQUIRE_THROWS_AS(matrix_from_json("not json at all"), IoError);
        REQUIRE_THROWS_AS(matrix_from_json("{\"d\": 2, \"re\": [[1,0]], \"im\": [[0,0]]}"),
                          IoError);
        REQUIRE_THROWS_AS(matrix_from_json("{\"re\": [[1]], \"im\": [[0]]}"), IoError);
    }

    SECTION("matrix list file") {
        const std::string path = "test_matrix_list.json";
        {
            std::ofstream out(path);
            out << "[" << matrix_to_json(m) << "," << matrix_to_json(ComplexMatrix::identity(3))
                << "]";
        }
        std::vector<ComplexMatrix> list = read_matrix_list_file(path);
        REQUIRE(list.size() == 2);
        REQUIRE(max_abs_diff(list[0], m) == 0.0);
        REQUIRE(max_abs_diff(list[1], ComplexMatrix::identity(3)) == 0.0);
        std::remove(path.c_str());
    }
}
