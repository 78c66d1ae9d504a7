#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>

#include "numrange/eigen.hpp"
#include "numrange/ensembles.hpp"
#include "numrange/matrix.hpp"

using namespace numrange;

namespace {

double eigen_residual(const ComplexMatrix& h, const HermitianEigensystem& es) {
    double worst = 0.0;
    const std::size_t n = h.rows();
    for (std::size_t k = 0; k < n; ++k) {
        ComplexVector v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = es.vectors(i, k);
        const ComplexVector hv = matvec(h, v);
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) r += std::norm(hv[i] - es.values[k] * v[i]);
        worst = std::max(worst, std::sqrt(r));
    }
    return worst;
}

double orthonormality_defect(const ComplexMatrix& v) {
    const std::size_t n = v.rows();
    double worst = 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Complex s(0.0, 0.0);
            for (std::size_t i = 0; i < n; ++i) s += std::conj(v(i, a)) * v(i, b);
            worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
        }
    return worst;
}

}  // namespace

TEST_CASE("hermitian eigensystem on a diagonal matrix") {
    const ComplexMatrix h{{Complex(3, 0), Complex(0, 0), Complex(0, 0)},
                          {Complex(0, 0), Complex(1, 0), Complex(0, 0)},
                          {Complex(0, 0), Complex(0, 0), Complex(2, 0)}};
    const HermitianEigensystem es = hermitian_eigensystem(h);
    REQUIRE(es.values.size() == 3);
    REQUIRE(es.values[0] == Catch::Approx(1.0));
    REQUIRE(es.values[1] == Catch::Approx(2.0));
    REQUIRE(es.values[2] == Catch::Approx(3.0));
    REQUIRE(std::is_sorted(es.values.begin(), es.values.end()));
    REQUIRE(eigen_residual(h, es) <= es.error_bound);
}

TEST_CASE("2x2 closed form") {
    // Eigenvalues 1 +- sqrt(1 + |1+i|^2) = 1 +- sqrt(3).
    const ComplexMatrix h{{Complex(2, 0), Complex(1, 1)}, {Complex(1, -1), Complex(0, 0)}};
    const HermitianEigensystem es = hermitian_eigensystem(h);
    REQUIRE(es.values[0] == Catch::Approx(1.0 - std::sqrt(3.0)));
    REQUIRE(es.values[1] == Catch::Approx(1.0 + std::sqrt(3.0)));
    REQUIRE(eigen_residual(h, es) < 1e-14);
    REQUIRE(orthonormality_defect(es.vectors) < 1e-14);
}

TEST_CASE("random Hermitian matrices: residual, orthonormality, trace") {
    for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 13u, 24u}) {
        const ComplexMatrix h = gen_random({EnsembleKind::hermitian, n, 1000 + n});
        const HermitianEigensystem es = hermitian_eigensystem(h);
        REQUIRE(es.values.size() == n);
        REQUIRE(std::is_sorted(es.values.begin(), es.values.end()));
        REQUIRE(eigen_residual(h, es) <= std::max(es.error_bound, 1e-13 * h.frobenius()));
        REQUIRE(orthonormality_defect(es.vectors) < 1e-12);

        double trace = 0.0, sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) trace += h(i, i).real();
        for (double v : es.values) sum += v;
        REQUIRE(sum == Catch::Approx(trace).margin(1e-11 * std::max(1.0, h.frobenius())));
    }
}

TEST_CASE("hermitian input validation") {
    ComplexMatrix h{{Complex(0, 0), Complex(1, 0)}, {Complex(1, 0), Complex(0, 0)}};
    h(1, 0) = Complex(1.0 + 1e-8, 0.0);
    REQUIRE_THROWS_AS(hermitian_eigensystem(h), std::invalid_argument);

    h(1, 0) = Complex(1.0 + 1e-12, 0.0);  // within tolerance, symmetrized away
    REQUIRE_NOTHROW(hermitian_eigensystem(h));
}

TEST_CASE("empty and trivial sizes") {
    REQUIRE(hermitian_eigensystem(ComplexMatrix()).values.empty());
    REQUIRE_THROWS_AS(hermitian_extremes(ComplexMatrix()), std::invalid_argument);
    const HermitianEigensystem one = hermitian_eigensystem(ComplexMatrix{{Complex(-2.5, 0)}});
    REQUIRE(one.values[0] == -2.5);
    REQUIRE(std::abs(one.vectors(0, 0)) == Catch::Approx(1.0));
}

TEST_CASE("general eigenvalues on known spectra") {
    const std::vector<Complex> nil = general_eigenvalues(
        ComplexMatrix{{Complex(0, 0), Complex(1, 0)}, {Complex(0, 0), Complex(0, 0)}});
    REQUIRE(nil.size() == 2);
    REQUIRE(std::abs(nil[0]) < 1e-7);
    REQUIRE(std::abs(nil[1]) < 1e-7);

    // [[0,1],[-1,0]] has eigenvalues +-i.
    std::vector<Complex> rot = general_eigenvalues(
        ComplexMatrix{{Complex(0, 0), Complex(1, 0)}, {Complex(-1, 0), Complex(0, 0)}});
    std::sort(rot.begin(), rot.end(),
              [](Complex a, Complex b) { return a.imag() < b.imag(); });
    REQUIRE(std::abs(rot[0] - Complex(0, -1)) < 1e-12);
    REQUIRE(std::abs(rot[1] - Complex(0, 1)) < 1e-12);

    std::vector<Complex> tri = general_eigenvalues(
        ComplexMatrix{{Complex(0, 0), Complex(0, 0)}, {Complex(3, 0), Complex(1, 0)}});
    std::sort(tri.begin(), tri.end(),
              [](Complex a, Complex b) { return a.real() < b.real(); });
    REQUIRE(std::abs(tri[0]) < 1e-12);
    REQUIRE(std::abs(tri[1] - Complex(1, 0)) < 1e-12);
}

TEST_CASE("general eigenvalues conserve the trace on random matrices") {
    for (std::size_t n : {2u, 3u, 5u, 8u, 12u}) {
        const ComplexMatrix g = gen_random({EnsembleKind::ginibre, n, 7000 + n});
        const std::vector<Complex> eig = general_eigenvalues(g);
        Complex trace(0.0, 0.0), sum(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) trace += g(i, i);
        for (Complex l : eig) sum += l;
        REQUIRE(std::abs(sum - trace) < 1e-10 * std::max(1.0, g.frobenius()));
    }
}

TEST_CASE("spectral radius") {
    const CertifiedValue r = spectral_radius(
        ComplexMatrix{{Complex(0, 0), Complex(0, 0)}, {Complex(3, 0), Complex(1, 0)}});
    REQUIRE(r.value == Catch::Approx(1.0));
    REQUIRE(r.lower <= 1.0);
    REQUIRE(r.upper >= 1.0);

    // Unitary: every eigenvalue on the circle.
    const ComplexMatrix u = gen_random({EnsembleKind::haar_unitary, 6, 11});
    REQUIRE(spectral_radius(u).value == Catch::Approx(1.0).margin(1e-10));
}

TEST_CASE("operator norm") {
    const CertifiedValue n1 = op_norm(ComplexMatrix{{Complex(1, 0), Complex(2, 0)},
                                                    {Complex(0, 0), Complex(0, 0)}});
    REQUIRE(n1.value == Catch::Approx(std::sqrt(5.0)));
    REQUIRE(n1.lower <= n1.value);
    REQUIRE(n1.upper >= n1.value);

    // Hermitian fast path: norm is the extreme eigenvalue magnitude.
    const CertifiedValue n2 =
        op_norm(ComplexMatrix{{Complex(-3, 0), Complex(0, 0)}, {Complex(0, 0), Complex(2, 0)}});
    REQUIRE(n2.value == 3.0);

    // Rectangular.
    const CertifiedValue n3 = op_norm(ComplexMatrix{{Complex(1, 0), Complex(2, 0)}});
    REQUIRE(n3.value == Catch::Approx(std::sqrt(5.0)));

    REQUIRE(op_norm(ComplexMatrix(2, 2)).value == 0.0);
    REQUIRE(op_norm(ComplexMatrix()).value == 0.0);
}

TEST_CASE("singular-value norms bracket random matrices") {
    for (std::size_t n : {2u, 4u, 9u}) {
        const ComplexMatrix g = gen_random({EnsembleKind::ginibre, n, 310 + n});
        const CertifiedValue nm = op_norm(g);
        REQUIRE(nm.lower <= nm.value);
        REQUIRE(nm.value <= nm.upper);
        REQUIRE(nm.upper - nm.lower < 1e-10 * std::max(1.0, nm.value));
        // Frobenius bound: ||G|| <= ||G||_F <= sqrt(n) ||G||.
        REQUIRE(nm.lower <= g.frobenius() * (1 + 1e-12));
        REQUIRE(g.frobenius() <= std::sqrt(static_cast<double>(n)) * nm.upper * (1 + 1e-12));
    }
}

TEST_CASE("minimum norm") {
    const CertifiedValue c1 =
        min_norm(ComplexMatrix{{Complex(3, 0), Complex(0, 0)}, {Complex(0, 0), Complex(4, 0)}});
    REQUIRE(c1.value == Catch::Approx(3.0));

    // Singular matrix: the enclosure must reach down to zero.
    const CertifiedValue c2 =
        min_norm(ComplexMatrix{{Complex(1, 0), Complex(2, 0)}, {Complex(0, 0), Complex(0, 0)}});
    REQUIRE(c2.lower == 0.0);
    REQUIRE(c2.value <= 1e-7);

    // Wide matrices have a nontrivial kernel.
    REQUIRE(min_norm(ComplexMatrix(1, 2)).value == 0.0);

    // Unitary: c = 1.
    const ComplexMatrix u = gen_random({EnsembleKind::haar_unitary, 5, 99});
    REQUIRE(min_norm(u).value == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("certified enclosures nest: r <= w-proxies <= norm") {
    for (std::size_t n : {2u, 3u, 6u}) {
        const ComplexMatrix g = gen_random({EnsembleKind::ginibre, n, 41 + n});
        const CertifiedValue r = spectral_radius(g);
        const CertifiedValue nm = op_norm(g);
        REQUIRE(r.lower <= nm.upper * (1 + 1e-12));
        const CertifiedValue c = min_norm(g);
        REQUIRE(c.value <= nm.upper * (1 + 1e-12));
    }
}
