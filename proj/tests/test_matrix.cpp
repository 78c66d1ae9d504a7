#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "numrange/matrix.hpp"

using namespace numrange;

TEST_CASE("construction and element access") {
    ComplexMatrix m(2, 3);
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 3);
    REQUIRE_FALSE(m.is_square());
    REQUIRE(m.max_abs() == 0.0);

    m(1, 2) = Complex(3.0, -4.0);
    REQUIRE(m(1, 2) == Complex(3.0, -4.0));
    REQUIRE(m.max_abs() == 5.0);
    REQUIRE(m.frobenius() == 5.0);

    const ComplexMatrix eye = ComplexMatrix::identity(3);
    REQUIRE(eye(0, 0) == Complex(1.0, 0.0));
    REQUIRE(eye(0, 1) == Complex(0.0, 0.0));
    REQUIRE(eye.frobenius() == Catch::Approx(std::sqrt(3.0)));

    const ComplexMatrix empty;
    REQUIRE(empty.rows() == 0);
    REQUIRE(empty.is_square());
}

TEST_CASE("initializer list literals") {
    const ComplexMatrix m{{Complex(1, 0), Complex(0, 1)}, {Complex(2, 0), Complex(0, -2)}};
    REQUIRE(m.rows() == 2);
    REQUIRE(m(0, 1) == Complex(0, 1));
    REQUIRE(m(1, 0) == Complex(2, 0));

    REQUIRE_THROWS_AS(ComplexMatrix({{Complex(1, 0)}, {Complex(1, 0), Complex(2, 0)}}),
                      std::invalid_argument);
}

TEST_CASE("non-finite entries are rejected") {
    const double inf = std::numeric_limits<double>::infinity();
    REQUIRE_THROWS_AS(ComplexMatrix{{Complex(inf, 0)}}, std::invalid_argument);
    ComplexMatrix m(1, 1);
    m(0, 0) = Complex(0.0, std::nan(""));
    REQUIRE_THROWS_AS(m.validate_finite(), std::invalid_argument);
}

TEST_CASE("arithmetic") {
    const ComplexMatrix a{{Complex(1, 0), Complex(2, 0)}, {Complex(3, 0), Complex(4, 0)}};
    const ComplexMatrix b{{Complex(0, 1), Complex(0, 0)}, {Complex(0, 0), Complex(0, 1)}};

    const ComplexMatrix s = a + b;
    REQUIRE(s(0, 0) == Complex(1, 1));
    REQUIRE(s(1, 1) == Complex(4, 1));

    const ComplexMatrix d = s - b;
    REQUIRE(d == a);

    const ComplexMatrix half = 0.5 * a;
    REQUIRE(half(1, 0) == Complex(1.5, 0));

    // b is i*I, so a*b rotates every entry by i.
    const ComplexMatrix p = a * b;
    REQUIRE(p(0, 0) == Complex(0, 1));
    REQUIRE(p(1, 1) == Complex(0, 4));

    REQUIRE_THROWS_AS(add(a, ComplexMatrix(1, 2)), std::invalid_argument);
    REQUIRE_THROWS_AS(matmul(a, ComplexMatrix(3, 2)), std::invalid_argument);
}

TEST_CASE("matmul against a hand-computed product") {
    const ComplexMatrix a{{Complex(1, 1), Complex(2, 0)}, {Complex(0, 0), Complex(0, -1)}};
    const ComplexMatrix b{{Complex(3, 0), Complex(0, 1)}, {Complex(1, 0), Complex(1, 0)}};
    const ComplexMatrix p = a * b;
    // (1+i)*3 + 2*1 = 5+3i ; (1+i)*i + 2*1 = 1+i ; row 2: -i*1, -i*1
    REQUIRE(p(0, 0) == Complex(5, 3));
    REQUIRE(p(0, 1) == Complex(1, 1));
    REQUIRE(p(1, 0) == Complex(0, -1));
    REQUIRE(p(1, 1) == Complex(0, -1));
}

TEST_CASE("adjoint and rotation") {
    const ComplexMatrix a{{Complex(1, 2), Complex(3, -1)}};
    const ComplexMatrix at = adjoint(a);
    REQUIRE(at.rows() == 2);
    REQUIRE(at.cols() == 1);
    REQUIRE(at(0, 0) == Complex(1, -2));
    REQUIRE(at(1, 0) == Complex(3, 1));

    const ComplexMatrix r = rotate(ComplexMatrix{{Complex(2, 0)}}, std::numbers::pi / 2);
    REQUIRE(r(0, 0).real() == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(r(0, 0).imag() == Catch::Approx(2.0));
}

TEST_CASE("direct sum layout") {
    const ComplexMatrix a{{Complex(1, 0)}};
    const ComplexMatrix b{{Complex(2, 0), Complex(3, 0)}, {Complex(4, 0), Complex(5, 0)}};
    const ComplexMatrix c = direct_sum(a, b);
    REQUIRE(c.rows() == 3);
    REQUIRE(c.cols() == 3);
    REQUIRE(c(0, 0) == Complex(1, 0));
    REQUIRE(c(0, 1) == Complex(0, 0));
    REQUIRE(c(1, 1) == Complex(2, 0));
    REQUIRE(c(2, 2) == Complex(5, 0));
}

TEST_CASE("vectors, inner products, matvec") {
    const ComplexVector x{Complex(1, 0), Complex(0, 1)};
    const ComplexVector y{Complex(0, 1), Complex(1, 0)};
    REQUIRE(x.norm() == Catch::Approx(std::sqrt(2.0)));
    // <x,y> = x_0 conj(y_0) + x_1 conj(y_1) = -i + i = 0 for these.
    REQUIRE(inner(x, y) == Complex(0, 0));
    REQUIRE(inner(x, x).real() == Catch::Approx(2.0));
    REQUIRE(inner(x, x).imag() == 0.0);

    const ComplexMatrix a{{Complex(0, 0), Complex(1, 0)}, {Complex(0, 0), Complex(0, 0)}};
    const ComplexVector ax = matvec(a, x);
    REQUIRE(ax[0] == Complex(0, 1));
    REQUIRE(ax[1] == Complex(0, 0));
    REQUIRE_THROWS_AS(matvec(a, ComplexVector(3)), std::invalid_argument);
    REQUIRE_THROWS_AS(inner(x, ComplexVector(3)), std::invalid_argument);
}

TEST_CASE("cartesian parts reconstruct and are bitwise Hermitian") {
    const ComplexMatrix t{{Complex(1, 2), Complex(3, -4)}, {Complex(-2, 1), Complex(0, -1)}};
    const CartesianPair p = cartesian_parts(t);
    REQUIRE(is_exactly_hermitian(p.re));
    REQUIRE(is_exactly_hermitian(p.im));

    // t == re + i*im up to rounding.
    const ComplexMatrix rec = p.re + Complex(0, 1) * p.im;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            REQUIRE(std::abs(rec(i, j) - t(i, j)) < 1e-15);

    REQUIRE_THROWS_AS(cartesian_parts(ComplexMatrix(1, 2)), std::invalid_argument);
}

TEST_CASE("exact Hermitian detection") {
    ComplexMatrix h{{Complex(1, 0), Complex(2, 3)}, {Complex(2, -3), Complex(-1, 0)}};
    REQUIRE(is_exactly_hermitian(h));
    h(0, 0) = Complex(1, 1e-300);
    REQUIRE_FALSE(is_exactly_hermitian(h));
    h(0, 0) = Complex(1, 0);
    h(1, 0) = Complex(2.0000000001, -3);
    REQUIRE_FALSE(is_exactly_hermitian(h));
    REQUIRE_FALSE(is_exactly_hermitian(ComplexMatrix(1, 2)));
}
