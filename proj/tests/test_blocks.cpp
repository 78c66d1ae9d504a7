#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "numrange/blocks.hpp"
#include "numrange/ensembles.hpp"
#include "numrange/matrix.hpp"
#include "numrange/range.hpp"

using namespace numrange;

TEST_CASE("block spec shape checks") {
    BlockSpec spec({2, 1}, {2, 1});
    REQUIRE(spec.order() == 2);
    REQUIRE(spec.total_rows() == 3);
    REQUIRE(spec.total_cols() == 3);

    spec.set(0, 0, ComplexMatrix::identity(2));
    REQUIRE(spec.block(0, 0).has_value());
    REQUIRE_FALSE(spec.block(0, 1).has_value());

    // Wrong block shape for the (0, 1) slot, which must be 2x1.
    REQUIRE_THROWS_AS(spec.set(0, 1, ComplexMatrix(1, 2)), std::invalid_argument);
    REQUIRE_THROWS_AS(spec.set(2, 0, ComplexMatrix(1, 1)), std::out_of_range);
    REQUIRE_THROWS_AS(spec.block(0, 2), std::out_of_range);

    spec.set(0, 0, ComplexMatrix(2, 2));
    spec.clear(0, 0);
    REQUIRE_FALSE(spec.block(0, 0).has_value());

    REQUIRE_THROWS_AS(BlockSpec({}, {}), std::invalid_argument);
    REQUIRE_THROWS_AS(BlockSpec({1, 2}, {1}), std::invalid_argument);
}

TEST_CASE("assemble places blocks and zero-fills absences") {
    BlockSpec spec({1, 2}, {1, 2});
    spec.set(0, 0, ComplexMatrix{{Complex(5, 1)}});
    spec.set(1, 0, ComplexMatrix{{Complex(1, 0)}, {Complex(2, 0)}});
    spec.set(1, 1, ComplexMatrix{{Complex(0, 0), Complex(3, 0)}, {Complex(4, 0), Complex(0, 0)}});

    const ComplexMatrix m = assemble(spec);
    REQUIRE(m.rows() == 3);
    REQUIRE(m.cols() == 3);
    REQUIRE(m(0, 0) == Complex(5, 1));
    REQUIRE(m(0, 1) == Complex(0, 0));  // absent (0,1) block
    REQUIRE(m(0, 2) == Complex(0, 0));
    REQUIRE(m(1, 0) == Complex(1, 0));
    REQUIRE(m(2, 0) == Complex(2, 0));
    REQUIRE(m(1, 2) == Complex(3, 0));
    REQUIRE(m(2, 1) == Complex(4, 0));

    REQUIRE_THROWS_AS(assemble(BlockSpec()), std::invalid_argument);
}

TEST_CASE("off_diagonal layout") {
    const ComplexMatrix a = gen_random({EnsembleKind::ginibre, 2, 3});
    const ComplexMatrix b = gen_random({EnsembleKind::ginibre, 2, 4});
    const ComplexMatrix m = off_diagonal(a, b);
    REQUIRE(m.rows() == 4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            REQUIRE(m(i, j) == Complex(0, 0));
            REQUIRE(m(i, 2 + j) == a(i, j));
            REQUIRE(m(2 + i, j) == b(i, j));
            REQUIRE(m(2 + i, 2 + j) == Complex(0, 0));
        }
    REQUIRE_THROWS_AS(off_diagonal(ComplexMatrix(2, 2), ComplexMatrix(3, 3)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(off_diagonal(ComplexMatrix(2, 3), ComplexMatrix(3, 2)),
                      std::invalid_argument);
}

TEST_CASE("anti_diagonal places blocks[0] top-right") {
    const ComplexMatrix one{{Complex(1, 0)}};
    const ComplexMatrix two{{Complex(2, 0)}};
    const ComplexMatrix m = anti_diagonal({one, two});
    REQUIRE(m.rows() == 2);
    REQUIRE(m(0, 0) == Complex(0, 0));
    REQUIRE(m(0, 1) == Complex(1, 0));
    REQUIRE(m(1, 0) == Complex(2, 0));
    REQUIRE(m(1, 1) == Complex(0, 0));

    const ComplexMatrix single = anti_diagonal({two});
    REQUIRE(single.rows() == 1);
    REQUIRE(single(0, 0) == Complex(2, 0));

    REQUIRE_THROWS_AS(anti_diagonal({}), std::invalid_argument);
    REQUIRE_THROWS_AS(anti_diagonal({ComplexMatrix(1, 1), ComplexMatrix(2, 2)}),
                      std::invalid_argument);
}

TEST_CASE("flip unitary") {
    // Partition (1, 2): U maps the order-3 space with the permutation
    // [[0, I_1 in the last column-slot], [I_2 first]].
    const ComplexMatrix u = flip_unitary({1, 2});
    REQUIRE(u.rows() == 3);
    REQUIRE(u(0, 2) == Complex(1, 0));
    REQUIRE(u(1, 0) == Complex(1, 0));
    REQUIRE(u(2, 1) == Complex(1, 0));
    REQUIRE(u(0, 0) == Complex(0, 0));
    REQUIRE(u(1, 1) == Complex(0, 0));

    const ComplexMatrix gram = matmul(adjoint(u), u);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            REQUIRE(gram(i, j) == Complex(i == j ? 1.0 : 0.0, 0.0));

    REQUIRE_THROWS_AS(flip_unitary({}), std::invalid_argument);
}

TEST_CASE("pinch keeps the requested part") {
    BlockSpec spec({1, 1}, {1, 1});
    spec.set(0, 0, ComplexMatrix{{Complex(1, 0)}});
    spec.set(0, 1, ComplexMatrix{{Complex(2, 0)}});
    spec.set(1, 0, ComplexMatrix{{Complex(3, 0)}});
    spec.set(1, 1, ComplexMatrix{{Complex(4, 0)}});

    const ComplexMatrix diag = assemble(pinch(spec, PinchMode::diagonal));
    REQUIRE(diag(0, 0) == Complex(1, 0));
    REQUIRE(diag(0, 1) == Complex(0, 0));
    REQUIRE(diag(1, 0) == Complex(0, 0));
    REQUIRE(diag(1, 1) == Complex(4, 0));

    const ComplexMatrix off = assemble(pinch(spec, PinchMode::offdiagonal));
    REQUIRE(off(0, 0) == Complex(0, 0));
    REQUIRE(off(0, 1) == Complex(2, 0));
    REQUIRE(off(1, 0) == Complex(3, 0));
    REQUIRE(off(1, 1) == Complex(0, 0));
}

TEST_CASE("pinch averaging never increases the numerical radius") {
    // w(pinched) <= w(full) for both pinch modes; check on random fills.
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        BlockSpec spec({2, 2}, {2, 2});
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                spec.set(i, j, gen_random({EnsembleKind::ginibre, 2, 10 * seed + 2 * i + j}));
        const double w_full = numerical_radius(assemble(spec)).upper;
        const double w_diag = numerical_radius(assemble(pinch(spec, PinchMode::diagonal))).lower;
        const double w_off = numerical_radius(assemble(pinch(spec, PinchMode::offdiagonal))).lower;
        REQUIRE(w_diag <= w_full + 1e-9);
        REQUIRE(w_off <= w_full + 1e-9);
    }
}

TEST_CASE("equality model attains norm s and radius s/2") {
    // B scaled into the admissible disk w(B) <= 1/2.
    ComplexMatrix b = gen_random({EnsembleKind::ginibre, 3, 17});
    b = (0.5 / numerical_radius(b).upper) * b;

    for (double s : {1.0, 3.5, 0.125}) {
        const ComplexMatrix m = equality_model(s, b);
        REQUIRE(m.rows() == 5);
        REQUIRE(numerical_radius(m, 1e-11).value == Catch::Approx(0.5 * s).epsilon(1e-9));
        REQUIRE(op_norm(m).value == Catch::Approx(s).epsilon(1e-10));
    }

    // Empty direct summand is allowed: the model is just the scaled shift.
    const ComplexMatrix bare = equality_model(2.0, ComplexMatrix());
    REQUIRE(bare.rows() == 2);
    REQUIRE(bare(0, 1) == Complex(2, 0));
    REQUIRE(numerical_radius(bare).value == Catch::Approx(1.0).epsilon(1e-10));

    REQUIRE_THROWS_AS(equality_model(0.0, b), std::invalid_argument);
    REQUIRE_THROWS_AS(equality_model(-1.0, b), std::invalid_argument);
    REQUIRE_THROWS_AS(equality_model(1.0, ComplexMatrix(1, 2)), std::invalid_argument);
    // w(I) = 1 > 1/2 is rejected.
    REQUIRE_THROWS_AS(equality_model(1.0, ComplexMatrix::identity(2)), std::invalid_argument);
}
