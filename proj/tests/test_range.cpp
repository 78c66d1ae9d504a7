#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "numrange/ensembles.hpp"
#include "numrange/matrix.hpp"
#include "numrange/range.hpp"
#include "support/oracles.hpp"

using namespace numrange;

namespace {

const ComplexMatrix kShift{{Complex(0, 0), Complex(1, 0)}, {Complex(0, 0), Complex(0, 0)}};
const ComplexMatrix kDiagI1{{Complex(0, 1), Complex(0, 0)}, {Complex(0, 0), Complex(1, 0)}};

void check_enclosure(const CertifiedValue& cv, double tol_width) {
    REQUIRE(cv.lower <= cv.value);
    REQUIRE(cv.value <= cv.upper);
    REQUIRE(cv.upper - cv.lower <= tol_width);
}

}  // namespace

TEST_CASE("numerical radius on matrices with known values") {
    // Jordan shift: disk of radius 1/2.
    REQUIRE(numerical_radius(kShift).value == Catch::Approx(0.5).epsilon(1e-8));

    // Normal matrix: w = max |eigenvalue|.
    REQUIRE(numerical_radius(kDiagI1).value == Catch::Approx(1.0).epsilon(1e-8));

    // Nilpotent 3x3 Jordan block: w = cos(pi/4).
    const ComplexMatrix j3 = gen_random({EnsembleKind::nilpotent_jordan, 3, 0});
    REQUIRE(numerical_radius(j3).value ==
            Catch::Approx(std::cos(std::numbers::pi / 4.0)).epsilon(1e-8));

    // 2x2 ellipse cases, closed forms.
    const ComplexMatrix a{{Complex(0, 0), Complex(0, 0)}, {Complex(3, 0), Complex(1, 0)}};
    REQUIRE(numerical_radius(a).value ==
            Catch::Approx((1.0 + std::sqrt(10.0)) / 2.0).epsilon(1e-8));

    const ComplexMatrix b{{Complex(0, 0), Complex(1, 0)}, {Complex(2, 0), Complex(0, 0)}};
    REQUIRE(numerical_radius(b).value == Catch::Approx(1.5).epsilon(1e-8));

    const ComplexMatrix c{{Complex(1, 0), Complex(1, 0)}, {Complex(0, 0), Complex(0, 0)}};
    REQUIRE(numerical_radius(c).value ==
            Catch::Approx((1.0 + std::sqrt(2.0)) / 2.0).epsilon(1e-8));
}

TEST_CASE("numerical radius special paths") {
    REQUIRE(numerical_radius(ComplexMatrix(3, 3)).value == 0.0);
    REQUIRE(numerical_radius(ComplexMatrix(3, 3)).upper == 0.0);

    // Hermitian matrices take an exact single-eigensolve path.
    const ComplexMatrix h{{Complex(-3, 0), Complex(0, 0)}, {Complex(0, 0), Complex(2, 0)}};
    const CertifiedValue wh = numerical_radius(h);
    REQUIRE(wh.value == Catch::Approx(3.0).epsilon(1e-12));

    REQUIRE_THROWS_AS(numerical_radius(ComplexMatrix(2, 3)), std::invalid_argument);
    REQUIRE_THROWS_AS(numerical_radius(kShift, -1.0), std::invalid_argument);
}

TEST_CASE("enclosures are valid and meet the requested width") {
    for (std::size_t n : {2u, 3u, 5u, 8u}) {
        const ComplexMatrix g = gen_random({EnsembleKind::ginibre, n, 555 + n});
        const double scale = op_norm(g).value;
        const CertifiedValue w = numerical_radius(g);
        check_enclosure(w, 2.0 * kRangeTolDefault * scale + 1e-13);
        // w is between ||T||/2 and ||T||.
        REQUIRE(w.value >= 0.5 * scale * (1 - 1e-9));
        REQUIRE(w.value <= scale * (1 + 1e-9));

        const CertifiedValue m = crawford_number(g);
        check_enclosure(m, 2.0 * kRangeTolDefault * scale + 1e-13);
        REQUIRE(m.value >= 0.0);
        REQUIRE(m.value <= w.upper * (1 + 1e-12));
    }
}

TEST_CASE("agreement with independent oracles") {
    for (std::size_t n : {2u, 3u, 4u, 6u}) {
        const ComplexMatrix g = gen_random({EnsembleKind::ginibre, n, 9100 + n});
        const double w = numerical_radius(g).value;
        const double scale = std::max(1.0, w);
        REQUIRE(std::abs(w - oracle::w_grid(g)) < 1e-8 * scale);
        // Brute force from below only; sampling converges slowly with
        // dimension, so this gap check is deliberately coarse.
        const double bf = oracle::w_bruteforce(g, 200000, 31 + n);
        REQUIRE(bf <= w * (1 + 1e-9));
        REQUIRE(w - bf < 5e-2 * scale);

        const double m = crawford_number(g).value;
        REQUIRE(std::abs(m - oracle::m_grid(g)) < 1e-7 * scale);
    }
}

TEST_CASE("imaginary-part scan agrees with the real-part scan") {
    for (std::size_t n : {2u, 4u, 7u}) {
        const ComplexMatrix g = gen_random({EnsembleKind::ginibre, n, 77 + n});
        const double a = numerical_radius(g).value;
        const double b = numerical_radius_im_scan(g).value;
        REQUIRE(std::abs(a - b) < 2e-10 * std::max(1.0, op_norm(g).value));
    }
}

TEST_CASE("crawford number on known matrices") {
    // Segment from i to 1: distance from origin is 1/sqrt(2).
    REQUIRE(crawford_number(kDiagI1).value ==
            Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));

    // 0 lies in W(shift), so m = 0.
    REQUIRE(crawford_number(kShift).value == Catch::Approx(0.0).margin(1e-10));

    // Identity: W = {1}.
    REQUIRE(crawford_number(ComplexMatrix::identity(3)).value == Catch::Approx(1.0));

    REQUIRE(crawford_number(ComplexMatrix(2, 2)).value == 0.0);
}

TEST_CASE("membership verdicts") {
    const ComplexMatrix id = ComplexMatrix::identity(2);
    REQUIRE(in_range(id, Complex(1.0, 0.0), 0.0) == Membership::inside);
    REQUIRE(in_range(id, Complex(2.0, 0.0), 1e-10) == Membership::outside);

    // W(shift) is the closed disk of radius 1/2.
    REQUIRE(in_range(kShift, Complex(0.0, 0.0), 1e-10) == Membership::inside);
    REQUIRE(in_range(kShift, Complex(0.3, 0.3), 1e-10) == Membership::inside);
    REQUIRE(in_range(kShift, Complex(0.6, 0.0), 1e-10) == Membership::outside);
    REQUIRE(in_range(kShift, Complex(0.0, -0.7), 1e-10) == Membership::outside);

    // A point on the boundary with a loose tolerance cannot be separated.
    REQUIRE(in_range(kShift, Complex(0.5, 0.0), 1e-3) == Membership::uncertain);

    REQUIRE_THROWS_AS(in_range(id, Complex(0, 0), -1e-3), std::invalid_argument);
}

TEST_CASE("boundary sampling") {
    const RangeBoundary disk = range_boundary(kShift, 128);
    REQUIRE(disk.shape == RangeShape::full);
    REQUIRE(disk.samples.size() == 128);
    double maxmod = 0.0;
    for (const auto& s : disk.samples) {
        maxmod = std::max(maxmod, std::abs(s.point));
        REQUIRE(s.support == Catch::Approx(0.5).margin(1e-12));
    }
    REQUIRE(maxmod == Catch::Approx(0.5).margin(1e-9));

    const RangeBoundary seg = range_boundary(kDiagI1, 64);
    REQUIRE(seg.shape == RangeShape::segment);
    const Complex lo = seg.anchor_a, hi = seg.anchor_b;
    REQUIRE(std::abs((lo - hi)) == Catch::Approx(std::sqrt(2.0)).margin(1e-9));
    // Endpoints are i and 1 in some order.
    const double d1 = std::min(std::abs(lo - Complex(0, 1)), std::abs(lo - Complex(1, 0)));
    const double d2 = std::min(std::abs(hi - Complex(0, 1)), std::abs(hi - Complex(1, 0)));
    REQUIRE(d1 < 1e-9);
    REQUIRE(d2 < 1e-9);

    const RangeBoundary pt = range_boundary(2.0 * ComplexMatrix::identity(2), 16);
    REQUIRE(pt.shape == RangeShape::point);
    REQUIRE(std::abs(pt.anchor_a - Complex(2, 0)) < 1e-12);

    REQUIRE(range_boundary(ComplexMatrix()).shape == RangeShape::point);
    REQUIRE(range_boundary(ComplexMatrix()).samples.empty());
    REQUIRE_THROWS_AS(range_boundary(kShift, 0), std::invalid_argument);
}

TEST_CASE("scan scale invariance") {
    const ComplexMatrix g = gen_random({EnsembleKind::ginibre, 4, 2024});
    const double w1 = numerical_radius(g).value;
    for (double s : {1e6, 1e-6}) {
        const double ws = numerical_radius(s * g).value;
        REQUIRE(ws == Catch::Approx(s * w1).epsilon(1e-9));
    }
}

TEST_CASE("theta_star witnesses the reported value") {
    const ComplexMatrix g = gen_random({EnsembleKind::ginibre, 5, 808});
    const CertifiedValue w = numerical_radius(g);
    REQUIRE(w.theta_star.has_value());
    const ComplexMatrix h = oracle::rotated_hermitian_part(g, w.theta_star.value());
    const EigenExtremes ex = hermitian_extremes(h);
    REQUIRE(ex.lambda_max == Catch::Approx(w.value).epsilon(1e-9));
}
