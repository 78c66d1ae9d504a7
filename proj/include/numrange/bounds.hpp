#pragma once

// The inequality catalog: one evaluator per bound, each returning tagged
// BoundEvaluation records.  Values are computed from certified ingredient
// enclosures with outward rounding: lower bounds are assembled from the
// pessimistic (lower) interval ends, upper bounds from the optimistic
// (upper) ends, so a reported violation is a real violation and never
// interval noise.  Reference strings restate each inequality so reports are
// self-contained.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "blocks.hpp"
#include "certified.hpp"
#include "eigen.hpp"
#include "matrix.hpp"
#include "range.hpp"

namespace numrange {

// Comparison values quoted from other authors' bounds; used only to
// reproduce the worked comparisons, never re-derived.
inline const double kShebrawiBound = (12.0 + std::sqrt(10.0)) / 4.0;  // Shebrawi
inline constexpr double kHirzallahKittanehShebrawiBound = 1.5;        // Hirzallah et al.

enum class BoundDirection { lower, upper, equality, pointwise };

inline const char* to_string(BoundDirection d) {
    switch (d) {
        case BoundDirection::lower: return "lower";
        case BoundDirection::upper: return "upper";
        case BoundDirection::equality: return "equality";
        case BoundDirection::pointwise: return "pointwise";
    }
    return "unknown";
}

struct BoundEvaluation {
    std::string bound_id;
    BoundDirection direction = BoundDirection::lower;
    double value = 0.0;
    std::string reference;
    bool applicable = true;
    std::optional<double> slack;  // filled against a reference w by the harness
};

// The per-row ingredients of the block-row upper bounds.
struct RowBoundTerms {
    double alpha = 0.0;
    double beta = 0.0;
};

namespace detail {

inline BoundEvaluation make_eval(std::string id, BoundDirection dir, double value,
                                 std::string reference, bool applicable = true) {
    BoundEvaluation e;
    e.bound_id = std::move(id);
    e.direction = dir;
    e.value = applicable ? value : 0.0;
    e.reference = std::move(reference);
    e.applicable = applicable;
    return e;
}

inline void sort_by_id(std::vector<BoundEvaluation>& evals) {
    std::stable_sort(evals.begin(), evals.end(),
                     [](const BoundEvaluation& a, const BoundEvaluation& b) {
                         return a.bound_id < b.bound_id;
                     });
}

// Upper end of | x - y | over interval-valued x, y.
inline double abs_diff_upper(double xlo, double xup, double ylo, double yup) {
    return std::max(0.0, std::max(xup - ylo, yup - xlo));
}

// Theorem-3.5-shaped term sqrt(w^2(A) + ||B||/2 (w(A) + ||B||/2)), rounded up.
inline double row_term_up(const CertifiedValue& wa, const CertifiedValue& nb) {
    const double w = wa.upper, m = nb.upper;
    return std::sqrt(std::max(0.0, w * w + 0.5 * m * (w + 0.5 * m)));
}

// Theorem-3.7-shaped term sqrt(2 w^2(A) + (||A*B|| + ||B||^2)/2), rounded up.
inline double row_term2_up(const CertifiedValue& wa, const CertifiedValue& nab,
                           const CertifiedValue& nb) {
    const double w = wa.upper;
    return std::sqrt(std::max(0.0, 2.0 * w * w + 0.5 * (nab.upper + nb.upper * nb.upper)));
}

}  // namespace detail

// Scalar bounds on w(T): the classic sandwich, the two refinement lower
// bounds built from m(T^2) / c(T) / w(T^2), their combined maximum, and the
// Cartesian-decomposition upper bounds.
inline std::vector<BoundEvaluation> scalar_bounds(const ComplexMatrix& t,
                                                  double tol = kRangeTolDefault) {
    detail::require_square(t, "scalar_bounds");
    const bool nonzero = t.max_abs() > 0.0;
    std::vector<BoundEvaluation> out;

    const CertifiedValue nrm = op_norm(t);
    const CertifiedValue rad = spectral_radius(t);
    out.push_back(detail::make_eval("norm_half", BoundDirection::lower, 0.5 * nrm.lower,
                                    "w(T) >= ||T|| / 2"));
    out.push_back(detail::make_eval("spec_rad", BoundDirection::lower, rad.lower,
                                    "w(T) >= r(T)"));
    out.push_back(detail::make_eval("norm", BoundDirection::upper, nrm.upper,
                                    "w(T) <= ||T||"));

    const CartesianPair parts = cartesian_parts(t);
    const CertifiedValue nre = op_norm(parts.re);
    const CertifiedValue nim = op_norm(parts.im);
    out.push_back(detail::make_eval(
        "lem31", BoundDirection::upper,
        std::sqrt(nre.upper * nre.upper + nim.upper * nim.upper),
        "w(T) <= sqrt(||Re T||^2 + ||Im T||^2)"));

    const CertifiedValue mre = crawford_number(parts.re, tol);
    const CertifiedValue mim = crawford_number(parts.im, tol);
    const double t1 = detail::abs_diff_upper(nre.lower * nre.lower, nre.upper * nre.upper,
                                             mim.lower * mim.lower, mim.upper * mim.upper);
    const double t2 = detail::abs_diff_upper(nim.lower * nim.lower, nim.upper * nim.upper,
                                             mre.lower * mre.lower, mre.upper * mre.upper);
    const double quartic = std::max(t1 * t1, t2 * t2) +
                           4.0 * nre.upper * nre.upper * nim.upper * nim.upper;
    out.push_back(detail::make_eval(
        "thm214", BoundDirection::upper, std::pow(quartic, 0.25),
        "w(T)^4 <= max(| ||Re T||^2 - m(Im T)^2 |^2, | ||Im T||^2 - m(Re T)^2 |^2) "
        "+ 4 ||Re T||^2 ||Im T||^2"));

    // The refinement bounds divide by ||T|| and are inapplicable at T = 0.
    double eq2v = 0.0, eq3v = 0.0;
    if (nonzero) {
        const ComplexMatrix t2m = matmul(t, t);
        const CertifiedValue m2 = crawford_number(t2m, tol);
        const CertifiedValue w2 = numerical_radius(t2m, tol);
        const CertifiedValue c = min_norm(t);
        eq2v = 0.5 * nrm.lower + 0.5 * m2.lower / nrm.upper;
        eq3v = 0.5 * (c.lower * c.lower + w2.lower) / nrm.upper;
    }
    out.push_back(detail::make_eval("eq2", BoundDirection::lower, eq2v,
                                    "w(T) >= ||T||/2 + m(T^2) / (2 ||T||)", nonzero));
    out.push_back(detail::make_eval("eq3", BoundDirection::lower, eq3v,
                                    "w(T) >= (c(T)^2 + w(T^2)) / (2 ||T||)", nonzero));
    out.push_back(detail::make_eval(
        "cor210", BoundDirection::lower, std::max(eq2v, eq3v),
        "w(T) >= max(||T||^2 + m(T^2), c(T)^2 + w(T^2)) / (2 ||T||)", nonzero));

    detail::sort_by_id(out);
    return out;
}

// Upper bounds on w(AB) for square A, B of equal dimension.
inline std::vector<BoundEvaluation> product_upper(const ComplexMatrix& a, const ComplexMatrix& b,
                                                  double tol = kRangeTolDefault) {
    detail::require_square(a, "product_upper");
    if (!b.is_square() || b.rows() != a.rows())
        throw std::invalid_argument("product_upper: A and B must be square of equal dimension, got " +
                                    detail::shape_str(a.rows(), a.cols()) + " and " +
                                    detail::shape_str(b.rows(), b.cols()));
    const CertifiedValue wa = numerical_radius(a, tol);
    const CertifiedValue wb = numerical_radius(b, tol);
    const CertifiedValue na = op_norm(a);
    const CertifiedValue nb = op_norm(b);
    const CertifiedValue mba = crawford_number(matmul(adjoint(b), a), tol);
    const CertifiedValue mbastar = crawford_number(matmul(b, adjoint(a)), tol);

    std::vector<BoundEvaluation> out;
    out.push_back(detail::make_eval("cor24a", BoundDirection::upper,
                                    2.0 * wa.upper * nb.upper - mba.lower,
                                    "w(AB) <= 2 w(A) ||B|| - m(B* A)"));
    out.push_back(detail::make_eval("cor24b", BoundDirection::upper,
                                    2.0 * wb.upper * na.upper - mbastar.lower,
                                    "w(AB) <= 2 w(B) ||A|| - m(B A*)"));
    out.push_back(detail::make_eval("prod_baseline", BoundDirection::upper,
                                    2.0 * wa.upper * nb.upper, "w(AB) <= 2 w(A) ||B||"));
    detail::sort_by_id(out);
    return out;
}

// The sandwich inequalities: each returns an LHS/RHS pair; the harness
// checks lhs <= rhs + tol * scale.  LHS values are rounded down and RHS
// values up, so a flagged violation is outside all enclosures.
inline std::vector<BoundEvaluation> sandwich_bounds(const ComplexMatrix& a, const ComplexMatrix& t,
                                                    const ComplexMatrix& b,
                                                    double tol = kRangeTolDefault) {
    detail::require_square(t, "sandwich_bounds");
    if (!a.is_square() || !b.is_square() || a.rows() != t.rows() || b.rows() != t.rows())
        throw std::invalid_argument(
            "sandwich_bounds: A, T, B must be square of one dimension, got " +
            detail::shape_str(a.rows(), a.cols()) + ", " + detail::shape_str(t.rows(), t.cols()) +
            ", " + detail::shape_str(b.rows(), b.cols()));

    const ComplexMatrix p = matmul(adjoint(a), matmul(t, b));  // A* T B
    const ComplexMatrix q = matmul(adjoint(b), matmul(t, a));  // B* T A
    const CertifiedValue wt = numerical_radius(t, tol);
    const CertifiedValue na = op_norm(a);
    const CertifiedValue nb = op_norm(b);
    const double rhs = 2.0 * wt.upper * na.upper * nb.upper;
    const char* rhs_ref = "2 w(T) ||A|| ||B||";

    const CertifiedValue mp = crawford_number(p, tol);
    const CertifiedValue mq = crawford_number(q, tol);
    const CertifiedValue wp = numerical_radius(p, tol);
    const CertifiedValue wq = numerical_radius(q, tol);
    const CertifiedValue wsum = numerical_radius(add(p, q), tol);
    const CertifiedValue wdiff = numerical_radius(sub(p, q), tol);

    std::vector<BoundEvaluation> out;
    auto pair = [&](const char* id, double lhs, const char* lhs_ref) {
        out.push_back(detail::make_eval(std::string(id) + "_lhs", BoundDirection::pointwise, lhs,
                                        lhs_ref));
        out.push_back(detail::make_eval(std::string(id) + "_rhs", BoundDirection::pointwise, rhs,
                                        rhs_ref));
    };
    pair("thm23a", mp.lower + wq.lower, "m(A* T B) + w(B* T A)");
    pair("thm23b", mq.lower + wp.lower, "m(B* T A) + w(A* T B)");
    pair("thm212p", wsum.lower, "w(A* T B + B* T A)");
    pair("thm212m", wdiff.lower, "w(A* T B - B* T A)");
    detail::sort_by_id(out);
    return out;
}

// Pointwise lemma residuals at a unit vector x: value = RHS - LHS, expected
// nonnegative up to rounding.  The caller may pass a precomputed w(T) to
// avoid rescanning per draw.
inline std::vector<BoundEvaluation> pointwise_check(const ComplexMatrix& a, const ComplexMatrix& t,
                                                    const ComplexMatrix& b, const ComplexVector& x,
                                                    double tol = kRangeTolDefault,
                                                    const CertifiedValue* w_t_hint = nullptr) {
    detail::require_square(t, "pointwise_check");
    if (!a.is_square() || !b.is_square() || a.rows() != t.rows() || b.rows() != t.rows())
        throw std::invalid_argument("pointwise_check: A, T, B must be square of one dimension");
    if (x.size() != t.rows())
        throw std::invalid_argument("pointwise_check: vector length " + std::to_string(x.size()) +
                                    " does not match dimension " + std::to_string(t.rows()));
    const double xnorm = x.norm();
    if (std::abs(xnorm - 1.0) > 1e-12)
        throw std::invalid_argument("pointwise_check: x must be a unit vector, got norm " +
                                    std::to_string(xnorm));

    const CertifiedValue wt = w_t_hint ? *w_t_hint : numerical_radius(t, tol);
    const double w_up = wt.upper;

    const ComplexVector tx = matvec(t, x);
    const ComplexVector ttx = matvec(t, tx);
    const double tx_norm = tx.norm();
    const double lhs21 = tx_norm * tx_norm + std::abs(inner(ttx, x));
    const double rhs21 = 2.0 * w_up * tx_norm;

    const ComplexVector ax = matvec(a, x);
    const ComplexVector bx = matvec(b, x);
    const ComplexVector tbx = matvec(t, bx);
    const ComplexVector tax = matvec(t, ax);
    const Complex ip_atb = inner(tbx, ax);  // <A* T B x, x>
    const Complex ip_bta = inner(tax, bx);  // <B* T A x, x>
    const double rhs22 = 2.0 * w_up * ax.norm() * bx.norm();

    std::vector<BoundEvaluation> out;
    out.push_back(detail::make_eval(
        "lem21", BoundDirection::pointwise, rhs21 - lhs21,
        "||Tx||^2 + |<T^2 x, x>| <= 2 w(T) ||Tx|| ||x||"));
    out.push_back(detail::make_eval(
        "lem22", BoundDirection::pointwise, rhs22 - (std::abs(ip_atb) + std::abs(ip_bta)),
        "|<A* T B x, x>| + |<B* T A x, x>| <= 2 w(T) ||Ax|| ||Bx||"));
    out.push_back(detail::make_eval(
        "lem211p", BoundDirection::pointwise, rhs22 - std::abs(ip_atb + ip_bta),
        "|<(A* T B + B* T A) x, x>| <= 2 w(T) ||Ax|| ||Bx||"));
    out.push_back(detail::make_eval(
        "lem211m", BoundDirection::pointwise, rhs22 - std::abs(ip_atb - ip_bta),
        "|<(A* T B - B* T A) x, x>| <= 2 w(T) ||Ax|| ||Bx||"));
    detail::sort_by_id(out);
    return out;
}

// Lower bounds on W0 := w([[0, A], [B, 0]]).
inline std::vector<BoundEvaluation> offdiag_lower(const ComplexMatrix& a, const ComplexMatrix& b,
                                                  double tol = kRangeTolDefault) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
        throw std::invalid_argument("offdiag_lower: A and B must be square of equal dimension, got " +
                                    detail::shape_str(a.rows(), a.cols()) + " and " +
                                    detail::shape_str(b.rows(), b.cols()));
    const bool a_nonzero = a.max_abs() > 0.0;
    const bool b_nonzero = b.max_abs() > 0.0;

    const CertifiedValue na = op_norm(a);
    const CertifiedValue nb = op_norm(b);
    std::vector<BoundEvaluation> out;

    double v1 = 0.0, v2 = 0.0;
    if (a_nonzero) {
        const ComplexMatrix ba = matmul(b, a);
        const CertifiedValue mba = crawford_number(ba, tol);
        const CertifiedValue wba = numerical_radius(ba, tol);
        const CertifiedValue ca = min_norm(a);
        v1 = 0.5 * na.lower + 0.5 * mba.lower / na.upper;
        v2 = 0.5 * (ca.lower * ca.lower + wba.lower) / na.upper;
    }
    out.push_back(detail::make_eval("offdiag_i", BoundDirection::lower, v1,
                                    "2 w([[0,A],[B,0]]) ||A|| >= ||A||^2 + m(BA)", a_nonzero));
    out.push_back(detail::make_eval("offdiag_ii", BoundDirection::lower, v2,
                                    "2 w([[0,A],[B,0]]) ||A|| >= c(A)^2 + w(BA)", a_nonzero));

    double v3 = 0.0, v4 = 0.0;
    if (b_nonzero) {
        const ComplexMatrix ab = matmul(a, b);
        const CertifiedValue mab = crawford_number(ab, tol);
        const CertifiedValue wab = numerical_radius(ab, tol);
        const CertifiedValue cb = min_norm(b);
        v3 = 0.5 * nb.lower + 0.5 * mab.lower / nb.upper;
        v4 = 0.5 * (cb.lower * cb.lower + wab.lower) / nb.upper;
    }
    out.push_back(detail::make_eval("offdiag_iii", BoundDirection::lower, v3,
                                    "2 w([[0,A],[B,0]]) ||B|| >= ||B||^2 + m(AB)", b_nonzero));
    out.push_back(detail::make_eval("offdiag_iv", BoundDirection::lower, v4,
                                    "2 w([[0,A],[B,0]]) ||B|| >= c(B)^2 + w(AB)", b_nonzero));

    const CertifiedValue wplus = numerical_radius(add(a, b), tol);
    const CertifiedValue wminus = numerical_radius(sub(a, b), tol);
    out.push_back(detail::make_eval("thm45", BoundDirection::lower,
                                    0.5 * std::max(wplus.lower, wminus.lower),
                                    "w([[0,A],[B,0]]) >= max(w(A+B), w(A-B)) / 2"));
    detail::sort_by_id(out);
    return out;
}

// Bounds on R := w([[A, B], [0, 0]]) for square A and row-conformable B.
inline std::vector<BoundEvaluation> row_bounds(const ComplexMatrix& a, const ComplexMatrix& b,
                                               double tol = kRangeTolDefault) {
    detail::require_square(a, "row_bounds");
    if (b.rows() != a.rows())
        throw std::invalid_argument("row_bounds: B must share A's row dimension, got " +
                                    detail::shape_str(b.rows(), b.cols()) + " against " +
                                    detail::shape_str(a.rows(), a.cols()));
    const CertifiedValue wa = numerical_radius(a, tol);
    const CertifiedValue nb = op_norm(b);
    const CertifiedValue nab = op_norm(matmul(adjoint(a), b));

    std::vector<BoundEvaluation> out;
    out.push_back(detail::make_eval(
        "thm35", BoundDirection::upper, detail::row_term_up(wa, nb),
        "w([[A,B],[0,0]]) <= sqrt(w(A)^2 + ||B||/2 (w(A) + ||B||/2))"));
    out.push_back(detail::make_eval(
        "thm37", BoundDirection::upper, detail::row_term2_up(wa, nab, nb),
        "w([[A,B],[0,0]]) <= sqrt(2 w(A)^2 + (||A* B|| + ||B||^2) / 2)"));

    const bool same_square = b.is_square() && b.rows() == a.rows();
    double v44 = 0.0;
    if (same_square) {
        const CertifiedValue wplus = numerical_radius(add(a, b), tol);
        const CertifiedValue wminus = numerical_radius(sub(a, b), tol);
        v44 = 0.5 * std::max(wplus.lower, wminus.lower);
    }
    out.push_back(detail::make_eval("thm44", BoundDirection::lower, v44,
                                    "w([[A,B],[0,0]]) >= max(w(A+B), w(A-B)) / 2",
                                    same_square));
    detail::sort_by_id(out);
    return out;
}

struct FirstRowBound {
    BoundEvaluation eval;
    RowBoundTerms terms;
};

// Upper bound on the numerical radius of the first-row operator matrix
// [[A_1, ..., A_n], [0, ...], ...]: (1/2) sqrt(alpha^2 + beta^2).
inline FirstRowBound firstrow_upper(const std::vector<ComplexMatrix>& row) {
    if (row.empty()) throw std::invalid_argument("firstrow_upper: at least one block required");
    if (!row.front().is_square())
        throw std::invalid_argument("firstrow_upper: the leading block must be square, got " +
                                    detail::shape_str(row.front().rows(), row.front().cols()));
    for (std::size_t j = 1; j < row.size(); ++j)
        if (row[j].rows() != row.front().rows())
            throw std::invalid_argument("firstrow_upper: block " + std::to_string(j) +
                                        " must share the leading block's row dimension");

    const CartesianPair parts = cartesian_parts(row.front());
    const double nre = op_norm(parts.re).upper;
    const double nim = op_norm(parts.im).upper;
    double tail = 0.0;
    for (std::size_t j = 1; j < row.size(); ++j) {
        const double nj = op_norm(row[j]).upper;
        tail += nj * nj;
    }
    FirstRowBound out;
    out.terms.alpha = nre + std::sqrt(nre * nre + tail);
    out.terms.beta = nim + std::sqrt(nim * nim + tail);
    out.eval = detail::make_eval(
        "firstrow", BoundDirection::upper,
        0.5 * std::hypot(out.terms.alpha, out.terms.beta),
        "w(first-row block matrix) <= sqrt(alpha^2 + beta^2) / 2, alpha = ||Re A_11|| + "
        "sqrt(||Re A_11||^2 + sum_j ||A_1j||^2), beta likewise with Im");
    return out;
}

struct GridBound {
    BoundEvaluation eval;
    std::vector<RowBoundTerms> rows;
};

// Upper bound on w(assemble(spec)) for a block grid with square diagonal
// blocks: sum_k (1/2) sqrt(alpha_k^2 + beta_k^2).
inline GridBound grid_upper(const BlockSpec& spec) {
    const std::size_t n = spec.order();
    if (n == 0) throw std::invalid_argument("grid_upper: default-constructed BlockSpec");
    for (std::size_t k = 0; k < n; ++k)
        if (spec.row_dims()[k] != spec.col_dims()[k])
            throw std::invalid_argument("grid_upper: diagonal block " + std::to_string(k) +
                                        " must be square, partition gives " +
                                        detail::shape_str(spec.row_dims()[k], spec.col_dims()[k]));
    GridBound out;
    out.rows.resize(n);
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double nre = 0.0, nim = 0.0;
        if (spec.block(k, k) && spec.block(k, k)->rows() > 0) {
            const CartesianPair parts = cartesian_parts(*spec.block(k, k));
            nre = op_norm(parts.re).upper;
            nim = op_norm(parts.im).upper;
        }
        double tail = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == k || !spec.block(k, j)) continue;
            const double nj = op_norm(*spec.block(k, j)).upper;
            tail += nj * nj;
        }
        out.rows[k].alpha = nre + std::sqrt(nre * nre + tail);
        out.rows[k].beta = nim + std::sqrt(nim * nim + tail);
        total += 0.5 * std::hypot(out.rows[k].alpha, out.rows[k].beta);
    }
    out.eval = detail::make_eval(
        "grid", BoundDirection::upper, total,
        "w(block matrix) <= sum_k sqrt(alpha_k^2 + beta_k^2) / 2, alpha_k = ||Re A_kk|| + "
        "sqrt(||Re A_kk||^2 + sum_{j != k} ||A_kj||^2), beta_k likewise with Im");
    return out;
}

// Bounds on M := w([[A, B], [C, D]]) for conformable blocks.
inline std::vector<BoundEvaluation> two_by_two_bounds(const ComplexMatrix& a,
                                                      const ComplexMatrix& b,
                                                      const ComplexMatrix& c,
                                                      const ComplexMatrix& d,
                                                      double tol = kRangeTolDefault) {
    if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() ||
        b.cols() != d.cols())
        throw std::invalid_argument(
            "two_by_two_bounds: blocks do not tile a matrix, got A " +
            detail::shape_str(a.rows(), a.cols()) + ", B " + detail::shape_str(b.rows(), b.cols()) +
            ", C " + detail::shape_str(c.rows(), c.cols()) + ", D " +
            detail::shape_str(d.rows(), d.cols()));

    const bool square_partition = a.is_square() && d.is_square();
    std::vector<BoundEvaluation> out;

    double v36 = 0.0, v38 = 0.0;
    if (square_partition) {
        const CertifiedValue wa = numerical_radius(a, tol);
        const CertifiedValue wd = numerical_radius(d, tol);
        const CertifiedValue nb = op_norm(b);
        const CertifiedValue nc = op_norm(c);
        v36 = detail::row_term_up(wa, nb) + detail::row_term_up(wd, nc);
        v38 = detail::row_term2_up(wa, op_norm(matmul(adjoint(a), b)), nb) +
              detail::row_term2_up(wd, op_norm(matmul(adjoint(d), c)), nc);
    }
    out.push_back(detail::make_eval(
        "cor36", BoundDirection::upper, v36,
        "w([[A,B],[C,D]]) <= sqrt(w(A)^2 + ||B||/2 (w(A) + ||B||/2)) + "
        "sqrt(w(D)^2 + ||C||/2 (w(D) + ||C||/2))",
        square_partition));
    out.push_back(detail::make_eval(
        "cor38", BoundDirection::upper, v38,
        "w([[A,B],[C,D]]) <= sqrt(2 w(A)^2 + (||A* B|| + ||B||^2)/2) + "
        "sqrt(2 w(D)^2 + (||D* C|| + ||C||^2)/2)",
        square_partition));

    const bool all_equal_square =
        square_partition && b.is_square() && c.is_square() && a.rows() == d.rows() &&
        b.rows() == a.rows() && c.rows() == a.rows();
    double v42 = 0.0;
    if (all_equal_square) {
        const CertifiedValue wa = numerical_radius(a, tol);
        const CertifiedValue wd = numerical_radius(d, tol);
        const ComplexMatrix bc = matmul(b, c);
        const ComplexMatrix cb = matmul(c, b);
        const CertifiedValue wsum = numerical_radius(add(bc, cb), tol);
        const CertifiedValue wdiff = numerical_radius(sub(bc, cb), tol);
        v42 = std::max(std::max(wa.lower, wd.lower),
                       std::max(std::sqrt(std::max(0.0, 0.5 * wsum.lower)),
                                std::sqrt(std::max(0.0, 0.5 * wdiff.lower))));
    }
    out.push_back(detail::make_eval(
        "cor42", BoundDirection::lower, v42,
        "w([[A,B],[C,D]]) >= max(w(A), w(D), sqrt(w(BC+CB)/2), sqrt(w(BC-CB)/2))",
        all_equal_square));

    double vpd = 0.0, vpo = 0.0;
    if (square_partition) {
        vpd = numerical_radius(direct_sum(a, d), tol).lower;
        BlockSpec off({a.rows(), d.rows()}, {a.rows(), d.rows()});
        off.set(0, 1, b);
        off.set(1, 0, c);
        vpo = numerical_radius(assemble(off), tol).lower;
    }
    out.push_back(detail::make_eval("pinch_diag", BoundDirection::lower, vpd,
                                    "w([[A,B],[C,D]]) >= w([[A,0],[0,D]])", square_partition));
    out.push_back(detail::make_eval("pinch_off", BoundDirection::lower, vpo,
                                    "w([[A,B],[C,D]]) >= w([[0,B],[C,0]])", square_partition));
    detail::sort_by_id(out);
    return out;
}

// Lower bound on the numerical radius of the block anti-diagonal matrix
// built from square blocks of one dimension.
inline BoundEvaluation antidiag_lower(const std::vector<ComplexMatrix>& blocks,
                                      double tol = kRangeTolDefault) {
    if (blocks.empty()) throw std::invalid_argument("antidiag_lower: at least one block required");
    const std::size_t dim = blocks.front().rows();
    for (const ComplexMatrix& blk : blocks)
        if (!blk.is_square() || blk.rows() != dim)
            throw std::invalid_argument(
                "antidiag_lower: blocks must be square of equal dimension, got " +
                detail::shape_str(blk.rows(), blk.cols()));
    const std::size_t n = blocks.size();
    double best = 0.0;
    for (std::size_t i = 0; i + i + 1 <= n; ++i) {
        const std::size_t j = n - 1 - i;
        const ComplexMatrix pq = matmul(blocks[i], blocks[j]);
        const ComplexMatrix qp = matmul(blocks[j], blocks[i]);
        const CertifiedValue wsum = numerical_radius(add(pq, qp), tol);
        const CertifiedValue wdiff = numerical_radius(sub(pq, qp), tol);
        best = std::max(best, std::sqrt(std::max(0.0, wsum.lower)));
        best = std::max(best, std::sqrt(std::max(0.0, wdiff.lower)));
    }
    return detail::make_eval(
        "antidiag", BoundDirection::lower, best / std::sqrt(2.0),
        "w(anti-diagonal blocks A_1..A_n) >= max_i max(sqrt(w(A_i A_{n-i+1} + A_{n-i+1} A_i)), "
        "sqrt(w(A_i A_{n-i+1} - A_{n-i+1} A_i))) / sqrt(2)");
}

struct SymBlockEquality {
    CertifiedValue lhs;  // w([[A,B],[B,A]])
    CertifiedValue rhs;  // max(w(A+B), w(A-B))
};

// The symmetric two-block identity w([[A,B],[B,A]]) = max(w(A+B), w(A-B)).
inline SymBlockEquality sym_block_equality(const ComplexMatrix& a, const ComplexMatrix& b,
                                           double tol = kRangeTolDefault) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
        throw std::invalid_argument(
            "sym_block_equality: A and B must be square of equal dimension, got " +
            detail::shape_str(a.rows(), a.cols()) + " and " + detail::shape_str(b.rows(), b.cols()));
    SymBlockEquality out;
    const std::size_t dim = a.rows();
    BlockSpec spec({dim, dim}, {dim, dim});
    spec.set(0, 0, a);
    spec.set(0, 1, b);
    spec.set(1, 0, b);
    spec.set(1, 1, a);
    out.lhs = numerical_radius(assemble(spec), tol);
    const CertifiedValue wp = numerical_radius(add(a, b), tol);
    const CertifiedValue wm = numerical_radius(sub(a, b), tol);
    out.rhs.value = std::max(wp.value, wm.value);
    out.rhs.lower = std::max(wp.lower, wm.lower);
    out.rhs.upper = std::max(wp.upper, wm.upper);
    return out;
}

}  // namespace numrange
