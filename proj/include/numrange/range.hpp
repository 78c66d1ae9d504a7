#pragma once

// Certified numerical-range analysis.
//
// Everything here rides on one fact: f(theta) = lambda_max(Re(e^{i theta} T))
// is the support function of W(T) in the rotated direction, so
//
//   w(T)            = max_theta f(theta)
//   m(T)            = max(0, max_theta lambda_min(Re(e^{i theta} T)))
//   dist(z to W(T)) = max_theta lambda_min(Re(e^{i theta} (zI - T)))   (z outside)
//
// Both extremal problems are solved by branch-and-bound over the circle,
// starting from 64 uniform intervals and splitting the interval with the
// largest certified upper bound until the enclosure is tight enough or the
// eigensolve cap is reached (then the honest, wider enclosure is returned).
//
// Certificates per interval [a, b]:
//  * support max: the sinusoid through the padded endpoint values dominates f
//    on [a, b] (support functions are trigonometrically subadditive), so its
//    amplitude bounds the interval; the Lipschitz bound |f' | <= ||T|| is
//    taken as well and the smaller of the two wins.
//  * lambda_min max: Lipschitz bound, plus inner-point bounds: each eigensolve
//    yields a Rayleigh point z = <Tx, x> in W(T), and
//    g(theta) = min_{z' in W} Re(e^{i theta} z') <= Re(e^{i theta} z).
//
// Every evaluated lambda is padded by the eigensolver's error bound, so lower
// and upper always bracket the true quantity.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include "certified.hpp"
#include "eigen.hpp"
#include "matrix.hpp"

namespace numrange {

inline constexpr double kRangeTolDefault = 1e-10;
inline constexpr long kScanEvalCap = 1000000;

enum class Membership { inside, outside, uncertain };

enum class RangeShape { full, segment, point };

struct RangeBoundarySample {
    double theta = 0.0;
    Complex point{0.0, 0.0};  // Rayleigh point of the top eigenvector, in W(T)
    double support = 0.0;     // lambda_max(Re(e^{i theta} T))
};

struct RangeBoundary {
    std::vector<RangeBoundarySample> samples;
    RangeShape shape = RangeShape::full;
    Complex anchor_a{0.0, 0.0};  // segment endpoints, or the single point
    Complex anchor_b{0.0, 0.0};
};

namespace detail {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;

// Re(e^{i theta} T), exactly Hermitian by mirrored construction.
inline void rotated_re_part(const ComplexMatrix& t, double theta, ComplexMatrix& h) {
    const std::size_t n = t.rows();
    const Complex u = std::polar(1.0, theta);
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = Complex{(u * t(i, i)).real(), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex v = 0.5 * (u * t(i, j) + std::conj(u * t(j, i)));
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
}

// Im(e^{i theta} T) = Re(e^{i (theta - pi/2)} T), built from its own formula
// (T - T*)/(2i) so the two scan routes share no arithmetic.
inline void rotated_im_part(const ComplexMatrix& t, double theta, ComplexMatrix& h) {
    const std::size_t n = t.rows();
    const Complex u = std::polar(1.0, theta);
    const Complex mhalf_i{0.0, -0.5};
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = Complex{(u * t(i, i)).imag(), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex v = mhalf_i * (u * t(i, j) - std::conj(u * t(j, i)));
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
}

inline bool angle_within(double psi, double a, double delta) {
    double off = std::fmod(psi - a, kTwoPi);
    if (off < 0.0) off += kTwoPi;
    return off <= delta;
}

// Upper bound for a support function on [a, b] from padded endpoint values.
inline double support_interval_ub(double a, double b, double fa, double fb, double lip) {
    const double delta = b - a;
    const double lip_ub = 0.5 * (fa + fb + lip * delta);
    double geo = lip_ub;
    const double sd = std::sin(delta);
    if (sd > 1e-12 && delta < 3.0) {
        const double p = (fa * std::sin(b) - fb * std::sin(a)) / sd;
        const double q = (fb * std::cos(a) - fa * std::cos(b)) / sd;
        const double amp = std::hypot(p, q);
        const double psi = std::atan2(q, p);
        geo = angle_within(psi, a, delta) ? amp * (1.0 + 1e-14) : std::max(fa, fb);
    }
    return std::max(std::min(geo, lip_ub), std::max(fa, fb));
}

// max_{theta in [a,b]} Re(e^{i theta} z), closed form.
inline double ray_interval_max(const Complex& z, double a, double b) {
    const double az = std::abs(z);
    if (az == 0.0) return 0.0;
    if (angle_within(-std::arg(z), a, b - a)) return az;
    const double ra = (std::polar(1.0, a) * z).real();
    const double rb = (std::polar(1.0, b) * z).real();
    return std::max(ra, rb);
}

struct ScanPoint {
    double theta;
    double val;   // raw eigenvalue
    double err;   // eigensolver error bound at this theta
};

struct ScanInterval {
    double a, b;
    double fap, fbp;  // padded endpoint values (val + err)
    double ub;
    Complex za, zb;   // mode B only: endpoint Rayleigh points
};

struct IntervalOrder {
    bool operator()(const ScanInterval& x, const ScanInterval& y) const {
        if (x.ub != y.ub) return x.ub < y.ub;
        return x.a > y.a;  // prefer the smaller angle on ties
    }
};

struct ScanOutcome {
    double lb = 0.0;          // certified lower bound on the max
    double ub = 0.0;          // certified upper bound on the max
    double theta_star = 0.0;  // smallest evaluated theta attaining lb
    long evals = 0;
    bool hit_cap = false;
};

// Branch-and-bound maximization of lambda_max over the rotated-part family.
template <class BuildFn>
ScanOutcome scan_support_max(BuildFn&& build, std::size_t n, double lip, double tolabs,
                             long eval_cap = kScanEvalCap) {
    ComplexMatrix h(n, n);
    std::vector<ScanPoint> pts;
    pts.reserve(256);
    long evals = 0;
    auto eval = [&](double theta) -> std::size_t {
        build(theta, h);
        HermitianEigensystem es = eigensystem_hermitian_prepared(h, false);
        ++evals;
        pts.push_back(ScanPoint{theta, es.values.back(), es.error_bound});
        return pts.size() - 1;
    };

    const int init = 64;
    std::vector<std::size_t> ring(init + 1);
    for (int k = 0; k < init; ++k) ring[k] = eval(kTwoPi * k / init);
    ring[init] = ring[0];

    double lb = -std::numeric_limits<double>::infinity();
    for (const auto& p : pts) lb = std::max(lb, p.val - p.err);

    std::priority_queue<ScanInterval, std::vector<ScanInterval>, IntervalOrder> q;
    auto push = [&](double a, double b, const ScanPoint& pa, const ScanPoint& pb) {
        ScanInterval iv;
        iv.a = a;
        iv.b = b;
        iv.fap = pa.val + pa.err;
        iv.fbp = pb.val + pb.err;
        iv.ub = support_interval_ub(a, b, iv.fap, iv.fbp, lip);
        if (iv.ub > lb) q.push(iv);
    };
    for (int k = 0; k < init; ++k)
        push(kTwoPi * k / init, kTwoPi * (k + 1) / init, pts[ring[k]], pts[ring[k + 1]]);

    ScanOutcome out;
    double ub = lb;
    while (!q.empty()) {
        const ScanInterval top = q.top();
        if (top.ub <= lb) {
            ub = lb;
            break;
        }
        ub = top.ub;
        if (ub - lb <= tolabs) break;
        if (evals >= eval_cap) {
            out.hit_cap = true;
            break;
        }
        q.pop();
        const double mid = 0.5 * (top.a + top.b);
        const std::size_t im = eval(mid);
        lb = std::max(lb, pts[im].val - pts[im].err);
        const ScanPoint pm = pts[im];
        ScanPoint pa{top.a, top.fap, 0.0};  // already padded
        ScanPoint pb{top.b, top.fbp, 0.0};
        push(top.a, mid, pa, pm);
        push(mid, top.b, pm, pb);
    }
    if (q.empty()) ub = lb;

    out.lb = lb;
    out.ub = std::max(ub, lb);
    out.evals = evals;
    double ts = std::numeric_limits<double>::infinity();
    for (const auto& p : pts)
        if (p.val - p.err >= lb && p.theta < ts) ts = p.theta;
    out.theta_star = std::isfinite(ts) ? ts : 0.0;
    return out;
}

struct ScanMinOutcome {
    double lb = 0.0;
    double ub = 0.0;
    double theta_star = 0.0;
    long evals = 0;
    bool hit_cap = false;
};

// Branch-and-bound maximization of g(theta) = lambda_min(Re(e^{i theta} T)).
// lb_floor clamps the effective lower bound (crawford passes 0); stop_ub_below
// and stop_lb_above are early decision exits for membership queries.
inline ScanMinOutcome scan_lambda_min_max(const ComplexMatrix& t, double lip, double tolabs,
                                          double lb_floor, double stop_ub_below,
                                          double stop_lb_above, long eval_cap = kScanEvalCap) {
    const std::size_t n = t.rows();
    const double zerr = 16.0 * static_cast<double>(n) * kEps * t.frobenius();

    ComplexMatrix h(n, n);
    std::vector<ScanPoint> pts;
    std::vector<Complex> rays;
    pts.reserve(256);
    rays.reserve(256);
    long evals = 0;
    Complex z_small{0.0, 0.0};
    double z_small_abs = std::numeric_limits<double>::infinity();

    auto eval = [&](double theta) -> std::size_t {
        rotated_re_part(t, theta, h);
        HermitianEigensystem es = eigensystem_hermitian_prepared(h, true);
        ++evals;
        ComplexVector x(n);
        for (std::size_t r = 0; r < n; ++r) x[r] = es.vectors(r, 0);
        const double xn = x.norm();
        Complex z{0.0, 0.0};
        if (xn > 0.0) {
            for (std::size_t r = 0; r < n; ++r) x[r] /= xn;
            z = inner(matvec(t, x), x);
        }
        if (std::abs(z) < z_small_abs) {
            z_small_abs = std::abs(z);
            z_small = z;
        }
        pts.push_back(ScanPoint{theta, es.values.front(), es.error_bound});
        rays.push_back(z);
        return pts.size() - 1;
    };

    const int init = 64;
    std::vector<std::size_t> ring(init + 1);
    for (int k = 0; k < init; ++k) ring[k] = eval(kTwoPi * k / init);
    ring[init] = ring[0];

    double lb = -std::numeric_limits<double>::infinity();
    for (const auto& p : pts) lb = std::max(lb, p.val - p.err);

    auto interval_ub = [&](double a, double b, double gap, double gbp, const Complex& za,
                           const Complex& zb) {
        double ub = 0.5 * (gap + gbp + lip * (b - a));
        ub = std::min(ub, ray_interval_max(za, a, b) + zerr);
        ub = std::min(ub, ray_interval_max(zb, a, b) + zerr);
        if (z_small_abs < std::numeric_limits<double>::infinity())
            ub = std::min(ub, ray_interval_max(z_small, a, b) + zerr);
        return std::max(ub, std::max(gap, gbp));
    };

    std::priority_queue<ScanInterval, std::vector<ScanInterval>, IntervalOrder> q;
    auto push = [&](double a, double b, std::size_t ia, double fap_override, bool use_override_a,
                    std::size_t ib, double fbp_override, bool use_override_b, const Complex& za,
                    const Complex& zb) {
        ScanInterval iv;
        iv.a = a;
        iv.b = b;
        iv.fap = use_override_a ? fap_override : pts[ia].val + pts[ia].err;
        iv.fbp = use_override_b ? fbp_override : pts[ib].val + pts[ib].err;
        iv.za = za;
        iv.zb = zb;
        iv.ub = interval_ub(a, b, iv.fap, iv.fbp, za, zb);
        if (iv.ub > std::max(lb, lb_floor)) q.push(iv);
    };
    for (int k = 0; k < init; ++k)
        push(kTwoPi * k / init, kTwoPi * (k + 1) / init, ring[k], 0, false, ring[k + 1], 0, false,
             rays[ring[k]], rays[ring[k + 1]]);

    ScanMinOutcome out;
    double ub = std::max(lb, lb_floor);
    while (!q.empty()) {
        const ScanInterval top = q.top();
        const double eff_lb = std::max(lb, lb_floor);
        if (top.ub <= eff_lb) {
            ub = eff_lb;
            break;
        }
        ub = top.ub;
        if (ub <= stop_ub_below || eff_lb >= stop_lb_above || ub - eff_lb <= tolabs) break;
        if (evals >= eval_cap) {
            out.hit_cap = true;
            break;
        }
        q.pop();
        const double mid = 0.5 * (top.a + top.b);
        const std::size_t im = eval(mid);
        lb = std::max(lb, pts[im].val - pts[im].err);
        push(top.a, mid, 0, top.fap, true, im, 0, false, top.za, rays[im]);
        push(mid, top.b, im, 0, false, 0, top.fbp, true, rays[im], top.zb);
    }
    if (q.empty()) ub = std::max(lb, lb_floor);

    out.lb = lb;
    out.ub = std::max(ub, lb);
    out.evals = evals;
    double ts = std::numeric_limits<double>::infinity();
    for (const auto& p : pts)
        if (p.val - p.err >= lb && p.theta < ts) ts = p.theta;
    out.theta_star = std::isfinite(ts) ? ts : 0.0;
    return out;
}

inline void require_square(const ComplexMatrix& t, const char* who) {
    if (!t.is_square())
        throw std::invalid_argument(std::string(who) + ": square matrix required, got " +
                                    shape_str(t.rows(), t.cols()));
}

inline ComplexVector normalized_column(const ComplexMatrix& m, std::size_t col) {
    ComplexVector x(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) x[r] = m(r, col);
    const double nrm = x.norm();
    if (nrm > 0.0)
        for (std::size_t r = 0; r < m.rows(); ++r) x[r] /= nrm;
    return x;
}

}  // namespace detail

// Numerical radius w(T) with a certified enclosure of absolute width
// <= tol * ||T|| (unless the eigensolve cap widens it).  theta_star is the
// smallest angle in [0, 2pi) attaining the maximum within the enclosure, and
// witness is a unit vector whose Rayleigh modulus |<Tx,x>| lies in
// [lower, upper].
inline CertifiedValue numerical_radius(const ComplexMatrix& t, double tol = kRangeTolDefault) {
    detail::require_square(t, "numerical_radius");
    if (!(tol > 0.0)) throw std::invalid_argument("numerical_radius: tol must be > 0");
    const std::size_t n = t.rows();
    if (n == 0) return exact_value(0.0);

    const CertifiedValue nrm = op_norm(t);
    if (nrm.value == 0.0) {
        CertifiedValue cv = exact_value(0.0);
        cv.theta_star = 0.0;
        return cv;
    }

    CertifiedValue cv;
    if (is_exactly_hermitian(t)) {
        HermitianEigensystem es = eigensystem_hermitian_prepared(t, true);
        const double lmin = es.values.front(), lmax = es.values.back();
        const bool at_zero = std::abs(lmax) >= std::abs(lmin);
        const double w = std::max(std::abs(lmax), std::abs(lmin));
        cv.value = w;
        cv.lower = std::max(0.0, w - es.error_bound);
        cv.upper = w + es.error_bound;
        cv.theta_star = at_zero ? 0.0 : std::numbers::pi_v<double>;
        cv.witness = detail::normalized_column(es.vectors, at_zero ? n - 1 : 0);
    } else {
        const double tolabs = tol * nrm.value;
        detail::ScanOutcome sc = detail::scan_support_max(
            [&](double theta, ComplexMatrix& h) { detail::rotated_re_part(t, theta, h); }, n,
            nrm.upper, tolabs);
        cv.value = sc.lb;
        cv.lower = sc.lb;
        cv.upper = sc.ub;
        cv.theta_star = sc.theta_star;
        ComplexMatrix h(n, n);
        detail::rotated_re_part(t, sc.theta_star, h);
        HermitianEigensystem es = eigensystem_hermitian_prepared(h, true);
        cv.witness = detail::normalized_column(es.vectors, n - 1);
    }
    if (cv.witness) {
        const double datum = std::abs(inner(matvec(t, *cv.witness), *cv.witness));
        cv.lower = std::min(cv.lower, datum);
        cv.upper = std::max(cv.upper, datum);
    }
    cv.lower = std::max(cv.lower, 0.0);
    return cv;
}

// Independent route to w(T) through the Im-part form of the circle scan,
// kept public as a consistency oracle.
inline CertifiedValue numerical_radius_im_scan(const ComplexMatrix& t,
                                               double tol = kRangeTolDefault) {
    detail::require_square(t, "numerical_radius_im_scan");
    if (!(tol > 0.0)) throw std::invalid_argument("numerical_radius_im_scan: tol must be > 0");
    const std::size_t n = t.rows();
    if (n == 0) return exact_value(0.0);
    const CertifiedValue nrm = op_norm(t);
    if (nrm.value == 0.0) return exact_value(0.0);
    detail::ScanOutcome sc = detail::scan_support_max(
        [&](double theta, ComplexMatrix& h) { detail::rotated_im_part(t, theta, h); }, n, nrm.upper,
        tol * nrm.value);
    CertifiedValue cv;
    cv.value = sc.lb;
    cv.lower = std::max(0.0, sc.lb);
    cv.upper = sc.ub;
    cv.theta_star = sc.theta_star;
    return cv;
}

// Crawford number m(T) = min { |z| : z in W(T) }.  Exact zero (with a
// zero-width enclosure) once the scan proves max_theta lambda_min <= 0.
inline CertifiedValue crawford_number(const ComplexMatrix& t, double tol = kRangeTolDefault) {
    detail::require_square(t, "crawford_number");
    if (!(tol > 0.0)) throw std::invalid_argument("crawford_number: tol must be > 0");
    const std::size_t n = t.rows();
    if (n == 0) return exact_value(0.0);

    const CertifiedValue nrm = op_norm(t);
    if (nrm.value == 0.0) return exact_value(0.0);

    if (is_exactly_hermitian(t)) {
        HermitianEigensystem es = eigensystem_hermitian_prepared(t, true);
        const double lmin = es.values.front(), lmax = es.values.back();
        const double g = std::max(lmin, -lmax);  // signed distance to 0 along the axis
        CertifiedValue cv;
        if (g + es.error_bound <= 0.0) return exact_value(0.0);
        cv.value = std::max(0.0, g);
        cv.lower = std::max(0.0, g - es.error_bound);
        cv.upper = std::max(0.0, g + es.error_bound);
        if (g > 0.0) {
            const bool from_min = lmin >= -lmax;
            cv.theta_star = from_min ? 0.0 : std::numbers::pi_v<double>;
            cv.witness = detail::normalized_column(es.vectors, from_min ? 0 : n - 1);
        }
        return cv;
    }

    const double tolabs = tol * nrm.value;
    detail::ScanMinOutcome sc =
        detail::scan_lambda_min_max(t, nrm.upper, tolabs, /*lb_floor=*/0.0,
                                    /*stop_ub_below=*/0.0,
                                    /*stop_lb_above=*/std::numeric_limits<double>::infinity());
    if (sc.ub <= 0.0) return exact_value(0.0);
    CertifiedValue cv;
    cv.value = std::max(0.0, sc.lb);
    cv.lower = std::max(0.0, sc.lb);
    cv.upper = std::max(0.0, sc.ub);
    if (sc.lb > 0.0) {
        cv.theta_star = sc.theta_star;
        ComplexMatrix h(n, n);
        detail::rotated_re_part(t, sc.theta_star, h);
        HermitianEigensystem es = eigensystem_hermitian_prepared(h, true);
        ComplexVector x = detail::normalized_column(es.vectors, 0);
        const double datum = (std::polar(1.0, sc.theta_star) * inner(matvec(t, x), x)).real();
        cv.witness = std::move(x);
        cv.lower = std::min(cv.lower, std::max(0.0, datum));
        cv.upper = std::max(cv.upper, datum);
    }
    return cv;
}

// Membership of z in W(T) with margin tol >= 0: inside means the whole
// tol-disk around z is certified inside, outside means z is certified at
// distance >= tol, anything else is uncertain.
inline Membership in_range(const ComplexMatrix& t, const Complex& z, double tol) {
    detail::require_square(t, "in_range");
    if (tol < 0.0) throw std::invalid_argument("in_range: tol must be >= 0");
    const std::size_t n = t.rows();
    if (n == 0) return Membership::uncertain;

    // mu = min_theta lambda_max(Re(e^{i theta}(T - zI))) is the signed margin:
    // mu = dist(z, boundary) inside, -dist(z, W) outside.  Equivalently
    // -mu = max_theta lambda_min(Re(e^{i theta}(zI - T))), which the lambda_min
    // scan maximizes with early decision exits.
    ComplexMatrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s(i, j) = (i == j ? z - t(i, j) : -t(i, j));

    const double scale = std::max(op_norm(t).upper, std::abs(z));
    const double tolabs = std::max(0.25 * tol, 1e-12 * std::max(scale, 1e-300));
    detail::ScanMinOutcome sc = detail::scan_lambda_min_max(
        s, op_norm(s).upper, tolabs, -std::numeric_limits<double>::infinity(),
        /*stop_ub_below=*/-tol, /*stop_lb_above=*/tol);
    if (sc.ub <= -tol) return Membership::inside;
    if (sc.lb >= tol) return Membership::outside;
    return Membership::uncertain;
}

// Samples the boundary of W(T) at n_samples uniform support directions.
// Degenerate ranges (segment or point) are flagged, never an error.
inline RangeBoundary range_boundary(const ComplexMatrix& t, std::size_t n_samples = 256) {
    detail::require_square(t, "range_boundary");
    if (n_samples == 0) throw std::invalid_argument("range_boundary: n_samples must be positive");
    const std::size_t n = t.rows();
    if (n == 0) {
        RangeBoundary rb;
        rb.shape = RangeShape::point;
        return rb;
    }

    RangeBoundary rb;
    rb.samples.resize(n_samples);
    ComplexMatrix h(n, n);
    for (std::size_t k = 0; k < n_samples; ++k) {
        const double theta = detail::kTwoPi * static_cast<double>(k) / n_samples;
        detail::rotated_re_part(t, theta, h);
        HermitianEigensystem es = eigensystem_hermitian_prepared(h, true);
        ComplexVector x = detail::normalized_column(es.vectors, n - 1);
        rb.samples[k].theta = theta;
        rb.samples[k].support = es.values.back();
        rb.samples[k].point = inner(matvec(t, x), x);
    }

    const double scale = op_norm(t).value;
    const double degtol = 1e-9 * std::max(scale, 1e-300);
    double spread = 0.0;
    std::size_t ia = 0, ib = 0;
    for (std::size_t i = 0; i < n_samples; ++i)
        for (std::size_t j = i + 1; j < n_samples; ++j) {
            const double d = std::abs(rb.samples[i].point - rb.samples[j].point);
            if (d > spread) {
                spread = d;
                ia = i;
                ib = j;
            }
        }
    if (spread <= degtol) {
        rb.shape = RangeShape::point;
        rb.anchor_a = rb.anchor_b = rb.samples[0].point;
        return rb;
    }
    const Complex base = rb.samples[ia].point;
    const Complex dir = (rb.samples[ib].point - base) / spread;
    double off = 0.0, pmin = 0.0, pmax = 0.0;
    std::size_t kmin = ia, kmax = ia;
    for (std::size_t k = 0; k < n_samples; ++k) {
        const Complex rel = (rb.samples[k].point - base) * std::conj(dir);
        off = std::max(off, std::abs(rel.imag()));
        if (rel.real() < pmin) {
            pmin = rel.real();
            kmin = k;
        }
        if (rel.real() > pmax) {
            pmax = rel.real();
            kmax = k;
        }
    }
    if (off <= degtol) {
        rb.shape = RangeShape::segment;
        rb.anchor_a = rb.samples[kmin].point;
        rb.anchor_b = rb.samples[kmax].point;
    } else {
        rb.shape = RangeShape::full;
        rb.anchor_a = rb.samples[ia].point;
        rb.anchor_b = rb.samples[ib].point;
    }
    return rb;
}

}  // namespace numrange
