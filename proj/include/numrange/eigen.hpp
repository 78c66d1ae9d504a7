#pragma once

// Deterministic dense eigensolvers and the certified norm quantities built on
// them.  No external linear algebra: reproducibility across runs and honest
// error bookkeeping are contract obligations here, so the kernels are small,
// fixed-order, and dependency-free.
//
//  * hermitian_eigensystem: Householder tridiagonalization followed by
//    implicit-shift QL, both in a fixed deterministic order.  Per-element QL
//    deflation at eps * (|d_i| + |d_{i+1}|) leaves an off-diagonal Frobenius
//    mass below 1e-14 * ||H||_F for every size this library handles, and the
//    returned error_bound covers it together with the rounding of the
//    reduction (Weyl: |lambda_hat - lambda| <= error_bound).
//  * general_eigenvalues: Householder reduction to Hessenberg form, then
//    single-shift QR with Wilkinson shifts and a deterministic exceptional
//    shift every tenth stalled iteration.
//  * op_norm / min_norm: singular values as Hermitian eigenvalues of the Gram
//    matrix, with outward square-root propagation of the eigenvalue bound.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "certified.hpp"
#include "matrix.hpp"

namespace numrange {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

// Relative entrywise tolerance for accepting nearly-Hermitian input.
inline constexpr double kHermitianInputTol = 1e-10;

struct HermitianEigensystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // unit columns matching values; empty if not requested
    double error_bound = 0.0;    // absolute, uniform over the spectrum
};

struct EigenExtremes {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    ComplexVector v_min;
    ComplexVector v_max;
    double error_bound = 0.0;
};

namespace detail {

// Validates near-Hermitian input, then returns the exactly mirrored average.
inline ComplexMatrix symmetrized_hermitian(const ComplexMatrix& h, const char* who) {
    if (!h.is_square())
        throw std::invalid_argument(std::string(who) + ": square matrix required, got " +
                                    shape_str(h.rows(), h.cols()));
    double dev = 0.0;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        dev = std::max(dev, std::abs(h(i, i).imag()));
        for (std::size_t j = i + 1; j < h.cols(); ++j)
            dev = std::max(dev, std::abs(h(i, j) - std::conj(h(j, i))));
    }
    if (dev > kHermitianInputTol * std::max(h.max_abs(), 0.0))
        throw std::invalid_argument(std::string(who) + ": input is not Hermitian (deviation " +
                                    std::to_string(dev) + " exceeds tolerance)");
    ComplexMatrix s(h.rows(), h.cols());
    for (std::size_t i = 0; i < h.rows(); ++i) {
        s(i, i) = Complex{h(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < h.cols(); ++j) {
            const Complex v = 0.5 * (h(i, j) + std::conj(h(j, i)));
            s(i, j) = v;
            s(j, i) = std::conj(v);
        }
    }
    return s;
}

}  // namespace detail

namespace detail {

// Closed-form 2x2 Hermitian eigensystem.  The scan engines solve enormous
// numbers of 2x2 problems, so this path matters for throughput.
inline HermitianEigensystem eig2x2_hermitian(const ComplexMatrix& h, bool want_vectors) {
    HermitianEigensystem out;
    const double a = h(0, 0).real();
    const double c = h(1, 1).real();
    const Complex b = h(0, 1);
    const double mb = std::abs(b);
    const double mean = 0.5 * (a + c);
    const double half = 0.5 * (a - c);
    const double r = std::hypot(half, mb);
    out.values = {mean - r, mean + r};
    out.error_bound = 8.0 * kEps * h.frobenius();
    if (want_vectors) {
        out.vectors = ComplexMatrix(2, 2);
        if (mb == 0.0) {
            const bool swap = a > c;  // ascending order of the diagonal
            out.vectors(0, swap ? 1 : 0) = 1.0;
            out.vectors(1, swap ? 0 : 1) = 1.0;
        } else {
            // v_max solves conj(b) x + (c - lmax) y = 0: (half + r, conj(b)),
            // with half + r >= mb > 0, so the representation is stable.
            const double t = half + r;
            const double nrm = std::hypot(t, mb);
            out.vectors(0, 1) = t / nrm;
            out.vectors(1, 1) = std::conj(b) / nrm;
            out.vectors(0, 0) = -b / nrm;
            out.vectors(1, 0) = t / nrm;
        }
    }
    return out;
}

}  // namespace detail

// Eigensystem of an exactly Hermitian matrix (callers guarantee the mirror
// symmetry; the validating front door below establishes it from raw input).
// Householder reduction to real symmetric tridiagonal form, then implicit QL
// with per-element deflation, both in a fixed order.  `h` is consumed.
inline HermitianEigensystem eigensystem_hermitian_prepared(ComplexMatrix h, bool want_vectors) {
    const std::size_t n = h.rows();
    HermitianEigensystem out;
    if (n == 0) return out;
    const double fro = h.frobenius();
    if (n == 1) {
        out.values = {h(0, 0).real()};
        if (want_vectors) out.vectors = ComplexMatrix::identity(1);
        out.error_bound = 4.0 * kEps * fro;
        return out;
    }
    if (n == 2) return detail::eig2x2_hermitian(h, want_vectors);

    // Reduce to Hermitian tridiagonal form with Householder reflectors
    // P_k = I - beta_k v_k v_k*, acting on indices k+1..n-1.
    std::vector<std::vector<Complex>> reflectors;
    std::vector<double> betas;
    if (want_vectors) {
        reflectors.reserve(n - 2);
        betas.reserve(n - 2);
    }
    std::vector<Complex> v(n), p(n), q(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double colnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) colnorm2 += std::norm(h(i, k));
        const double sigma = std::sqrt(colnorm2);
        double tail2 = 0.0;
        for (std::size_t i = k + 2; i < n; ++i) tail2 += std::norm(h(i, k));
        if (sigma == 0.0 || tail2 == 0.0) {
            if (want_vectors) {
                reflectors.emplace_back();
                betas.push_back(0.0);
            }
            continue;
        }
        const Complex x0 = h(k + 1, k);
        const double ax0 = std::abs(x0);
        const Complex phase = ax0 > 0.0 ? x0 / ax0 : Complex{1.0, 0.0};
        for (std::size_t i = k + 1; i < n; ++i) v[i] = h(i, k);
        v[k + 1] += phase * sigma;
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
        const double beta = 2.0 / vnorm2;

        // Hermitian two-sided update H <- H - v q* - q v* of the trailing
        // block, where p = beta H v and q = p - (beta/2)(v* p) v.
        for (std::size_t i = k + 1; i < n; ++i) {
            Complex acc{0.0, 0.0};
            for (std::size_t j = k + 1; j < n; ++j) acc += h(i, j) * v[j];
            p[i] = beta * acc;
        }
        double vp = 0.0;  // v* p is real for Hermitian H
        for (std::size_t i = k + 1; i < n; ++i)
            vp += (std::conj(v[i]) * p[i]).real();
        const double kappa = 0.5 * beta * vp;
        for (std::size_t i = k + 1; i < n; ++i) q[i] = p[i] - kappa * v[i];
        for (std::size_t i = k + 1; i < n; ++i) {
            h(i, i) -= 2.0 * (v[i] * std::conj(q[i])).real();
            h(i, i) = Complex{h(i, i).real(), 0.0};
            for (std::size_t j = i + 1; j < n; ++j) {
                h(i, j) -= v[i] * std::conj(q[j]) + q[i] * std::conj(v[j]);
                h(j, i) = std::conj(h(i, j));
            }
        }
        h(k + 1, k) = -phase * sigma;
        h(k, k + 1) = std::conj(h(k + 1, k));
        for (std::size_t i = k + 2; i < n; ++i) {
            h(i, k) = Complex{0.0, 0.0};
            h(k, i) = Complex{0.0, 0.0};
        }
        if (want_vectors) {
            reflectors.emplace_back(v.begin() + static_cast<long>(k) + 1, v.end());
            betas.push_back(beta);
        }
    }

    // Absorb the subdiagonal phases into a diagonal unitary D so the
    // tridiagonal matrix becomes real symmetric with nonnegative offdiagonal.
    std::vector<double> d(n), e(n, 0.0);
    std::vector<Complex> dphase(n, Complex{1.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) d[i] = h(i, i).real();
    for (std::size_t i = 1; i < n; ++i) {
        const Complex sub = h(i, i - 1);
        const double m = std::abs(sub);
        e[i - 1] = m;  // couples d[i-1] and d[i]
        dphase[i] = m > 0.0 ? dphase[i - 1] * (sub / m) : dphase[i - 1];
    }

    // Accumulate Q = P_0 P_1 ... P_{n-3} D when vectors are wanted.
    ComplexMatrix qm;
    if (want_vectors) {
        qm = ComplexMatrix::identity(n);
        for (std::size_t k = 0; k + 2 < n; ++k) {
            const std::vector<Complex>& vk = reflectors[k];
            const double beta = betas[k];
            if (beta == 0.0) continue;
            for (std::size_t r = 0; r < n; ++r) {
                Complex dot{0.0, 0.0};
                for (std::size_t j = 0; j < vk.size(); ++j) dot += qm(r, k + 1 + j) * vk[j];
                dot *= beta;
                for (std::size_t j = 0; j < vk.size(); ++j)
                    qm(r, k + 1 + j) -= dot * std::conj(vk[j]);
            }
        }
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t r = 0; r < n; ++r) qm(r, c) *= dphase[c];
    }

    // Implicit-shift QL on the real symmetric tridiagonal (d, e).
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= kEps * dd) break;
            }
            if (m != l) {
                if (iter++ == 50)
                    throw std::runtime_error(
                        "eigensystem_hermitian_prepared: QL iteration failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, pshift = 0.0;
                bool underflow = false;
                for (std::size_t ip1 = m; ip1 > l; --ip1) {
                    const std::size_t i = ip1 - 1;
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= pshift;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - pshift;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    pshift = s * r;
                    d[i + 1] = g + pshift;
                    g = c * r - b;
                    if (want_vectors) {
                        for (std::size_t row = 0; row < n; ++row) {
                            const Complex fz = qm(row, i + 1);
                            qm(row, i + 1) = s * qm(row, i) + c * fz;
                            qm(row, i) = c * qm(row, i) - s * fz;
                        }
                    }
                }
                if (underflow) continue;
                d[l] -= pshift;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }

    out.error_bound = 32.0 * static_cast<double>(n) * kEps * fro;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });
    out.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.values[k] = d[order[k]];
    if (want_vectors) {
        out.vectors = ComplexMatrix(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            double nrm2 = 0.0;
            for (std::size_t r = 0; r < n; ++r) nrm2 += std::norm(qm(r, order[k]));
            const double inv = nrm2 > 0.0 ? 1.0 / std::sqrt(nrm2) : 1.0;
            for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = inv * qm(r, order[k]);
        }
    }
    return out;
}

// Validating front door: accepts nearly-Hermitian input, symmetrizes, solves.
inline HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& h, bool want_vectors = true) {
    return eigensystem_hermitian_prepared(detail::symmetrized_hermitian(h, "hermitian_eigensystem"),
                                          want_vectors);
}

inline EigenExtremes hermitian_extremes(const ComplexMatrix& h) {
    HermitianEigensystem es = hermitian_eigensystem(h, true);
    if (es.values.empty())
        throw std::invalid_argument("hermitian_extremes: empty matrix has no spectrum");
    EigenExtremes ex;
    ex.lambda_min = es.values.front();
    ex.lambda_max = es.values.back();
    ex.error_bound = es.error_bound;
    const std::size_t n = es.values.size();
    ex.v_min = ComplexVector(n);
    ex.v_max = ComplexVector(n);
    for (std::size_t r = 0; r < n; ++r) {
        ex.v_min[r] = es.vectors(r, 0);
        ex.v_max[r] = es.vectors(r, n - 1);
    }
    return ex;
}

namespace detail {

inline void eig2x2(const Complex& a, const Complex& b, const Complex& c, const Complex& d,
                   Complex& l1, Complex& l2) {
    const Complex mean = 0.5 * (a + d);
    const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
    const Complex cand1 = mean + disc;
    const Complex cand2 = mean - disc;
    // Take the larger root first, recover the other from the determinant when
    // cancellation threatens it.
    if (std::abs(cand1) >= std::abs(cand2)) {
        l1 = cand1;
        l2 = std::abs(cand1) > 0.0 ? (a * d - b * c) / cand1 : cand2;
    } else {
        l1 = cand2;
        l2 = std::abs(cand2) > 0.0 ? (a * d - b * c) / cand2 : cand1;
    }
}

// Givens pair with [[c, s],[-conj(s), c]] (f,g)^T = (r, 0)^T, c real.
inline void givens(const Complex& f, const Complex& g, double& c, Complex& s) {
    const double af = std::abs(f), ag = std::abs(g);
    if (ag == 0.0) {
        c = 1.0;
        s = Complex{0.0, 0.0};
        return;
    }
    if (af == 0.0) {
        c = 0.0;
        s = std::conj(g) / ag;
        return;
    }
    const double d = std::hypot(af, ag);
    c = af / d;
    s = (f / af) * std::conj(g) / d;
}

inline void hessenberg_reduce(ComplexMatrix& a) {
    const std::size_t n = a.rows();
    if (n < 3) return;
    std::vector<Complex> vbuf(n), wbuf(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double xnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(a(i, k));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) continue;
        const Complex x0 = a(k + 1, k);
        const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex{1.0, 0.0};

        Complex* v = vbuf.data();
        for (std::size_t i = k + 1; i < n; ++i) v[i] = a(i, k);
        v[k + 1] += phase * xnorm;
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0.0) continue;
        const double beta = 2.0 / vnorm2;

        // Left: rows k+1..n-1, all columns.
        for (std::size_t j = k; j < n; ++j) {
            Complex dot{0.0, 0.0};
            for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * a(i, j);
            dot *= beta;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= dot * v[i];
        }
        // Right: all rows, columns k+1..n-1.
        for (std::size_t i = 0; i < n; ++i) {
            Complex dot{0.0, 0.0};
            for (std::size_t j = k + 1; j < n; ++j) dot += a(i, j) * v[j];
            dot *= beta;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= dot * std::conj(v[j]);
        }
        a(k + 1, k) = -phase * xnorm;
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = Complex{0.0, 0.0};
    }
}

}  // namespace detail

// All eigenvalues of a general square complex matrix, unordered multiset
// (returned in deflation order, which is deterministic).
inline std::vector<Complex> general_eigenvalues(const ComplexMatrix& m) {
    if (!m.is_square())
        throw std::invalid_argument("general_eigenvalues: square matrix required, got " +
                                    detail::shape_str(m.rows(), m.cols()));
    const std::size_t n = m.rows();
    std::vector<Complex> eig(n);
    if (n == 0) return eig;
    if (n == 1) {
        eig[0] = m(0, 0);
        return eig;
    }

    ComplexMatrix h = m;
    detail::hessenberg_reduce(h);
    const double fro = h.frobenius();

    std::vector<double> cbuf(n);
    std::vector<Complex> sbuf(n);

    long hi = static_cast<long>(n) - 1;
    int stall = 0;
    long iterations = 0;
    const long max_iterations = 100 * static_cast<long>(n);
    while (hi >= 0) {
        // Deflate negligible subdiagonals in the active block.
        for (long i = 0; i < hi; ++i) {
            const double bound =
                kEps * (std::abs(h(i, i)) + std::abs(h(i + 1, i + 1)));
            if (std::abs(h(i + 1, i)) <= std::max(bound, kEps * fro * 1e-2))
                h(i + 1, i) = Complex{0.0, 0.0};
        }
        if (hi == 0 || h(hi, hi - 1) == Complex{0.0, 0.0}) {
            eig[hi] = h(hi, hi);
            --hi;
            stall = 0;
            continue;
        }
        long lo = hi;
        while (lo > 0 && h(lo, lo - 1) != Complex{0.0, 0.0}) --lo;
        if (hi - lo == 1) {
            Complex l1, l2;
            detail::eig2x2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi), l1, l2);
            eig[hi] = l1;
            eig[lo] = l2;
            hi -= 2;
            stall = 0;
            continue;
        }
        if (++iterations > max_iterations)
            throw std::runtime_error("general_eigenvalues: QR iteration failed to converge");

        Complex mu;
        if (++stall % 10 == 0) {
            mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
        } else {
            Complex l1, l2;
            detail::eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi), l1, l2);
            mu = std::abs(l1 - h(hi, hi)) <= std::abs(l2 - h(hi, hi)) ? l1 : l2;
        }

        for (long i = lo; i <= hi; ++i) h(i, i) -= mu;
        for (long i = lo; i < hi; ++i) {
            detail::givens(h(i, i), h(i + 1, i), cbuf[i], sbuf[i]);
            const double c = cbuf[i];
            const Complex s = sbuf[i];
            for (long j = i; j <= hi; ++j) {
                const Complex t1 = h(i, j), t2 = h(i + 1, j);
                h(i, j) = c * t1 + s * t2;
                h(i + 1, j) = -std::conj(s) * t1 + c * t2;
            }
        }
        for (long i = lo; i < hi; ++i) {
            const double c = cbuf[i];
            const Complex s = sbuf[i];
            const long rtop = lo;
            const long rbot = std::min(hi, i + 2);
            for (long r = rtop; r <= rbot; ++r) {
                const Complex t1 = h(r, i), t2 = h(r, i + 1);
                h(r, i) = c * t1 + std::conj(s) * t2;
                h(r, i + 1) = -s * t1 + c * t2;
            }
        }
        for (long i = lo; i <= hi; ++i) h(i, i) += mu;
    }
    return eig;
}

// max |lambda|.  The pad documents the backward-stability assumption: QR is
// backward stable and the ensembles used here have well-conditioned spectra,
// so the eigenvalue error stays far below 1e-9 * ||M||.
inline CertifiedValue spectral_radius(const ComplexMatrix& m) {
    if (!m.is_square())
        throw std::invalid_argument("spectral_radius: square matrix required, got " +
                                    detail::shape_str(m.rows(), m.cols()));
    if (m.rows() == 0) return exact_value(0.0);
    double r = 0.0;
    for (const Complex& l : general_eigenvalues(m)) r = std::max(r, std::abs(l));
    const double pad = (1e-12 + 64.0 * static_cast<double>(m.rows()) * kEps) * m.frobenius();
    CertifiedValue cv;
    cv.value = r;
    cv.lower = std::max(0.0, r - pad);
    cv.upper = r + pad;
    return cv;
}

namespace detail {

// Gram matrix of the smaller side, exactly Hermitian by mirroring.
inline ComplexMatrix gram(const ComplexMatrix& m) {
    const bool tall = m.rows() >= m.cols();
    const std::size_t k = tall ? m.cols() : m.rows();
    ComplexMatrix g(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            Complex s{0.0, 0.0};
            if (tall) {
                for (std::size_t r = 0; r < m.rows(); ++r) s += std::conj(m(r, i)) * m(r, j);
            } else {
                for (std::size_t r = 0; r < m.cols(); ++r) s += m(i, r) * std::conj(m(j, r));
            }
            if (i == j) {
                g(i, i) = Complex{s.real(), 0.0};
            } else {
                g(i, j) = s;
                g(j, i) = std::conj(s);
            }
        }
    }
    return g;
}

}  // namespace detail

// Largest singular value with a certified enclosure (relative width well
// under 1e-10 away from zero).
inline CertifiedValue op_norm(const ComplexMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return exact_value(0.0);
    if (is_exactly_hermitian(m)) {
        HermitianEigensystem es = eigensystem_hermitian_prepared(m, false);
        const double s = std::max(std::abs(es.values.front()), std::abs(es.values.back()));
        CertifiedValue cv;
        cv.value = s;
        cv.lower = std::max(0.0, s - es.error_bound);
        cv.upper = s + es.error_bound;
        return cv;
    }
    HermitianEigensystem es = eigensystem_hermitian_prepared(detail::gram(m), false);
    const double lmax = std::max(0.0, es.values.back());
    CertifiedValue cv;
    cv.value = std::sqrt(lmax);
    cv.lower = std::sqrt(std::max(0.0, lmax - es.error_bound));
    cv.upper = std::sqrt(lmax + es.error_bound);
    return cv;
}

// Smallest singular value.  A map with rows < cols has nontrivial kernel, so
// the result is exactly zero there; values that cannot be distinguished from
// zero are reported as the interval [0, 1e-12 * ||M||].
inline CertifiedValue min_norm(const ComplexMatrix& m) {
    if (m.cols() == 0) return exact_value(0.0);
    if (m.rows() < m.cols()) return exact_value(0.0);
    HermitianEigensystem es = eigensystem_hermitian_prepared(detail::gram(m), false);
    const double lmin = std::max(0.0, es.values.front());
    const double smax = std::sqrt(std::max(0.0, es.values.back()));
    const double sigma = std::sqrt(lmin);
    CertifiedValue cv;
    cv.value = sigma;
    cv.lower = std::sqrt(std::max(0.0, lmin - es.error_bound));
    cv.upper = std::sqrt(lmin + es.error_bound);
    // Pinned reporting convention for values indistinguishable from zero.
    const double floor_scale = 1e-12 * smax;
    if (sigma < floor_scale) {
        cv.lower = 0.0;
        cv.upper = floor_scale;
        cv.value = std::min(sigma, floor_scale);
    }
    return cv;
}

}  // namespace numrange
