#pragma once

// Dense complex matrices and vectors with value semantics.
//
// Everything downstream (eigensolvers, the support-function scan, the bound
// catalog) works on these two containers.  Shapes are validated eagerly and
// dimension mismatches throw std::invalid_argument naming both shapes, so the
// numerical layers never see silently broken operands.

#include <complex>
#include <cstddef>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace numrange {

using Complex = std::complex<double>;

namespace detail {

inline std::string shape_str(std::size_t r, std::size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

inline bool finite(const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace detail

// Row-major dense complex matrix.  Zero-dimension shapes are permitted (the
// canonical flattening model uses an empty tail block); every kernel guards
// them explicitly.
class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

    // Row-of-rows constructor, mostly for literals in tests and tools.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw std::invalid_argument("ComplexMatrix: ragged initializer, row of length " +
                                            std::to_string(r.size()) + " in a " +
                                            detail::shape_str(rows_, cols_) + " literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
        validate_finite();
    }

    static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return ComplexMatrix(rows, cols); }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Complex* row(std::size_t i) { return data_.data() + i * cols_; }
    const Complex* row(std::size_t i) const { return data_.data() + i * cols_; }

    const std::vector<Complex>& data() const { return data_; }
    std::vector<Complex>& data() { return data_; }

    bool operator==(const ComplexMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const ComplexMatrix& o) const { return !(*this == o); }

    // max_ij |a_ij|; the entrywise max norm used by the Hermitian validators.
    double max_abs() const {
        double m = 0.0;
        for (const auto& z : data_) m = std::max(m, std::abs(z));
        return m;
    }

    double frobenius() const {
        double s = 0.0;
        for (const auto& z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

    void validate_finite() const {
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!detail::finite((*this)(i, j)))
                    throw std::invalid_argument("ComplexMatrix: non-finite entry at (" +
                                                std::to_string(i) + "," + std::to_string(j) + ")");
    }

private:
    std::size_t rows_, cols_;
    std::vector<Complex> data_;
};

class ComplexVector {
public:
    ComplexVector() = default;
    explicit ComplexVector(std::size_t n) : data_(n, Complex{0.0, 0.0}) {}
    ComplexVector(std::initializer_list<Complex> xs) : data_(xs) {}

    std::size_t size() const { return data_.size(); }
    Complex& operator[](std::size_t i) { return data_[i]; }
    const Complex& operator[](std::size_t i) const { return data_[i]; }

    const std::vector<Complex>& data() const { return data_; }

    bool operator==(const ComplexVector& o) const { return data_ == o.data_; }

    double norm() const {
        double s = 0.0;
        for (const auto& z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

private:
    std::vector<Complex> data_;
};

// <x, y> = sum conj(y_i) x_i, linear in the first argument.
inline Complex inner(const ComplexVector& x, const ComplexVector& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("inner: length mismatch " + std::to_string(x.size()) + " vs " +
                                    std::to_string(y.size()));
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
    return s;
}

inline ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& x) {
    if (a.cols() != x.size())
        throw std::invalid_argument("matvec: " + detail::shape_str(a.rows(), a.cols()) +
                                    " times vector of length " + std::to_string(x.size()));
    ComplexVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex s{0.0, 0.0};
        const Complex* r = a.row(i);
        for (std::size_t j = 0; j < a.cols(); ++j) s += r[j] * x[j];
        y[i] = s;
    }
    return y;
}

inline ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("add: shape mismatch " + detail::shape_str(a.rows(), a.cols()) +
                                    " vs " + detail::shape_str(b.rows(), b.cols()));
    ComplexMatrix c = a;
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] += b.data()[i];
    return c;
}

inline ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("sub: shape mismatch " + detail::shape_str(a.rows(), a.cols()) +
                                    " vs " + detail::shape_str(b.rows(), b.cols()));
    ComplexMatrix c = a;
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] -= b.data()[i];
    return c;
}

inline ComplexMatrix scale(const Complex& s, const ComplexMatrix& a) {
    ComplexMatrix c = a;
    for (auto& z : c.data()) z *= s;
    return c;
}

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: " + detail::shape_str(a.rows(), a.cols()) + " * " +
                                    detail::shape_str(b.rows(), b.cols()));
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{0.0, 0.0}) continue;
            const Complex* brow = b.row(k);
            Complex* crow = c.row(i);
            for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) { return add(a, b); }
inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) { return sub(a, b); }
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }
inline ComplexMatrix operator*(const Complex& s, const ComplexMatrix& a) { return scale(s, a); }
inline ComplexMatrix operator*(double s, const ComplexMatrix& a) { return scale(Complex{s, 0.0}, a); }

inline ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
    return c;
}

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

// e^{i theta} T, entrywise.
inline ComplexMatrix rotate(const ComplexMatrix& a, double theta) {
    return scale(std::polar(1.0, theta), a);
}

// Hermitian and skew parts, T = re + i*im with re, im Hermitian.
struct CartesianPair {
    ComplexMatrix re;
    ComplexMatrix im;
};

// Both parts are Hermitian by construction: the upper triangle is computed
// and mirrored, diagonals forced real, so a_ij == conj(a_ji) holds bitwise.
inline CartesianPair cartesian_parts(const ComplexMatrix& t) {
    if (!t.is_square())
        throw std::invalid_argument("cartesian_parts: matrix must be square, got " +
                                    detail::shape_str(t.rows(), t.cols()));
    const std::size_t n = t.rows();
    CartesianPair p{ComplexMatrix(n, n), ComplexMatrix(n, n)};
    for (std::size_t i = 0; i < n; ++i) {
        p.re(i, i) = Complex{t(i, i).real(), 0.0};
        p.im(i, i) = Complex{t(i, i).imag(), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex re_ij = 0.5 * (t(i, j) + std::conj(t(j, i)));
            // im = (T - T*) / (2i) entrywise.
            const Complex im_ij = 0.5 * Complex{0.0, -1.0} * (t(i, j) - std::conj(t(j, i)));
            p.re(i, j) = re_ij;
            p.re(j, i) = std::conj(re_ij);
            p.im(i, j) = im_ij;
            p.im(j, i) = std::conj(im_ij);
        }
    }
    return p;
}

// Bitwise Hermitian test; true for anything cartesian_parts produced.
inline bool is_exactly_hermitian(const ComplexMatrix& a) {
    if (!a.is_square()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (a(i, i).imag() != 0.0) return false;
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            if (a(i, j) != std::conj(a(j, i))) return false;
    }
    return true;
}

}  // namespace numrange
