#pragma once

// Block operator-matrix assembly: square grids of optional blocks, the
// off-diagonal / anti-diagonal constructors, block flip unitaries, pinching,
// and the constructor for the w = ||T||/2 equality family.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "range.hpp"

namespace numrange {

// An n x n grid of optional blocks over fixed row/column partitions; absent
// blocks assemble to zero.  Block (i, j) must be row_dims[i] x col_dims[j].
// A spec with no blocks set is permitted and assembles to the zero matrix
// (pinching a purely diagonal spec produces exactly that).
class BlockSpec {
public:
    BlockSpec() = default;
    BlockSpec(std::vector<std::size_t> row_dims, std::vector<std::size_t> col_dims)
        : row_dims_(std::move(row_dims)), col_dims_(std::move(col_dims)) {
        if (row_dims_.empty())
            throw std::invalid_argument("BlockSpec: dimension vectors must be nonempty");
        if (row_dims_.size() != col_dims_.size())
            throw std::invalid_argument(
                "BlockSpec: row and column partitions must have the same block count");
        blocks_.resize(row_dims_.size() * col_dims_.size());
    }

    std::size_t order() const { return row_dims_.size(); }
    const std::vector<std::size_t>& row_dims() const { return row_dims_; }
    const std::vector<std::size_t>& col_dims() const { return col_dims_; }

    std::size_t total_rows() const {
        std::size_t s = 0;
        for (std::size_t d : row_dims_) s += d;
        return s;
    }
    std::size_t total_cols() const {
        std::size_t s = 0;
        for (std::size_t d : col_dims_) s += d;
        return s;
    }

    void set(std::size_t i, std::size_t j, ComplexMatrix block) {
        check_index(i, j);
        if (block.rows() != row_dims_[i] || block.cols() != col_dims_[j])
            throw std::invalid_argument(
                "BlockSpec: block (" + std::to_string(i) + ", " + std::to_string(j) +
                ") must be " + detail::shape_str(row_dims_[i], col_dims_[j]) + ", got " +
                detail::shape_str(block.rows(), block.cols()));
        blocks_[i * order() + j] = std::move(block);
    }

    void clear(std::size_t i, std::size_t j) {
        check_index(i, j);
        blocks_[i * order() + j].reset();
    }

    const std::optional<ComplexMatrix>& block(std::size_t i, std::size_t j) const {
        check_index(i, j);
        return blocks_[i * order() + j];
    }

private:
    void check_index(std::size_t i, std::size_t j) const {
        if (i >= order() || j >= order())
            throw std::out_of_range("BlockSpec: block index (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ") outside " +
                                    std::to_string(order()) + "-block grid");
    }

    std::vector<std::size_t> row_dims_;
    std::vector<std::size_t> col_dims_;
    std::vector<std::optional<ComplexMatrix>> blocks_;
};

enum class PinchMode { diagonal, offdiagonal };

inline ComplexMatrix assemble(const BlockSpec& spec) {
    const std::size_t n = spec.order();
    if (n == 0) throw std::invalid_argument("assemble: default-constructed BlockSpec");
    std::vector<std::size_t> roff(n + 1, 0), coff(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) roff[i + 1] = roff[i] + spec.row_dims()[i];
    for (std::size_t j = 0; j < n; ++j) coff[j + 1] = coff[j] + spec.col_dims()[j];
    ComplexMatrix out(roff[n], coff[n]);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::optional<ComplexMatrix>& b = spec.block(i, j);
            if (!b) continue;
            for (std::size_t r = 0; r < b->rows(); ++r)
                for (std::size_t c = 0; c < b->cols(); ++c)
                    out(roff[i] + r, coff[j] + c) = (*b)(r, c);
        }
    }
    return out;
}

// [[0, A], [B, 0]] for square A, B of equal dimension.
inline ComplexMatrix off_diagonal(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
        throw std::invalid_argument("off_diagonal: blocks must be square of equal dimension, got " +
                                    detail::shape_str(a.rows(), a.cols()) + " and " +
                                    detail::shape_str(b.rows(), b.cols()));
    const std::size_t d = a.rows();
    BlockSpec spec({d, d}, {d, d});
    spec.set(0, 1, a);
    spec.set(1, 0, b);
    return assemble(spec);
}

// Block anti-diagonal: blocks[0] in the top-right corner down to
// blocks[n-1] in the bottom-left.
inline ComplexMatrix anti_diagonal(const std::vector<ComplexMatrix>& blocks) {
    if (blocks.empty()) throw std::invalid_argument("anti_diagonal: at least one block required");
    const std::size_t d = blocks.front().rows();
    for (const ComplexMatrix& b : blocks)
        if (!b.is_square() || b.rows() != d)
            throw std::invalid_argument(
                "anti_diagonal: blocks must be square of equal dimension, got " +
                detail::shape_str(b.rows(), b.cols()) + " against leading dimension " +
                std::to_string(d));
    const std::size_t n = blocks.size();
    BlockSpec spec(std::vector<std::size_t>(n, d), std::vector<std::size_t>(n, d));
    for (std::size_t i = 0; i < n; ++i) spec.set(i, n - 1 - i, blocks[i]);
    return assemble(spec);
}

// Unitary with identity blocks on the block anti-diagonal.  Row partition is
// `dims`, column partition is `dims` reversed, so every anti-diagonal block
// is a square identity and the whole matrix is a permutation.
inline ComplexMatrix flip_unitary(const std::vector<std::size_t>& dims) {
    if (dims.empty()) throw std::invalid_argument("flip_unitary: dimension vector must be nonempty");
    const std::size_t n = dims.size();
    std::size_t total = 0;
    for (std::size_t d : dims) total += d;
    std::vector<std::size_t> roff(n + 1, 0), coff(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) roff[i + 1] = roff[i] + dims[i];
    for (std::size_t j = 0; j < n; ++j) coff[j + 1] = coff[j] + dims[n - 1 - j];
    ComplexMatrix u(total, total);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < dims[i]; ++k) u(roff[i] + k, coff[n - 1 - i] + k) = 1.0;
    return u;
}

inline BlockSpec pinch(const BlockSpec& spec, PinchMode mode) {
    BlockSpec out(spec.row_dims(), spec.col_dims());
    const std::size_t n = spec.order();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const bool keep = (mode == PinchMode::diagonal) == (i == j);
            if (keep && spec.block(i, j)) out.set(i, j, *spec.block(i, j));
        }
    }
    return out;
}

// [[0, s], [0, 0]] (+) s*B for s > 0 and square B with w(B) <= 1/2.  The
// result M satisfies ||M|| = s and w(M) = s/2; that contract fails if w(B)
// exceeds 1/2, so the precondition is verified numerically (tolerance 1e-9)
// and violations are rejected with the computed value in the message.
inline ComplexMatrix equality_model(double s, const ComplexMatrix& b) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw std::invalid_argument("equality_model: scale s must be positive and finite");
    if (!b.is_square())
        throw std::invalid_argument("equality_model: B must be square, got " +
                                    detail::shape_str(b.rows(), b.cols()));
    if (b.rows() > 0) {
        const CertifiedValue wb = numerical_radius(b, 1e-9);
        if (wb.value > 0.5 + 1e-9)
            throw std::invalid_argument("equality_model: w(B) = " + std::to_string(wb.value) +
                                        " exceeds 1/2; the equality family requires w(B) <= 1/2");
    }
    ComplexMatrix shift(2, 2);
    shift(0, 1) = s;
    return direct_sum(shift, Complex{s, 0.0} * b);
}

}  // namespace numrange
