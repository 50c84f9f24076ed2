#ifndef COCYCLELAB_MATRIX_HPP
#define COCYCLELAB_MATRIX_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

#include "cocyclelab/rat.hpp"

namespace cocyclelab {

using BigInt = boost::multiprecision::cpp_int;

/// Dense exact integer matrix (row-major).  Assembly is usually sparse via
/// add_at; elimination skips zero entries.
class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const BigInt& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    BigInt& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    void add_at(std::size_t i, std::size_t j, const BigInt& v) { a_[i * cols_ + j] += v; }

    std::vector<BigInt> apply(const std::vector<BigInt>& x) const;
    IntMat mul(const IntMat& o) const;
    std::vector<BigInt> column(std::size_t j) const;

    bool operator==(const IntMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<BigInt> a_;
};

struct SnfOptions {
    bool want_u = true; // track U and U^{-1}
    bool want_v = true; // track V and V^{-1}
};

/// U * M * V = D with U, V unimodular and D diagonal with a divisibility
/// chain d_1 | d_2 | ... .  Pivot selection: smallest nonzero absolute value
/// in the remaining submatrix, ties broken row-major; deterministic.
struct SnfResult {
    std::vector<BigInt> diag; // min(rows, cols) entries, chain then zeros
    std::size_t rank = 0;     // number of nonzero diagonal entries
    IntMat u, uinv, v, vinv;  // empty unless requested
};

SnfResult smith_normal_form(const IntMat& m, SnfOptions opts = {});

/// Solve M x = b over the integers using a retained factorization of M.
/// Returns std::nullopt when no integral solution exists.
std::optional<std::vector<BigInt>> snf_solve(const SnfResult& f, std::size_t rows,
                                             std::size_t cols, const std::vector<BigInt>& b);

/// Exact rational matrix with Gaussian elimination helpers (used for the
/// rational-vector coefficient kind).
class RatMat {
public:
    RatMat() : rows_(0), cols_(0) {}
    RatMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

    std::size_t rank() const;
    /// Basis of the right kernel (columns).
    std::vector<std::vector<Rat>> kernel_basis() const;
    /// One solution of M x = b, if any.
    std::optional<std::vector<Rat>> solve(const std::vector<Rat>& b) const;

private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

} // namespace cocyclelab

#endif
