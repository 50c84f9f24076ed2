#include "cocyclelab/matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <type_traits>

#include "cocyclelab/errors.hpp"

namespace cocyclelab {

IntMat IntMat::identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

std::vector<BigInt> IntMat::apply(const std::vector<BigInt>& x) const {
    if (x.size() != cols_) throw InternalError("matrix apply: size mismatch");
    std::vector<BigInt> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        BigInt acc = 0;
        const BigInt* row = a_.data() + i * cols_;
        for (std::size_t j = 0; j < cols_; ++j)
            if (!row[j].is_zero()) acc += row[j] * x[j];
        out[i] = std::move(acc);
    }
    return out;
}

IntMat IntMat::mul(const IntMat& o) const {
    if (cols_ != o.rows_) throw InternalError("matrix mul: size mismatch");
    IntMat out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const BigInt& x = at(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (!o.at(k, j).is_zero()) out.at(i, j) += x * o.at(k, j);
        }
    return out;
}

std::vector<BigInt> IntMat::column(std::size_t j) const {
    std::vector<BigInt> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = at(i, j);
    return out;
}

namespace {

struct OverflowSignal {};

template <class T>
T chk_add(const T& a, const T& b) {
    if constexpr (std::is_same_v<T, long long>) {
        long long r;
        if (__builtin_add_overflow(a, b, &r)) throw OverflowSignal{};
        return r;
    } else {
        return a + b;
    }
}

template <class T>
T chk_sub(const T& a, const T& b) {
    if constexpr (std::is_same_v<T, long long>) {
        long long r;
        if (__builtin_sub_overflow(a, b, &r)) throw OverflowSignal{};
        return r;
    } else {
        return a - b;
    }
}

template <class T>
T chk_mul(const T& a, const T& b) {
    if constexpr (std::is_same_v<T, long long>) {
        long long r;
        if (__builtin_mul_overflow(a, b, &r)) throw OverflowSignal{};
        return r;
    } else {
        return a * b;
    }
}

template <class T>
T chk_neg(const T& a) {
    if constexpr (std::is_same_v<T, long long>) {
        if (a == std::numeric_limits<long long>::min()) throw OverflowSignal{};
        return -a;
    } else {
        return -a;
    }
}

template <class T>
T scalar_abs(const T& a) {
    if constexpr (std::is_same_v<T, long long>) {
        if (a == std::numeric_limits<long long>::min()) throw OverflowSignal{};
        return a < 0 ? -a : a;
    } else {
        return a < 0 ? BigInt(-a) : a;
    }
}

// Elimination state: A is diagonalized in place while the four unimodular
// trackers are kept in sync so that U*A_in*V = A_out throughout.
template <class T>
struct SnfWork {
    std::size_t rows, cols;
    std::vector<T> a;
    bool want_u, want_v;
    std::vector<T> u, uinv, v, vinv;

    T& A(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    T& U(std::size_t i, std::size_t j) { return u[i * rows + j]; }
    T& Uinv(std::size_t i, std::size_t j) { return uinv[i * rows + j]; }
    T& V(std::size_t i, std::size_t j) { return v[i * cols + j]; }
    T& Vinv(std::size_t i, std::size_t j) { return vinv[i * cols + j]; }

    void init_trackers() {
        if (want_u) {
            u.assign(rows * rows, T(0));
            uinv.assign(rows * rows, T(0));
            for (std::size_t i = 0; i < rows; ++i) U(i, i) = Uinv(i, i) = T(1);
        }
        if (want_v) {
            v.assign(cols * cols, T(0));
            vinv.assign(cols * cols, T(0));
            for (std::size_t j = 0; j < cols; ++j) V(j, j) = Vinv(j, j) = T(1);
        }
    }

    // row_i -= q * row_t (A columns from `from` on; trackers full width)
    void row_sub(std::size_t i, std::size_t t, const T& q, std::size_t from) {
        for (std::size_t j = from; j < cols; ++j)
            if (A(t, j) != T(0)) A(i, j) = chk_sub(A(i, j), chk_mul(q, A(t, j)));
        if (want_u) {
            for (std::size_t j = 0; j < rows; ++j) {
                if (U(t, j) != T(0)) U(i, j) = chk_sub(U(i, j), chk_mul(q, U(t, j)));
            }
            for (std::size_t k = 0; k < rows; ++k)
                if (Uinv(k, i) != T(0)) Uinv(k, t) = chk_add(Uinv(k, t), chk_mul(q, Uinv(k, i)));
        }
    }

    // col_j -= q * col_t
    void col_sub(std::size_t j, std::size_t t, const T& q, std::size_t from) {
        for (std::size_t i = from; i < rows; ++i)
            if (A(i, t) != T(0)) A(i, j) = chk_sub(A(i, j), chk_mul(q, A(i, t)));
        if (want_v) {
            for (std::size_t i = 0; i < cols; ++i)
                if (V(i, t) != T(0)) V(i, j) = chk_sub(V(i, j), chk_mul(q, V(i, t)));
            for (std::size_t k = 0; k < cols; ++k)
                if (Vinv(j, k) != T(0)) Vinv(t, k) = chk_add(Vinv(t, k), chk_mul(q, Vinv(j, k)));
        }
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols; ++c) std::swap(A(i, c), A(j, c));
        if (want_u)
            for (std::size_t c = 0; c < rows; ++c) {
                std::swap(U(i, c), U(j, c));
                std::swap(Uinv(c, i), Uinv(c, j));
            }
    }

    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < rows; ++r) std::swap(A(r, i), A(r, j));
        if (want_v)
            for (std::size_t r = 0; r < cols; ++r) {
                std::swap(V(r, i), V(r, j));
                std::swap(Vinv(i, r), Vinv(j, r));
            }
    }

    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < cols; ++c)
            if (A(i, c) != T(0)) A(i, c) = chk_neg(A(i, c));
        if (want_u)
            for (std::size_t c = 0; c < rows; ++c) {
                if (U(i, c) != T(0)) U(i, c) = chk_neg(U(i, c));
                if (Uinv(c, i) != T(0)) Uinv(c, i) = chk_neg(Uinv(c, i));
            }
    }

    // Smallest |entry| in the trailing submatrix, row-major tie-break; scan
    // stops early on +-1 since nothing beats it.
    bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) {
        bool found = false;
        T best(0);
        for (std::size_t i = t; i < rows; ++i) {
            for (std::size_t j = t; j < cols; ++j) {
                const T& x = A(i, j);
                if (x == T(0)) continue;
                T ax = scalar_abs(x);
                if (!found || ax < best) {
                    found = true;
                    best = ax;
                    pi = i;
                    pj = j;
                    if (best == T(1)) return true;
                }
            }
        }
        return found;
    }

    // Diagonalize positions start..; returns the first all-zero step.
    std::size_t eliminate(std::size_t start) {
        std::size_t r = std::min(rows, cols);
        for (std::size_t t = start; t < r; ++t) {
            std::size_t pi, pj;
            if (!find_pivot(t, pi, pj)) return t;
            swap_rows(t, pi);
            swap_cols(t, pj);
            bool dirty = true;
            while (dirty) {
                dirty = false;
                for (std::size_t i = t + 1; i < rows; ++i) {
                    while (A(i, t) != T(0)) {
                        T q = A(i, t) / A(t, t); // truncated: |remainder| < |pivot|
                        if (q != T(0)) row_sub(i, t, q, t);
                        if (A(i, t) != T(0)) {
                            swap_rows(t, i);
                            dirty = true;
                        }
                    }
                }
                for (std::size_t j = t + 1; j < cols; ++j) {
                    while (A(t, j) != T(0)) {
                        T q = A(t, j) / A(t, t);
                        if (q != T(0)) col_sub(j, t, q, t);
                        if (A(t, j) != T(0)) {
                            swap_cols(t, j);
                            dirty = true;
                        }
                    }
                }
            }
        }
        return r;
    }

    void run() {
        std::size_t r = std::min(rows, cols);
        std::size_t rank = eliminate(0);
        for (std::size_t t = 0; t < rank; ++t)
            if (A(t, t) < T(0)) negate_row(t);
        // Enforce the divisibility chain: a violating pair (i, j) gets column
        // j folded into column i, then the block is re-diagonalized.
        bool fixed = true;
        while (fixed) {
            fixed = false;
            for (std::size_t i = 0; i + 1 < rank && !fixed; ++i)
                for (std::size_t j = i + 1; j < rank && !fixed; ++j)
                    if (A(j, j) % A(i, i) != T(0)) {
                        col_sub(i, j, chk_neg(T(1)), 0); // col_i += col_j
                        eliminate(i);
                        for (std::size_t t = i; t < rank; ++t)
                            if (A(t, t) < T(0)) negate_row(t);
                        fixed = true;
                    }
        }
        (void)r;
    }
};

template <class T>
SnfResult pack_result(SnfWork<T>& w) {
    SnfResult res;
    std::size_t r = std::min(w.rows, w.cols);
    res.diag.resize(r);
    for (std::size_t t = 0; t < r; ++t) {
        res.diag[t] = BigInt(w.A(t, t));
        if (!res.diag[t].is_zero()) res.rank = t + 1;
    }
    auto pack = [](std::size_t n, const std::vector<T>& src) {
        IntMat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = BigInt(src[i * n + j]);
        return m;
    };
    if (w.want_u) {
        res.u = pack(w.rows, w.u);
        res.uinv = pack(w.rows, w.uinv);
    }
    if (w.want_v) {
        res.v = pack(w.cols, w.v);
        res.vinv = pack(w.cols, w.vinv);
    }
    return res;
}

} // namespace

SnfResult smith_normal_form(const IntMat& m, SnfOptions opts) {
    const long long lim = std::numeric_limits<long long>::max();
    bool fits = true;
    for (std::size_t i = 0; i < m.rows() && fits; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (abs(m.at(i, j)) > lim / 4) {
                fits = false;
                break;
            }
    if (fits) {
        SnfWork<long long> w;
        w.rows = m.rows();
        w.cols = m.cols();
        w.want_u = opts.want_u;
        w.want_v = opts.want_v;
        w.a.resize(w.rows * w.cols);
        for (std::size_t i = 0; i < w.rows; ++i)
            for (std::size_t j = 0; j < w.cols; ++j)
                w.A(i, j) = (long long)m.at(i, j);
        w.init_trackers();
        try {
            w.run();
            return pack_result(w);
        } catch (const OverflowSignal&) {
            // fall through to arbitrary precision
        }
    }
    SnfWork<BigInt> w;
    w.rows = m.rows();
    w.cols = m.cols();
    w.want_u = opts.want_u;
    w.want_v = opts.want_v;
    w.a.resize(w.rows * w.cols);
    for (std::size_t i = 0; i < w.rows; ++i)
        for (std::size_t j = 0; j < w.cols; ++j) w.A(i, j) = m.at(i, j);
    w.init_trackers();
    w.run();
    return pack_result(w);
}

std::optional<std::vector<BigInt>> snf_solve(const SnfResult& f, std::size_t rows,
                                             std::size_t cols, const std::vector<BigInt>& b) {
    if (b.size() != rows || f.u.rows() != rows || f.v.rows() != cols)
        throw InternalError("snf_solve: factorization lacks U/V or sizes mismatch");
    std::vector<BigInt> w = f.u.apply(b);
    std::vector<BigInt> y(cols);
    std::size_t r = f.diag.size();
    for (std::size_t i = 0; i < rows; ++i) {
        if (i < r && !f.diag[i].is_zero()) {
            if (w[i] % f.diag[i] != 0) return std::nullopt;
            if (i < cols) y[i] = w[i] / f.diag[i];
        } else if (!w[i].is_zero()) {
            return std::nullopt;
        }
    }
    return f.v.apply(y);
}

namespace {

// Row echelon form in place; returns pivot columns.
std::vector<std::size_t> echelonize(std::vector<Rat>& a, std::size_t rows, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t sel = rows;
        for (std::size_t i = row; i < rows; ++i)
            if (!a[i * cols + col].is_zero()) {
                sel = i;
                break;
            }
        if (sel == rows) continue;
        for (std::size_t j = 0; j < cols; ++j) std::swap(a[row * cols + j], a[sel * cols + j]);
        Rat inv = Rat(1) / a[row * cols + col];
        for (std::size_t j = col; j < cols; ++j) a[row * cols + j] = a[row * cols + j] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row) continue;
            Rat f = a[i * cols + col];
            if (f.is_zero()) continue;
            for (std::size_t j = col; j < cols; ++j)
                a[i * cols + j] = a[i * cols + j] - f * a[row * cols + j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

std::size_t RatMat::rank() const {
    std::vector<Rat> a(a_);
    return echelonize(a, rows_, cols_).size();
}

std::vector<std::vector<Rat>> RatMat::kernel_basis() const {
    std::vector<Rat> a(a_);
    auto pivots = echelonize(a, rows_, cols_);
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t freec = 0; freec < cols_; ++freec) {
        if (is_pivot[freec]) continue;
        std::vector<Rat> k(cols_, Rat(0));
        k[freec] = Rat(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            k[pivots[r]] = -a[r * cols_ + freec];
        basis.push_back(std::move(k));
    }
    return basis;
}

std::optional<std::vector<Rat>> RatMat::solve(const std::vector<Rat>& b) const {
    if (b.size() != rows_) throw InternalError("RatMat::solve: size mismatch");
    std::size_t w = cols_ + 1;
    std::vector<Rat> a(rows_ * w);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) a[i * w + j] = at(i, j);
        a[i * w + cols_] = b[i];
    }
    auto pivots = echelonize(a, rows_, w);
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    std::vector<Rat> x(cols_, Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r * w + cols_];
    return x;
}

} // namespace cocyclelab
