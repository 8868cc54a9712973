#pragma once

#include <stdexcept>
#include <vector>

#include "concise/series.hpp"

namespace concise {

struct ShapeMismatch : std::runtime_error {
    explicit ShapeMismatch(const std::string& what) : std::runtime_error(what) {}
};

template <class R>
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<R> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    Matrix(int r, int c, R fill) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}

    R& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const R& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Matrix identity(int n, const R& one) {
        Matrix m(n, n, zero_like(one));
        for (int i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    Matrix transposed() const {
        Matrix m(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols != y.rows) throw ShapeMismatch("matrix product shape");
        Matrix m(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                const R& xv = x(i, k);
                if (is_zero(xv)) continue;
                for (int j = 0; j < y.cols; ++j) {
                    if (is_zero(y(k, j))) continue;
                    m(i, j) += xv * y(k, j);
                }
            }
        return m;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        if (x.rows != y.rows || x.cols != y.cols) return false;
        for (size_t i = 0; i < x.a.size(); ++i)
            if (!(x.a[i] == y.a[i])) return false;
        return true;
    }
};

// Plain Gaussian elimination over any exact field. Reduces in place and
// returns the rank; pivot columns are appended to pivots when given.
template <class R>
int gauss_reduce(Matrix<R>& m, std::vector<int>* pivots = nullptr) {
    int rr = 0;
    for (int c = 0; c < m.cols && rr < m.rows; ++c) {
        int piv = -1;
        for (int r = rr; r < m.rows; ++r)
            if (!is_zero(m(r, c))) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != rr)
            for (int j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(rr, j));
        R inv = one_like(m(rr, c)) / m(rr, c);
        for (int j = 0; j < m.cols; ++j) m(rr, j) = m(rr, j) * inv;
        for (int r = 0; r < m.rows; ++r) {
            if (r == rr || is_zero(m(r, c))) continue;
            R f = m(r, c);
            for (int j = 0; j < m.cols; ++j) m(r, j) -= f * m(rr, j);
        }
        if (pivots) pivots->push_back(c);
        ++rr;
    }
    return rr;
}

template <class R>
int rank_gauss(Matrix<R> m) { return gauss_reduce(m); }

// Fraction-free Bareiss rank for polynomial matrices; divisions are exact.
template <class K>
int rank_bareiss(Matrix<Poly<K>> m) {
    int rr = 0;
    Poly<K> prev; // previous pivot; empty means 1
    for (int c = 0; c < m.cols && rr < m.rows; ++c) {
        int piv = -1;
        for (int r = rr; r < m.rows; ++r)
            if (!m(r, c).zero()) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != rr)
            for (int j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(rr, j));
        for (int r = rr + 1; r < m.rows; ++r) {
            for (int j = c + 1; j < m.cols; ++j) {
                Poly<K> num = m(rr, c) * m(r, j) - m(r, c) * m(rr, j);
                if (prev.zero()) { m(r, j) = num; continue; }
                auto [q, rem] = Poly<K>::divmod(num, prev);
                if (!rem.zero()) throw std::logic_error("inexact Bareiss division");
                m(r, j) = q;
            }
            m(r, c) = Poly<K>{};
        }
        prev = m(rr, c);
        ++rr;
    }
    return rr;
}

// Rank over the rational-function field, computed fraction-free after
// clearing row denominators.
template <class K>
int rank_ratfunc(const Matrix<RatFunc<K>>& m) {
    // unify exponent denominators across the matrix first
    long long N = 1;
    for (const auto& x : m.a)
        if (!x.zero()) N = std::lcm(N, x.N);
    Matrix<Poly<K>> p(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i) {
        Poly<K> lcm; // running common denominator of the row
        for (int j = 0; j < m.cols; ++j) {
            const auto& x = m(i, j);
            if (x.zero()) continue;
            auto xs = x.rescaled(static_cast<int>(N / x.N));
            Poly<K> d = xs.den;
            if (lcm.zero()) lcm = d;
            else {
                Poly<K> g = Poly<K>::gcd(lcm, d);
                lcm = lcm * Poly<K>::divmod(d, g).first;
            }
        }
        for (int j = 0; j < m.cols; ++j) {
            const auto& x = m(i, j);
            if (x.zero()) continue;
            auto xs = x.rescaled(static_cast<int>(N / x.N));
            p(i, j) = xs.num * Poly<K>::divmod(lcm, xs.den).first;
        }
    }
    return rank_bareiss(std::move(p));
}

template <class K>
int rank(const Matrix<RatFunc<K>>& m) { return rank_ratfunc(m); }
inline int rank(const Matrix<Rational>& m) { return rank_gauss(m); }
inline int rank(const Matrix<Zp>& m) { return rank_gauss(m); }

// Basis of the right kernel {x : m x = 0}.
template <class R>
std::vector<std::vector<R>> kernel_basis(Matrix<R> m, const R& one) {
    std::vector<int> pivots;
    int rr = gauss_reduce(m, &pivots);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<R>> basis;
    for (int c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<R> v(m.cols, zero_like(one));
        v[c] = one;
        for (int r = 0; r < rr; ++r)
            v[pivots[r]] = -m(r, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solve A X = B for square invertible A.
template <class R>
Matrix<R> solve_right(Matrix<R> a, Matrix<R> b) {
    if (a.rows != a.cols || a.rows != b.rows) throw ShapeMismatch("solve shape");
    int n = a.rows;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (!is_zero(a(r, c))) { piv = r; break; }
        if (piv < 0) throw std::domain_error("singular matrix in solve");
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
            for (int j = 0; j < b.cols; ++j) std::swap(b(piv, j), b(c, j));
        }
        R inv = one_like(a(c, c)) / a(c, c);
        for (int j = 0; j < n; ++j) a(c, j) = a(c, j) * inv;
        for (int j = 0; j < b.cols; ++j) b(c, j) = b(c, j) * inv;
        for (int r = 0; r < n; ++r) {
            if (r == c || is_zero(a(r, c))) continue;
            R f = a(r, c);
            for (int j = 0; j < n; ++j) a(r, j) -= f * a(c, j);
            for (int j = 0; j < b.cols; ++j) b(r, j) -= f * b(c, j);
        }
    }
    return b;
}

template <class R>
Matrix<R> inverse(const Matrix<R>& a, const R& one) {
    return solve_right(a, Matrix<R>::identity(a.rows, one));
}

template <class R>
bool is_invertible(Matrix<R> a) {
    const int n = a.rows;
    return n == a.cols && rank_gauss(std::move(a)) == n;
}

// Adjugate of a polynomial matrix via Bareiss cofactors.
template <class K>
Matrix<Poly<K>> adjugate_poly(const Matrix<Poly<K>>& p, const K& one) {
    const int n = p.rows;
    Matrix<Poly<K>> adj(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            Poly<K> cof;
            if (n == 1) {
                cof = Poly<K>(one);
            } else {
                Matrix<Poly<K>> minor(n - 1, n - 1);
                for (int i = 0, ii = 0; i < n; ++i) {
                    if (i == r) continue;
                    for (int j = 0, jj = 0; j < n; ++j) {
                        if (j == c) continue;
                        minor(ii, jj++) = p(i, j);
                    }
                    ++ii;
                }
                cof = det_bareiss(std::move(minor));
            }
            if ((r + c) % 2) cof = -cof;
            adj(c, r) = std::move(cof);
        }
    return adj;
}

// X^{-1} B over the rational-function field through the adjugate: a common
// row scaling leaves X^{-1} B unchanged, so both sides are cleared to
// polynomial matrices first and only one reduction per output entry remains.
template <class K>
Matrix<RatFunc<K>> solve_right(const Matrix<RatFunc<K>>& x, const Matrix<RatFunc<K>>& b) {
    if (x.rows != x.cols || x.rows != b.rows) throw ShapeMismatch("solve shape");
    const int n = x.rows, m = b.cols;
    long long N = 1;
    for (const auto& e : x.a)
        if (!e.zero()) N = std::lcm(N, e.N);
    for (const auto& e : b.a)
        if (!e.zero()) N = std::lcm(N, e.N);
    Matrix<Poly<K>> xp(n, n), bp(n, m);
    for (int r = 0; r < n; ++r) {
        Poly<K> lcm;
        auto fold = [&](const RatFunc<K>& e) {
            if (e.zero()) return;
            auto es = e.rescaled(static_cast<int>(N / e.N));
            if (lcm.zero()) lcm = es.den;
            else {
                Poly<K> g = Poly<K>::gcd(lcm, es.den);
                lcm = lcm * Poly<K>::divmod(es.den, g).first;
            }
        };
        for (int c = 0; c < n; ++c) fold(x(r, c));
        for (int c = 0; c < m; ++c) fold(b(r, c));
        if (lcm.zero()) throw std::domain_error("singular matrix in solve");
        auto clear = [&](const RatFunc<K>& e) {
            if (e.zero()) return Poly<K>{};
            auto es = e.rescaled(static_cast<int>(N / e.N));
            return es.num * Poly<K>::divmod(lcm, es.den).first;
        };
        for (int c = 0; c < n; ++c) xp(r, c) = clear(x(r, c));
        for (int c = 0; c < m; ++c) bp(r, c) = clear(b(r, c));
    }
    Poly<K> det = det_bareiss(xp);
    if (det.zero()) throw std::domain_error("singular matrix in solve");
    Matrix<Poly<K>> adj = adjugate_poly(xp, one_like(det.leading()));
    Matrix<RatFunc<K>> out(n, m);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < m; ++c) {
            Poly<K> num;
            for (int k = 0; k < n; ++k)
                if (!adj(r, k).zero() && !bp(k, c).zero()) num = num + adj(r, k) * bp(k, c);
            if (!num.zero()) out(r, c) = RatFunc<K>(std::move(num), det, N);
        }
    return out;
}

// Determinant by fraction-free Bareiss (exact divisions).
template <class K>
Poly<K> det_bareiss(Matrix<Poly<K>> m) {
    if (m.rows != m.cols) throw ShapeMismatch("det of non-square matrix");
    int n = m.rows;
    if (n == 0) return Poly<K>{};
    Poly<K> prev;
    bool negate = false;
    for (int c = 0; c < n - 1; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (!m(r, c).zero()) { piv = r; break; }
        if (piv < 0) return Poly<K>{};
        if (piv != c) {
            negate = !negate;
            for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
        }
        for (int r = c + 1; r < n; ++r) {
            for (int j = c + 1; j < n; ++j) {
                Poly<K> num = m(c, c) * m(r, j) - m(r, c) * m(c, j);
                if (prev.zero()) { m(r, j) = num; continue; }
                auto [q, rem] = Poly<K>::divmod(num, prev);
                if (!rem.zero()) throw std::logic_error("inexact Bareiss division");
                m(r, j) = q;
            }
            m(r, c) = Poly<K>{};
        }
        prev = m(c, c);
    }
    Poly<K> d = m(n - 1, n - 1);
    return negate ? -d : d;
}

template <class K>
RatFunc<K> det_ratfunc(const Matrix<RatFunc<K>>& m) {
    if (m.rows != m.cols) throw ShapeMismatch("det of non-square matrix");
    long long N = 1;
    for (const auto& x : m.a)
        if (!x.zero()) N = std::lcm(N, x.N);
    Matrix<Poly<K>> p(m.rows, m.cols);
    RatFunc<K> denom;
    bool denom_set = false;
    for (int i = 0; i < m.rows; ++i) {
        Poly<K> lcm;
        for (int j = 0; j < m.cols; ++j) {
            const auto& x = m(i, j);
            if (x.zero()) continue;
            auto xs = x.rescaled(static_cast<int>(N / x.N));
            if (lcm.zero()) lcm = xs.den;
            else {
                Poly<K> g = Poly<K>::gcd(lcm, xs.den);
                lcm = lcm * Poly<K>::divmod(xs.den, g).first;
            }
        }
        if (lcm.zero()) return RatFunc<K>{}; // zero row
        for (int j = 0; j < m.cols; ++j) {
            const auto& x = m(i, j);
            if (x.zero()) continue;
            auto xs = x.rescaled(static_cast<int>(N / x.N));
            p(i, j) = xs.num * Poly<K>::divmod(lcm, xs.den).first;
        }
        RatFunc<K> row_clear(lcm, Poly<K>(one_like(lcm.leading())), N);
        denom = denom_set ? denom * row_clear : row_clear;
        denom_set = true;
    }
    Poly<K> d = det_bareiss(std::move(p));
    if (d.zero()) return RatFunc<K>{};
    return RatFunc<K>(d, Poly<K>(one_like(d.leading())), N) / denom;
}

} // namespace concise
