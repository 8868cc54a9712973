#pragma once

#include <map>
#include <vector>

#include "concise/tensor.hpp"

namespace concise {

// Sparse multivariate polynomial over an exact coefficient ring R, with a
// fixed variable count. Terms are kept in lexicographic exponent order.
template <class R>
struct MPoly {
    int nvars = 0;
    std::map<std::vector<int>, R> terms;

    MPoly() = default;
    explicit MPoly(int n) : nvars(n) {}

    static MPoly monomial(int n, std::vector<int> exp, R c) {
        MPoly p(n);
        if (!is_zero(c)) p.terms.emplace(std::move(exp), std::move(c));
        return p;
    }
    static MPoly variable(int n, int j, const R& one) {
        std::vector<int> e(n, 0);
        e[j] = 1;
        return monomial(n, std::move(e), one);
    }

    bool zero() const { return terms.empty(); }

    void add_term(const std::vector<int>& e, const R& c) {
        if (is_zero(c)) return;
        auto it = terms.find(e);
        if (it == terms.end()) terms.emplace(e, c);
        else {
            it->second += c;
            if (is_zero(it->second)) terms.erase(it);
        }
    }

    R coeff(const std::vector<int>& e) const {
        auto it = terms.find(e);
        return it == terms.end() ? R{} : it->second;
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms) {
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    bool homogeneous(int deg) const {
        for (const auto& [e, c] : terms) {
            int s = 0;
            for (int x : e) s += x;
            if (s != deg) return false;
        }
        return true;
    }

    friend MPoly operator+(const MPoly& a, const MPoly& b) {
        MPoly r = a;
        r.nvars = std::max(a.nvars, b.nvars);
        for (const auto& [e, c] : b.terms) r.add_term(e, c);
        return r;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) {
        MPoly r = a;
        r.nvars = std::max(a.nvars, b.nvars);
        for (const auto& [e, c] : b.terms) r.add_term(e, -c);
        return r;
    }
    MPoly operator-() const {
        MPoly r(nvars);
        for (const auto& [e, c] : terms) r.terms.emplace(e, -c);
        return r;
    }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r(std::max(a.nvars, b.nvars));
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) {
                std::vector<int> e(r.nvars, 0);
                for (size_t k = 0; k < ea.size(); ++k) e[k] += ea[k];
                for (size_t k = 0; k < eb.size(); ++k) e[k] += eb[k];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend MPoly operator*(const R& k, const MPoly& b) {
        MPoly r(b.nvars);
        if (is_zero(k)) return r;
        for (const auto& [e, c] : b.terms) r.add_term(e, k * c);
        return r;
    }
    friend bool operator==(const MPoly& a, const MPoly& b) {
        if (a.terms.size() != b.terms.size()) return false;
        auto ia = a.terms.begin();
        auto ib = b.terms.begin();
        for (; ia != a.terms.end(); ++ia, ++ib)
            if (ia->first != ib->first || !(ia->second == ib->second)) return false;
        return true;
    }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    MPoly partial(int j) const {
        MPoly r(nvars);
        for (const auto& [e, c] : terms) {
            if (e[j] == 0) continue;
            std::vector<int> e2 = e;
            e2[j] -= 1;
            R k = c;
            for (int rep = 1; rep < e[j]; ++rep) k += c; // multiply by e[j]
            r.add_term(e2, k);
        }
        return r;
    }

    // Substitute v_i -> sum_j A(j,i) v_j for every variable (the action of a
    // linear map on the ambient space of variables).
    MPoly substituted(const Matrix<R>& A) const {
        if (A.rows != nvars || A.cols != nvars) throw ShapeMismatch("substitution matrix shape");
        MPoly r(nvars);
        for (const auto& [e, c] : terms) {
            MPoly term(nvars);
            term.add_term(std::vector<int>(nvars, 0), c);
            for (int i = 0; i < nvars; ++i) {
                if (e[i] == 0) continue;
                MPoly lin(nvars);
                for (int j = 0; j < nvars; ++j) {
                    if (is_zero(A(j, i))) continue;
                    std::vector<int> ee(nvars, 0);
                    ee[j] = 1;
                    lin.add_term(ee, A(j, i));
                }
                for (int rep = 0; rep < e[i]; ++rep) term = term * lin;
            }
            r = r + term;
        }
        return r;
    }

    // Multiply each term by f(exponent); used for per-variable rescalings.
    template <class F>
    MPoly scaled_by_exponent(F&& f) const {
        MPoly r(nvars);
        for (const auto& [e, c] : terms) r.add_term(e, f(e) * c);
        return r;
    }
};

inline long long multinomial(const std::vector<int>& e) {
    long long total = 0;
    for (int x : e) total += x;
    long long r = 1;
    for (int x : e) {
        for (int k = 1; k <= x; ++k) {
            r = r * total / k; // always divisible at this point
            --total;
        }
    }
    return r;
}

// Polarization: polynomial of degree nu in m variables <-> symmetric tensor
// with dims {m}, format {nu}. Entries are coeff/multinomial, so this needs
// characteristic 0 or > nu.
template <class R>
Tensor<R> poly_to_symmetric_tensor(const MPoly<R>& f, int m, int nu, const R& one) {
    long ch = characteristic(one);
    if (ch != 0 && ch <= nu) throw std::domain_error("characteristic must exceed the degree");
    Tensor<R> t({m}, {nu});
    detail::for_each_index(t, [&](const std::vector<int>& idx) {
        std::vector<int> e(m, 0);
        for (int s : idx) e[s] += 1;
        R c = f.coeff(e);
        if (is_zero(c)) return;
        long long mult = multinomial(e);
        R denom = zero_like(one);
        for (long long k = 0; k < mult; ++k) denom += one;
        t.at(idx) = c / denom;
    });
    return t;
}

template <class R>
MPoly<R> symmetric_tensor_to_poly(const Tensor<R>& t, const R& one) {
    if (t.order() != 1) throw ShapeMismatch("expected a single symmetric group");
    int m = t.dims[0];
    MPoly<R> f(m);
    detail::for_each_index(t, [&](const std::vector<int>& idx) {
        std::vector<int> sorted = idx;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != idx) return; // count each orbit once via its sorted representative
        const R& v = t.at(idx);
        if (is_zero(v)) return;
        std::vector<int> e(m, 0);
        for (int s : idx) e[s] += 1;
        long long mult = multinomial(e);
        R k = zero_like(one);
        for (long long r = 0; r < mult; ++r) k += v;
        f.add_term(e, k);
    });
    (void)one;
    return f;
}

// Determinant of a matrix of polynomials by Laplace expansion with a
// column-subset dynamic program; exact over any ring.
template <class R>
MPoly<R> det_mpoly(const Matrix<MPoly<R>>& m) {
    if (m.rows != m.cols) throw ShapeMismatch("det of non-square matrix");
    int n = m.rows;
    int nv = 0;
    for (const auto& p : m.a) nv = std::max(nv, p.nvars);
    R one{};
    bool have_one = false;
    for (const auto& p : m.a) {
        for (const auto& [e, c] : p.terms)
            if (!is_zero(c)) { one = one_like(c); have_one = true; break; }
        if (have_one) break;
    }
    if (!have_one) return MPoly<R>(nv); // zero matrix
    // dp[mask] after r rows = signed minor on rows 0..r-1 and columns in mask
    std::vector<MPoly<R>> cur(static_cast<size_t>(1) << n, MPoly<R>(nv));
    cur[0] = MPoly<R>::monomial(nv, std::vector<int>(nv, 0), one);
    for (int r = 0; r < n; ++r) {
        std::vector<MPoly<R>> nxt(static_cast<size_t>(1) << n, MPoly<R>(nv));
        for (size_t mask = 0; mask < cur.size(); ++mask) {
            if (__builtin_popcountll(mask) != r || cur[mask].zero()) continue;
            int used_below = 0; // used columns with index < c
            for (int c = 0; c < n; ++c) {
                if (mask & (1ull << c)) { ++used_below; continue; }
                if (m(r, c).zero()) continue;
                MPoly<R> contrib = m(r, c) * cur[mask];
                if ((r - used_below) % 2) contrib = -contrib; // inversions added
                nxt[mask | (1ull << c)] = nxt[mask | (1ull << c)] + contrib;
            }
        }
        cur = std::move(nxt);
    }
    return cur[(static_cast<size_t>(1) << n) - 1];
}

} // namespace concise
