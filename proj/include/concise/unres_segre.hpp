#pragma once

#include <optional>
#include <set>
#include <string>

#include "concise/tensor.hpp"

namespace concise {

struct NotGenericallyConcise : std::runtime_error {
    int coordinate;
    explicit NotGenericallyConcise(int coord)
        : std::runtime_error("general member not concise on coordinate " + std::to_string(coord + 1)),
          coordinate(coord) {}
};

struct InputMismatch : std::runtime_error {
    explicit InputMismatch(const std::string& what) : std::runtime_error(what) {}
};

template <class K, class F>
Matrix<K> map_entries(const Matrix<RatFunc<K>>& m, F&& f) {
    Matrix<K> out(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) out.a[i] = f(m.a[i]);
    return out;
}

// A degeneration T_t: a tensor with series entries, all of valuation >= 0.
template <class K>
struct Degeneration {
    Tensor<RatFunc<K>> tensor;

    explicit Degeneration(Tensor<RatFunc<K>> t) : tensor(std::move(t)) {
        for (const auto& x : tensor.data)
            if (!x.nonnegative_valuation())
                throw std::invalid_argument("degeneration entries must have valuation >= 0");
    }

    Tensor<K> limit() const {
        return map_entries<K>(tensor, [](const RatFunc<K>& x) { return x.limit0(); });
    }
};

template <class K>
struct UnresCertificate {
    Tensor<RatFunc<K>> input_t;
    std::vector<int> order;                       // coordinate processing order (0-based)
    Tensor<RatFunc<K>> unrestriction_t;
    std::vector<Matrix<RatFunc<K>>> maps_t;       // restrict(unrestriction_t, maps_t) == input_t
    Tensor<K> limit;
    std::vector<Matrix<K>> maps_limit;
    std::vector<std::vector<int>> minor_choices;  // chosen column sets, in processing order
};

namespace segre_detail {

// Minor search on the column matroid of a flattening over k(t^(1/N)). The
// matrix is cleared once into a polynomial matrix (a common row scaling
// leaves the optimal bases unchanged) and everything afterwards runs
// fraction-free: determinants by Bareiss and Cramer valuations through the
// adjugate, so no rational-function reduction happens inside the search.
template <class K>
struct MinorSearch {
    const Matrix<RatFunc<K>>& m;
    long long N = 1;
    Matrix<Poly<K>> p; // row-cleared polynomial matrix

    explicit MinorSearch(const Matrix<RatFunc<K>>& mat) : m(mat) {
        for (const auto& e : m.a)
            if (!e.zero()) N = std::lcm(N, e.N);
        p = Matrix<Poly<K>>(m.rows, m.cols);
        for (int r = 0; r < m.rows; ++r) {
            Poly<K> lcm;
            for (int c = 0; c < m.cols; ++c) {
                const auto& x = m(r, c);
                if (x.zero()) continue;
                auto xs = x.rescaled(static_cast<int>(N / x.N));
                if (lcm.zero()) lcm = xs.den;
                else {
                    Poly<K> g = Poly<K>::gcd(lcm, xs.den);
                    lcm = lcm * Poly<K>::divmod(xs.den, g).first;
                }
            }
            if (lcm.zero()) continue; // zero row
            for (int c = 0; c < m.cols; ++c) {
                const auto& x = m(r, c);
                if (x.zero()) continue;
                auto xs = x.rescaled(static_cast<int>(N / x.N));
                p(r, c) = xs.num * Poly<K>::divmod(lcm, xs.den).first;
            }
        }
    }

    Matrix<Poly<K>> submatrix_p(const std::vector<int>& cols) const {
        Matrix<Poly<K>> x(p.rows, p.rows);
        for (int r = 0; r < p.rows; ++r)
            for (size_t j = 0; j < cols.size(); ++j) x(r, static_cast<int>(j)) = p(r, cols[j]);
        return x;
    }

    Matrix<RatFunc<K>> submatrix(const std::vector<int>& cols) const {
        Matrix<RatFunc<K>> x(m.rows, m.rows);
        for (int r = 0; r < m.rows; ++r)
            for (size_t j = 0; j < cols.size(); ++j) x(r, static_cast<int>(j)) = m(r, cols[j]);
        return x;
    }

    // greedy completion: pivot forced columns first, then minimal-valuation
    // pivots; fraction-free cross-multiplication updates with per-row shifts
    std::optional<std::vector<int>> complete(const std::vector<int>& forced,
                                             const std::set<int>& banned) const {
        Matrix<Poly<K>> w = p;
        std::vector<long long> shift(p.rows, 0); // subtracted from ord to weight pivots
        std::vector<bool> used_row(p.rows, false);
        std::vector<int> cols;
        auto eff = [&](int r, int c) -> std::optional<long long> {
            auto o = w(r, c).ord();
            if (!o) return std::nullopt;
            return *o - shift[r];
        };
        auto eliminate = [&](int br, int bc) {
            const long long ob = w(br, bc).ord().value();
            for (int r = 0; r < p.rows; ++r) {
                if (r == br || used_row[r] || w(r, bc).zero()) continue;
                const Poly<K> f = w(r, bc);
                for (int j = 0; j < p.cols; ++j)
                    w(r, j) = w(br, bc) * w(r, j) - f * w(br, j);
                shift[r] += ob;
            }
        };
        auto pivot_col = [&](int c) -> bool {
            int best_row = -1;
            long long best = 0;
            for (int r = 0; r < p.rows; ++r) {
                if (used_row[r]) continue;
                auto v = eff(r, c);
                if (!v) continue;
                if (best_row < 0 || *v < best) { best = *v; best_row = r; }
            }
            if (best_row < 0) return false;
            used_row[best_row] = true;
            cols.push_back(c);
            eliminate(best_row, c);
            return true;
        };
        for (int c : forced)
            if (!pivot_col(c)) return std::nullopt;
        while (static_cast<int>(cols.size()) < p.rows) {
            int best_c = -1, best_r = -1;
            long long best = 0;
            for (int r = 0; r < p.rows; ++r) {
                if (used_row[r]) continue;
                for (int c = 0; c < p.cols; ++c) {
                    if (banned.count(c) || std::count(cols.begin(), cols.end(), c)) continue;
                    auto v = eff(r, c);
                    if (!v) continue;
                    if (best_c < 0 || *v < best) { best = *v; best_c = c; best_r = r; }
                }
            }
            if (best_c < 0) return std::nullopt;
            used_row[best_r] = true;
            cols.push_back(best_c);
            eliminate(best_r, best_c);
        }
        std::sort(cols.begin(), cols.end());
        return cols;
    }

    struct Cramer {
        Matrix<Poly<K>> adjp; // adj(X_p) * p
        Poly<K> det;          // det(X_p)
        // valuation of the normalized entry (r, c) relative to det
        std::optional<long long> relval(int r, int c) const {
            auto o = adjp(r, c).ord();
            if (!o) return std::nullopt;
            return *o - det.ord().value();
        }
    };

    Cramer cramer(const std::vector<int>& cols) const {
        Matrix<Poly<K>> x = submatrix_p(cols);
        Cramer out;
        out.det = det_bareiss(x);
        if (out.det.zero()) throw std::logic_error("dependent basis in the minor search");
        out.adjp = adjugate_poly(x, one_like(out.det.leading())) * p;
        return out;
    }

    struct Optimum {
        std::vector<int> cols;
        Cramer cram;
    };

    // Local search: exchange while some Cramer entry has negative valuation.
    // Local optimality equals global optimality by the valuated-matroid
    // exchange property, so the result attains the minimal determinant
    // valuation among bases avoiding `banned`.
    std::optional<Optimum> optimum(const std::set<int>& banned) const {
        auto start = complete({}, banned);
        if (!start) return std::nullopt;
        std::vector<int> cols = *start;
        for (;;) {
            Cramer cr = cramer(cols);
            int swap_row = -1, swap_col = -1;
            long long worst = 0;
            for (int r = 0; r < p.rows; ++r) {
                for (int c = 0; c < p.cols; ++c) {
                    if (banned.count(c)) continue;
                    auto v = cr.relval(r, c);
                    if (v && *v < 0 && (swap_row < 0 || *v < worst)) {
                        worst = *v; swap_row = r; swap_col = c;
                    }
                }
            }
            if (swap_row < 0) return Optimum{std::move(cols), std::move(cr)};
            cols[swap_row] = swap_col;
            std::sort(cols.begin(), cols.end());
        }
    }

    std::optional<Valuation> min_valuation(const std::set<int>& banned = {}) const {
        auto opt = optimum(banned);
        if (!opt) return std::nullopt;
        return det_ratfunc(submatrix(opt->cols)).valuation();
    }

    // Lexicographically smallest column set among the minimal-valuation bases.
    // The optimal bases form a matroid, so an ascending sweep with single
    // exchanges from one optimal basis computes the lexicographic minimum.
    std::optional<Optimum> lex_min(const std::set<int>& banned = {}) const {
        auto opt = optimum(banned);
        if (!opt) return std::nullopt;
        std::vector<int> cols = std::move(opt->cols);
        Cramer cr = std::move(opt->cram);
        std::set<int> fixed;
        for (int c = 0; c < p.cols && static_cast<int>(fixed.size()) < p.rows; ++c) {
            if (banned.count(c)) continue;
            if (std::find(cols.begin(), cols.end(), c) != cols.end()) {
                fixed.insert(c);
                continue;
            }
            // c may enter iff swapping it for a non-fixed basis column keeps
            // the determinant valuation, i.e. some Cramer entry has valuation 0
            int enter_row = -1;
            for (int r = 0; r < p.rows; ++r) {
                if (fixed.count(cols[r])) continue;
                auto v = cr.relval(r, c);
                if (v && *v == 0) { enter_row = r; break; }
            }
            if (enter_row < 0) continue;
            cols[enter_row] = c;
            std::sort(cols.begin(), cols.end());
            cr = cramer(cols);
            fixed.insert(c);
        }
        if (static_cast<int>(fixed.size()) != m.rows) return std::nullopt;
        return Optimum{std::move(cols), std::move(cr)};
    }

    // normalized flattening X^{-1} M built from the Cramer data; the
    // row-clearing factor cancels between the adjugate and the determinant
    Matrix<RatFunc<K>> normalized(const Cramer& cr) const {
        Matrix<RatFunc<K>> mi(p.rows, p.cols);
        for (int r = 0; r < p.rows; ++r)
            for (int c = 0; c < p.cols; ++c) {
                if (cr.adjp(r, c).zero()) continue;
                mi(r, c) = RatFunc<K>(cr.adjp(r, c), cr.det, N);
            }
        return mi;
    }
};

} // namespace segre_detail

struct UnresStepOptions {
    // When set, pick a minimal-valuation minor different from the canonical
    // lexicographic choice if one exists (used to exercise GL-uniqueness).
    bool prefer_alternate = false;
};

// One step of the Segre unrestriction: returns the new degeneration and the
// coordinate map X with X applied to `coord` of the output reproducing the
// input. Postconditions: output flattening has valuation >= 0 entries and the
// identity on the chosen columns.
template <class K>
std::pair<Tensor<RatFunc<K>>, Matrix<RatFunc<K>>> unres_step(const Tensor<RatFunc<K>>& t, int coord,
                                                             std::vector<int>* cols_out = nullptr,
                                                             const UnresStepOptions& opts = {}) {
    Matrix<RatFunc<K>> m = flatten(t, {coord});
    if (rank(m) != t.dims[coord]) throw NotGenericallyConcise(coord);
    segre_detail::MinorSearch<K> search(m);
    auto opt = search.lex_min();
    if (!opt) throw NotGenericallyConcise(coord);
    if (opts.prefer_alternate) {
        Valuation target = det_ratfunc(search.submatrix(opt->cols)).valuation().value();
        for (int k = 0; k < t.dims[coord]; ++k) {
            std::set<int> banned{opt->cols[k]};
            auto v = search.min_valuation(banned);
            if (v && *v == target) {
                opt = search.lex_min(banned);
                break;
            }
        }
    }
    const std::vector<int>& basis_cols = opt->cols;
    Matrix<RatFunc<K>> x = search.submatrix(basis_cols);
    Matrix<RatFunc<K>> mi = search.normalized(opt->cram);
    // certified postconditions
    for (const auto& e : mi.a)
        if (!e.nonnegative_valuation())
            throw std::logic_error("minor choice not minimal: negative valuation survives");
    for (size_t j = 0; j < basis_cols.size(); ++j)
        for (int r = 0; r < mi.rows; ++r) {
            bool diag = r == static_cast<int>(j);
            const auto& e = mi(r, basis_cols[j]);
            if (diag ? !(e == one_like(e)) : !e.zero())
                throw std::logic_error("chosen columns do not reduce to the identity");
        }
    if (cols_out) *cols_out = basis_cols;
    // unflatten mi back into a tensor shaped like t
    Tensor<RatFunc<K>> out = t;
    auto sd = t.slot_dims();
    int slot = t.group_slot(coord);
    detail::for_each_index(t, [&](const std::vector<int>& idx) {
        long long c = 0;
        for (size_t k = 0; k < sd.size(); ++k)
            if (static_cast<int>(k) != slot) c = c * sd[k] + idx[k];
        out.at(idx) = mi(idx[slot], static_cast<int>(c));
    });
    return {std::move(out), std::move(x)};
}

// Full Segre-format unrestriction along a coordinate order.
template <class K>
UnresCertificate<K> unres_full(const Degeneration<K>& d, std::vector<int> order = {},
                               const UnresStepOptions& opts = {}) {
    const Tensor<RatFunc<K>>& input = d.tensor;
    for (int nu : input.format)
        if (nu != 1) throw ShapeMismatch("Segre unrestriction needs format all ones");
    int n = input.order();
    if (order.empty()) {
        order.resize(n);
        std::iota(order.begin(), order.end(), 0);
    }
    {
        std::vector<int> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> expect(n);
        std::iota(expect.begin(), expect.end(), 0);
        if (sorted != expect) throw std::invalid_argument("order must be a permutation of the coordinates");
    }
    UnresCertificate<K> cert;
    cert.input_t = input;
    cert.order = order;
    Tensor<RatFunc<K>> cur = input;
    cert.maps_t.resize(n);
    cert.minor_choices.clear();
    for (int coord : order) {
        std::vector<int> cols;
        auto [next, x] = unres_step(cur, coord, &cols, opts);
        cert.maps_t[coord] = std::move(x);
        cert.minor_choices.push_back(std::move(cols));
        cur = std::move(next);
        // monotone conciseness of the running limit on the processed coordinate
        Tensor<K> lim = map_entries<K>(cur, [](const RatFunc<K>& e) { return e.limit0(); });
        if (!is_concise(lim, coord))
            throw std::logic_error("intermediate limit lost conciseness on a processed coordinate");
    }
    cert.unrestriction_t = cur;
    cert.limit = map_entries<K>(cur, [](const RatFunc<K>& e) { return e.limit0(); });
    for (int i = 0; i < n; ++i)
        cert.maps_limit.push_back(map_entries<K>(cert.maps_t[i],
                                                 [](const RatFunc<K>& e) { return e.limit0(); }));
    return cert;
}

// Verify the defining identity restrict(unrestriction_t, maps_t) == input_t
// exactly over the series field.
template <class K>
bool certificate_restriction_identity(const UnresCertificate<K>& cert) {
    Tensor<RatFunc<K>> r = restrict_tensor(cert.unrestriction_t, cert.maps_t);
    return r == cert.input_t;
}

struct GlEquivalenceResult {
    bool found = false;
    std::string diagnostic;
};

// Change of basis between two certificates for the same degeneration and the
// same coordinate order but different minor choices. The candidate maps are
// composed over the function field and pass to the limit when the valuation
// condition allows.
template <class K>
std::optional<std::vector<Matrix<K>>> check_gl_equivalence(const UnresCertificate<K>& c1,
                                                           const UnresCertificate<K>& c2,
                                                           std::string* diagnostic = nullptr) {
    if (!(c1.input_t == c2.input_t) || c1.order != c2.order)
        throw InputMismatch("certificates stem from different inputs or orders");
    int n = c1.input_t.order();
    std::vector<Matrix<K>> psi;
    std::vector<Matrix<RatFunc<K>>> psi_t;
    for (int i = 0; i < n; ++i) {
        Matrix<RatFunc<K>> m = solve_right(c2.maps_t[i], c1.maps_t[i]);
        for (const auto& e : m.a)
            if (!e.nonnegative_valuation()) {
                if (diagnostic) *diagnostic = "composed map has negative valuation on coordinate " +
                                              std::to_string(i + 1);
                return std::nullopt;
            }
        psi_t.push_back(m);
        psi.push_back(map_entries<K>(m, [](const RatFunc<K>& e) { return e.limit0(); }));
    }
    for (int i = 0; i < n; ++i) {
        if (!is_invertible(psi[i])) {
            if (diagnostic) *diagnostic = "limit map is singular on coordinate " + std::to_string(i + 1);
            return std::nullopt;
        }
    }
    Tensor<K> moved = restrict_tensor(c1.limit, psi);
    if (!(moved == c2.limit)) {
        if (diagnostic) *diagnostic = "limits are not matched by the composed maps";
        return std::nullopt;
    }
    for (int i = 0; i < n; ++i) {
        Matrix<K> lhs = c2.maps_limit[i] * psi[i];
        if (!(lhs == c1.maps_limit[i])) {
            if (diagnostic) *diagnostic = "restriction maps do not intertwine on coordinate " +
                                          std::to_string(i + 1);
            return std::nullopt;
        }
    }
    return psi;
}

} // namespace concise
