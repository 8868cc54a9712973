#pragma once

#include "concise/algebra.hpp"

namespace concise {

struct NotConcise : std::runtime_error {
    explicit NotConcise(const std::string& what) : std::runtime_error(what) {}
};
struct PreconditionFailure : std::runtime_error {
    explicit PreconditionFailure(const std::string& what) : std::runtime_error(what) {}
};
struct Not1Generic : std::runtime_error {
    explicit Not1Generic(const std::string& what) : std::runtime_error(what) {}
};
struct NotRegular : std::runtime_error {
    int coordinate;
    explicit NotRegular(int coord)
        : std::runtime_error("restriction is not regular on coordinate " + std::to_string(coord + 1)),
          coordinate(coord) {}
};
struct UnsupportedSize : std::runtime_error {
    explicit UnsupportedSize(const std::string& what) : std::runtime_error(what) {}
};

// The centroid of a concise m x ... x m tensor: tuples (X_1, ..., X_d) of
// endomorphisms with X_1 o T = X_i o T for all i, together with the algebra
// structure induced by composition in the first slot.
template <class K>
struct Centroid {
    int dim = 0;
    std::vector<std::vector<Matrix<K>>> basis; // basis tuples
    FiniteAlgebra<K> algebra;
    std::vector<K> unit_coords;
};

template <class K>
Centroid<K> centroid(const Tensor<K>& t) {
    const int d = t.order();
    const int m = t.dims[0];
    for (int x : t.dims)
        if (x != m) throw ShapeMismatch("centroid needs equal coordinate dimensions");
    for (int nu : t.format)
        if (nu != 1) throw ShapeMismatch("centroid is defined for the Segre format");
    for (int i = 0; i < d; ++i)
        if (!is_concise(t, i)) throw NotConcise("centroid needs a concise tensor");
    K one{};
    bool found = false;
    for (const auto& x : t.data)
        if (!is_zero(x)) { one = one_like(x); found = true; break; }
    if (!found) throw NotConcise("zero tensor");

    // unknowns: d matrices m x m -> d m^2 columns; equations from all entries
    size_t nent = t.data.size();
    int nunk = d * m * m;
    Matrix<K> sys(static_cast<int>((d - 1) * nent), nunk, zero_like(one));
    auto sd = t.slot_dims();
    int row = 0;
    for (int i = 1; i < d; ++i) {
        detail::for_each_index(t, [&](const std::vector<int>& ix) {
            // (X_1 o T)_ix = sum_b X1[ix[0], b] T[b at 0]
            for (int b = 0; b < m; ++b) {
                std::vector<int> jx = ix;
                jx[0] = b;
                sys(row, (0 * m + ix[0]) * m + b) += t.at(jx);
                jx = ix;
                jx[i] = b;
                sys(row, (i * m + ix[i]) * m + b) -= t.at(jx);
            }
            ++row;
        });
    }
    auto ker = kernel_basis(sys, one);
    Centroid<K> cen;
    cen.dim = static_cast<int>(ker.size());
    for (const auto& v : ker) {
        std::vector<Matrix<K>> tup;
        for (int i = 0; i < d; ++i) {
            Matrix<K> x(m, m);
            for (int r = 0; r < m; ++r)
                for (int cidx = 0; cidx < m; ++cidx) x(r, cidx) = v[(i * m + r) * m + cidx];
            tup.push_back(std::move(x));
        }
        cen.basis.push_back(std::move(tup));
    }
    // coordinates of a tuple in the basis (all components must match)
    Matrix<K> span(static_cast<int>(nunk), cen.dim, zero_like(one));
    for (int b = 0; b < cen.dim; ++b)
        for (int i = 0; i < d; ++i)
            for (int r = 0; r < m; ++r)
                for (int cidx = 0; cidx < m; ++cidx)
                    span((i * m + r) * m + cidx, b) = cen.basis[b][i](r, cidx);
    auto coords_of = [&](const std::vector<Matrix<K>>& tup) -> std::vector<K> {
        Matrix<K> aug(nunk, cen.dim + 1, zero_like(one));
        for (int r = 0; r < nunk; ++r)
            for (int b = 0; b < cen.dim; ++b) aug(r, b) = span(r, b);
        for (int i = 0; i < d; ++i)
            for (int r = 0; r < m; ++r)
                for (int cidx = 0; cidx < m; ++cidx)
                    aug((i * m + r) * m + cidx, cen.dim) = tup[i](r, cidx);
        std::vector<int> piv;
        gauss_reduce(aug, &piv);
        for (int pc : piv)
            if (pc == cen.dim)
                throw std::logic_error("centroid is not closed under composition");
        std::vector<K> out(cen.dim, zero_like(one));
        for (size_t pi = 0; pi < piv.size(); ++pi) out[piv[pi]] = aug(static_cast<int>(pi), cen.dim);
        return out;
    };
    // structure constants from composition; closure is verified, not assumed
    std::vector<K> cs(static_cast<size_t>(cen.dim) * cen.dim * cen.dim, zero_like(one));
    for (int a = 0; a < cen.dim; ++a)
        for (int b = 0; b < cen.dim; ++b) {
            std::vector<Matrix<K>> comp;
            for (int i = 0; i < d; ++i) comp.push_back(cen.basis[a][i] * cen.basis[b][i]);
            std::vector<K> co = coords_of(comp);
            for (int k = 0; k < cen.dim; ++k)
                cs[(static_cast<size_t>(a) * cen.dim + b) * cen.dim + k] = co[k];
        }
    std::vector<Matrix<K>> id_tuple;
    for (int i = 0; i < d; ++i) id_tuple.push_back(Matrix<K>::identity(m, one));
    cen.unit_coords = coords_of(id_tuple);
    cen.algebra = FiniteAlgebra<K>(cen.dim, std::move(cs), cen.unit_coords);
    return cen;
}

struct BorderRankReport {
    int centroid_dim = 0;
    bool centroid_abundant = false;
    bool decided = false;  // m <= 5 over the rationals: abundance decides minimality
    bool minimal = false;
};

// Minimal border rank is decided by centroid abundance for concise tensors of
// size up to 5 over the rationals; larger sizes report the necessary
// condition only.
inline BorderRankReport minimal_border_rank_report(const Tensor<Rational>& t) {
    const int m = t.dims.empty() ? 0 : t.dims[0];
    Centroid<Rational> cen = centroid(t);
    BorderRankReport r;
    r.centroid_dim = cen.dim;
    r.centroid_abundant = cen.dim >= m;
    r.decided = m <= 5;
    r.minimal = r.decided && r.centroid_abundant;
    return r;
}

inline bool is_minimal_border_rank(const Tensor<Rational>& t) {
    const int m = t.dims.empty() ? 0 : t.dims[0];
    if (m > 5) throw UnsupportedSize("the abundance criterion decides only m <= 5");
    return minimal_border_rank_report(t).minimal;
}

// Symbolic determinant of the generator condition on a chosen set of m
// centroid basis elements: alpha generates the centroid module W_i^dual iff
// some such determinant is a nonzero polynomial in alpha.
template <class K>
MPoly<K> one_generic_discriminant(const Tensor<K>& t, const Centroid<K>& cen, int coord,
                                  const std::vector<int>& which = {}) {
    const int m = t.dims[0];
    std::vector<int> cols = which;
    if (cols.empty()) {
        if (cen.dim != m) throw PreconditionFailure("centroid must have dimension m");
        cols.resize(m);
        std::iota(cols.begin(), cols.end(), 0);
    }
    Matrix<MPoly<K>> mm(m, m);
    for (int ci = 0; ci < m; ++ci) {
        const Matrix<K>& act = cen.basis[cols[ci]][coord];
        for (int row = 0; row < m; ++row) {
            MPoly<K> entry(m);
            // (act^T alpha)_row = sum_a act(a, row) alpha_a
            for (int a = 0; a < m; ++a) {
                if (is_zero(act(a, row))) continue;
                std::vector<int> e(m, 0);
                e[a] = 1;
                entry.add_term(e, act(a, row));
            }
            mm(row, ci) = std::move(entry);
        }
    }
    return det_mpoly(mm);
}

// Witness functional for 1-genericity at a coordinate, or nullopt.
inline std::optional<std::vector<Rational>> one_generic_witness(const Tensor<Rational>& t,
                                                                const Centroid<Rational>& cen,
                                                                int coord) {
    const int m = t.dims[0];
    for (int i = 0; i < t.order(); ++i)
        if (!is_concise(t, i)) throw PreconditionFailure("tensor must be concise");
    if (cen.dim < m) throw PreconditionFailure("tensor must be centroid-abundant");
    MPoly<Rational> disc(m);
    {
        // alpha generates iff some m-subset of the centroid basis acts with
        // nonzero determinant; the subsets are scanned in lexicographic order
        std::vector<int> subset(m);
        std::iota(subset.begin(), subset.end(), 0);
        for (;;) {
            disc = one_generic_discriminant(t, cen, coord, subset);
            if (!disc.zero()) break;
            int k = m - 1;
            while (k >= 0 && subset[k] == cen.dim - m + k) --k;
            if (k < 0) return std::nullopt;
            ++subset[k];
            for (int l = k + 1; l < m; ++l) subset[l] = subset[l - 1] + 1;
        }
    }
    Rational one(1);
    std::vector<int> point(m, 0);
    for (;;) {
        std::vector<Rational> p;
        for (int x : point) p.emplace_back(x);
        if (!is_zero(eval_mpoly(disc, p, one))) {
            // verify the contraction rank on every other coordinate
            for (int j = 0; j < t.order(); ++j) {
                if (j == coord) continue;
                // contraction T(alpha): W_j^dual -> rest
                Matrix<Rational> con(m, static_cast<int>(t.data.size()) / (m * m), Rational(0));
                int cidx = 0;
                auto sd = t.slot_dims();
                std::map<std::vector<int>, int> colmap;
                detail::for_each_index(t, [&](const std::vector<int>& ix) {
                    std::vector<int> rest;
                    for (size_t k = 0; k < ix.size(); ++k)
                        if (static_cast<int>(k) != coord && static_cast<int>(k) != j)
                            rest.push_back(ix[k]);
                    auto it = colmap.find(rest);
                    int cc;
                    if (it == colmap.end()) { cc = cidx++; colmap.emplace(rest, cc); }
                    else cc = it->second;
                    con(ix[j], cc) += p[ix[coord]] * t.at(ix);
                });
                if (rank_gauss(con) != m)
                    throw std::logic_error("generator witness fails the contraction rank check");
            }
            return p;
        }
        int k = m - 1;
        while (k >= 0 && ++point[k] > m) point[k--] = 0;
        if (k < 0) throw std::logic_error("no grid witness for a nonzero discriminant");
    }
}

template <class K>
struct RecoveredStructure {
    FiniteAlgebra<K> algebra;
    Functional<K> eps;
    std::vector<std::vector<K>> generators;   // alpha_i per coordinate
    std::vector<Matrix<K>> identifications;   // sigma_i : A -> W_i^dual
};

// A concise 1-generic centroid-abundant tensor is an evaluation tensor; this
// recovers (A, eps) together with the identifications and verifies the
// round-trip exactly.
inline RecoveredStructure<Rational> recover_structure(const Tensor<Rational>& t) {
    const int d = t.order();
    const int m = t.dims[0];
    Centroid<Rational> cen = centroid(t);
    if (cen.dim < m) throw Not1Generic("tensor is not centroid-abundant");
    if (cen.dim > m) throw Not1Generic("centroid dimension exceeds m, no coordinate is generic");
    RecoveredStructure<Rational> out;
    out.algebra = cen.algebra;
    Rational one(1);
    for (int i = 0; i < d; ++i) {
        auto alpha = one_generic_witness(t, cen, i);
        if (!alpha) throw Not1Generic("no generator on coordinate " + std::to_string(i + 1));
        out.generators.push_back(*alpha);
        // sigma_i : A -> W_i^dual, a (basis k) -> B_k^T alpha
        Matrix<Rational> sigma(m, m, Rational(0));
        for (int k = 0; k < m; ++k) {
            const Matrix<Rational>& act = cen.basis[k][i];
            for (int r = 0; r < m; ++r) {
                Rational v(0);
                for (int a = 0; a < m; ++a) v += act(a, r) * (*alpha)[a];
                sigma(r, k) = v;
            }
        }
        out.identifications.push_back(std::move(sigma));
    }
    // pull T back through the identifications and read off eps
    std::vector<Matrix<Rational>> pullback;
    for (int i = 0; i < d; ++i) pullback.push_back(out.identifications[i].transposed());
    Tensor<Rational> e = restrict_tensor(t, pullback);
    Functional<Rational> eps(m, Rational(0));
    // eps(a) = E[a, unit, ..., unit]
    for (int a = 0; a < m; ++a) {
        Rational v(0);
        detail::for_each_index(e, [&](const std::vector<int>& ix) {
            if (ix[0] != a) return;
            Rational w = e.at(ix);
            if (is_zero(w)) return;
            for (int s = 1; s < d; ++s) w *= cen.algebra.unit[ix[s]];
            v += w;
        });
        eps[a] = v;
    }
    out.eps = eps;
    Tensor<Rational> check = evaluation_tensor(out.algebra, out.eps, d);
    if (!(check == e)) throw std::logic_error("recovered structure fails the round-trip identity");
    (void)one;
    return out;
}

// Ideal generated by a set of elements; regularity of a restriction map.
template <class K>
std::vector<std::vector<K>> ideal_generated_by(const FiniteAlgebra<K>& alg,
                                               const std::vector<std::vector<K>>& gens) {
    K one = alg.one_of();
    const int m = alg.dim;
    std::vector<std::vector<K>> cur = gens;
    for (;;) {
        std::vector<std::vector<K>> rows = cur;
        for (const auto& g : cur)
            for (int i = 0; i < m; ++i) rows.push_back(alg.multiply(alg.basis_vector(i), g));
        Matrix<K> mat(static_cast<int>(rows.size()), m, zero_like(one));
        for (size_t r = 0; r < rows.size(); ++r)
            for (int c = 0; c < m; ++c) mat(static_cast<int>(r), c) = rows[r][c];
        std::vector<int> piv;
        int rk = gauss_reduce(mat, &piv);
        std::vector<std::vector<K>> next;
        for (int r = 0; r < rk; ++r) {
            std::vector<K> v(m, zero_like(one));
            for (int c = 0; c < m; ++c) v[c] = mat(r, c);
            next.push_back(std::move(v));
        }
        if (next.size() == cur.size()) {
            bool same = true;
            for (size_t i = 0; i < next.size() && same; ++i) same = next[i] == cur[i];
            if (same) return next;
        }
        cur = std::move(next);
    }
}

// phi : A^dual -> V (matrix dim V x m). Regular iff the ideal generated by the
// image of phi^dual : V^dual -> A is all of A.
template <class K>
bool is_regular(const Matrix<K>& phi, const FiniteAlgebra<K>& alg) {
    if (phi.cols != alg.dim) throw ShapeMismatch("restriction domain mismatch");
    std::vector<std::vector<K>> gens;
    for (int r = 0; r < phi.rows; ++r) {
        std::vector<K> g(alg.dim);
        for (int c = 0; c < alg.dim; ++c) g[c] = phi(r, c);
        gens.push_back(std::move(g));
    }
    auto ideal = ideal_generated_by(alg, gens);
    return static_cast<int>(ideal.size()) == alg.dim;
}

// Jointly spanning: products of the images of phi_i^dual span A.
template <class K>
bool is_jointly_spanning(const std::vector<Matrix<K>>& phis, const FiniteAlgebra<K>& alg) {
    K one = alg.one_of();
    const int m = alg.dim;
    std::vector<std::vector<K>> span{alg.unit};
    bool first = true;
    for (const auto& phi : phis) {
        std::vector<std::vector<K>> gens;
        for (int r = 0; r < phi.rows; ++r) {
            std::vector<K> g(m);
            for (int c = 0; c < m; ++c) g[c] = phi(r, c);
            gens.push_back(std::move(g));
        }
        std::vector<std::vector<K>> prods;
        if (first) prods = gens;
        else
            for (const auto& p : span)
                for (const auto& g : gens) prods.push_back(alg.multiply(p, g));
        first = false;
        Matrix<K> mat(static_cast<int>(prods.size()), m, zero_like(one));
        for (size_t r = 0; r < prods.size(); ++r)
            for (int c = 0; c < m; ++c) mat(static_cast<int>(r), c) = prods[r][c];
        std::vector<int> piv;
        int rk = gauss_reduce(mat, &piv);
        span.clear();
        for (int r = 0; r < rk; ++r) {
            std::vector<K> v(m, zero_like(one));
            for (int c = 0; c < m; ++c) v[c] = mat(r, c);
            span.push_back(std::move(v));
        }
    }
    return static_cast<int>(span.size()) == m;
}

template <class K>
struct CactusCertificate {
    FiniteAlgebra<K> algebra;
    Functional<K> eps;
    std::vector<Matrix<K>> maps; // phi_i : A^dual -> V_i
};

template <class K>
Tensor<K> build_cactus_tensor(const CactusCertificate<K>& cert, int d) {
    for (size_t i = 0; i < cert.maps.size(); ++i)
        if (!is_regular(cert.maps[i], cert.algebra)) throw NotRegular(static_cast<int>(i));
    Tensor<K> e = evaluation_tensor(cert.algebra, cert.eps, d);
    return restrict_tensor(e, cert.maps);
}

struct CactusVerification {
    bool matches = false;
    bool regular = true;
    int cactus_rank_bound = 0;
};

template <class K>
CactusVerification verify_cactus_certificate(const Tensor<K>& t, const CactusCertificate<K>& cert) {
    CactusVerification out;
    out.cactus_rank_bound = cert.algebra.dim;
    for (size_t i = 0; i < cert.maps.size(); ++i)
        if (!is_regular(cert.maps[i], cert.algebra)) {
            out.regular = false;
            return out;
        }
    Tensor<K> e = evaluation_tensor(cert.algebra, cert.eps, static_cast<int>(cert.maps.size()));
    out.matches = restrict_tensor(e, cert.maps) == t;
    return out;
}

} // namespace concise
