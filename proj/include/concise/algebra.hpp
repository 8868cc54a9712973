#pragma once

#include <optional>

#include "concise/mpoly.hpp"

namespace concise {

struct UnsupportedField : std::runtime_error {
    explicit UnsupportedField(const std::string& what) : std::runtime_error(what) {}
};

// Unital commutative associative algebra of finite dimension, presented by
// structure constants: e_i e_j = sum_k c[i][j][k] e_k.
template <class K>
struct FiniteAlgebra {
    int dim = 0;
    std::vector<K> structure; // index (i*dim + j)*dim + k
    std::vector<K> unit;      // coordinates of the identity

    FiniteAlgebra() = default;
    FiniteAlgebra(int m, std::vector<K> c, std::vector<K> one_coords)
        : dim(m), structure(std::move(c)), unit(std::move(one_coords)) {
        if (static_cast<size_t>(dim) * dim * dim != structure.size() ||
            static_cast<size_t>(dim) != unit.size())
            throw ShapeMismatch("structure constant array shape");
        validate();
    }

    const K& c(int i, int j, int k) const {
        return structure[(static_cast<size_t>(i) * dim + j) * dim + k];
    }

    std::vector<K> multiply(const std::vector<K>& a, const std::vector<K>& b) const {
        std::vector<K> r(dim, K{});
        for (int i = 0; i < dim; ++i) {
            if (is_zero(a[i])) continue;
            for (int j = 0; j < dim; ++j) {
                if (is_zero(b[j])) continue;
                K ab = a[i] * b[j];
                for (int k = 0; k < dim; ++k) {
                    if (is_zero(c(i, j, k))) continue;
                    r[k] += ab * c(i, j, k);
                }
            }
        }
        return r;
    }

    // matrix of multiplication by a
    Matrix<K> mult_matrix(const std::vector<K>& a) const {
        Matrix<K> m(dim, dim);
        for (int j = 0; j < dim; ++j) {
            std::vector<K> ej(dim, K{});
            ej[j] = one_of();
            std::vector<K> col = multiply(a, ej);
            for (int k = 0; k < dim; ++k) m(k, j) = col[k];
        }
        return m;
    }

    std::vector<K> basis_vector(int i) const {
        std::vector<K> v(dim, K{});
        v[i] = one_of();
        return v;
    }

    K one_of() const {
        for (const auto& x : structure)
            if (!is_zero(x)) return one_like(x);
        for (const auto& x : unit)
            if (!is_zero(x)) return one_like(x);
        throw std::logic_error("algebra with no nonzero data");
    }

    void validate() const {
        K one = one_of();
        (void)one;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < i; ++j)
                for (int k = 0; k < dim; ++k)
                    if (!(c(i, j, k) == c(j, i, k)))
                        throw std::invalid_argument("structure constants are not commutative");
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                for (int k = 0; k < dim; ++k) {
                    std::vector<K> lhs =
                        multiply(multiply(basis_vector(i), basis_vector(j)), basis_vector(k));
                    std::vector<K> rhs =
                        multiply(basis_vector(i), multiply(basis_vector(j), basis_vector(k)));
                    if (!(lhs == rhs)) throw std::invalid_argument("structure constants not associative");
                }
        for (int i = 0; i < dim; ++i) {
            std::vector<K> u = multiply(unit, basis_vector(i));
            if (!(u == basis_vector(i))) throw std::invalid_argument("unit does not act as identity");
        }
    }

    bool is_invertible_element(const std::vector<K>& a) const {
        return concise::is_invertible(mult_matrix(a));
    }
};

template <class K>
using Functional = std::vector<K>; // element of the dual

// Iterated multiplication tensor in (A^dual)^(d-1) (x) A.
template <class K>
Tensor<K> multiplication_tensor(const FiniteAlgebra<K>& alg, int d) {
    if (d < 2) throw std::invalid_argument("order must be at least 2");
    Tensor<K> t(std::vector<int>(d, alg.dim));
    std::vector<int> idx(d, 0);
    detail::for_each_index(t, [&](const std::vector<int>& ix) {
        std::vector<K> prod = alg.basis_vector(ix[0]);
        for (int s = 1; s + 1 < d; ++s) prod = alg.multiply(prod, alg.basis_vector(ix[s]));
        t.at(ix) = prod[ix[d - 1]];
    });
    return t;
}

// Evaluation tensor of (A, eps): (a_1, ..., a_d) -> eps(a_1 ... a_d).
template <class K>
Tensor<K> evaluation_tensor(const FiniteAlgebra<K>& alg, const Functional<K>& eps, int d) {
    if (static_cast<int>(eps.size()) != alg.dim) throw ShapeMismatch("functional dimension");
    Tensor<K> t(std::vector<int>(d, alg.dim));
    detail::for_each_index(t, [&](const std::vector<int>& ix) {
        std::vector<K> prod = alg.basis_vector(ix[0]);
        for (int s = 1; s < d; ++s) prod = alg.multiply(prod, alg.basis_vector(ix[s]));
        K v{};
        for (int k = 0; k < alg.dim; ++k) v += eps[k] * prod[k];
        t.at(ix) = v;
    });
    return t;
}

template <class K>
struct GorensteinQuotient {
    FiniteAlgebra<K> quotient;
    Functional<K> eps;
    Matrix<K> projection; // dim(quotient) x dim(A)
};

// Quotient by I = { a : eps(A a) = 0 }, the kernel of the bilinear form
// (a, b) -> eps(ab). The result is Gorenstein with dual generator eps'.
template <class K>
GorensteinQuotient<K> gorenstein_quotient(const FiniteAlgebra<K>& alg, const Functional<K>& eps) {
    const int m = alg.dim;
    K one = alg.one_of();
    Matrix<K> gram(m, m, zero_like(one));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            std::vector<K> prod = alg.multiply(alg.basis_vector(i), alg.basis_vector(j));
            K v{};
            for (int k = 0; k < m; ++k) v += eps[k] * prod[k];
            gram(i, j) = v;
        }
    }
    auto ker = kernel_basis(gram, one);
    int mq = m - static_cast<int>(ker.size());
    // change of basis: complement basis first, then the ideal
    Matrix<K> gr = gram;
    std::vector<int> piv;
    gauss_reduce(gr, &piv); // pivot columns index a complement of the kernel
    Matrix<K> s(m, m, zero_like(one));
    for (int j = 0; j < mq; ++j) s(piv[j], j) = one;
    for (size_t j = 0; j < ker.size(); ++j)
        for (int i = 0; i < m; ++i) s(i, mq + static_cast<int>(j)) = ker[j][i];
    if (!is_invertible(s)) throw std::logic_error("kernel complement is not a complement");
    Matrix<K> sinv = inverse(s, one);
    // structure constants of the quotient in the complement basis
    std::vector<K> cs(static_cast<size_t>(mq) * mq * mq, zero_like(one));
    for (int i = 0; i < mq; ++i)
        for (int j = 0; j < mq; ++j) {
            std::vector<K> bi(m, zero_like(one)), bj(m, zero_like(one));
            for (int r = 0; r < m; ++r) { bi[r] = s(r, i); bj[r] = s(r, j); }
            std::vector<K> prod = alg.multiply(bi, bj);
            // coordinates in the s-basis, keep the first mq
            for (int k = 0; k < mq; ++k) {
                K v{};
                for (int r = 0; r < m; ++r) v += sinv(k, r) * prod[r];
                cs[(static_cast<size_t>(i) * mq + j) * mq + k] = v;
            }
        }
    std::vector<K> unit_q(mq, zero_like(one));
    for (int k = 0; k < mq; ++k) {
        K v{};
        for (int r = 0; r < m; ++r) v += sinv(k, r) * alg.unit[r];
        unit_q[k] = v;
    }
    Functional<K> eps_q(mq, zero_like(one));
    for (int k = 0; k < mq; ++k) {
        K v{};
        for (int r = 0; r < m; ++r) v += eps[r] * s(r, k);
        eps_q[k] = v;
    }
    GorensteinQuotient<K> out;
    out.quotient = FiniteAlgebra<K>(mq, std::move(cs), std::move(unit_q));
    out.eps = std::move(eps_q);
    out.projection = Matrix<K>(mq, m);
    for (int k = 0; k < mq; ++k)
        for (int r = 0; r < m; ++r) out.projection(k, r) = sinv(k, r);
    return out;
}

// Symbolic Gram determinant det(eps(e_i e_j)) as a polynomial in the
// coordinates of eps; identically zero iff the algebra is not Gorenstein.
template <class K>
MPoly<K> gorenstein_discriminant(const FiniteAlgebra<K>& alg) {
    const int m = alg.dim;
    Matrix<MPoly<K>> gm(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            std::vector<K> prod = alg.multiply(alg.basis_vector(i), alg.basis_vector(j));
            MPoly<K> entry(m);
            for (int k = 0; k < m; ++k) {
                if (is_zero(prod[k])) continue;
                std::vector<int> e(m, 0);
                e[k] = 1;
                entry.add_term(e, prod[k]);
            }
            gm(i, j) = std::move(entry);
        }
    return det_mpoly(gm);
}

template <class K>
K eval_mpoly(const MPoly<K>& f, const std::vector<K>& point, const K& one) {
    K acc{};
    for (const auto& [e, c] : f.terms) {
        K term = c;
        for (size_t i = 0; i < e.size(); ++i)
            for (int rep = 0; rep < e[i]; ++rep) term = term * point[i];
        acc += term;
    }
    (void)one;
    return acc;
}

// A dual generator when one exists. Decided exactly by the symbolic
// determinant; the witness search walks a small deterministic grid.
inline std::optional<Functional<Rational>> is_gorenstein(const FiniteAlgebra<Rational>& alg) {
    MPoly<Rational> disc = gorenstein_discriminant(alg);
    if (disc.zero()) return std::nullopt;
    const int m = alg.dim;
    Rational one(1);
    // a polynomial of degree m cannot vanish on the whole grid {0..m}^m
    std::vector<int> point(m, 0);
    for (;;) {
        std::vector<Rational> p;
        for (int x : point) p.emplace_back(x);
        if (!is_zero(eval_mpoly(disc, p, one))) {
            Matrix<Rational> gram(m, m, Rational(0));
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    std::vector<Rational> prod = alg.multiply(alg.basis_vector(i), alg.basis_vector(j));
                    Rational v(0);
                    for (int k = 0; k < m; ++k) v += p[k] * prod[k];
                    gram(i, j) = v;
                }
            if (rank_gauss(gram) != m) throw std::logic_error("witness failed the rank check");
            return p;
        }
        int k = m - 1;
        while (k >= 0 && ++point[k] > m) point[k--] = 0;
        if (k < 0) throw std::logic_error("no grid witness for a nonzero discriminant");
    }
}

// Direct product of algebras (blockwise structure constants).
template <class K>
FiniteAlgebra<K> algebra_product(const FiniteAlgebra<K>& a, const FiniteAlgebra<K>& b) {
    int m = a.dim + b.dim;
    K one = a.one_of();
    std::vector<K> cs(static_cast<size_t>(m) * m * m, zero_like(one));
    auto put = [&](int i, int j, int k, const K& v) {
        cs[(static_cast<size_t>(i) * m + j) * m + k] = v;
    };
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j)
            for (int k = 0; k < a.dim; ++k) put(i, j, k, a.c(i, j, k));
    for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < b.dim; ++j)
            for (int k = 0; k < b.dim; ++k) put(a.dim + i, a.dim + j, a.dim + k, b.c(i, j, k));
    std::vector<K> unit(m, zero_like(one));
    for (int i = 0; i < a.dim; ++i) unit[i] = a.unit[i];
    for (int i = 0; i < b.dim; ++i) unit[a.dim + i] = b.unit[i];
    return FiniteAlgebra<K>(m, std::move(cs), std::move(unit));
}

// k[x]/(f) for a monic univariate f, in the monomial basis 1, x, ..., x^{deg-1}.
template <class K>
FiniteAlgebra<K> univariate_quotient(const Poly<K>& f) {
    if (f.zero() || f.degree() < 1) throw std::invalid_argument("modulus must have positive degree");
    K one = one_like(f.leading());
    if (!(f.leading() == one)) throw std::invalid_argument("modulus must be monic");
    const int m = f.degree();
    std::vector<K> cs(static_cast<size_t>(m) * m * m, zero_like(one));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Poly<K> prod = Poly<K>::monomial(one, i) * Poly<K>::monomial(one, j);
            Poly<K> rem = Poly<K>::divmod(prod, f).second;
            for (int k = 0; k < m; ++k)
                cs[(static_cast<size_t>(i) * m + j) * m + k] = rem.at(k);
        }
    std::vector<K> unit(m, zero_like(one));
    unit[0] = one;
    return FiniteAlgebra<K>(m, std::move(cs), std::move(unit));
}

// Monomial-and-binomial quotient presentations like "k[x,y]/(x^2, x*y, y^3)"
// or "k[x]/(x^2 - x)"; the monomial basis is derived from the leading terms.
FiniteAlgebra<Rational> parse_algebra(const std::string& presentation);

} // namespace concise
