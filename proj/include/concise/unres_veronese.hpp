#pragma once

#include "concise/mpoly.hpp"
#include "concise/unres_segre.hpp"

namespace concise {

struct NotJointlyConcise : std::runtime_error {
    explicit NotJointlyConcise(const std::string& what) : std::runtime_error(what) {}
};

struct BasisExtractionFailure : std::runtime_error {
    explicit BasisExtractionFailure(const std::string& what) : std::runtime_error(what) {}
};

// Tuple of degenerating homogeneous polynomials (F_1)_t, ..., (F_n)_t of a
// common degree in a common set of variables.
template <class K>
struct PolyFamily {
    int nvars = 0;
    int degree = 0;
    std::vector<MPoly<RatFunc<K>>> members;

    PolyFamily() = default;
    PolyFamily(int m, int nu, std::vector<MPoly<RatFunc<K>>> mem)
        : nvars(m), degree(nu), members(std::move(mem)) {
        for (const auto& f : members) {
            if (!f.zero() && !f.homogeneous(nu))
                throw std::invalid_argument("family members must be homogeneous of the stated degree");
            for (const auto& [e, c] : f.terms) {
                long ch = characteristic(c);
                if (ch != 0 && ch <= nu)
                    throw std::domain_error("characteristic must be zero or exceed the degree");
                if (!c.nonnegative_valuation())
                    throw std::invalid_argument("family coefficients must have valuation >= 0");
            }
        }
    }
};

// K-limit of a family member (coefficient-wise constant term).
template <class K>
MPoly<K> limit_poly(const MPoly<RatFunc<K>>& f) {
    MPoly<K> out(f.nvars);
    for (const auto& [e, c] : f.terms) out.add_term(e, c.limit0());
    return out;
}

// Partial derivatives of every member: the tuple d/dv_j F_*.
template <class K, class C>
std::vector<MPoly<C>> family_partial(const std::vector<MPoly<C>>& members, int j, K) {
    std::vector<MPoly<C>> out;
    out.reserve(members.size());
    for (const auto& f : members) out.push_back(f.partial(j));
    return out;
}

// Joint essential span of a tuple of polynomials over K: the span of all
// gradient vectors, returned as a reduced row-echelon basis.
template <class K>
std::vector<std::vector<K>> essential_span(const std::vector<MPoly<K>>& members, int nvars,
                                           const K& one) {
    // Matrix with rows indexed by variable and columns by (member, monomial of
    // degree nu-1): entry = weighted coefficient of the gradient component.
    std::map<std::pair<size_t, std::vector<int>>, int> colindex;
    std::vector<std::vector<K>> mat(nvars);
    for (size_t mi = 0; mi < members.size(); ++mi) {
        for (const auto& [e, c] : members[mi].terms) {
            for (int i = 0; i < nvars; ++i) {
                if (e[i] == 0) continue;
                std::vector<int> e2 = e;
                e2[i] -= 1;
                auto key = std::make_pair(mi, e2);
                auto it = colindex.find(key);
                int col;
                if (it == colindex.end()) {
                    col = static_cast<int>(colindex.size());
                    colindex.emplace(key, col);
                } else
                    col = it->second;
                for (auto& row : mat) row.resize(colindex.size(), zero_like(one));
                K k = c;
                for (int rep = 1; rep < e[i]; ++rep) k += c;
                mat[i][col] += k;
            }
        }
    }
    int ncols = static_cast<int>(colindex.size());
    Matrix<K> m(nvars, std::max(ncols, 1), zero_like(one));
    for (int i = 0; i < nvars; ++i)
        for (int j = 0; j < static_cast<int>(mat[i].size()); ++j) m(i, j) = mat[i][j];
    // row space basis of the TRANSPOSE: we want the span of gradient vectors,
    // i.e. the column space of m^T = row space of m... the gradient vectors are
    // the columns of m^T; equivalently the span of the rows of m^T. Reduce m^T.
    Matrix<K> mt = m.transposed();
    std::vector<int> piv;
    int rk = gauss_reduce(mt, &piv);
    std::vector<std::vector<K>> basis;
    for (int r = 0; r < rk; ++r) {
        std::vector<K> v(nvars, zero_like(one));
        for (int c = 0; c < nvars; ++c) v[c] = mt(r, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class K>
struct PolyStepResult {
    PolyFamily<K> family;            // jointly concise at the limit in one more variable
    Matrix<RatFunc<K>> phi;          // substitution matrix: apply(phi, out) == in
    Valuation weight{0, 1};          // the rescaling exponent w
    int lambda_rounds = 0;
};

// One step of the symmetric unrestriction (the lambda-loop, the triangular
// change of variables, and the weight rescaling).
template <class K>
PolyStepResult<K> unrestrict_poly_step(const PolyFamily<K>& p, int r) {
    const int m = p.nvars;
    const size_t n = p.members.size();
    if (r >= m) throw std::invalid_argument("no variable left to process");
    RatFunc<K> one;
    bool found_one = false;
    for (const auto& f : p.members)
        for (const auto& [e, c] : f.terms)
            if (!is_zero(c)) { one = one_like(c); found_one = true; break; }
    if (!found_one) throw NotJointlyConcise("zero family");
    K kone = one.one_of();

    // exact k(t)-independence of the first r+1 partial tuples; dependence
    // certifies that the lambda-loop would never terminate
    std::vector<std::vector<MPoly<RatFunc<K>>>> partials;
    for (int j = 0; j <= r; ++j) partials.push_back(family_partial(p.members, j, kone));
    {
        std::set<std::pair<size_t, std::vector<int>>> sup;
        for (const auto& tup : partials)
            for (size_t i = 0; i < n; ++i)
                for (const auto& [e, c] : tup[i].terms) sup.insert({i, e});
        std::vector<std::pair<size_t, std::vector<int>>> cols(sup.begin(), sup.end());
        Matrix<RatFunc<K>> mm(r + 1, std::max<int>(1, static_cast<int>(cols.size())));
        for (int j = 0; j <= r; ++j)
            for (size_t ci = 0; ci < cols.size(); ++ci)
                mm(j, static_cast<int>(ci)) = partials[j][cols[ci].first].coeff(cols[ci].second);
        if (rank(mm) <= r)
            throw NotJointlyConcise("partial derivative tuple is dependent over the function field");
    }

    // the limit family must be free of v_r and have independent first r partials
    for (const auto& f : p.members) {
        MPoly<K> lf = limit_poly(f);
        for (const auto& [e, c] : lf.terms)
            if (e[r] != 0)
                throw std::invalid_argument("limit already involves the variable being processed");
    }

    // limits of the first r partial tuples (the lambda-loop targets)
    std::vector<std::vector<MPoly<K>>> lim_partials;
    for (int j = 0; j < r; ++j) {
        std::vector<MPoly<K>> lp;
        for (const auto& f : partials[j]) lp.push_back(limit_poly(f));
        lim_partials.push_back(std::move(lp));
    }
    {
        std::set<std::pair<size_t, std::vector<int>>> sup;
        for (const auto& tup : lim_partials)
            for (size_t i = 0; i < n; ++i)
                for (const auto& [e, c] : tup[i].terms) sup.insert({i, e});
        std::vector<std::pair<size_t, std::vector<int>>> cols(sup.begin(), sup.end());
        Matrix<K> mm(r, std::max<int>(1, static_cast<int>(cols.size())), zero_like(kone));
        for (int j = 0; j < r; ++j)
            for (size_t ci = 0; ci < cols.size(); ++ci)
                mm(j, static_cast<int>(ci)) = lim_partials[j][cols[ci].first].coeff(cols[ci].second);
        if (rank_gauss(mm) != r)
            throw std::invalid_argument("first r limit partials must be linearly independent");
    }

    // iteration budget from the declared bound; the exact rank check above is
    // the real termination certificate
    int deg_t = 0;
    for (const auto& f : p.members)
        for (const auto& [e, c] : f.terms)
            if (!c.zero()) deg_t = std::max<int>(deg_t, c.num.degree() + (c.den.zero() ? 0 : c.den.degree()));
    long budget = 1 + static_cast<long>(deg_t) * (r + 1) + 16;

    // lambda-loop
    std::vector<RatFunc<K>> lambda(r, RatFunc<K>{});
    std::vector<MPoly<RatFunc<K>>> residual = partials[r];
    std::vector<MPoly<K>> final_remainder;
    int rounds = 0;
    RatFunc<K> tpow = one; // t^k
    RatFunc<K> t1 = RatFunc<K>::t_power(kone, 1);
    for (;;) {
        // residual = partial_{r} F - sum lambda_i partial_i F, divided by t^k on the fly
        std::vector<MPoly<K>> lim;
        bool val_ok = true;
        std::vector<MPoly<RatFunc<K>>> scaled(n, MPoly<RatFunc<K>>(m));
        for (size_t i = 0; i < n; ++i) {
            for (const auto& [e, c] : residual[i].terms) {
                RatFunc<K> q = c / tpow;
                if (!q.nonnegative_valuation()) { val_ok = false; break; }
                scaled[i].add_term(e, q);
            }
            if (!val_ok) break;
        }
        if (!val_ok) throw std::logic_error("lambda-loop valuation bookkeeping failed");
        for (const auto& f : scaled) lim.push_back(limit_poly(f));
        // is lim in the K-span of the limit partials?
        std::set<std::pair<size_t, std::vector<int>>> sup;
        for (const auto& tup : lim_partials)
            for (size_t i = 0; i < n; ++i)
                for (const auto& [e, c] : tup[i].terms) sup.insert({i, e});
        for (size_t i = 0; i < n; ++i)
            for (const auto& [e, c] : lim[i].terms) sup.insert({i, e});
        std::vector<std::pair<size_t, std::vector<int>>> cols(sup.begin(), sup.end());
        Matrix<K> sys(static_cast<int>(cols.size()), r + 1, zero_like(kone));
        for (size_t ci = 0; ci < cols.size(); ++ci) {
            for (int j = 0; j < r; ++j)
                sys(static_cast<int>(ci), j) = lim_partials[j][cols[ci].first].coeff(cols[ci].second);
            sys(static_cast<int>(ci), r) = lim[cols[ci].first].coeff(cols[ci].second);
        }
        std::vector<int> piv;
        Matrix<K> red = sys;
        gauss_reduce(red, &piv);
        bool solvable = true;
        for (int pc : piv)
            if (pc == r) { solvable = false; break; }
        if (!solvable) { // residual limit leaves the span: loop done
            final_remainder = std::move(lim);
            break;
        }
        // read off the solution lambda^{(k)} and update
        std::vector<K> lk(r, zero_like(kone));
        for (size_t pi = 0; pi < piv.size(); ++pi) {
            // row pi has pivot at column piv[pi]; solution of [A | b]
            lk[piv[pi]] = red(static_cast<int>(pi), r);
        }
        for (int j = 0; j < r; ++j) {
            if (is_zero(lk[j])) continue;
            RatFunc<K> coeff = RatFunc<K>(lk[j]) * tpow;
            lambda[j] += coeff;
            for (size_t i = 0; i < n; ++i) {
                MPoly<RatFunc<K>> sub(m);
                for (const auto& [e, c] : partials[j][i].terms) sub.add_term(e, coeff * c);
                residual[i] = residual[i] - sub;
            }
        }
        ++rounds;
        tpow = tpow * t1;
        if (rounds > budget)
            throw std::logic_error("lambda-loop exceeded its iteration budget despite independence");
    }

    // triangular change of variables psi: v_i -> v_i - lambda_i v_r (i < r)
    Matrix<RatFunc<K>> psi = Matrix<RatFunc<K>>::identity(m, one);
    for (int j = 0; j < r; ++j) psi(r, j) = -lambda[j];
    std::vector<MPoly<RatFunc<K>>> reduced;
    for (const auto& f : p.members) reduced.push_back(f.substituted(psi));

    // weights e_j: minimal valuation among coefficients of monomials with
    // v_r-exponent exactly j
    const int nu = p.degree;
    std::vector<std::optional<Valuation>> e(nu + 1);
    for (const auto& f : reduced)
        for (const auto& [exp, c] : f.terms) {
            int j = exp[r];
            if (j == 0 || c.zero()) continue;
            auto v = c.valuation().value();
            if (!e[j] || v < *e[j]) e[j] = v;
        }
    std::optional<Valuation> w;
    for (int j = 1; j <= nu; ++j) {
        if (!e[j]) continue;
        Valuation scaled(e[j]->num, e[j]->den * j);
        if (!w || scaled < *w) w = scaled;
    }
    if (!w) throw NotJointlyConcise("the new variable does not occur in the reduced family");
    if (!(*w > Valuation(0, 1)))
        throw std::logic_error("rescaling weight must be positive for a degenerating family");
    if (e[1] && *w > *e[1]) throw std::logic_error("weight exceeds e_1");
    if (e[1] && *w == *e[1]) {
        // in this case the remainder at t=0 must be free of the new variable
        for (const auto& g : final_remainder)
            for (const auto& [exp, c] : g.terms)
                if (exp[r] != 0)
                    throw std::logic_error("w = e_1 but the remainder still involves the new variable");
    }

    // rescale v_r -> t^{-w} v_r
    std::vector<MPoly<RatFunc<K>>> rescaled;
    for (const auto& f : reduced) {
        MPoly<RatFunc<K>> g(m);
        for (const auto& [exp, c] : f.terms) {
            if (exp[r] == 0) { g.add_term(exp, c); continue; }
            RatFunc<K> factor = RatFunc<K>::t_power(kone, -w->num * exp[r], w->den);
            RatFunc<K> scaled = c * factor;
            if (!scaled.nonnegative_valuation())
                throw std::logic_error("rescaled coefficient has negative valuation");
            g.add_term(exp, scaled);
        }
        rescaled.push_back(std::move(g));
    }

    // the restriction map: v_i -> v_i + lambda_i v_r (i < r), v_r -> t^w v_r
    Matrix<RatFunc<K>> phi = Matrix<RatFunc<K>>::identity(m, one);
    for (int j = 0; j < r; ++j) phi(r, j) = lambda[j];
    phi(r, r) = RatFunc<K>::t_power(kone, w->num, w->den);

    // verify the exact restriction identity of the step
    for (size_t i = 0; i < n; ++i) {
        MPoly<RatFunc<K>> back = rescaled[i].substituted(phi);
        if (!(back == p.members[i]))
            throw std::logic_error("step restriction identity failed");
    }

    // limit family must now be jointly concise in v_0..v_r
    {
        std::vector<MPoly<K>> lims;
        for (const auto& f : rescaled) lims.push_back(limit_poly(f));
        auto ess = essential_span(lims, m, kone);
        Matrix<K> em(static_cast<int>(ess.size()), m, zero_like(kone));
        for (size_t i = 0; i < ess.size(); ++i)
            for (int c = 0; c < m; ++c) em(static_cast<int>(i), c) = ess[i][c];
        // restrict to the first r+1 coordinates and check full rank there
        Matrix<K> sub(static_cast<int>(ess.size()), r + 1, zero_like(kone));
        for (int i = 0; i < sub.rows; ++i)
            for (int c = 0; c <= r; ++c) sub(i, c) = em(i, c);
        if (rank_gauss(sub) < r + 1)
            throw std::logic_error("limit family is not jointly concise in the first r+1 variables");
    }

    PolyStepResult<K> out;
    out.family = PolyFamily<K>(m, p.degree, std::move(rescaled));
    out.phi = std::move(phi);
    out.weight = *w;
    out.lambda_rounds = rounds;
    return out;
}

template <class K>
struct FamilyUnrestriction {
    PolyFamily<K> family_t;            // transformed degenerating family
    std::vector<MPoly<K>> limit;       // its limit, jointly concise
    Matrix<RatFunc<K>> phi;            // apply(phi, family_t) == input family
};

// Iterate the step until the limit family is jointly concise in every
// variable, aligning coordinates with constant changes of basis as needed.
template <class K>
FamilyUnrestriction<K> unrestrict_family(PolyFamily<K> fam) {
    const int m = fam.nvars;
    RatFunc<K> one;
    bool found = false;
    for (const auto& f : fam.members)
        for (const auto& [e, c] : f.terms)
            if (!is_zero(c)) { one = one_like(c); found = true; break; }
    if (!found) throw NotJointlyConcise("zero family");
    K kone = one.one_of();
    Matrix<RatFunc<K>> phi_total = Matrix<RatFunc<K>>::identity(m, one);
    PolyFamily<K> orig = fam;
    for (;;) {
        std::vector<MPoly<K>> lims;
        for (const auto& f : fam.members) lims.push_back(limit_poly(f));
        auto ess = essential_span(lims, m, kone);
        int r = static_cast<int>(ess.size());
        if (r == m) {
            FamilyUnrestriction<K> out;
            out.family_t = std::move(fam);
            out.limit = std::move(lims);
            out.phi = std::move(phi_total);
            // exact global restriction identity
            for (size_t i = 0; i < orig.members.size(); ++i) {
                if (!(out.family_t.members[i].substituted(out.phi) == orig.members[i]))
                    throw std::logic_error("global restriction identity failed");
            }
            return out;
        }
        // align: constant change of basis sending the essential span to the
        // first r coordinates (identity when already aligned)
        bool aligned = true;
        for (const auto& v : ess)
            for (int c = r; c < m; ++c)
                if (!is_zero(v[c])) aligned = false;
        if (!aligned) {
            Matrix<K> cmat(m, m, zero_like(kone));
            for (int j = 0; j < r; ++j)
                for (int i = 0; i < m; ++i) cmat(i, j) = ess[j][i];
            // extend with standard vectors on non-pivot coordinates
            std::vector<int> piv;
            Matrix<K> check(r, m, zero_like(kone));
            for (int j = 0; j < r; ++j)
                for (int i = 0; i < m; ++i) check(j, i) = ess[j][i];
            gauss_reduce(check, &piv);
            std::vector<bool> is_piv(m, false);
            for (int pc : piv) is_piv[pc] = true;
            int col = r;
            for (int i = 0; i < m; ++i) {
                if (is_piv[i]) continue;
                cmat(i, col++) = kone;
            }
            if (col != m || !is_invertible(cmat))
                throw std::logic_error("alignment basis is singular");
            Matrix<RatFunc<K>> c_rf(m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) c_rf(i, j) = RatFunc<K>(cmat(i, j));
            Matrix<RatFunc<K>> c_inv = inverse(c_rf, one);
            std::vector<MPoly<RatFunc<K>>> moved;
            for (const auto& f : fam.members) moved.push_back(f.substituted(c_inv));
            fam = PolyFamily<K>(m, fam.degree, std::move(moved));
            phi_total = phi_total * c_rf;
            continue;
        }
        auto step = unrestrict_poly_step(fam, r);
        fam = std::move(step.family);
        phi_total = phi_total * step.phi;
    }
}

template <class K>
struct SymmetricUnrestriction {
    MPoly<RatFunc<K>> family_t;
    MPoly<K> limit;
    Matrix<RatFunc<K>> phi;
};

// Corollary form: a single degenerating polynomial.
template <class K>
SymmetricUnrestriction<K> unrestrict_symmetric(const MPoly<RatFunc<K>>& f_t, int nvars, int degree) {
    PolyFamily<K> fam(nvars, degree, {f_t});
    auto out = unrestrict_family(std::move(fam));
    SymmetricUnrestriction<K> r;
    r.family_t = out.family_t.members[0];
    r.limit = out.limit[0];
    r.phi = out.phi;
    return r;
}

// Partially symmetric unrestriction: per coordinate group, extract a basis of
// the flattening image, run the family algorithm, and transform the tensor.
template <class K>
UnresCertificate<K> unrestrict_partial(const Degeneration<K>& d, std::vector<int> order = {}) {
    const Tensor<RatFunc<K>>& input = d.tensor;
    int ngroups = input.order();
    if (order.empty()) {
        order.resize(ngroups);
        std::iota(order.begin(), order.end(), 0);
    }
    RatFunc<K> one;
    bool found = false;
    for (const auto& x : input.data)
        if (!x.zero()) { one = one_like(x); found = true; break; }
    if (!found) throw NotGenericallyConcise(0);
    K kone = one.one_of();

    UnresCertificate<K> cert;
    cert.input_t = input;
    cert.order = order;
    Tensor<RatFunc<K>> cur = input;
    cert.maps_t.assign(ngroups, Matrix<RatFunc<K>>{});
    for (int g : order) {
        const int m = cur.dims[g];
        const int nu = cur.format[g];
        if (rank(flatten_single_slot(cur, g)) != m) throw NotGenericallyConcise(g);
        // the family is the full tuple of flattening image generators; its
        // transformed limit is exactly the limit flattening, so joint
        // conciseness of the output tuple is conciseness of the new limit
        Matrix<RatFunc<K>> fl = flatten(cur, {g});
        std::vector<MPoly<RatFunc<K>>> family;
        for (int c = 0; c < fl.cols; ++c) {
            Tensor<RatFunc<K>> sym({m}, {nu});
            for (int r = 0; r < fl.rows; ++r) sym.data[r] = fl(r, c);
            MPoly<RatFunc<K>> memb = symmetric_tensor_to_poly(sym, one);
            if (!memb.zero()) family.push_back(std::move(memb));
        }
        auto fu = unrestrict_family(PolyFamily<K>(m, nu, std::move(family)));
        Matrix<RatFunc<K>> phi_inv = inverse(fu.phi, one);
        Tensor<RatFunc<K>> next = apply_to_group(cur, g, phi_inv);
        for (const auto& x : next.data)
            if (!x.nonnegative_valuation())
                throw BasisExtractionFailure(
                    "transformed tensor left the series ring on coordinate " + std::to_string(g + 1));
        Tensor<K> lim = map_entries<K>(next, [](const RatFunc<K>& e) { return e.limit0(); });
        if (!is_concise(lim, g))
            throw BasisExtractionFailure(
                "flattening image degenerates at t=0 on coordinate " + std::to_string(g + 1));
        cert.maps_t[g] = fu.phi;
        cert.minor_choices.push_back({});
        cur = std::move(next);
    }
    cert.unrestriction_t = cur;
    cert.limit = map_entries<K>(cur, [](const RatFunc<K>& e) { return e.limit0(); });
    for (int i = 0; i < ngroups; ++i)
        cert.maps_limit.push_back(map_entries<K>(cert.maps_t[i],
                                                 [](const RatFunc<K>& e) { return e.limit0(); }));
    // exponent denominators divide prod(nu_i!)
    long long bound = 1;
    for (int nu : input.format) {
        long long f = 1;
        for (int k = 2; k <= nu; ++k) f *= k;
        bound *= f;
    }
    for (const auto& x : cert.unrestriction_t.data)
        if (!x.zero() && bound % x.N != 0)
            throw std::logic_error("exponent denominator exceeds the format bound");
    return cert;
}

} // namespace concise
