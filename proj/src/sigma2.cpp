#include "concise/sigma2.hpp"

#include "concise/analysis.hpp"

namespace concise {

MotivePoly operator+(const MotivePoly& a, const MotivePoly& b) {
    MotivePoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
}

MotivePoly operator-(const MotivePoly& a, const MotivePoly& b) {
    MotivePoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.trim();
    return r;
}

MotivePoly operator*(const MotivePoly& a, const MotivePoly& b) {
    if (a.c.empty() || b.c.empty()) return {};
    MotivePoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

MotivePoly MotivePoly::one_plus_L() { return MotivePoly({1, 1}); }
MotivePoly MotivePoly::one_plus_L2() { return MotivePoly({1, 0, 1}); }

MotivePoly MotivePoly::power(const MotivePoly& a, int k) {
    MotivePoly r({1});
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

MotivePoly MotivePoly::geometric(int terms) {
    if (terms <= 0) return {};
    return MotivePoly(std::vector<long long>(terms, 1));
}

MotivePoly csigma2_motive_formula(int d) {
    if (d < 3) throw std::invalid_argument("the concise secant formulas need d >= 3");
    MotivePoly avg = MotivePoly::power(MotivePoly::one_plus_L(), 2 * (d - 1)) +
                     MotivePoly::power(MotivePoly::one_plus_L2(), d - 1);
    for (long long& x : avg.c) {
        if (x % 2 != 0) throw std::logic_error("half factor fails to cancel");
        x /= 2;
    }
    MotivePoly tail = MotivePoly({0, 1}) * MotivePoly::power(MotivePoly::one_plus_L(), d - 1) *
                      MotivePoly::geometric(d - 2);
    return MotivePoly::one_plus_L() * MotivePoly::one_plus_L2() * (avg + tail);
}

MotivePoly segre_fibre_motive(int d) {
    MotivePoly mid;
    mid.c.assign(d - 1, 1);
    mid.c[0] = 0; // L + ... + L^{d-2}
    mid.trim();
    MotivePoly quad({0, 0, d - 1});
    return MotivePoly::power(MotivePoly::one_plus_L(), d - 1) + mid + quad;
}

MotivePoly sigma2_motive_formula(int d) {
    MotivePoly c = csigma2_motive_formula(d);
    long long choose2 = static_cast<long long>(d) * (d - 1) / 2;
    MotivePoly t1 = MotivePoly({0, -1, 0, 1}) * MotivePoly({0, 1, 1}) *
                    MotivePoly::power(MotivePoly::one_plus_L(), d - 2);
    MotivePoly t1s;
    t1s.c = t1.c;
    for (long long& x : t1s.c) x *= choose2;
    t1s.trim();
    MotivePoly fib = segre_fibre_motive(d) - MotivePoly({1});
    MotivePoly t2 = fib * MotivePoly::power(MotivePoly::one_plus_L(), d);
    return c - t1s - t2;
}

long long fixed_point_count_formula(int d) {
    return (1LL << d) * ((1LL << (d - 1)) + 2LL * d - 3);
}

std::vector<FixedPoint> enumerate_fixed_points(int d) {
    if (d < 3) throw std::invalid_argument("fixed-point enumeration needs d >= 3");
    std::vector<FixedPoint> out;
    for (uint32_t base = 0; base < (1u << d); ++base) {
        // height one: subsets I of {1..d-1} with |I| >= 2
        for (uint32_t s = 0; s < (1u << (d - 1)); ++s) {
            if (__builtin_popcount(s) < 2) continue;
            FixedPoint fp;
            fp.base = base;
            fp.height = 1;
            for (int b = 0; b < d - 1; ++b)
                if (s & (1u << b)) fp.I.push_back(b + 1);
            out.push_back(std::move(fp));
        }
        // height two: distinguished coordinate j in {1..d-1}, three types
        for (int j = 1; j < d; ++j)
            for (int type = 1; type <= 3; ++type) {
                FixedPoint fp;
                fp.base = base;
                fp.height = 2;
                fp.j = j;
                fp.type = type;
                out.push_back(std::move(fp));
            }
    }
    return out;
}

std::vector<WeightVector> tangent_weights(const FixedPoint& fp, int d) {
    std::vector<WeightVector> ws;
    auto e = [&](int i, int c = 2) {
        WeightVector v(d, 0);
        v[i] = c;
        return v;
    };
    auto sum = [&](const WeightVector& a, const WeightVector& b) {
        WeightVector v(d, 0);
        for (int i = 0; i < d; ++i) v[i] = a[i] + b[i];
        return v;
    };
    auto neg = [&](const WeightVector& a) {
        WeightVector v(d, 0);
        for (int i = 0; i < d; ++i) v[i] = -a[i];
        return v;
    };
    if (fp.height == 1) {
        WeightVector eI(d, 0);
        for (int i : fp.I) eI[i] = 2;
        std::vector<bool> inI(d, false);
        for (int i : fp.I) inI[i] = true;
        for (int i : fp.I) {
            ws.push_back(e(i));
            ws.push_back(neg(e(i)));
        }
        for (int jj = 1; jj < d; ++jj) {
            if (inI[jj]) continue;
            ws.push_back(e(jj));
            ws.push_back(e(jj));
        }
        ws.push_back(e(0));
        ws.push_back(eI);
        ws.push_back(sum(e(0), eI));
    } else {
        int j = fp.j;
        switch (fp.type) {
            case 1:
                ws = {e(0), e(j), sum(e(0), e(j)), e(j), neg(e(j))};
                for (int c = 1; c < d; ++c) {
                    if (c == j) continue;
                    ws.push_back(e(c));
                    ws.push_back(e(c));
                }
                break;
            case 2:
                ws = {e(0), e(j), sum(e(0), e(j)), neg(e(j)), neg(e(j, 4))};
                for (int c = 1; c < d; ++c) {
                    if (c == j) continue;
                    ws.push_back(e(c));
                    ws.push_back(sum(e(c), e(j)));
                }
                break;
            case 3:
                ws = {e(0), e(j), e(j), sum(e(0), e(j)), e(j, 4)};
                for (int c = 1; c < d; ++c) {
                    if (c == j) continue;
                    ws.push_back(e(c));
                    ws.push_back(sum(e(c), neg(e(j))));
                }
                break;
            default:
                throw std::invalid_argument("height-two type must be 1, 2 or 3");
        }
    }
    // transport to the fixed point's base simple tensor: flip the sign of
    // every coordinate where the base uses y
    for (auto& w : ws)
        for (int i = 0; i < d; ++i)
            if (fp.base & (1u << i)) w[i] = -w[i];
    if (static_cast<int>(ws.size()) != 2 * d + 1)
        throw std::logic_error("tangent weight count must be 2d+1");
    return ws;
}

std::vector<long long> default_one_ps(int d) {
    std::vector<long long> e(d);
    long long v = 1;
    for (int i = 0; i < d; ++i) {
        e[i] = v;
        v *= 9;
    }
    return e;
}

MotivePoly bb_motive(int d, const std::vector<long long>& one_ps) {
    std::vector<long long> e = one_ps.empty() ? default_one_ps(d) : one_ps;
    if (static_cast<int>(e.size()) != d) throw std::invalid_argument("one-parameter subgroup length");
    MotivePoly out;
    out.c.assign(2 * d + 2, 0);
    for (const FixedPoint& fp : enumerate_fixed_points(d)) {
        int positive = 0;
        for (const WeightVector& w : tangent_weights(fp, d)) {
            long long pair = 0;
            for (int i = 0; i < d; ++i) pair += static_cast<long long>(w[i]) * e[i];
            if (pair == 0)
                throw DegenerateOnePS("one-parameter subgroup kills a tangent weight");
            if (pair > 0) ++positive;
        }
        out.c[positive] += 1;
    }
    out.trim();
    return out;
}

namespace {

// Contract away the non-concise coordinates of a border-rank-<=2 tensor,
// leaving the concise core on the coordinates in I.
Tensor<Rational> concise_core(const Tensor<Rational>& t, const std::vector<int>& I) {
    std::vector<Matrix<Rational>> maps;
    for (int i = 0; i < t.order(); ++i) {
        bool keep = std::find(I.begin(), I.end(), i) != I.end();
        if (keep) {
            maps.push_back(Matrix<Rational>::identity(2, Rational(1)));
        } else {
            // the slice span is one-dimensional; pick a covector pairing to 1
            Matrix<Rational> fl = flatten_single_slot(t, i);
            int r = -1, cpivot = -1;
            for (int rr = 0; rr < fl.rows && r < 0; ++rr)
                for (int cc = 0; cc < fl.cols; ++cc)
                    if (!is_zero(fl(rr, cc))) { r = rr; cpivot = cc; break; }
            Matrix<Rational> proj(1, 2, Rational(0));
            if (r < 0) throw std::logic_error("zero tensor has no concise core");
            // the line is spanned by column cpivot of the flattening
            Rational a = fl(0, cpivot), b = fl(1, cpivot);
            if (!is_zero(a)) { proj(0, 0) = Rational(1) / a; }
            else { proj(0, 1) = Rational(1) / b; }
            maps.push_back(std::move(proj));
        }
    }
    Tensor<Rational> r = restrict_tensor(t, maps);
    // drop the contracted size-1 coordinates; the dense layout is unchanged
    Tensor<Rational> core;
    core.dims.assign(I.size(), 2);
    core.format.assign(I.size(), 1);
    core.data = std::move(r.data);
    return core;
}

} // namespace

std::optional<NormalForm2> classify_rank2(const Tensor<Rational>& t) {
    const int d = t.order();
    for (int x : t.dims)
        if (x != 2) throw ShapeMismatch("classification needs all dimensions equal to 2");
    if (t.is_zero_tensor()) return std::nullopt;
    // border rank <= 2 over the rationals: all 3x3 minors of all flattenings
    // vanish, i.e. every bipartition flattening has rank <= 2
    for (uint32_t s = 1; s < (1u << d) / 2; ++s) {
        std::vector<int> groups;
        for (int i = 0; i < d; ++i)
            if (s & (1u << i)) groups.push_back(i);
        if (rank(flatten(t, groups)) > 2) return std::nullopt;
    }
    NormalForm2 out;
    for (int i = 0; i < d; ++i)
        if (is_concise(t, i)) out.I.push_back(i);
    if (out.I.size() == 1) throw std::logic_error("conciseness on exactly one coordinate is impossible");
    if (out.I.size() < 3) {
        out.kind = NormalForm2::Kind::B; // B and C coincide below three coordinates
        out.discriminant = Rational(1);
        out.split_over_base = true;
        return out;
    }
    // concise core: a minimal border rank tensor on |I| coordinates; its
    // centroid is the 2-dimensional algebra k[u]/(u^2 - a u - b)
    Tensor<Rational> core = concise_core(t, out.I);
    Centroid<Rational> cen = centroid(core);
    if (cen.dim != 2) throw std::logic_error("rank-two core must have a 2-dimensional centroid");
    // find a non-scalar basis element u and write u^2 = a u + b 1
    const FiniteAlgebra<Rational>& A = cen.algebra;
    std::vector<Rational> u(2, Rational(0));
    {
        Matrix<Rational> test(2, 2, Rational(0));
        test(0, 0) = A.unit[0];
        test(1, 0) = A.unit[1];
        int pick = 0;
        for (int k = 0; k < 2; ++k) {
            test(0, 1) = k == 0 ? Rational(1) : Rational(0);
            test(1, 1) = k == 0 ? Rational(0) : Rational(1);
            if (rank_gauss(test) == 2) { pick = k; break; }
        }
        u[pick] = Rational(1);
    }
    std::vector<Rational> u2 = A.multiply(u, u);
    Matrix<Rational> lhs(2, 2, Rational(0)), rhs(2, 1, Rational(0));
    for (int r = 0; r < 2; ++r) {
        lhs(r, 0) = u[r];
        lhs(r, 1) = A.unit[r];
        rhs(r, 0) = u2[r];
    }
    Matrix<Rational> ab = solve_right(lhs, rhs);
    Rational a = ab(0, 0), b = ab(1, 0);
    out.discriminant = a * a + 4 * b;
    out.kind = is_zero(out.discriminant) ? NormalForm2::Kind::C : NormalForm2::Kind::B;
    // field of definition of the two points: discriminant a square in Q
    if (out.kind == NormalForm2::Kind::B) {
        mpq_class disc = out.discriminant;
        mpz_class num = disc.get_num(), den = disc.get_den();
        out.split_over_base = (sgn(disc) > 0) &&
                              mpz_perfect_square_p(num.get_mpz_t()) &&
                              mpz_perfect_square_p(den.get_mpz_t());
    } else {
        out.split_over_base = true;
    }
    return out;
}

} // namespace concise
