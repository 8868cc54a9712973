#pragma once

#include "concise/algebra.hpp"
#include "concise/unres_veronese.hpp"

namespace concise {

// Builders for the worked examples used across the test suites. Order-3
// tensors follow the pencil convention: display entry (j,k) is
// sum_i T[i,j,k] x_i.

using QT = RatFunc<Rational>;

inline QT qt(long num) { return QT(Rational(num)); }
inline QT qt(const Rational& r) { return QT(r); }
inline QT t_to(int e) { return QT::t_power(Rational(1), e); }

// [[x1, t^2 x2], [t x2, t x1]]
inline Degeneration<Rational> order_matters_degeneration() {
    Tensor<QT> t({2, 2, 2});
    t.at({0, 0, 0}) = qt(1);
    t.at({1, 0, 1}) = t_to(2);
    t.at({1, 1, 0}) = t_to(1);
    t.at({0, 1, 1}) = t_to(1);
    return Degeneration<Rational>(std::move(t));
}

// [[x1, x2], [x2, x1]]
inline Tensor<Rational> pencil_kxk_limit() {
    Tensor<Rational> t({2, 2, 2});
    t.at({0, 0, 0}) = Rational(1);
    t.at({1, 0, 1}) = Rational(1);
    t.at({1, 1, 0}) = Rational(1);
    t.at({0, 1, 1}) = Rational(1);
    return t;
}

// [[x1, 0], [x2, x1]]
inline Tensor<Rational> pencil_nilpotent_limit() {
    Tensor<Rational> t({2, 2, 2});
    t.at({0, 0, 0}) = Rational(1);
    t.at({1, 1, 0}) = Rational(1);
    t.at({0, 1, 1}) = Rational(1);
    return t;
}

// Bini's degeneration: five rank-one terms witnessing border rank 5 of the
// 2x2 matrix multiplication tensor with one corner entry removed.
inline Degeneration<Rational> bini_degeneration() {
    auto vec = [](std::initializer_list<std::pair<QT, int>> parts) {
        std::vector<QT> v(5);
        for (const auto& [c, i] : parts) v[i - 1] += c;
        return v;
    };
    std::vector<std::array<std::vector<QT>, 3>> terms;
    terms.push_back({vec({{t_to(1), 1}, {qt(1), 3}}), vec({{qt(1), 2}}), vec({{qt(1), 2}, {t_to(1), 4}})});
    terms.push_back({vec({{t_to(1), 1}, {qt(1), 2}}), vec({{qt(1), 1}, {t_to(1), 3}}), vec({{qt(1), 1}})});
    terms.push_back({vec({{qt(1), 2}, {qt(1), 3}}), vec({{qt(1), 1}, {t_to(1), 4}}), vec({{qt(1), 2}, {t_to(1), 3}})});
    terms.push_back({vec({{qt(-1), 3}, {t_to(2), 4}}), vec({{qt(1), 1}, {qt(1), 2}, {t_to(1), 4}, {t_to(2), 5}}),
                     vec({{qt(1), 2}})});
    terms.push_back({vec({{qt(-1), 2}, {t_to(2), 5}}), vec({{qt(1), 1}}),
                     vec({{qt(1), 1}, {qt(1), 2}, {t_to(1), 3}, {t_to(2), 5}})});
    Tensor<QT> t({5, 5, 5});
    for (const auto& term : terms)
        for (int i = 0; i < 5; ++i) {
            if (term[0][i].zero()) continue;
            for (int j = 0; j < 5; ++j) {
                if (term[1][j].zero()) continue;
                for (int k = 0; k < 5; ++k) {
                    if (term[2][k].zero()) continue;
                    t.at({i, j, k}) += term[0][i] * term[1][j] * term[2][k];
                }
            }
        }
    return Degeneration<Rational>(std::move(t));
}

// The antisymmetric tensor e1 ^ e2 ^ e3 padded to 5x5x5.
inline Tensor<Rational> wedge_tensor() {
    Tensor<Rational> t({5, 5, 5});
    int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    for (int s = 0; s < 6; ++s)
        t.at({perm[s][0], perm[s][1], perm[s][2]}) = Rational(s < 3 ? 1 : -1);
    return t;
}

// Its printed minimal border rank unrestriction (pencil rows j, columns k).
inline Tensor<Rational> wedge_unrestriction() {
    Tensor<Rational> t({5, 5, 5});
    auto put = [&](int j, int k, std::initializer_list<std::pair<int, int>> parts) {
        for (const auto& [coef, xi] : parts) t.at({xi - 1, j - 1, k - 1}) += Rational(coef);
    };
    put(1, 1, {{1, 5}});
    put(1, 2, {{1, 3}, {1, 4}});
    put(1, 3, {{-1, 2}});
    put(1, 4, {{1, 1}});
    put(1, 5, {{1, 2}});
    put(2, 1, {{-1, 3}, {1, 4}});
    put(2, 3, {{1, 1}});
    put(3, 1, {{1, 2}});
    put(3, 2, {{-1, 1}});
    put(4, 1, {{1, 1}});
    put(5, 1, {{1, 2}});
    return t;
}

// The restriction maps realizing wedge_tensor() from wedge_unrestriction():
// coordinate projections onto the first three basis vectors.
inline std::vector<Matrix<Rational>> wedge_maps() {
    std::vector<Matrix<Rational>> maps;
    for (int c = 0; c < 3; ++c) {
        Matrix<Rational> m(5, 5, Rational(0));
        for (int i = 0; i < 3; ++i) m(i, i) = Rational(1);
        maps.push_back(std::move(m));
    }
    return maps;
}

// The degenerating cubic witnessing border rank 4 of x1 x2 x3, with the
// quickly decaying perturbation t^N x4 and the factor 6 t^2 removed:
//   x1x2x3 + (t/2)(x2^2 x3 + x2 x3^2) + (t^{N-2}/2) x1^2 x4
//   + (t^{2N-2}/2) x1 x4^2 + (t^{3N-2}/6) x4^3.
inline MPoly<QT> small_cw_family(int bigN = 5) {
    MPoly<QT> f(4);
    auto mono = [&](int a, int b, int c, int d4) {
        std::vector<int> e{a, b, c, d4};
        return e;
    };
    auto tfrac = [&](int e, const Rational& r) { return t_to(e) * qt(r); };
    f.add_term(mono(1, 1, 1, 0), qt(1));
    f.add_term(mono(0, 2, 1, 0), tfrac(1, Rational(1, 2)));
    f.add_term(mono(0, 1, 2, 0), tfrac(1, Rational(1, 2)));
    f.add_term(mono(2, 0, 0, 1), tfrac(bigN - 2, Rational(1, 2)));
    f.add_term(mono(1, 0, 0, 2), tfrac(2 * bigN - 2, Rational(1, 2)));
    f.add_term(mono(0, 0, 0, 3), tfrac(3 * bigN - 2, Rational(1, 6)));
    return f;
}

// Expected limit: x1 x2 x3 + (1/2) x4 x1^2.
inline MPoly<Rational> big_cw_polynomial() {
    MPoly<Rational> f(4);
    f.add_term({1, 1, 1, 0}, Rational(1));
    f.add_term({2, 0, 0, 1}, Rational(1, 2));
    return f;
}

inline Tensor<Rational> big_cw_tensor() {
    Tensor<Rational> sym = poly_to_symmetric_tensor(big_cw_polynomial(), 4, 3, Rational(1));
    // re-read the symmetric tensor as an ordinary 4x4x4 tensor
    Tensor<Rational> t({4, 4, 4});
    t.data = sym.data;
    return t;
}

inline Tensor<Rational> w_state() {
    Tensor<Rational> t({2, 2, 2});
    t.at({0, 0, 1}) = Rational(1);
    t.at({0, 1, 0}) = Rational(1);
    t.at({1, 0, 0}) = Rational(1);
    return t;
}

} // namespace concise
