#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "concise/analysis.hpp"
#include "concise/examples.hpp"

using namespace concise;

namespace {

Tensor<Rational> random_concise(std::mt19937& rng, int m, int d) {
    std::uniform_int_distribution<int> coef(-3, 3);
    for (;;) {
        Tensor<Rational> t(std::vector<int>(d, m));
        for (auto& x : t.data) x = Rational(coef(rng));
        bool ok = true;
        for (int i = 0; i < d; ++i) ok = ok && is_concise(t, i);
        if (ok) return t;
    }
}

Matrix<Rational> random_gl(std::mt19937& rng, int m) {
    std::uniform_int_distribution<int> coef(-2, 2);
    for (;;) {
        Matrix<Rational> g(m, m, Rational(0));
        for (auto& x : g.a) x = Rational(coef(rng));
        if (is_invertible(g)) return g;
    }
}

FiniteAlgebra<Rational> random_gorenstein(std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(-2, 2), pick(0, 2), degd(2, 4);
    int kind = pick(rng);
    auto hyper = [&](int deg) {
        Poly<Rational> f = Poly<Rational>::monomial(Rational(1), deg);
        for (int i = deg - 1; i >= 0; --i)
            f = f + Poly<Rational>::monomial(Rational(coef(rng)), i);
        return univariate_quotient(f);
    };
    if (kind == 0) return hyper(degd(rng));
    if (kind == 1) return algebra_product(hyper(2), hyper(degd(rng)));
    return parse_algebra("k[x,y]/(x^2, y^2)");
}

} // namespace

TEST_CASE("centroid of the unit tensor is the split algebra") {
    for (int m : {2, 3, 4}) {
        Tensor<Rational> u = unit_tensor(m, 3, Rational(1));
        Centroid<Rational> cen = centroid(u);
        CHECK(cen.dim == m);
        // split: trace form nondegenerate <-> no nilpotents; all diagonal tuples
        for (const auto& tup : cen.basis)
            for (const auto& x : tup)
                for (int r = 0; r < m; ++r)
                    for (int c = 0; c < m; ++c)
                        if (r != c) CHECK(is_zero(x(r, c)));
    }
}

TEST_CASE("centroid of the W-state is the dual numbers") {
    Centroid<Rational> cen = centroid(w_state());
    CHECK(cen.dim == 2);
    // the algebra contains a nonzero nilpotent: u with u^2 = 0
    const auto& alg = cen.algebra;
    // find a non-unit basis combination that squares to zero
    bool found_nilpotent = false;
    for (int a = -2; a <= 2 && !found_nilpotent; ++a)
        for (int b = -2; b <= 2 && !found_nilpotent; ++b) {
            std::vector<Rational> v{Rational(a), Rational(b)};
            bool nonzero = a != 0 || b != 0;
            auto sq = alg.multiply(v, v);
            bool zero_sq = true;
            for (const auto& x : sq) zero_sq = zero_sq && is_zero(x);
            if (nonzero && zero_sq) found_nilpotent = true;
        }
    CHECK(found_nilpotent);
}

TEST_CASE("random concise 3x3x3 tensors have scalar centroid") {
    std::mt19937 rng(51);
    for (int round = 0; round < 5; ++round) {
        Tensor<Rational> t = random_concise(rng, 3, 3);
        Centroid<Rational> cen = centroid(t);
        CHECK(cen.dim == 1);
        CHECK(!minimal_border_rank_report(t).minimal);
    }
}

TEST_CASE("minimal border rank decisions") {
    CHECK(is_minimal_border_rank(unit_tensor(4, 3, Rational(1))));
    CHECK(is_minimal_border_rank(big_cw_tensor()));
    CHECK(is_minimal_border_rank(w_state()));
    std::mt19937 rng(53);
    Tensor<Rational> r = random_concise(rng, 4, 3);
    CHECK(!is_minimal_border_rank(r));
    Tensor<Rational> big = unit_tensor(6, 3, Rational(1));
    CHECK_THROWS_AS(is_minimal_border_rank(big), UnsupportedSize);
    CHECK(minimal_border_rank_report(big).centroid_abundant);
}

TEST_CASE("centroid dimension is a GL invariant") {
    std::mt19937 rng(57);
    std::vector<Tensor<Rational>> samples{w_state(), big_cw_tensor(), unit_tensor(3, 3, Rational(1))};
    for (const auto& t : samples) {
        Centroid<Rational> before = centroid(t);
        std::vector<Matrix<Rational>> gl;
        for (int i = 0; i < t.order(); ++i) gl.push_back(random_gl(rng, t.dims[0]));
        Tensor<Rational> moved = restrict_tensor(t, gl);
        Centroid<Rational> after = centroid(moved);
        CHECK(before.dim == after.dim);
        // rank sequence of powers of a generic element matches
        auto powrank = [](const Centroid<Rational>& cen) {
            std::vector<int> seq;
            std::vector<Rational> g(cen.dim);
            for (int i = 0; i < cen.dim; ++i) g[i] = Rational(i + 1);
            std::vector<Rational> cur = g;
            for (int k = 0; k < cen.dim; ++k) {
                seq.push_back(rank_gauss(cen.algebra.mult_matrix(cur)));
                cur = cen.algebra.multiply(cur, g);
            }
            return seq;
        };
        CHECK(powrank(before) == powrank(after));
    }
}

TEST_CASE("one-generic witnesses") {
    Centroid<Rational> cw = centroid(w_state());
    for (int i = 0; i < 3; ++i) CHECK(one_generic_witness(w_state(), cw, i).has_value());
    Tensor<Rational> bcw = big_cw_tensor();
    Centroid<Rational> cb = centroid(bcw);
    for (int i = 0; i < 3; ++i) CHECK(one_generic_witness(bcw, cb, i).has_value());
    // the multiplication tensor of k[x,y]/(x,y)^2 fails on the algebra slot
    FiniteAlgebra<Rational> a = parse_algebra("k[x,y]/(x^2, x*y, y^2)");
    Tensor<Rational> mt = multiplication_tensor(a, 3);
    Centroid<Rational> cm = centroid(mt);
    CHECK(!one_generic_witness(mt, cm, 2).has_value());
    CHECK(one_generic_witness(mt, cm, 0).has_value());
}

TEST_CASE("recover structure round trips") {
    auto rec_w = recover_structure(w_state());
    CHECK(rec_w.algebra.dim == 2);
    auto rec_u = recover_structure(unit_tensor(3, 3, Rational(1)));
    CHECK(rec_u.algebra.dim == 3);
    auto rec_cw = recover_structure(big_cw_tensor());
    CHECK(rec_cw.algebra.dim == 4);
    // the recovered algebra of the big CW tensor is Gorenstein local
    CHECK(is_gorenstein(rec_cw.algebra).has_value());
}

TEST_CASE("regularity and joint spanning") {
    FiniteAlgebra<Rational> a = parse_algebra("k[x]/(x^5)");
    Matrix<Rational> good(2, 5, Rational(0));
    good(0, 0) = Rational(1);
    good(1, 1) = Rational(1); // image spans {1, x}
    CHECK(is_regular(good, a));
    Matrix<Rational> bad(2, 5, Rational(0));
    bad(0, 1) = Rational(1);
    bad(1, 2) = Rational(1); // image {x, x^2} inside the maximal ideal
    CHECK(!is_regular(bad, a));
    // surjective onto V with A = k
    FiniteAlgebra<Rational> k1 = parse_algebra("k[x]/(x)");
    Matrix<Rational> full(1, 1, Rational(1));
    CHECK(is_regular(full, k1));
    // joint spanning counts products
    CHECK(!is_jointly_spanning({good, good, good}, a));
    CHECK(is_jointly_spanning({good, good, good, good, good}, a));
    Matrix<Rational> id5 = Matrix<Rational>::identity(5, Rational(1));
    CHECK(is_jointly_spanning({id5, id5}, a));
}

TEST_CASE("regularity lemma implications on random instances") {
    std::mt19937 rng(61);
    std::uniform_int_distribution<int> coef(-2, 2), rows_d(1, 3);
    int checked = 0;
    for (int round = 0; round < 200 && checked < 50; ++round) {
        FiniteAlgebra<Rational> a = random_gorenstein(rng);
        int d = 3;
        std::vector<Matrix<Rational>> phis;
        for (int i = 0; i < d; ++i) {
            Matrix<Rational> phi(rows_d(rng) + 1, a.dim, Rational(0));
            for (auto& x : phi.a) x = Rational(coef(rng));
            phis.push_back(std::move(phi));
        }
        if (is_jointly_spanning(phis, a)) {
            ++checked;
            // jointly spanning => each regular
            for (const auto& phi : phis) CHECK(is_regular(phi, a));
            // jointly spanning on I plus a regular map extends
            Matrix<Rational> extra(2, a.dim, Rational(0));
            for (auto& x : extra.a) x = Rational(coef(rng));
            if (is_regular(extra, a)) {
                auto bigger = phis;
                bigger.push_back(extra);
                CHECK(is_jointly_spanning(bigger, a));
            }
        }
    }
    CHECK(checked >= 50);
}

TEST_CASE("partial restrictions of 1-generic tensors stay concise off the spanned set") {
    // evaluation tensor of a Gorenstein algebra restricted by jointly
    // spanning maps on a subset I stays concise on the complement
    std::mt19937 rng(67);
    std::uniform_int_distribution<int> coef(-2, 2);
    int done = 0;
    for (int round = 0; round < 100 && done < 10; ++round) {
        FiniteAlgebra<Rational> a = random_gorenstein(rng);
        auto eps = is_gorenstein(a);
        if (!eps) continue;
        int d = 3;
        Tensor<Rational> e = evaluation_tensor(a, *eps, d);
        // restrict coordinates 2 and 3 by jointly spanning maps
        Matrix<Rational> phi2(a.dim, a.dim, Rational(0)), phi3(a.dim, a.dim, Rational(0));
        for (auto& x : phi2.a) x = Rational(coef(rng));
        for (auto& x : phi3.a) x = Rational(coef(rng));
        if (!is_jointly_spanning({phi2, phi3}, a)) continue;
        ++done;
        Matrix<Rational> id = Matrix<Rational>::identity(a.dim, Rational(1));
        Tensor<Rational> r = restrict_tensor(e, {id, phi2, phi3});
        CHECK(is_concise(r, 0));
    }
    CHECK(done >= 10);
}

TEST_CASE("cactus certificates") {
    // (k[e]/e^3, socle, identity maps) builds x^2 z + x y^2 up to basis
    FiniteAlgebra<Rational> a = parse_algebra("k[e]/(e^3)");
    Functional<Rational> socle{Rational(0), Rational(0), Rational(1)};
    Matrix<Rational> id = Matrix<Rational>::identity(3, Rational(1));
    CactusCertificate<Rational> cert{a, socle, {id, id, id}};
    Tensor<Rational> t = build_cactus_tensor(cert, 3);
    auto ver = verify_cactus_certificate(t, cert);
    CHECK(ver.matches);
    CHECK(ver.regular);
    CHECK(ver.cactus_rank_bound == 3);
    // (k^r, all-ones, maps e_i -> x_i) reproduces rank decompositions
    FiniteAlgebra<Rational> k3 = parse_algebra("k[x]/(x^3 - x)");
    auto eps3 = is_gorenstein(k3);
    REQUIRE(eps3.has_value());
    CactusCertificate<Rational> c3{k3, *eps3, {id, id, id}};
    Tensor<Rational> t3 = build_cactus_tensor(c3, 3);
    Centroid<Rational> cen = centroid(t3);
    CHECK(cen.dim == 3);
    // a non-regular map is reported with its coordinate
    Matrix<Rational> bad(3, 3, Rational(0));
    bad(0, 1) = Rational(1);
    CactusCertificate<Rational> cbad{a, socle, {id, bad, id}};
    CHECK_THROWS_AS(build_cactus_tensor(cbad, 3), NotRegular);
    auto vbad = verify_cactus_certificate(t, cbad);
    CHECK(!vbad.regular);
}
