#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "concise/examples.hpp"
#include "concise/sigma2.hpp"

using namespace concise;

TEST_CASE("fixed point counts match the closed formula") {
    std::vector<long long> expected{56, 208, 736};
    for (int d = 3; d <= 10; ++d) {
        auto pts = enumerate_fixed_points(d);
        CHECK(static_cast<long long>(pts.size()) == fixed_point_count_formula(d));
        if (d <= 5) CHECK(static_cast<long long>(pts.size()) == expected[d - 3]);
    }
}

TEST_CASE("tangent weight lists have length 2d+1 with even entries") {
    for (int d = 3; d <= 8; ++d) {
        auto e = default_one_ps(d);
        for (const auto& fp : enumerate_fixed_points(d)) {
            auto ws = tangent_weights(fp, d);
            CHECK(static_cast<int>(ws.size()) == 2 * d + 1);
            for (const auto& w : ws) {
                long long pair = 0;
                for (int i = 0; i < d; ++i) {
                    CHECK(w[i] % 2 == 0);
                    pair += static_cast<long long>(w[i]) * e[i];
                }
                CHECK(pair != 0);
            }
        }
    }
}

TEST_CASE("printed weight tables") {
    // d=4, height 1, I={2,3}, J={4}, base x_{1..4}
    FixedPoint fp;
    fp.base = 0;
    fp.height = 1;
    fp.I = {1, 2}; // 0-based
    auto ws = tangent_weights(fp, 4);
    auto count = [&](std::vector<int> w) {
        return std::count(ws.begin(), ws.end(), w);
    };
    CHECK(count({0, 2, 0, 0}) == 1);
    CHECK(count({0, -2, 0, 0}) == 1);
    CHECK(count({0, 0, 2, 0}) == 1);
    CHECK(count({0, 0, -2, 0}) == 1);
    CHECK(count({0, 0, 0, 2}) == 2);
    CHECK(count({2, 0, 0, 0}) == 1);
    CHECK(count({0, 2, 2, 0}) == 1);
    CHECK(count({2, 2, 2, 0}) == 1);
    // d=3, height 2 type 1 over x_{123}: the k-range is empty
    FixedPoint h2;
    h2.base = 0;
    h2.height = 2;
    h2.j = 1;
    h2.type = 1;
    auto w2 = tangent_weights(h2, 3);
    std::multiset<std::vector<int>> got(w2.begin(), w2.end());
    std::multiset<std::vector<int>> expect{{2, 0, 0}, {0, 2, 0}, {2, 2, 0}, {0, 0, 2},
                                           {0, 0, 2}, {0, 2, 0}, {0, -2, 0}};
    CHECK(got == expect);
}

TEST_CASE("bb motive equals the closed formula") {
    for (int d = 3; d <= 7; ++d) {
        MotivePoly bb = bb_motive(d);
        MotivePoly formula = csigma2_motive_formula(d);
        CHECK(bb == formula);
        CHECK(bb.eval(1) == fixed_point_count_formula(d));
        // Poincare-dual coefficient list
        for (int k = 0; k <= bb.degree(); ++k)
            CHECK(bb.coeff(k) == bb.coeff(bb.degree() - k));
        CHECK(bb.degree() == 2 * d + 1);
        // nonnegative cell counts
        for (long long c : bb.c) CHECK(c >= 0);
    }
}

TEST_CASE("bb motive is independent of the admissible one-parameter subgroup") {
    for (int d = 3; d <= 6; ++d) {
        MotivePoly base = bb_motive(d);
        std::vector<long long> alt(d);
        long long v = 1;
        for (int i = 0; i < d; ++i) {
            alt[i] = v;
            v *= 13;
        }
        CHECK(bb_motive(d, alt) == base);
        std::vector<long long> alt2(d);
        v = 1;
        for (int i = 0; i < d; ++i) {
            alt2[i] = 2 * v + 1;
            v *= 23;
        }
        CHECK(bb_motive(d, alt2) == base);
    }
}

TEST_CASE("a degenerate one-parameter subgroup is rejected") {
    std::vector<long long> bad(4, 1); // kills 2e_i - 2e_j weights
    CHECK_THROWS_AS(bb_motive(4, bad), DegenerateOnePS);
}

TEST_CASE("motive formulas have integer coefficients and the d=3 values") {
    for (int d = 3; d <= 10; ++d) {
        CHECK_NOTHROW(csigma2_motive_formula(d));
        CHECK_NOTHROW(sigma2_motive_formula(d));
    }
    MotivePoly c3 = csigma2_motive_formula(3);
    CHECK(c3.eval(1) == 56);
    CHECK(c3.degree() == 7);
    // sigma2 for d=3 fills P^7
    MotivePoly s3 = sigma2_motive_formula(3);
    CHECK(s3 == MotivePoly({1, 1, 1, 1, 1, 1, 1, 1}));
    for (long long p : {2, 3, 5}) {
        long long expect = 0, pw = 1;
        for (int k = 0; k < 8; ++k) { expect += pw; pw *= p; }
        CHECK(s3.eval(p) == expect);
    }
}

TEST_CASE("classification of border rank two normal forms") {
    // (x1 (x) x2 + y1 (x) y2) (x) x3: B with I = {1,2}
    Tensor<Rational> b({2, 2, 2});
    b.at({0, 0, 0}) = Rational(1);
    b.at({1, 1, 0}) = Rational(1);
    auto nfb = classify_rank2(b);
    REQUIRE(nfb.has_value());
    CHECK(nfb->kind == NormalForm2::Kind::B);
    CHECK(nfb->I == std::vector<int>{0, 1});
    // the W-state: C with I = {1,2,3}
    auto nfw = classify_rank2(w_state());
    REQUIRE(nfw.has_value());
    CHECK(nfw->kind == NormalForm2::Kind::C);
    CHECK(nfw->I == std::vector<int>{0, 1, 2});
    CHECK(is_zero(nfw->discriminant));
    // a diagonal tensor splits over the base field
    Tensor<Rational> s({2, 2, 2});
    s.at({0, 0, 0}) = Rational(1);
    s.at({1, 1, 1}) = Rational(2);
    auto nfs = classify_rank2(s);
    REQUIRE(nfs.has_value());
    CHECK(nfs->kind == NormalForm2::Kind::B);
    CHECK(nfs->split_over_base);
    // the multiplication tensor of k[u]/(u^2 - 2): kind B over the closure,
    // but the two points live in a quadratic extension
    FiniteAlgebra<Rational> sqrt2 = parse_algebra("k[u]/(u^2 - 2)");
    auto nfq = classify_rank2(multiplication_tensor(sqrt2, 3));
    REQUIRE(nfq.has_value());
    CHECK(nfq->kind == NormalForm2::Kind::B);
    CHECK(!nfq->split_over_base);
    CHECK(nfq->discriminant == Rational(8));
    // a perturbation beyond border rank two is rejected (d = 4, where the
    // 2,2-flattenings carry 3x3 minors)
    Tensor<Rational> bad({2, 2, 2, 2});
    bad.at({0, 0, 0, 0}) = Rational(1);
    bad.at({1, 1, 1, 1}) = Rational(1);
    bad.at({0, 1, 0, 1}) = Rational(1);
    auto nfbad = classify_rank2(bad);
    CHECK(!nfbad.has_value());
    // while the unperturbed diagonal passes with I = all four
    Tensor<Rational> diag4({2, 2, 2, 2});
    diag4.at({0, 0, 0, 0}) = Rational(1);
    diag4.at({1, 1, 1, 1}) = Rational(1);
    auto nfd = classify_rank2(diag4);
    REQUIRE(nfd.has_value());
    CHECK(nfd->kind == NormalForm2::Kind::B);
    CHECK(nfd->I.size() == 4);
}
