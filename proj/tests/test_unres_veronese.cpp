#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "concise/analysis.hpp"
#include "concise/examples.hpp"

using namespace concise;

TEST_CASE("small Coppersmith-Winograd run reproduces the printed limit") {
    for (int bigN : {4, 5, 7}) {
        auto out = unrestrict_symmetric(small_cw_family(bigN), 4, 3);
        CHECK(out.limit == big_cw_polynomial());
        // the map rescales x4 by t^{N-2} and leaves the rest alone
        CHECK(out.phi(3, 3) == t_to(bigN - 2));
        for (int i = 0; i < 3; ++i) CHECK(out.phi(i, i) == qt(1));
    }
}

TEST_CASE("poly step at r=3 computes the weight N-2") {
    PolyFamily<Rational> fam(4, 3, {small_cw_family(5)});
    auto step = unrestrict_poly_step(fam, 3);
    CHECK(step.weight == Valuation(3, 1)); // N = 5
    CHECK(step.lambda_rounds == 3);
    auto lim = limit_poly(step.family.members[0]);
    CHECK(lim == big_cw_polynomial());
}

TEST_CASE("x1^3 + t x2^3 rescales by a third") {
    MPoly<QT> f(2);
    f.add_term({3, 0}, qt(1));
    f.add_term({0, 3}, t_to(1));
    auto out = unrestrict_symmetric(f, 2, 3);
    MPoly<Rational> expect(2);
    expect.add_term({3, 0}, Rational(1));
    expect.add_term({0, 3}, Rational(1));
    CHECK(out.limit == expect);
    // exponent denominator 3 in the transformed family
    bool saw_third = false;
    for (const auto& [e, c] : out.family_t.terms) saw_third = saw_third || c.N == 3;
    // after rescaling the family is constant here, so check the map instead
    CHECK(out.phi(1, 1) == QT::t_power(Rational(1), 1, 3));
    (void)saw_third;
}

TEST_CASE("dependent partials are rejected") {
    // (x1 + t x2)^3: d/dx2 = t d/dx1 identically
    MPoly<QT> f(2);
    f.add_term({3, 0}, qt(1));
    f.add_term({2, 1}, t_to(1) * qt(3));
    f.add_term({1, 2}, t_to(2) * qt(3));
    f.add_term({0, 3}, t_to(3));
    CHECK_THROWS_AS(unrestrict_symmetric(f, 2, 3), NotJointlyConcise);
}

TEST_CASE("missing perturbation is not jointly concise in four variables") {
    // the small CW witness without the t^N x4 term never reaches x4
    MPoly<QT> f(4);
    f.add_term({1, 1, 1, 0}, qt(1));
    f.add_term({0, 2, 1, 0}, t_to(1) * qt(Rational(1, 2)));
    f.add_term({0, 1, 2, 0}, t_to(1) * qt(Rational(1, 2)));
    CHECK_THROWS_AS(unrestrict_symmetric(f, 4, 3), NotJointlyConcise);
}

TEST_CASE("constant concise polynomial is returned unchanged") {
    MPoly<QT> f(2);
    f.add_term({2, 1}, qt(1)); // x1^2 x2 is concise in both variables
    auto out = unrestrict_symmetric(f, 2, 3);
    MPoly<Rational> expect(2);
    expect.add_term({2, 1}, Rational(1));
    CHECK(out.limit == expect);
    CHECK(out.phi == Matrix<QT>::identity(2, qt(1)));
}

TEST_CASE("restriction identity of the veronese maps") {
    auto f = small_cw_family(5);
    auto out = unrestrict_symmetric(f, 4, 3);
    CHECK(out.family_t.substituted(out.phi) == f);
}

TEST_CASE("segre format partial agrees with the segre module up to GL") {
    auto d = order_matters_degeneration();
    auto cert_v = unrestrict_partial(d, {2, 0, 1});
    auto cert_s = unres_full(d, {2, 0, 1});
    CHECK(certificate_restriction_identity(cert_v));
    for (int i = 0; i < 3; ++i) CHECK(is_concise(cert_v.limit, i));
    // both limits classify the same way (k x k split type)
    // via the centroid of the core
    auto c1 = centroid(cert_v.limit);
    auto c2 = centroid(cert_s.limit);
    CHECK(c1.dim == c2.dim);
    // same order, same degeneration: the composed change of basis exists
    std::string diag;
    auto psi = check_gl_equivalence(cert_s, cert_v, &diag);
    CHECK(psi.has_value());
}

TEST_CASE("partial format (3): delegates to the symmetric path") {
    Tensor<QT> sym({4}, {3});
    // encode the small CW family as a symmetric tensor degeneration
    MPoly<QT> f = small_cw_family(5);
    Tensor<QT> enc = poly_to_symmetric_tensor(f, 4, 3, qt(1));
    sym = enc;
    auto cert = unrestrict_partial(Degeneration<Rational>(sym));
    CHECK(certificate_restriction_identity(cert));
    MPoly<Rational> lim = symmetric_tensor_to_poly(cert.limit, Rational(1));
    CHECK(lim == big_cw_polynomial());
}

TEST_CASE("partial format (2,1) on a constructed family") {
    // (x1 + t x2)^2 (x) y1 + t^2 x2^2 (x) y2 over a 2x2 coordinate pair:
    // generically concise everywhere, limit x1^2 (x) y1 needs unrestriction
    Tensor<QT> t({2, 2}, {2, 1});
    auto put = [&](int a, int b, int y, QT v) { t.at({a, b, y}) = std::move(v); };
    // (x1 + t x2)^2 = x1^2 + 2t x1 x2 + t^2 x2^2 on y1
    put(0, 0, 0, qt(1));
    put(0, 1, 0, t_to(1));
    put(1, 0, 0, t_to(1));
    put(1, 1, 0, t_to(2));
    // + t^2 x2^2 on y2
    put(1, 1, 1, t_to(2));
    auto cert = unrestrict_partial(Degeneration<Rational>(t));
    CHECK(certificate_restriction_identity(cert));
    CHECK(is_concise(cert.limit, 0));
    CHECK(is_concise(cert.limit, 1));
    for (const auto& x : cert.unrestriction_t.data) CHECK(x.nonnegative_valuation());
    // exponent denominators divide 2! * 1! = 2
    for (const auto& x : cert.unrestriction_t.data)
        if (!x.zero()) CHECK(2 % x.N == 0);
}

TEST_CASE("lambda loop fires on a nontrivial triangular reduction") {
    // F_t = x1^3 + t x1^2 x2 + t^4 x2^3: the partial in x2 starts inside the
    // span of the partial in x1 and needs one lambda round
    MPoly<QT> f(2);
    f.add_term({3, 0}, qt(1));
    f.add_term({2, 1}, t_to(1));
    f.add_term({0, 3}, t_to(4));
    auto out = unrestrict_symmetric(f, 2, 3);
    auto ess = essential_span(std::vector<MPoly<Rational>>{out.limit}, 2, Rational(1));
    CHECK(ess.size() == 2);
    CHECK(out.family_t.substituted(out.phi) == f);
}
