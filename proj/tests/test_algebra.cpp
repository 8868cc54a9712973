#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "concise/analysis.hpp"
#include "concise/examples.hpp"
#include "concise/sigma2.hpp"

using namespace concise;

namespace {

FiniteAlgebra<Rational> random_hypersurface_algebra(std::mt19937& rng, int deg) {
    // k[x]/(x^deg + c_{deg-1} x^{deg-1} + ... + c_0): always Gorenstein
    std::uniform_int_distribution<int> coef(-3, 3);
    Poly<Rational> f = Poly<Rational>::monomial(Rational(1), deg);
    for (int i = deg - 1; i >= 0; --i)
        f = f + Poly<Rational>::monomial(Rational(coef(rng)), i);
    return univariate_quotient(f);
}

} // namespace

TEST_CASE("presentation parser produces expected dimensions") {
    CHECK(parse_algebra("k[x]/(x^5)").dim == 5);
    CHECK(parse_algebra("k[e]/(e^2)").dim == 2);
    CHECK(parse_algebra("k[x,y]/(x^2, x*y, y^2)").dim == 3);
    CHECK(parse_algebra("k[x]/(x^2 - x)").dim == 2);
    CHECK(parse_algebra("k[x,y]/(x^2, y^2)").dim == 4);
    CHECK_THROWS(parse_algebra("k[x]/(x^2 - x^2)"));
}

TEST_CASE("multiplication tensors of the small algebras") {
    // k x k  ->  unit tensor <2> up to basis; verify via centroid split type
    FiniteAlgebra<Rational> kk = parse_algebra("k[x]/(x^2 - x)");
    Tensor<Rational> t = multiplication_tensor(kk, 3);
    auto nf = classify_rank2(t);
    REQUIRE(nf.has_value());
    CHECK(nf->kind == NormalForm2::Kind::B);
    CHECK(nf->I.size() == 3);
    // k[e]/e^2 -> W-state up to basis
    FiniteAlgebra<Rational> dual = parse_algebra("k[e]/(e^2)");
    Tensor<Rational> w = multiplication_tensor(dual, 3);
    auto nfw = classify_rank2(w);
    REQUIRE(nfw.has_value());
    CHECK(nfw->kind == NormalForm2::Kind::C);
    // contraction with the unit reduces the order
    Tensor<Rational> t4 = multiplication_tensor(kk, 4);
    // contract slot 1 with the unit
    Matrix<Rational> u(1, 2, Rational(0));
    u(0, 0) = kk.unit[0];
    u(0, 1) = kk.unit[1];
    Tensor<Rational> contracted = apply_to_group(t4, 0, u);
    Tensor<Rational> t3({2, 2, 2});
    detail::for_each_index(t3, [&](const std::vector<int>& ix) {
        t3.at(ix) = contracted.at({0, ix[0], ix[1], ix[2]});
    });
    CHECK(t3 == multiplication_tensor(kk, 3));
}

TEST_CASE("evaluation tensor of k[e]/e^3 with the socle functional is concise") {
    FiniteAlgebra<Rational> a = parse_algebra("k[e]/(e^3)");
    Functional<Rational> socle{Rational(0), Rational(0), Rational(1)};
    Tensor<Rational> e = evaluation_tensor(a, socle, 3);
    for (int i = 0; i < 3; ++i) CHECK(is_concise(e, i));
    // zero functional gives the zero tensor
    Functional<Rational> zero(3, Rational(0));
    CHECK(evaluation_tensor(a, zero, 3).is_zero_tensor());
    // the evaluation tensor is concise iff eps is a dual generator
    Functional<Rational> not_gen{Rational(0), Rational(1), Rational(0)};
    Tensor<Rational> bad = evaluation_tensor(a, not_gen, 3);
    bool all = true;
    for (int i = 0; i < 3; ++i) all = all && is_concise(bad, i);
    CHECK(!all);
}

TEST_CASE("gorenstein detection") {
    CHECK(is_gorenstein(parse_algebra("k[e]/(e^3)")).has_value());
    CHECK(is_gorenstein(parse_algebra("k[x]/(x^2 - x)")).has_value());
    CHECK(!is_gorenstein(parse_algebra("k[x,y]/(x^2, x*y, y^2)")).has_value());
    CHECK(is_gorenstein(parse_algebra("k[x,y]/(x^2, y^2)")).has_value());
    // a found dual generator yields a concise evaluation tensor
    FiniteAlgebra<Rational> a = parse_algebra("k[x]/(x^4)");
    auto eps = is_gorenstein(a);
    REQUIRE(eps.has_value());
    Tensor<Rational> e = evaluation_tensor(a, *eps, 3);
    for (int i = 0; i < 3; ++i) CHECK(is_concise(e, i));
}

TEST_CASE("gorenstein quotient tower of k[e]/e^3") {
    FiniteAlgebra<Rational> a = parse_algebra("k[e]/(e^3)");
    Functional<Rational> eps1{Rational(0), Rational(1), Rational(0)};
    auto q = gorenstein_quotient(a, eps1);
    CHECK(q.quotient.dim == 2);
    // eps' is a dual generator of the quotient
    auto w = is_gorenstein(q.quotient);
    CHECK(w.has_value());
    // evaluation through the projection reproduces the original
    Tensor<Rational> upstairs = evaluation_tensor(a, eps1, 3);
    Tensor<Rational> downstairs = evaluation_tensor(q.quotient, q.eps, 3);
    std::vector<Matrix<Rational>> pullback(3, q.projection.transposed());
    CHECK(restrict_tensor(downstairs, pullback) == upstairs);
    // a dual generator leaves the algebra unchanged
    Functional<Rational> socle{Rational(0), Rational(0), Rational(1)};
    CHECK(gorenstein_quotient(a, socle).quotient.dim == 3);
    // (1)^* kills the maximal ideal
    Functional<Rational> one_star{Rational(1), Rational(0), Rational(0)};
    CHECK(gorenstein_quotient(a, one_star).quotient.dim == 1);
}

TEST_CASE("unit tensor equals the multiplication tensor of the split algebra") {
    // multiplication tensor of k^3 = k[x]/(x^3 - x) is GL-equivalent to <3>;
    // check with the explicit idempotent change of basis
    FiniteAlgebra<Rational> k3 = parse_algebra("k[x]/(x^3 - x)");
    Tensor<Rational> t = multiplication_tensor(k3, 3);
    // idempotents of k[x]/(x^3-x): e0 = 1 - x^2, e1 = (x^2+x)/2, e2 = (x^2-x)/2
    Matrix<Rational> s(3, 3, Rational(0));
    s(0, 0) = Rational(1);  s(2, 0) = Rational(-1);
    s(1, 1) = Rational(1, 2); s(2, 1) = Rational(1, 2);
    s(1, 2) = Rational(-1, 2); s(2, 2) = Rational(1, 2);
    // pull the multiplication tensor back along the idempotent basis: the
    // dual coordinates transform by s^T on the two dual slots and by s^{-1}
    // on the algebra slot
    Matrix<Rational> sinv = inverse(s, Rational(1));
    Tensor<Rational> moved = restrict_tensor(t, {s.transposed(), s.transposed(), sinv});
    CHECK(moved == unit_tensor(3, 3, Rational(1)));
}

TEST_CASE("dual generator twist is an explicit isomorphism of evaluation tensors") {
    std::mt19937 rng(41);
    int done = 0;
    for (int round = 0; round < 40 && done < 20; ++round) {
        int deg = 2 + (round % 4);
        FiniteAlgebra<Rational> a = random_hypersurface_algebra(rng, deg);
        auto eps = is_gorenstein(a);
        REQUIRE(eps.has_value());
        // twist by a random invertible element u
        std::uniform_int_distribution<int> coef(-2, 2);
        std::vector<Rational> u(a.dim);
        for (auto& x : u) x = Rational(coef(rng));
        if (!a.is_invertible_element(u)) continue;
        ++done;
        // (u eps)(a1 ... ad) = eps(u a1 ... ad)
        Matrix<Rational> mu = a.mult_matrix(u);
        Functional<Rational> twisted(a.dim, Rational(0));
        for (int i = 0; i < a.dim; ++i) {
            std::vector<Rational> uei = a.multiply(u, a.basis_vector(i));
            for (int k = 0; k < a.dim; ++k) twisted[i] += (*eps)[k] * uei[k];
        }
        Tensor<Rational> e1 = evaluation_tensor(a, *eps, 3);
        Tensor<Rational> e2 = evaluation_tensor(a, twisted, 3);
        Matrix<Rational> id = Matrix<Rational>::identity(a.dim, Rational(1));
        CHECK(restrict_tensor(e1, {mu.transposed(), id, id}) == e2);
    }
    CHECK(done == 20);
}

TEST_CASE("structure constant validation rejects bad data") {
    // non-associative structure constants
    std::vector<Rational> cs(8, Rational(0));
    auto set = [&](int i, int j, int k, int v) { cs[(i * 2 + j) * 2 + k] = Rational(v); };
    set(0, 0, 0, 1);
    set(0, 1, 1, 1);
    set(1, 0, 1, 1);
    set(1, 1, 0, 1);
    std::vector<Rational> unit{Rational(1), Rational(0)};
    CHECK_NOTHROW(FiniteAlgebra<Rational>(2, cs, unit)); // this is k[x]/(x^2-1), fine
    set(1, 1, 0, 0);
    set(1, 1, 1, 1); // x*x = x but x*1 = x: breaks associativity? no: that is x^2=x, fine too
    CHECK_NOTHROW(FiniteAlgebra<Rational>(2, cs, unit));
    // breaking commutativity is caught
    set(0, 1, 0, 5);
    CHECK_THROWS_AS(FiniteAlgebra<Rational>(2, cs, unit), std::invalid_argument);
}
