#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace qfb;
using namespace qfb::testing;

TEST_CASE("sweedler expansion of grouplike words") {
    auto tab = params({"lambda"});
    Hopf h = make_u1(tab);
    const auto& A = h.A();

    NcPoly u = A.generator("u");
    Tensor two = h.sweedler(u, 2);
    CHECK(two == Tensor::of(u).outer(Tensor::of(u)));

    NcPoly u2 = u * u;
    Tensor three = h.sweedler(u2, 3);
    Tensor expect = Tensor::of(u2).outer(Tensor::of(u2)).outer(Tensor::of(u2));
    CHECK(three == expect);

    // flattening with eps in any slot recovers the 2-fold expansion
    for (size_t slot = 0; slot < 3; ++slot) {
        Tensor flat = three.contract_slot(slot, [&](const Word& w) { return h.counit_word(w); });
        CHECK(flat == h.sweedler(u2, 2));
    }
}

TEST_CASE("sweedler of a matrix corepresentation entry") {
    // so(2) rotation entries inside u(1): cos = (u + u*)/2
    auto tab = params({"lambda"});
    Hopf h = make_u1(tab);
    const auto& A = h.A();
    Scalar half = Scalar::from(GaussRat(Rat(1, 2)), tab);
    NcPoly cos = (A.generator("u") + A.generator("u*")).scaled(half);
    Scalar ihalf = Scalar::from(GaussRat(Rat(0), Rat(1, 2)), tab);
    NcPoly sin = (A.generator("u*") - A.generator("u")).scaled(ihalf);

    // phi(u_11) = u_11 (x) u_11 + u_12 (x) u_21 with u_12 = -sin, u_21 = sin
    Tensor lhs = h.sweedler(cos, 2);
    Tensor rhs = Tensor::of(cos).outer(Tensor::of(cos)) - Tensor::of(sin).outer(Tensor::of(sin));
    CHECK(lhs == rhs.normalized());
}

TEST_CASE("adjoint action collapses for abelian groups") {
    auto tab = params({"lambda"});
    Hopf h = make_u1(tab);
    const auto& A = h.A();
    NcPoly u = A.generator("u");

    Tensor adu = h.adjoint_action(u);
    CHECK(adu == Tensor::of(u).outer(Tensor::unit({h.alg.get()})));
    CHECK(h.adjoint_action(A.unit()) ==
          Tensor::of(A.unit()).outer(Tensor::unit({h.alg.get()})));
    NcPoly u2 = u * u;
    CHECK(h.adjoint_action(u2) == Tensor::of(u2).outer(Tensor::unit({h.alg.get()})));
}

TEST_CASE("adjoint is a right comodule structure") {
    auto tab = params({"lambda"});
    Hopf h = make_t2(tab);
    const auto& A = h.A();
    NcPoly x = A.generator("s") * A.generator("s") * A.generator("t") +
               A.generator("t*").scaled(Scalar::from_int(3, tab));

    // (id (x) eps) ad = id
    Tensor ad = h.adjoint_action(x);
    NcPoly back = ad.contract_slot(1, [&](const Word& w) { return h.counit_word(w); })
                      .slot_as_poly(0);
    CHECK(A.normal_form(back) == A.normal_form(x));

    // (ad (x) id) ad = (id (x) phi) ad
    Tensor left = ad.expand_slot(0, {h.alg.get(), h.alg.get()}, [&](const Word& w) {
        return h.adjoint_action(A.monomial(w, A.s_one()));
    });
    Tensor right = ad.expand_slot(1, {h.alg.get(), h.alg.get()},
                                  [&](const Word& w) { return h.coproduct_word(w); });
    CHECK(left == right);
}

TEST_CASE("group data verification passes for the builtin circle") {
    auto tab = params({"lambda"});
    Hopf h = make_u1(tab);
    Report rep = verify_group_data(h);
    INFO(rep.to_text());
    CHECK(rep.all_pass());
}

TEST_CASE("group data verification passes for the torus") {
    auto tab = params({"lambda"});
    Hopf h = make_t2(tab);
    Report rep = verify_group_data(h);
    INFO(rep.to_text());
    CHECK(rep.all_pass());
}

TEST_CASE("corrupted antipode fails with witness u") {
    auto tab = params({"lambda"});
    Hopf h = make_u1(tab);
    int u = h.A().gen_id("u");
    h.kappa_gen[u] = h.A().generator("u");  // wrong: kappa(u) = u
    Report rep = verify_group_data(h);
    bool found = false;
    for (const auto& c : rep.checks)
        if (c.name == "hopf.antipode-axiom") {
            CHECK(c.status == Status::fail);
            CHECK(c.witness.find("u") != std::string::npos);
            found = true;
        }
    CHECK(found);
}

TEST_CASE("haar errors name the missing word") {
    auto tab = params({"lambda"});
    Hopf h = make_u1(tab);
    h.haar_default.reset();  // table-only haar
    NcPoly u = h.A().generator("u");
    CHECK_THROWS_AS(h.haar(u), HaarError);
    CHECK(h.haar(h.A().unit()).is_one());
}

TEST_CASE("counit kills the minimal-calculus ideal generator") {
    auto tab = params({"lambda"});
    Hopf h = make_u1(tab);
    const auto& A = h.A();
    Scalar l2 = Scalar::parameter(tab, "lambda").pow(2);
    NcPoly gen = A.unit() + A.unit().scaled(l2) - A.generator("u") - A.generator("u*").scaled(l2);
    CHECK(h.counit(gen).is_zero());
}
