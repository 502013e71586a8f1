#pragma once

// Shared hand-built fixtures for the low-level unit tests. The full shipped
// instances live under instances/ and are exercised by the higher-level
// suites; these small builders keep the unit tests self-contained.

#include "qfb/hopf.hpp"

namespace qfb::testing {

inline std::shared_ptr<const ParamTable> params(std::vector<std::string> names) {
    auto t = std::make_shared<ParamTable>();
    t->names = std::move(names);
    return t;
}

// circle group algebra: u unitary grouplike
inline Hopf make_u1(std::shared_ptr<const ParamTable> tab) {
    Hopf h;
    h.alg = std::make_shared<PresentedAlgebra>("group", tab);
    auto& A = *h.alg;
    int u = A.add_generator("u");
    int us = A.add_generator("u*");
    A.set_star_pair("u", "u*");
    A.add_rule(word_of({u, us}), A.unit());
    A.add_rule(word_of({us, u}), A.unit());

    for (int g : {u, us}) {
        Tensor t({&A, &A});
        t.insert({Word(1, static_cast<char>(g)), Word(1, static_cast<char>(g))}, A.s_one());
        h.cop_gen[g] = t;
        h.eps_gen[g] = A.s_one();
        h.kappa_gen[g] = A.generator(g == u ? "u*" : "u");
        h.kappa_inv_gen[g] = A.generator(g == u ? "u*" : "u");
    }
    h.haar_default = A.s_zero();
    h.haar_table[Word()] = A.s_one();

    Corep c;
    c.name = "fund";
    c.dim = 1;
    c.entries = {{A.generator("u")}};
    c.unitary = true;
    h.coreps.push_back(std::move(c));
    return h;
}

// two-torus: s, t unitary grouplike
inline Hopf make_t2(std::shared_ptr<const ParamTable> tab) {
    Hopf h;
    h.alg = std::make_shared<PresentedAlgebra>("torus", tab);
    auto& A = *h.alg;
    int s = A.add_generator("s");
    int ss = A.add_generator("s*");
    int t = A.add_generator("t");
    int ts = A.add_generator("t*");
    A.set_star_pair("s", "s*");
    A.set_star_pair("t", "t*");
    A.add_rule(word_of({ss, s}), A.unit());
    A.add_rule(word_of({s, ss}), A.unit());
    A.add_rule(word_of({ts, t}), A.unit());
    A.add_rule(word_of({t, ts}), A.unit());
    // normal order: s-letters before t-letters
    for (int a : {t, ts})
        for (int b : {s, ss}) {
            NcPoly rhs(&A);
            rhs.insert(word_of({b, a}), A.s_one());
            A.add_rule(word_of({a, b}), rhs);
        }

    for (int g : {s, ss, t, ts}) {
        Tensor tt({&A, &A});
        tt.insert({Word(1, static_cast<char>(g)), Word(1, static_cast<char>(g))}, A.s_one());
        h.cop_gen[g] = tt;
        h.eps_gen[g] = A.s_one();
        int partner = A.gen(g).star;
        h.kappa_gen[g] = A.generator(A.gen(partner).name);
        h.kappa_inv_gen[g] = A.generator(A.gen(partner).name);
    }
    h.haar_default = A.s_zero();
    h.haar_table[Word()] = A.s_one();
    return h;
}

}  // namespace qfb::testing

#include "qfb/horizontal.hpp"

namespace qfb::testing {

// so(2)/lambda bimodule in the complex basis {psi, psi*}; shared by the
// horizontal and connection fixtures
inline Bimodule make_so2_bimodule(const Hopf& G, Scalar lambda) {
    Bimodule b;
    b.G = &G;
    b.n = 2;
    auto tab = G.alg->params;
    b.ext = std::make_shared<PresentedAlgebra>("vext", tab);
    b.ext->add_generator("psi", 1);
    b.ext->add_generator("psi*", 1);
    b.ext->set_star_pair("psi", "psi*");
    const auto& A = *G.alg;
    NcPoly zero(G.alg.get());
    b.coact = {{A.generator("u"), zero}, {zero, A.generator("u*")}};
    Mat mu = mat_identity(2, tab);
    mu.at(0, 0) = lambda;
    mu.at(1, 1) = lambda;
    Mat mu_inv = mat_identity(2, tab);
    mu_inv.at(0, 0) = lambda.inv();
    mu_inv.at(1, 1) = lambda.inv();
    b.circ[A.gen_id("u")] = mu;
    b.circ[A.gen_id("u*")] = mu_inv;
    b.star_mat = Mat(2, 2);
    b.star_mat.at(0, 0) = Scalar::zero(tab);
    b.star_mat.at(0, 1) = Scalar::one(tab);
    b.star_mat.at(1, 0) = Scalar::one(tab);
    b.star_mat.at(1, 1) = Scalar::zero(tab);
    b.compute_braiding();
    b.build_exterior_rules();
    return b;
}

// point-base line bundle: B generated by a unitary xi with F(xi) = xi (x) u
inline Bundle make_point_bundle_impl(const Hopf& G, const Bimodule& V) {
    Bundle P;
    P.G = &G;
    P.V = &V;
    auto tab = G.alg->params;
    P.B = std::make_shared<PresentedAlgebra>("bundle", tab);
    int xi = P.B->add_generator("xi");
    int xis = P.B->add_generator("xi*");
    P.B->set_star_pair("xi", "xi*");
    P.B->add_rule(word_of({xi, xis}), P.B->unit());
    P.B->add_rule(word_of({xis, xi}), P.B->unit());
    Tensor fxi({P.B.get(), G.alg.get()});
    fxi.insert({Word(1, static_cast<char>(xi)), Word(1, static_cast<char>(G.alg->gen_id("u")))},
               Scalar::one(tab));
    Tensor fxis({P.B.get(), G.alg.get()});
    fxis.insert({Word(1, static_cast<char>(xis)), Word(1, static_cast<char>(G.alg->gen_id("u*")))},
                Scalar::one(tab));
    P.F_gen[xi] = fxi;
    P.F_gen[xis] = fxis;
    return P;
}

inline Bundle make_point_bundle(const Hopf& G, const Bimodule& V) {
    return make_point_bundle_impl(G, V);
}

}  // namespace qfb::testing

#include "qfb/connection.hpp"
#include "qfb/fodc.hpp"
#include "qfb/linebundle.hpp"

namespace qfb::testing {

// complete point-base line-bundle fixture shared by the higher-level tests
struct PointLB {
    std::shared_ptr<const ParamTable> tab;
    Hopf G;
    Scalar l, c;
    Bimodule V;
    Bundle P;
    std::shared_ptr<CoordinateFields> X;
    std::shared_ptr<ReductionData> red;
    HorMap nabla;

    explicit PointLB(std::optional<Rat> lambda_value = std::nullopt)
        : tab(params({"lambda", "c"})), G(make_u1(tab)) {
        l = Scalar::parameter(tab, "lambda");
        c = Scalar::parameter(tab, "c");
        if (lambda_value) l = Scalar::from(GaussRat(*lambda_value), tab);
        V = make_so2_bimodule(G, l);
        P = make_point_bundle(G, V);

        const auto& B = *P.B;
        int xi = B.gen_id("xi"), xis = B.gen_id("xi*");
        X = std::make_shared<CoordinateFields>();
        X->P = &P;
        X->images.resize(2);
        X->images[0][xi] = B.unit().scaled(c);
        X->images[0][xis] = (B.generator("xi*") * B.generator("xi*")).scaled(-(c / l));
        X->images[1][xi] = (B.generator("xi") * B.generator("xi")).scaled(-(c * l));
        X->images[1][xis] = B.unit().scaled(c);

        red = std::make_shared<ReductionData>();
        red->P = &P;
        red->pairs[G.alg->gen_id("u")] = {{B.generator("xi*"), B.generator("xi")}};
        red->pairs[G.alg->gen_id("u*")] = {{B.generator("xi"), B.generator("xi*")}};

        nabla = frame_map(&P, X);
    }

    Hor xi() const { return Hor::from_b(&P, P.B->generator("xi")); }
    Hor xis() const { return Hor::from_b(&P, P.B->generator("xi*")); }
    Hor psi() const { return Hor::from_v(&P, V.ext->generator("psi")); }
    Hor psis() const { return Hor::from_v(&P, V.ext->generator("psi*")); }
    Hor pp() const { return hor_mul(psi(), psis()); }

    KerEpsMap make_chi() const {
        KerEpsMap chi;
        chi.P = &P;
        chi.red = red;
        chi.seeds[G.alg->gen_id("u")] = hor_mul(xis(), psi()) - hor_mul(xi(), psis()).scaled(l);
        chi.seeds[G.alg->gen_id("u*")] =
            hor_mul(xis(), psi()).scaled(-l.inv()) + hor_mul(xi(), psis());
        return chi;
    }

    // the one-dimensional minimal calculus generated by 1 + l^2 - u - l^2 u*
    std::shared_ptr<Fodc> make_fodc() const {
        auto f = std::make_shared<Fodc>();
        f->P = &P;
        const auto& A = *G.alg;
        Scalar l2 = l * l;
        f->ideal.push_back(A.unit() + A.unit().scaled(l2) - A.generator("u") -
                           A.generator("u*").scaled(l2));
        f->slice_len = 6;
        f->basis_names = {"w"};
        f->basis_reps = {A.generator("u") - A.unit()};
        f->gext = std::make_shared<PresentedAlgebra>("gamma", tab);
        int t = f->gext->add_generator("w", 1);
        f->gext->add_rule(word_of({t, t}), f->gext->zero());
        f->d_wedge[t] = f->gext->zero();
        Mat z(1, 1);
        z.at(0, 0) = Scalar::zero(tab);
        f->delta = {z};
        f->build();
        return f;
    }

    LineBundleData make_lb() const {
        LineBundleData lb;
        lb.P = &P;
        lb.X = X.get();
        lb.lambda = l;
        lb.coefficient = c;
        for (size_t g = 0; g < P.B->size(); ++g) {
            NcPoly id = P.B->generator(P.B->gen(static_cast<int>(g)).name);
            lb.gamma[static_cast<int>(g)] = id;
            lb.gamma_inv[static_cast<int>(g)] = id;
        }
        return lb;
    }
};

// quantum-torus base: Laurent pair v, vi with v* = v, xi v = mu v xi
struct TorusLB {
    std::shared_ptr<const ParamTable> tab;
    Hopf G;
    Scalar l, c, m;
    Bimodule V;
    Bundle P;
    std::shared_ptr<CoordinateFields> X;
    std::shared_ptr<ReductionData> red;
    HorMap nabla;
    Scalar alpha;

    explicit TorusLB(std::optional<Rat> lambda_value = std::nullopt,
                     std::optional<Rat> mu_value = std::nullopt)
        : tab(params({"lambda", "mu", "c"})), G(make_u1(tab)) {
        l = Scalar::parameter(tab, "lambda");
        m = Scalar::parameter(tab, "mu");
        c = Scalar::parameter(tab, "c");
        if (lambda_value) l = Scalar::from(GaussRat(*lambda_value), tab);
        if (mu_value) m = Scalar::from(GaussRat(*mu_value), tab);
        V = make_so2_bimodule(G, l);

        P.G = &G;
        P.V = &V;
        P.B = std::make_shared<PresentedAlgebra>("bundle", tab);
        int v = P.B->add_generator("v");
        int vi = P.B->add_generator("vi");
        int xi = P.B->add_generator("xi");
        int xis = P.B->add_generator("xi*");
        P.B->set_star_pair("v", "v");
        P.B->set_star_pair("vi", "vi");
        P.B->set_star_pair("xi", "xi*");
        auto one = P.B->unit();
        P.B->add_rule(word_of({v, vi}), one);
        P.B->add_rule(word_of({vi, v}), one);
        P.B->add_rule(word_of({xi, xis}), one);
        P.B->add_rule(word_of({xis, xi}), one);
        auto rule = [&](int a, int b, Scalar coef) {
            NcPoly rhs(P.B.get());
            rhs.insert(word_of({b, a}), coef);
            P.B->add_rule(word_of({a, b}), std::move(rhs));
        };
        rule(xi, v, m);
        rule(xi, vi, m.inv());
        rule(xis, v, m.inv());
        rule(xis, vi, m);
        P.base_gens = {"v", "vi"};

        auto fimage = [&](int g, const char* aname) {
            Tensor t({P.B.get(), G.alg.get()});
            Word aw;
            if (aname) aw = Word(1, static_cast<char>(G.alg->gen_id(aname)));
            t.insert({Word(1, static_cast<char>(g)), aw}, Scalar::one(tab));
            P.F_gen[g] = t;
        };
        fimage(v, nullptr);
        fimage(vi, nullptr);
        fimage(xi, "u");
        fimage(xis, "u*");

        // the Leibniz closure on xi v = mu v xi forces this value; at the
        // classical point both twists are trivial and any value works, 0 kept
        Scalar one_minus_l = Scalar::one(tab) - l;
        alpha = one_minus_l.is_zero() ? Scalar::zero(tab)
                                      : c * (m - Scalar::one(tab)) / (m * one_minus_l);

        const auto& B = *P.B;
        X = std::make_shared<CoordinateFields>();
        X->P = &P;
        X->images.resize(2);
        X->images[0][xi] = B.unit().scaled(c);
        X->images[0][xis] = (B.generator("xi*") * B.generator("xi*")).scaled(-(c / l));
        X->images[0][v] = (B.generator("v") * B.generator("xi*")).scaled(alpha);
        X->images[0][vi] = (B.generator("vi") * B.generator("xi*")).scaled(-(alpha * m));
        // X_psi* = lambda X* L
        X->images[1][xi] = (B.generator("xi") * B.generator("xi")).scaled(-(c * l));
        X->images[1][xis] = B.unit().scaled(c);
        X->images[1][v] = (B.generator("v") * B.generator("xi")).scaled(alpha * m * l);
        X->images[1][vi] = (B.generator("vi") * B.generator("xi")).scaled(-(alpha * l));

        red = std::make_shared<ReductionData>();
        red->P = &P;
        red->pairs[G.alg->gen_id("u")] = {{B.generator("xi*"), B.generator("xi")}};
        red->pairs[G.alg->gen_id("u*")] = {{B.generator("xi"), B.generator("xi*")}};

        nabla = frame_map(&P, X);
    }

    // coordinate spanning family over f = (v, vi)
    CoordinateSpan make_span() const {
        const auto& B = *P.B;
        Scalar one = Scalar::one(tab);
        Scalar K = (alpha * (one - m * m)).inv();
        Scalar Kp = (l * alpha * (m - m.inv())).inv();
        CoordinateSpan span;
        span.f = {B.generator("v"), B.generator("vi")};
        NcPoly b1psi = (B.generator("xi") * B.generator("vi")).scaled(K);
        NcPoly b2psi = (B.generator("xi") * B.generator("v")).scaled(K * m);
        NcPoly b1psis = (B.generator("xi*") * B.generator("vi")).scaled(Kp);
        NcPoly b2psis = (B.generator("xi*") * B.generator("v")).scaled(Kp * m.inv());
        span.b = {{b1psi, b1psis}, {b2psi, b2psis}};
        return span;
    }

    KerEpsMap make_chi() const {
        KerEpsMap chi;
        chi.P = &P;
        chi.red = red;
        Hor xis_psi = Hor::from_parts(&P, P.B->generator("xi*"), V.ext->generator("psi"));
        Hor xi_psis = Hor::from_parts(&P, P.B->generator("xi"), V.ext->generator("psi*"));
        chi.seeds[G.alg->gen_id("u")] = xis_psi - xi_psis.scaled(l);
        chi.seeds[G.alg->gen_id("u*")] = xis_psi.scaled(-l.inv()) + xi_psis;
        return chi;
    }

    std::shared_ptr<Fodc> make_fodc() const {
        auto f = std::make_shared<Fodc>();
        f->P = &P;
        const auto& A = *G.alg;
        Scalar l2 = l * l;
        f->ideal.push_back(A.unit() + A.unit().scaled(l2) - A.generator("u") -
                           A.generator("u*").scaled(l2));
        f->slice_len = 6;
        f->basis_names = {"w"};
        f->basis_reps = {A.generator("u") - A.unit()};
        f->gext = std::make_shared<PresentedAlgebra>("gamma", tab);
        int t = f->gext->add_generator("w", 1);
        f->gext->add_rule(word_of({t, t}), f->gext->zero());
        f->d_wedge[t] = f->gext->zero();
        Mat z(1, 1);
        z.at(0, 0) = Scalar::zero(tab);
        f->delta = {z};
        f->build();
        return f;
    }

    LineBundleData make_lb() const {
        LineBundleData lb;
        lb.P = &P;
        lb.X = X.get();
        lb.lambda = l;
        lb.coefficient = c;
        const auto& B = *P.B;
        lb.gamma[B.gen_id("v")] = B.generator("v").scaled(m);
        lb.gamma[B.gen_id("vi")] = B.generator("vi").scaled(m.inv());
        lb.gamma[B.gen_id("xi")] = B.generator("xi");
        lb.gamma[B.gen_id("xi*")] = B.generator("xi*");
        lb.gamma_inv[B.gen_id("v")] = B.generator("v").scaled(m.inv());
        lb.gamma_inv[B.gen_id("vi")] = B.generator("vi").scaled(m);
        lb.gamma_inv[B.gen_id("xi")] = B.generator("xi");
        lb.gamma_inv[B.gen_id("xi*")] = B.generator("xi*");
        return lb;
    }
};

}  // namespace qfb::testing
