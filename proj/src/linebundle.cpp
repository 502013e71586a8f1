#include "qfb/linebundle.hpp"

#include "qfb/sampling.hpp"

namespace qfb {

int LineBundleData::weight(const Word& w) const {
    Tensor f = P->F_word(w);
    int wt = 0;
    bool first = true;
    for (const auto& [k, c] : f.terms) {
        int n = 0;
        for (char g : k[1]) {
            const auto& gen = P->A().gen(static_cast<int>(g));
            n += gen.name.back() == '*' ? -1 : 1;
        }
        if (first) {
            wt = n;
            first = false;
        } else if (n != wt) {
            throw std::runtime_error("word is not weight-homogeneous: " + P->B->word_str(w));
        }
    }
    return wt;
}

NcPoly LineBundleData::L_apply(const NcPoly& b, int power) const {
    NcPoly out(P->B.get());
    for (const auto& [w, c] : b.terms)
        out.insert(w, c * lambda.pow(static_cast<long>(power) * weight(w)));
    return out;
}

NcPoly LineBundleData::gamma_apply(const NcPoly& b, long power) const {
    const auto& maps = power >= 0 ? gamma : gamma_inv;
    long n = power >= 0 ? power : -power;
    NcPoly cur = b;
    for (long k = 0; k < n; ++k) {
        NcPoly next(P->B.get());
        for (const auto& [w, c] : cur.terms) {
            NcPoly prod = P->B->unit();
            for (char g : w) prod = prod * maps.at(static_cast<int>(g));
            next += prod.scaled(c);
        }
        cur = P->B->normal_form(next);
    }
    return cur;
}

NcPoly LineBundleData::X_apply(const NcPoly& b) const { return X->apply(0, b); }

NcPoly LineBundleData::X_star_apply(const NcPoly& b) const {
    return P->B->star(X_apply(P->B->star(b)));
}

Report verify_line_bundle(const LineBundleData& lb, const CheckConfig& cfg) {
    Report rep;
    rep.seed = cfg.seed;
    const Bundle& P = *lb.P;
    const auto& B = *P.B;
    Sampler smp(cfg.seed);
    auto bwords = B.normal_words_upto(cfg.blen);

    run_check(rep, "lb.lowering", "X maps weight n to weight n-1", [&] {
        for (size_t g = 0; g < B.size(); ++g) {
            Word w(1, static_cast<char>(g));
            NcPoly img = lb.X_apply(B.monomial(w, B.s_one()));
            for (const auto& [iw, ic] : img.terms)
                if (lb.weight(iw) != lb.weight(w) - 1)
                    return std::make_pair(false, "X(" + B.gen(static_cast<int>(g)).name + ")");
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "lb.L-grading", "L scales weight n by lambda^n, L(b*) = L^-1(b)*", [&] {
        for (const auto& w : bwords) {
            NcPoly b = B.monomial(w, B.s_one());
            if (B.star(lb.L_apply(B.star(b))) != lb.L_apply(b, -1))
                return std::make_pair(false, "b = " + B.word_str(w));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "lb.psi-commutation", "psi b = L(b) psi in the horizontal algebra", [&] {
        Hor psi = Hor::from_v(&P, P.V->basis_elt(0));
        for (const auto& w : bwords) {
            NcPoly b = B.monomial(w, B.s_one());
            Hor lhs = hor_mul(psi, Hor::from_b(&P, b));
            Hor rhs = hor_mul(Hor::from_b(&P, lb.L_apply(b)), psi);
            if (lhs != rhs) return std::make_pair(false, "b = " + B.word_str(w));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "lb.base-twist", "xi f = gamma(f) xi on base generators", [&] {
        int xi = -1;
        for (size_t g = 0; g < B.size(); ++g)
            if (lb.weight(Word(1, static_cast<char>(g))) == 1 &&
                B.gen(static_cast<int>(g)).name.back() != '*')
                xi = static_cast<int>(g);
        if (xi < 0) return std::make_pair(true, std::string("no raising generator"));
        NcPoly x = B.generator(B.gen(xi).name);
        for (const auto& name : P.base_gens) {
            NcPoly f = B.generator(name);
            if (x * f != lb.gamma_apply(f, 1) * x)
                return std::make_pair(false, "f = " + name);
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "lb.X-leibniz", "X(bq) = b X(q) + X(b) L(q)", [&] {
        for (size_t g1 = 0; g1 < B.size(); ++g1)
            for (size_t g2 = 0; g2 < B.size(); ++g2) {
                NcPoly b = B.generator(B.gen(static_cast<int>(g1)).name);
                NcPoly q = B.generator(B.gen(static_cast<int>(g2)).name);
                NcPoly lhs = lb.X_apply(b * q);
                NcPoly rhs = b * lb.X_apply(q) + lb.X_apply(b) * lb.L_apply(q);
                if (lhs != rhs)
                    return std::make_pair(false, "(" + B.gen(static_cast<int>(g1)).name + ", " +
                                                     B.gen(static_cast<int>(g2)).name + ")");
            }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "lb.Xstar-leibniz", "X*(bq) = X*(b) q + L^-1(b) X*(q)", [&] {
        for (size_t g1 = 0; g1 < B.size(); ++g1)
            for (size_t g2 = 0; g2 < B.size(); ++g2) {
                NcPoly b = B.generator(B.gen(static_cast<int>(g1)).name);
                NcPoly q = B.generator(B.gen(static_cast<int>(g2)).name);
                NcPoly lhs = lb.X_star_apply(b * q);
                NcPoly rhs = lb.X_star_apply(b) * q + lb.L_apply(b, -1) * lb.X_star_apply(q);
                if (lhs != rhs)
                    return std::make_pair(false, "(" + B.gen(static_cast<int>(g1)).name + ", " +
                                                     B.gen(static_cast<int>(g2)).name + ")");
            }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "lb.bracket-leibniz",
              "[X,X*](bq) = [X,X*](b) L(q) + L^-1(b) [X,X*](q)", [&] {
                  auto bracket = [&](const NcPoly& b) {
                      return lb.X_apply(lb.X_star_apply(b)) - lb.X_star_apply(lb.X_apply(b));
                  };
                  for (size_t g1 = 0; g1 < B.size(); ++g1)
                      for (size_t g2 = 0; g2 < B.size(); ++g2) {
                          NcPoly b = B.generator(B.gen(static_cast<int>(g1)).name);
                          NcPoly q = B.generator(B.gen(static_cast<int>(g2)).name);
                          NcPoly lhs = bracket(b * q);
                          NcPoly rhs = bracket(b) * lb.L_apply(q) +
                                       lb.L_apply(b, -1) * bracket(q);
                          if (lhs != rhs)
                              return std::make_pair(false,
                                                    "(" + B.gen(static_cast<int>(g1)).name + ", " +
                                                        B.gen(static_cast<int>(g2)).name + ")");
                      }
                  return std::make_pair(true, std::string());
              });

    run_check(rep, "lb.bracket-base", "X X* = X* X on the base", [&] {
        for (const auto& name : P.base_gens) {
            NcPoly f = B.generator(name);
            if (lb.X_apply(lb.X_star_apply(f)) != lb.X_star_apply(lb.X_apply(f)))
                return std::make_pair(false, "f = " + name);
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "lb.nabla-form", "nabla(b) = X(b) (x) psi + lambda X* L(b) (x) psi*", [&] {
        HorMap nab = frame_map(&P, std::shared_ptr<const CoordinateFields>(
                                       std::shared_ptr<const void>(), lb.X));
        for (int k = 0; k < cfg.samples / 2 + 4; ++k) {
            NcPoly b = smp.poly(B, bwords, 2);
            Hor lhs = nab(Hor::from_b(&P, b));
            Hor rhs = Hor::from_parts(&P, lb.X_apply(b), P.V->basis_elt(0)) +
                      Hor::from_parts(&P, lb.X_star_apply(lb.L_apply(b)).scaled(lb.lambda),
                                      P.V->basis_elt(1));
            if (lhs != rhs) return std::make_pair(false, "b = " + b.str());
        }
        return std::make_pair(true, std::string());
    });

    rep.sort_by_name();
    return rep;
}

Report curvature_series_check(const LineBundleData& lb, const HorMap& nabla,
                              std::shared_ptr<const ReductionData> red, size_t n_max) {
    Report rep;
    const Bundle& P = *lb.P;
    const auto& A = P.A();
    KerEpsMap rho = curvature_extract(P, nabla, red);
    NcPoly u = A.generator("u");
    NcPoly ui = A.generator("u*");
    Hor rho_u = rho.apply(u);

    auto gamma_on_hor = [&](const Hor& h, long power) {
        Hor out(&P);
        for (const auto& [k, c] : h.terms) {
            NcPoly g = lb.gamma_apply(P.B->monomial(k.first, c), power);
            for (const auto& [bw, bc] : g.terms) out.insert(bw, k.second, bc);
        }
        return out;
    };

    run_check(rep, "lb.curvature-value", "rho(u) = -|c|^2 (1 + lambda) (1 (x) psi* psi)", [&] {
        Hor sp = hor_mul(Hor::from_v(&P, P.V->basis_elt(1)), Hor::from_v(&P, P.V->basis_elt(0)));
        Scalar k = -(lb.coefficient * lb.coefficient.conj()) * (Scalar::one(A.params) + lb.lambda);
        bool ok = rho_u == sp.scaled(k);
        return std::make_pair(ok, ok ? std::string() : "got " + rho_u.str());
    });

    run_check(rep, "lb.curvature-series",
              "rho(u^n) and rho(u^-n) follow the twisted geometric sums", [&] {
                  for (size_t n = 1; n <= n_max; ++n) {
                      NcPoly un = A.unit();
                      NcPoly uin = A.unit();
                      for (size_t k = 0; k < n; ++k) {
                          un = un * u;
                          uin = uin * ui;
                      }
                      Hor plus(&P), minus(&P);
                      for (size_t k = 0; k < n; ++k) {
                          plus += gamma_on_hor(rho_u, -static_cast<long>(k))
                                      .scaled(lb.lambda.pow(2 * static_cast<long>(k)));
                          minus += gamma_on_hor(rho_u, static_cast<long>(k))
                                       .scaled(lb.lambda.pow(-2 * static_cast<long>(k)));
                      }
                      minus = gamma_on_hor(minus, 1).scaled(-lb.lambda.pow(-2));
                      if (rho.apply(un) != plus)
                          return std::make_pair(false, "u^" + std::to_string(n));
                      if (rho.apply(uin) != minus)
                          return std::make_pair(false, "u^-" + std::to_string(n));
                  }
                  return std::make_pair(true, std::string());
              });

    rep.sort_by_name();
    return rep;
}

Report minimal_calculus_so2(const LineBundleData& lb, const HorMap& nabla,
                            std::shared_ptr<const ReductionData> red, const Fodc& fodc,
                            size_t maximality_bound) {
    Report rep;
    const Bundle& P = *lb.P;
    const auto& A = P.A();
    KerEpsMap rho = curvature_extract(P, nabla, red);
    Hor pp = hor_mul(Hor::from_v(&P, P.V->basis_elt(0)), Hor::from_v(&P, P.V->basis_elt(1)));

    bool scalar_valued = true;
    run_check(rep, "lb.curvature-scalar", "rho(u) is a scalar multiple of psi psi*", [&] {
        Hor r = rho.apply(A.generator("u"));
        if (r.terms.size() != 1) {
            return std::make_pair(false, "curvature not scalar: " + r.str());
        }
        const auto& [k, c] = *r.terms.begin();
        if (!k.first.empty() || k.second != pp.terms.begin()->first.second)
            return std::make_pair(false, "curvature not a psi psi* multiple: " + r.str());
        if (c.is_zero()) return std::make_pair(false, std::string("curvature vanishes"));
        return std::make_pair(true, "c(u) = " + c.str());
    });
    for (const auto& ck : rep.checks)
        if (ck.status == Status::fail) scalar_valued = false;

    if (!scalar_valued) {
        rep.skip("fodc.maximality", "one-dimensional reduction",
                 "curvature is not exterior-valued; only the annihilator checks apply");
        IdealVerifyOptions opt;
        opt.annihilating_maps = {&rho};
        rep.merge(verify_ideal(fodc, opt));
        rep.sort_by_name();
        return rep;
    }

    run_check(rep, "lb.gamma-inv-dim", "dim Gamma_inv = 1 with theta o u = lambda^2 theta", [&] {
        if (fodc.dim() != 1) return std::make_pair(false, "dim = " + std::to_string(fodc.dim()));
        Mat m = fodc.circ_matrix(A.generator("u"));
        if (m.at(0, 0) != lb.lambda * lb.lambda)
            return std::make_pair(false, "theta o u = " + m.at(0, 0).str());
        return std::make_pair(true, std::string());
    });

    IdealVerifyOptions opt;
    opt.maximality_bound = maximality_bound;
    opt.annihilating_maps = {&rho};
    rep.merge(verify_ideal(fodc, opt));
    rep.sort_by_name();
    return rep;
}

std::pair<Hor, Hor> holomorphic_split(const Hor& x) {
    if (!is_f_invariant(x))
        throw std::invalid_argument("holomorphic split expects an invariant degree-1 form");
    const Bundle* P = x.P;
    Hor plus(P), minus(P);
    for (const auto& [k, c] : x.terms) {
        if (k.second.size() != 1)
            throw std::invalid_argument("holomorphic split expects a degree-1 form");
        if (k.second[0] == 0)
            plus.insert(k.first, k.second, c);
        else
            minus.insert(k.first, k.second, c);
    }
    return {plus, minus};
}

}  // namespace qfb
