#include "qfb/homogeneous.hpp"

namespace qfb {

NcPoly Homogeneous::sigma_apply(const NcPoly& q) const {
    const auto& A = *G->alg;
    NcPoly out(&A);
    for (const auto& [w, c] : q.terms) {
        NcPoly prod = A.unit();
        for (char g : w) prod = prod * sigma.at(static_cast<int>(g));
        out += prod.scaled(c);
    }
    return A.normal_form(out);
}

NcPoly Homogeneous::pi_prime_word(const Word& w) const {
    // pi'(g1...gm) = sum eps(prefix) pi'(g_k) eps(suffix): the classical
    // first-order germ rule
    NcPoly out(phi_ext.get());
    for (size_t k = 0; k < w.size(); ++k) {
        Scalar pre = H->counit_word(w.substr(0, k));
        Scalar post = H->counit_word(w.substr(k + 1));
        out += pi_prime_gen.at(static_cast<int>(w[k])).scaled(pre * post);
    }
    return out;
}

NcPoly Homogeneous::pi_prime(const NcPoly& q) const {
    NcPoly out(phi_ext.get());
    for (const auto& [w, c] : q.terms) out += pi_prime_word(w).scaled(c);
    return out;
}

Tensor Homogeneous::ad_star(const NcPoly& q) const {
    Tensor three = H->sweedler(q, 3);
    Tensor out({H->alg.get(), G->alg.get()});
    for (const auto& [k, c] : three.terms) {
        NcPoly left(H->alg.get());
        left.insert(k[0], H->alg->s_one());
        NcPoly right(H->alg.get());
        right.insert(k[2], H->alg->s_one());
        NcPoly inner = H->antipode(left) * right;
        NcPoly mapped = sigma_apply(inner);
        for (const auto& [aw, ac] : mapped.terms) out.insert({k[1], aw}, c * ac);
    }
    return out.normalized();
}

Tensor Homogeneous::phi_fix_action(const NcPoly& q) const {
    Tensor cop = H->coproduct(q);
    Tensor out({H->alg.get(), G->alg.get()});
    for (const auto& [k, c] : cop.terms) {
        NcPoly mapped = sigma_apply(H->alg->monomial(k[1], H->alg->s_one()));
        for (const auto& [aw, ac] : mapped.terms) out.insert({k[0], aw}, c * ac);
    }
    return out.normalized();
}

bool Homogeneous::in_K(const NcPoly& q) const {
    Tensor diff = phi_fix_action(q) - Tensor::of(q).outer(Tensor::unit({G->alg.get()}));
    return diff.is_zero();
}

NcPoly Homogeneous::p_L(const NcPoly& phi_elt) const {
    NcPoly out(phi_ext.get());
    for (const auto& [w, c] : phi_elt.terms) {
        if (w.size() != 1) throw std::logic_error("p_L expects a degree-1 element");
        size_t idx = static_cast<size_t>(w[0]);
        for (size_t li : L_idx)
            if (li == idx) out.insert(w, c);
    }
    return out;
}

NcPoly Homogeneous::pi_L(const NcPoly& q) const {
    NcPoly proj = p_L(pi_prime(q));
    // re-express in the L-bimodule carrier (basis order = L_idx)
    NcPoly out(bim.ext.get());
    for (const auto& [w, c] : proj.terms) {
        size_t idx = static_cast<size_t>(w[0]);
        for (size_t k = 0; k < L_idx.size(); ++k)
            if (L_idx[k] == idx) out.insert(Word(1, static_cast<char>(k)), c);
    }
    return out;
}

void Homogeneous::build_derived() {
    const auto& A = *G->alg;
    size_t n = ldim();

    bim.G = G;
    bim.n = n;
    bim.ext = std::make_shared<PresentedAlgebra>("lext", A.params);
    for (size_t k = 0; k < n; ++k)
        bim.ext->add_generator(phi_ext->gen(static_cast<int>(L_idx[k])).name, 1);
    // coaction from the restricted adjoint action on the lifts
    bim.coact.assign(n, std::vector<NcPoly>(n, NcPoly(G->alg.get())));
    for (size_t i = 0; i < n; ++i) {
        Tensor ad = ad_star(K_lifts[i]);
        for (const auto& [k, c] : ad.terms) {
            NcPoly cls = pi_prime_word(k[0]);
            // coordinates over the L part
            for (const auto& [w, cc] : cls.terms) {
                size_t idx = static_cast<size_t>(w[0]);
                for (size_t j = 0; j < n; ++j)
                    if (L_idx[j] == idx)
                        bim.coact[j][i] += A.monomial(k[1], c * cc);
            }
        }
        for (size_t j = 0; j < n; ++j) bim.coact[j][i] = A.normal_form(bim.coact[j][i]);
    }
    // module structure through the section
    for (size_t g = 0; g < A.size(); ++g) {
        const NcPoly& lift = sigma_section.at(static_cast<int>(g));
        Mat full(phi_ext->size(), phi_ext->size());
        for (size_t r = 0; r < phi_ext->size(); ++r)
            for (size_t c2 = 0; c2 < phi_ext->size(); ++c2) full.at(r, c2) = A.s_zero();
        for (const auto& [w, c] : lift.terms) {
            Mat m = mat_identity(phi_ext->size(), A.params);
            for (char ch : w) m = mat_mul(m, phi_circ.at(static_cast<int>(ch)));
            for (size_t e = 0; e < full.a.size(); ++e) full.a[e] += m.a[e] * c;
        }
        Mat restr(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) restr.at(i, j) = full.at(L_idx[i], L_idx[j]);
        bim.circ[static_cast<int>(g)] = restr;
    }
    // star restricted to L
    bim.star_mat = Mat(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) bim.star_mat.at(i, j) = phi_star.at(L_idx[i], L_idx[j]);
    bim.expect_trivial_kernel = true;  // one-dimensional classical fibers allowed
    bim.compute_braiding();
    bim.build_exterior_rules();

    bundle.G = G;
    bundle.V = &bim;
    bundle.B = H->alg;
    bundle.base_gens = base_gens;
    for (size_t g = 0; g < H->alg->size(); ++g) {
        Tensor fa = phi_fix_action(H->alg->generator(H->alg->gen(static_cast<int>(g)).name));
        Tensor conv({bundle.B.get(), G->alg.get()});
        conv.terms = fa.terms;
        bundle.F_gen[static_cast<int>(g)] = conv;
    }

    // frame fields: nabla(b) = sum b_k (x) pi_L(q_k) over E = phi'
    fields = std::make_shared<CoordinateFields>();
    fields->P = &bundle;
    fields->images.resize(n);
    for (size_t g = 0; g < H->alg->size(); ++g) {
        Tensor cop = H->coproduct(H->alg->generator(H->alg->gen(static_cast<int>(g)).name));
        std::vector<NcPoly> imgs(n, NcPoly(bundle.B.get()));
        for (const auto& [k, c] : cop.terms) {
            NcPoly cls = pi_L(H->alg->monomial(k[1], H->alg->s_one()));
            for (const auto& [w, cc] : cls.terms) {
                size_t i = static_cast<size_t>(w[0]);
                imgs[i] += bundle.B->monomial(k[0], c * cc);
            }
        }
        for (size_t i = 0; i < n; ++i)
            fields->images[i][static_cast<int>(g)] = bundle.B->normal_form(imgs[i]);
    }
    nabla = frame_map(&bundle, fields);
}

Report verify_homogeneous(const Homogeneous& h, const HomogeneousVerifyOptions& opt) {
    Report rep;
    rep.seed = opt.seed;
    const auto& Ap = *h.H->alg;
    const auto& A = *h.G->alg;

    run_check(rep, "hom.sigma-hopf", "phi sigma = (sigma (x) sigma) phi', eps sigma = eps', "
                                     "kappa sigma = sigma kappa'", [&] {
        for (size_t g = 0; g < Ap.size(); ++g) {
            NcPoly q = Ap.generator(Ap.gen(static_cast<int>(g)).name);
            NcPoly sq = h.sigma_apply(q);
            Tensor lhs = h.G->coproduct(sq);
            Tensor rhs = h.H->coproduct(q)
                             .map_slot(0, [&](const Word& w) {
                                 return h.sigma_apply(Ap.monomial(w, Ap.s_one()));
                             })
                             .map_slot(1, [&](const Word& w) {
                                 return h.sigma_apply(Ap.monomial(w, Ap.s_one()));
                             });
            if (lhs != rhs)
                return std::make_pair(false, "coproduct at " + Ap.gen(static_cast<int>(g)).name);
            if (h.G->counit(sq) != h.H->counit(q))
                return std::make_pair(false, "counit at " + Ap.gen(static_cast<int>(g)).name);
            if (h.G->antipode(sq) != h.sigma_apply(h.H->antipode(q)))
                return std::make_pair(false, "antipode at " + Ap.gen(static_cast<int>(g)).name);
        }
        for (const auto& r : Ap.rules) {
            NcPoly lhs(&Ap);
            lhs.insert(r.lhs, Ap.s_one());
            if (h.sigma_apply(lhs) != h.sigma_apply(r.rhs))
                return std::make_pair(false, "rule " + Ap.word_str(r.lhs));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "hom.pi-prime-welldef", "the germ map respects the relations", [&] {
        for (const auto& r : Ap.rules)
            if (h.pi_prime_word(r.lhs) != h.pi_prime(r.rhs))
                return std::make_pair(false, "rule " + Ap.word_str(r.lhs));
        return std::make_pair(true, std::string());
    });

    run_check(rep, "hom.restricted-adjoint", "ad_* is a right comodule action", [&] {
        auto words = Ap.normal_words_upto(2);
        for (const auto& w : words) {
            NcPoly q = Ap.monomial(w, Ap.s_one());
            Tensor ad = h.ad_star(q);
            // (id (x) eps) ad_* = id
            NcPoly back = ad.contract_slot(1, [&](const Word& v) { return h.G->counit_word(v); })
                              .slot_as_poly(0);
            if (Ap.normal_form(back) != q)
                return std::make_pair(false, "counit leg at " + Ap.word_str(w));
            // (ad_* (x) id) ad_* = (id (x) phi) ad_*
            Tensor left = ad.expand_slot(0, {h.H->alg.get(), h.G->alg.get()}, [&](const Word& v) {
                return h.ad_star(Ap.monomial(v, Ap.s_one()));
            });
            Tensor right = ad.expand_slot(1, {h.G->alg.get(), h.G->alg.get()}, [&](const Word& v) {
                return h.G->coproduct_word(v);
            });
            if (left != right) return std::make_pair(false, "comodule axiom at " + Ap.word_str(w));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "hom.K-lifts", "the lifts are fixed points with the right classes", [&] {
        for (size_t i = 0; i < h.K_lifts.size(); ++i) {
            if (!h.in_K(h.K_lifts[i]))
                return std::make_pair(false, "lift " + std::to_string(i) + " not fixed");
            if (!h.H->counit(h.K_lifts[i]).is_zero())
                return std::make_pair(false, "lift " + std::to_string(i) + " not in ker(eps)");
            NcPoly cls = h.p_L(h.pi_prime(h.K_lifts[i]));
            NcPoly expect(h.phi_ext.get());
            expect.insert(Word(1, static_cast<char>(h.L_idx[i])), Ap.s_one());
            if (cls != expect)
                return std::make_pair(false, "lift " + std::to_string(i) + " wrong class");
            // ad_*(K) inside K (x) A on the lifts
            Tensor ad = h.ad_star(h.K_lifts[i]);
            std::map<Word, NcPoly> grouped;
            for (const auto& [k, c] : ad.terms) {
                auto& p = grouped[k[1]];
                p.alg = h.H->alg.get();
                p.insert(k[0], c);
            }
            for (auto& [aw, p] : grouped)
                if (!h.in_K(p))
                    return std::make_pair(false, "ad_* leaves K at lift " + std::to_string(i));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "hom.pi-surjective",
              "pi' maps the fixed-point slice onto L (bound " + std::to_string(opt.word_len) + ")",
              [&] {
                  // collect pi' images of fixed-point slice elements
                  auto words = Ap.normal_words_upto(opt.word_len);
                  std::vector<std::vector<Scalar>> rows;
                  for (const auto& w : words) {
                      NcPoly q = Ap.monomial(w, Ap.s_one());
                      q = Ap.normal_form(q - Ap.unit().scaled(h.H->counit(q)));
                      if (q.is_zero() || !h.in_K(q)) continue;
                      NcPoly cls = h.p_L(h.pi_prime(q));
                      std::vector<Scalar> row(h.ldim(), A.s_zero());
                      for (const auto& [cw, cc] : cls.terms) {
                          size_t idx = static_cast<size_t>(cw[0]);
                          for (size_t k = 0; k < h.ldim(); ++k)
                              if (h.L_idx[k] == idx) row[k] += cc;
                      }
                      rows.push_back(std::move(row));
                  }
                  Mat m(rows.size(), h.ldim());
                  for (size_t r = 0; r < rows.size(); ++r)
                      for (size_t c = 0; c < h.ldim(); ++c) m.at(r, c) = rows[r][c];
                  bool ok = rank(std::move(m)) == h.ldim();
                  return std::make_pair(ok, ok ? std::string() : "slice image too small");
              });

    run_check(rep, "hom.projectable", "Phi_inv o ker(sigma) = 0", [&] {
        // kernel of sigma on the word slice
        auto words = Ap.normal_words_upto(opt.word_len);
        Indexer<Word> ix;
        std::vector<std::map<Word, Scalar>> cols;
        for (const auto& w : words) {
            NcPoly img = h.sigma_apply(Ap.monomial(w, Ap.s_one()));
            std::map<Word, Scalar> col;
            for (const auto& [aw, ac] : img.terms) col[aw] = ac;
            cols.push_back(std::move(col));
        }
        for (const auto& c : cols)
            for (const auto& [k, v] : c) ix.id(k);
        Mat m(ix.size(), cols.size());
        for (size_t c = 0; c < cols.size(); ++c)
            for (const auto& [k, v] : cols[c]) m.at(ix.pos.at(k), c) = v;
        auto ker = kernel_basis(std::move(m));
        for (const auto& kv : ker) {
            // module matrix of the kernel element must vanish
            Mat full(h.phi_ext->size(), h.phi_ext->size());
            for (size_t e = 0; e < full.a.size(); ++e) full.a[e] = A.s_zero();
            for (size_t k = 0; k < words.size(); ++k) {
                if (kv[k].is_zero()) continue;
                Mat mw = mat_identity(h.phi_ext->size(), A.params);
                for (char ch : words[k]) mw = mat_mul(mw, h.phi_circ.at(static_cast<int>(ch)));
                for (size_t e = 0; e < full.a.size(); ++e) full.a[e] += mw.a[e] * kv[k];
            }
            for (const auto& s : full.a)
                if (!s.is_zero())
                    return std::make_pair(false, std::string("kernel element acts nontrivially"));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "hom.Lperp-complement", "L-perp is coaction-, module- and star-invariant", [&] {
        // module invariance: circ matrices keep the L-perp block
        for (const auto& [g, m] : h.phi_circ)
            for (size_t i : h.Lperp_idx)
                for (size_t j : h.L_idx)
                    if (!m.at(i, j).is_zero())
                        return std::make_pair(false, "module mixes the splitting at generator " +
                                                         Ap.gen(g).name);
        for (size_t i : h.Lperp_idx)
            for (size_t j : h.L_idx)
                if (!h.phi_star.at(i, j).is_zero())
                    return std::make_pair(false, std::string("star mixes the splitting"));
        return std::make_pair(true, std::string());
    });

    run_check(rep, "hom.kappa-pi", "coaction(pi'(q)) = pi'(q(2)) (x) kappa sigma(q(1)) on K", [&] {
        for (size_t i = 0; i < h.K_lifts.size(); ++i) {
            const NcPoly& q = h.K_lifts[i];
            // lhs: coaction of the class through the derived bimodule
            NcPoly cls = h.pi_L(q);
            Tensor lhs = h.bim.coaction_v(cls);
            Tensor rhs({h.bim.ext.get(), h.G->alg.get()});
            Tensor two = h.H->sweedler(q, 2);
            for (const auto& [k, c] : two.terms) {
                NcPoly cls2 = h.pi_L(Ap.monomial(k[1], Ap.s_one()));
                NcPoly right = h.G->antipode(h.sigma_apply(Ap.monomial(k[0], Ap.s_one())));
                for (const auto& [vw, vc] : cls2.terms)
                    for (const auto& [aw, ac] : right.terms) rhs.insert({vw, aw}, c * vc * ac);
            }
            if (lhs != rhs.normalized())
                return std::make_pair(false, "lift " + std::to_string(i));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "hom.tau-identity",
              "tau(piL(q1) (x) piL(q2)) = piL(q1) (x) piL(q2) - piL(q2) (x) piL(kappa'(q1) q3)",
              [&] {
                  size_t n = h.ldim();
                  for (size_t g = 0; g < Ap.size(); ++g) {
                      NcPoly q = Ap.generator(Ap.gen(static_cast<int>(g)).name) - Ap.unit();
                      // coordinates of (piL (x) piL) sweedler2 and the rhs
                      std::vector<Scalar> v2(n * n, A.s_zero()), rhs(n * n, A.s_zero());
                      Tensor two = h.H->sweedler(q, 2);
                      for (const auto& [k, c] : two.terms) {
                          NcPoly c1 = h.pi_L(Ap.monomial(k[0], Ap.s_one()));
                          NcPoly c2 = h.pi_L(Ap.monomial(k[1], Ap.s_one()));
                          for (const auto& [w1, s1] : c1.terms)
                              for (const auto& [w2, s2] : c2.terms)
                                  v2[static_cast<size_t>(w1[0]) * n + static_cast<size_t>(w2[0])] +=
                                      c * s1 * s2;
                      }
                      Tensor three = h.H->sweedler(q, 3);
                      for (const auto& [k, c] : three.terms) {
                          NcPoly c1 = h.pi_L(Ap.monomial(k[1], Ap.s_one()));
                          NcPoly inner = h.H->antipode(Ap.monomial(k[0], Ap.s_one())) *
                                         Ap.monomial(k[2], Ap.s_one());
                          NcPoly c2 = h.pi_L(inner);
                          for (const auto& [w1, s1] : c1.terms)
                              for (const auto& [w2, s2] : c2.terms)
                                  rhs[static_cast<size_t>(w1[0]) * n + static_cast<size_t>(w2[0])] -=
                                      c * s1 * s2;
                      }
                      for (size_t e = 0; e < n * n; ++e) rhs[e] += v2[e];
                      // lhs: tau applied to v2
                      std::vector<Scalar> lhs(n * n, A.s_zero());
                      for (size_t out = 0; out < n * n; ++out)
                          for (size_t in = 0; in < n * n; ++in)
                              lhs[out] += h.bim.tau.at(out, in) * v2[in];
                      for (size_t e = 0; e < n * n; ++e)
                          if (lhs[e] != rhs[e])
                              return std::make_pair(false,
                                                    "generator " + Ap.gen(static_cast<int>(g)).name);
                  }
                  return std::make_pair(true, std::string());
              });

    run_check(rep, "hom.condition-d",
              "piL(q(2)) piL(kappa'(q(1)) q(3)) = 0 in the exterior algebra for ideal lifts", [&] {
                  for (const auto& [r, q] : opt.ideal_lifts) {
                      if (h.sigma_apply(q) != A.normal_form(r))
                          return std::make_pair(false, "lift does not project to " + r.str());
                      Tensor three = h.H->sweedler(q, 3);
                      NcPoly acc(h.bim.ext.get());
                      for (const auto& [k, c] : three.terms) {
                          NcPoly c1 = h.pi_L(Ap.monomial(k[1], Ap.s_one()));
                          NcPoly inner = h.H->antipode(Ap.monomial(k[0], Ap.s_one())) *
                                         Ap.monomial(k[2], Ap.s_one());
                          NcPoly c2 = h.pi_L(inner);
                          acc += (c1 * c2).scaled(c);
                      }
                      if (!acc.is_zero())
                          return std::make_pair(false, "residual " + acc.str());
                  }
                  return std::make_pair(true, std::string());
              });

    if (h.phi_bicovariant) {
        run_check(rep, "hom.bicovariant-coaction", "coaction = (id (x) sigma) adjoint'", [&] {
            for (size_t i = 0; i < h.K_lifts.size(); ++i) {
                Tensor adp = h.H->adjoint_action(h.K_lifts[i]);
                Tensor rhs({h.bim.ext.get(), h.G->alg.get()});
                for (const auto& [k, c] : adp.terms) {
                    NcPoly cls = h.pi_L(Ap.monomial(k[0], Ap.s_one()));
                    NcPoly mapped = h.sigma_apply(Ap.monomial(k[1], Ap.s_one()));
                    for (const auto& [vw, vc] : cls.terms)
                        for (const auto& [aw, ac] : mapped.terms)
                            rhs.insert({vw, aw}, c * vc * ac);
                }
                Tensor lhs = h.bim.coaction_v(h.pi_L(h.K_lifts[i]));
                if (lhs != rhs.normalized())
                    return std::make_pair(false, "lift " + std::to_string(i));
            }
            return std::make_pair(true, std::string());
        });
    }

    run_check(rep, "hom.curvature-formula", "rho sigma(q) = -piL(q(1)) piL(q(2))", [&] {
        // the frame curvature computed on B agrees with the coproduct formula
        auto words = Ap.normal_words_upto(2);
        for (const auto& w : words) {
            NcPoly q = Ap.monomial(w, Ap.s_one());
            // nabla^2(b) = -sum b_k (x) piL(q_k(1)) piL(q_k(2)) from E = phi'
            Hor lhs = h.nabla(h.nabla(Hor::from_b(&h.bundle, q)));
            Hor rhs(&h.bundle);
            Tensor three = h.H->sweedler(q, 3);
            for (const auto& [k, c] : three.terms) {
                NcPoly c1 = h.pi_L(Ap.monomial(k[1], Ap.s_one()));
                NcPoly c2 = h.pi_L(Ap.monomial(k[2], Ap.s_one()));
                NcPoly prod = c1 * c2;
                for (const auto& [bw, bc] : Ap.normal_form(Ap.monomial(k[0], Ap.s_one())).terms)
                    for (const auto& [vw, vc] : prod.terms)
                        rhs.insert(bw, vw, c * bc * vc);
            }
            if (lhs != rhs) return std::make_pair(false, "q = " + Ap.word_str(w));
        }
        return std::make_pair(true, std::string());
    });

    rep.sort_by_name();
    return rep;
}

std::optional<CoordinateElements> coordinate_elements(const Homogeneous& h, size_t k_slice,
                                                      size_t b_slice,
                                                      const std::vector<NcPoly>& f_candidates,
                                                      std::string* diag) {
    const auto& Ap = *h.H->alg;
    CoordinateElements out;

    // fixed-point slice elements with zero counit
    auto words = Ap.normal_words_upto(k_slice);
    std::vector<NcPoly> kbasis;
    for (const auto& w : words) {
        NcPoly q = Ap.monomial(w, Ap.s_one());
        q = Ap.normal_form(q - Ap.unit().scaled(h.H->counit(q)));
        if (!q.is_zero() && h.in_K(q)) kbasis.push_back(q);
    }

    for (size_t i = 0; i < h.ldim(); ++i) {
        // solve: pi_L-class of c equals theta_i and ad_*(c) = sum c_j (x) u_ji
        Indexer<std::string> ix;
        std::vector<std::map<std::string, Scalar>> cols;
        std::map<std::string, Scalar> target;
        auto key_class = [&](size_t j) { return "cls." + std::to_string(j); };
        for (const auto& q : kbasis) {
            std::map<std::string, Scalar> col;
            NcPoly cls = h.pi_L(q);
            for (const auto& [vw, vc] : cls.terms)
                col[key_class(static_cast<size_t>(vw[0]))] += vc;
            // covariance residual ad_*(q) - sum (basis classes)...: nonlinear in
            // the unknown family; for the abelian built-in the adjoint is
            // trivial, so require ad_*(q) = q (x) u_ii-combination directly
            Tensor ad = h.ad_star(q);
            Tensor expect({h.H->alg.get(), h.G->alg.get()});
            for (const auto& [qw, qc] : q.terms) {
                for (const auto& [aw, ac] : h.bim.coact[i][i].terms)
                    expect.insert({qw, aw}, qc * ac);
            }
            Tensor diff = ad - expect;
            for (const auto& [k, c] : diff.terms)
                col["ad." + Ap.word_str(k[0]) + "|" + h.G->alg->word_str(k[1])] += c;
            cols.push_back(std::move(col));
        }
        target[key_class(i)] = Ap.s_one();
        for (const auto& c : cols)
            for (const auto& [k, v] : c) ix.id(k);
        for (const auto& [k, v] : target) ix.id(k);
        Mat m(ix.size(), cols.size());
        for (size_t c = 0; c < cols.size(); ++c)
            for (const auto& [k, v] : cols[c]) m.at(ix.pos.at(k), c) = v;
        std::vector<Scalar> b(ix.size(), Ap.s_zero());
        for (const auto& [k, v] : target) b[ix.pos.at(k)] = v;
        auto sol = solve(std::move(m), std::move(b));
        if (!sol) {
            if (diag)
                *diag = "no coordinate element for class " + std::to_string(i) +
                        " in the fixed-point slice of length " + std::to_string(k_slice);
            return std::nullopt;
        }
        NcPoly c(h.H->alg.get());
        for (size_t k = 0; k < kbasis.size(); ++k)
            if (!(*sol)[k].is_zero()) c += kbasis[k].scaled((*sol)[k]);
        out.c.push_back(Ap.normal_form(c));
    }

    // solve sum_a b_ai E(f_a) = 1 (x) c_i for b over the b-slice
    auto bwords = h.bundle.B->normal_words_upto(b_slice);
    out.span.f = f_candidates;
    out.span.b.assign(f_candidates.size(), std::vector<NcPoly>(h.ldim(), NcPoly(h.bundle.B.get())));
    for (size_t i = 0; i < h.ldim(); ++i) {
        // unknowns: coefficient of (alpha, bword)
        struct Unk {
            size_t alpha;
            size_t word;
        };
        std::vector<Unk> unks;
        for (size_t a = 0; a < f_candidates.size(); ++a)
            for (size_t wIdx = 0; wIdx < bwords.size(); ++wIdx) unks.push_back({a, wIdx});
        Indexer<std::pair<Word, Word>> ix;
        std::vector<std::map<std::pair<Word, Word>, Scalar>> cols;
        for (const auto& u : unks) {
            Tensor e = h.H->coproduct(f_candidates[u.alpha]);
            std::map<std::pair<Word, Word>, Scalar> col;
            for (const auto& [k, c] : e.terms) {
                NcPoly left = h.bundle.B->normal_form(
                    h.bundle.B->monomial(bwords[u.word] + k[0], c));
                for (const auto& [bw, bc] : left.terms) col[{bw, k[1]}] += bc;
            }
            cols.push_back(std::move(col));
        }
        std::map<std::pair<Word, Word>, Scalar> target;
        for (const auto& [cw, cc] : out.c[i].terms) target[{Word(), cw}] = cc;
        for (const auto& c : cols)
            for (const auto& [k, v] : c) ix.id(k);
        for (const auto& [k, v] : target) ix.id(k);
        Mat m(ix.size(), cols.size());
        for (size_t c = 0; c < cols.size(); ++c)
            for (const auto& [k, v] : cols[c]) m.at(ix.pos.at(k), c) = v;
        std::vector<Scalar> b(ix.size(), Ap.s_zero());
        for (const auto& [k, v] : target) b[ix.pos.at(k)] = v;
        auto sol = solve(std::move(m), std::move(b));
        if (!sol) {
            if (diag)
                *diag = "no spanning family for class " + std::to_string(i) +
                        " within the word slice of length " + std::to_string(b_slice);
            return std::nullopt;
        }
        for (size_t k = 0; k < unks.size(); ++k) {
            if ((*sol)[k].is_zero()) continue;
            out.span.b[unks[k].alpha][i] += h.bundle.B->monomial(bwords[unks[k].word], (*sol)[k]);
        }
    }
    return out;
}

}  // namespace qfb
