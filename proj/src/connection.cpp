#include "qfb/connection.hpp"

namespace qfb {

NcPoly CoordinateFields::apply_word(size_t i, const Word& w) const {
    const auto& B = *P->B;
    if (w.empty()) return B.zero();
    if (w.size() == 1) {
        auto it = images[i].find(static_cast<int>(w[0]));
        if (it == images[i].end())
            throw std::runtime_error("coordinate field lacks an image on generator " +
                                     B.gen(static_cast<int>(w[0])).name);
        return it->second;
    }
    Word head(1, w[0]);
    Word rest = w.substr(1);
    NcPoly out = B.monomial(head, B.s_one()) * apply_word(i, rest);
    Tensor fr = P->F_word(rest);
    for (const auto& [k, c] : fr.terms) {
        Mat m = P->V->circ_matrix_word(k[1]);
        for (size_t j = 0; j < P->V->n; ++j) {
            Scalar mu = m.at(j, i);
            if (mu.is_zero()) continue;
            out += (apply_word(j, head) * B.monomial(k[0], B.s_one())).scaled(c * mu);
        }
    }
    return B.normal_form(out);
}

NcPoly CoordinateFields::apply(size_t i, const NcPoly& b) const {
    NcPoly out(P->B.get());
    for (const auto& [w, c] : b.terms) out += apply_word(i, w).scaled(c);
    return P->B->normal_form(out);
}

HorMap frame_map(const Bundle* P, std::shared_ptr<const CoordinateFields> X) {
    return [P, X](const Hor& h) {
        Hor out(P);
        for (const auto& [k, c] : h.terms) {
            for (size_t i = 0; i < P->V->n; ++i) {
                NcPoly xb = X->apply_word(i, k.first);
                for (const auto& [xw, xc] : xb.terms)
                    out.insert_reduced(xw, Word(1, static_cast<char>(i)) + k.second, c * xc);
            }
        }
        return out;
    };
}

Report verify_reduction(const ReductionData& rd) {
    Report rep;
    const Bundle& P = *rd.P;
    const auto& A = P.A();
    const auto& B = *P.B;
    for (const auto& [g, fam] : rd.pairs) {
        std::string gn = A.gen(g).name;
        run_check(rep, "reduction." + gn + ".complete", "sum_a q_a p_a = 1", [&] {
            NcPoly s(P.B.get());
            for (const auto& [q, p] : fam) s += q * p;
            bool ok = B.normal_form(s) == B.unit();
            return std::make_pair(ok, ok ? std::string() : "sum differs from 1");
        });
        run_check(rep, "reduction." + gn + ".covariant", "F(p_a) = p_a (x) g", [&] {
            for (const auto& [q, p] : fam) {
                Tensor lhs = P.F_poly(p);
                Tensor rhs = Tensor::of(p).outer(Tensor::of(A.generator(gn)));
                if (lhs != rhs.normalized())
                    return std::make_pair(false, "p = " + p.str());
            }
            return std::make_pair(true, std::string());
        });
    }
    rep.sort_by_name();
    return rep;
}

Hor KerEpsMap::apply_word(const Word& w) const {
    if (w.empty()) return Hor(P);
    int g = static_cast<int>(w.back());
    Word prefix = w.substr(0, w.size() - 1);
    Hor out(P);
    auto seed = seeds.find(g);
    if (seed == seeds.end())
        throw std::runtime_error("no seed value on generator " + P->A().gen(g).name);
    Scalar e = P->G->counit_word(prefix);
    if (!e.is_zero()) out += seed->second.scaled(e);
    if (!prefix.empty()) {
        Hor inner = apply_word(prefix);
        if (!inner.is_zero()) {
            auto fam = red->pairs.find(g);
            if (fam == red->pairs.end())
                throw std::runtime_error("no reduction pairs for generator " + P->A().gen(g).name);
            for (const auto& [q, p] : fam->second)
                out += hor_mul(Hor::from_b(P, q), hor_mul(inner, Hor::from_b(P, p)));
        }
    }
    return out;
}

Hor KerEpsMap::apply(const NcPoly& a) const {
    Hor out(P);
    NcPoly na = P->A().normal_form(a);
    for (const auto& [w, c] : na.terms) out += apply_word(w).scaled(c);
    return out;
}

HorMap vertical_from_chi(const Bundle* P, std::shared_ptr<const KerEpsMap> chi) {
    return [P, chi](const Hor& h) {
        Hor out(P);
        std::set<int> degs;
        for (const auto& [k, c] : h.terms) degs.insert(P->V->ext->word_degree(k.second));
        for (int d : degs) {
            Hor part = h.homogeneous_part(d);
            HorA fw = f_wedge(part);
            Hor acc(P);
            for (const auto& [k, c] : fw.terms) {
                Hor phik(P);
                phik.terms.emplace(std::make_pair(std::get<0>(k), std::get<1>(k)), c);
                Hor cv = chi->apply_word(std::get<2>(k));
                if (!cv.is_zero()) acc += hor_mul(phik, cv);
            }
            out += (d % 2 == 0) ? -acc : acc;  // -(-1)^d
        }
        return out;
    };
}

HorMap zero_map(const Bundle* P) {
    return [P](const Hor&) { return Hor(P); };
}

HorMap sum_map(HorMap a, HorMap b) {
    return [a = std::move(a), b = std::move(b)](const Hor& h) { return a(h) + b(h); };
}

HorMap scale_map(HorMap a, Scalar s) {
    return [a = std::move(a), s = std::move(s)](const Hor& h) { return a(h).scaled(s); };
}

HorMap star_conj_map(const Bundle* P, HorMap a) {
    return [a = std::move(a)](const Hor& h) { return hor_star(a(hor_star(h))); };
}

std::vector<Hor> torsion_components(const Bundle& P, const HorMap& D) {
    std::vector<Hor> out;
    for (size_t i = 0; i < P.V->n; ++i)
        out.push_back(D(Hor::from_v(&P, P.V->basis_elt(i))));
    return out;
}

Report verify_coordinate_fields(const CoordinateFields& X) {
    Report rep;
    const Bundle& P = *X.P;
    const auto& B = *P.B;
    const auto& A = P.A();
    size_t n = P.V->n;

    run_check(rep, "fields.rule-closure", "X_i respects the relations", [&] {
        for (size_t i = 0; i < n; ++i)
            for (const auto& r : B.rules)
                if (X.apply_word(i, r.lhs) != X.apply(i, r.rhs))
                    return std::make_pair(false, "X_" + std::to_string(i) + " on rule " +
                                                     B.word_str(r.lhs));
        return std::make_pair(true, std::string());
    });

    run_check(rep, "fields.twisted-leibniz",
              "X_i(qb) = q X_i(b) + sum mu_ji(c_k) X_j(q) b_k on generator pairs", [&] {
                  for (size_t i = 0; i < n; ++i)
                      for (size_t g1 = 0; g1 < B.size(); ++g1)
                          for (size_t g2 = 0; g2 < B.size(); ++g2) {
                              Word w;
                              w.push_back(static_cast<char>(g1));
                              w.push_back(static_cast<char>(g2));
                              NcPoly lhs = X.apply_word(i, w);
                              NcPoly rhs = B.monomial(Word(1, static_cast<char>(g1)), B.s_one()) *
                                           X.apply_word(i, Word(1, static_cast<char>(g2)));
                              Tensor f2 = P.F_word(Word(1, static_cast<char>(g2)));
                              for (const auto& [k, c] : f2.terms) {
                                  Mat m = P.V->circ_matrix_word(k[1]);
                                  for (size_t j = 0; j < n; ++j)
                                      rhs += (X.apply_word(j, Word(1, static_cast<char>(g1))) *
                                              B.monomial(k[0], B.s_one()))
                                                 .scaled(c * m.at(j, i));
                              }
                              if (lhs != B.normal_form(rhs))
                                  return std::make_pair(
                                      false, "pair (" + B.gen(static_cast<int>(g1)).name + ", " +
                                                 B.gen(static_cast<int>(g2)).name + ")");
                          }
                  return std::make_pair(true, std::string());
              });

    run_check(rep, "fields.covariance", "F X_i(b) = sum X_j(b_k) (x) c_k kappa^-1(u_ij)", [&] {
        for (size_t i = 0; i < n; ++i)
            for (size_t g = 0; g < B.size(); ++g) {
                Word w(1, static_cast<char>(g));
                Tensor lhs = P.F_poly(X.apply_word(i, w));
                Tensor rhs({P.B.get(), P.G->alg.get()});
                Tensor fb = P.F_word(w);
                for (const auto& [k, c] : fb.terms)
                    for (size_t j = 0; j < n; ++j) {
                        NcPoly right = A.monomial(k[1], A.s_one()) *
                                       P.G->antipode_inv(P.V->coact[i][j]);
                        NcPoly left = X.apply_word(j, k[0]);
                        for (const auto& [bw, bc] : left.terms)
                            for (const auto& [aw, ac] : right.terms)
                                rhs.insert({bw, aw}, c * bc * ac);
                    }
                if (lhs != rhs.normalized())
                    return std::make_pair(false, "X_" + std::to_string(i) + " on " +
                                                     B.gen(static_cast<int>(g)).name);
            }
        return std::make_pair(true, std::string());
    });

    rep.sort_by_name();
    return rep;
}

namespace {

std::vector<Hor> sample_elements(const Bundle& P, const CheckConfig& cfg) {
    Sampler smp(cfg.seed);
    auto bwords = P.B->normal_words_upto(cfg.blen);
    std::vector<Hor> out;
    // generating elements first
    for (size_t g = 0; g < P.B->size(); ++g)
        out.push_back(Hor::from_b(&P, P.B->generator(P.B->gen(static_cast<int>(g)).name)));
    for (size_t i = 0; i < P.V->n; ++i) out.push_back(Hor::from_v(&P, P.V->basis_elt(i)));
    for (int k = 0; k < cfg.samples; ++k)
        out.push_back(smp.hor(P, bwords, smp.rng() % (cfg.max_vdeg + 1), 2));
    return out;
}

std::string hor_witness(const Hor& h) { return h.str(); }

}  // namespace

Report verify_frame(const Bundle& P, const HorMap& D, const CoordinateSpan* coord,
                    const ReductionData* red, const CheckConfig& cfg) {
    Report rep;
    rep.seed = cfg.seed;
    auto elems = sample_elements(P, cfg);

    run_check(rep, "frame.antiderivation", "D(xy) = D(x)y + (-1)^deg(x) x D(y)", [&] {
        Sampler smp(cfg.seed + 1);
        auto bwords = P.B->normal_words_upto(cfg.blen);
        for (int k = 0; k < cfg.samples; ++k) {
            size_t dx = smp.rng() % 2, dy = smp.rng() % 2;
            Hor x = smp.hor(P, bwords, dx, 2);
            Hor y = smp.hor(P, bwords, dy, 2);
            Hor lhs = D(hor_mul(x, y));
            Hor rhs = hor_mul(D(x), y) + (dx % 2 == 0 ? hor_mul(x, D(y)) : -hor_mul(x, D(y)));
            if (lhs != rhs) return std::make_pair(false, "x = " + hor_witness(x));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "frame.hermitian", "D(phi*) = D(phi)*", [&] {
        for (const auto& h : elems)
            if (D(hor_star(h)) != hor_star(D(h)))
                return std::make_pair(false, "phi = " + hor_witness(h));
        return std::make_pair(true, std::string());
    });

    run_check(rep, "frame.cov-cond", "F^ D = (D (x) id) F^", [&] {
        for (const auto& h : elems) {
            HorA lhs = f_wedge(D(h));
            HorA rhs = f_wedge(h).map_hor(D);
            if (lhs != rhs) return std::make_pair(false, "phi = " + hor_witness(h));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "frame.lc-cond-theta", "D(1 (x) theta_i) = 0", [&] {
        for (size_t i = 0; i < P.V->n; ++i) {
            Hor t = D(Hor::from_v(&P, P.V->basis_elt(i)));
            if (!t.is_zero())
                return std::make_pair(false,
                                      "theta_" + std::to_string(i) + " -> " + hor_witness(t));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "frame.lc-cond-ddf", "D(D(f)) = 0 for base generators", [&] {
        for (size_t k = 0; k < P.base_gens.size(); ++k) {
            Hor f = Hor::from_b(&P, P.base_generator(k));
            Hor dd = D(D(f));
            if (!dd.is_zero()) return std::make_pair(false, "f = " + P.base_gens[k]);
        }
        return std::make_pair(true, std::string());
    });

    if (coord) {
        run_check(rep, "frame.d-coor", "1 (x) theta_i = sum_a b_ai D(f_a)", [&] {
            for (size_t i = 0; i < P.V->n; ++i) {
                Hor sum(&P);
                for (size_t al = 0; al < coord->f.size(); ++al) {
                    Hor df = D(Hor::from_b(&P, coord->f[al]));
                    sum += hor_mul(Hor::from_b(&P, coord->b[al][i]), df);
                }
                Hor expect = Hor::from_v(&P, P.V->basis_elt(i));
                if (sum != expect)
                    return std::make_pair(false, "theta_" + std::to_string(i) + " got " +
                                                     hor_witness(sum));
            }
            return std::make_pair(true, std::string());
        });
        run_check(rep, "frame.b-covariance", "F(b_ai) = sum_j b_aj (x) u_ji", [&] {
            for (size_t al = 0; al < coord->b.size(); ++al)
                for (size_t i = 0; i < P.V->n; ++i) {
                    Tensor lhs = P.F_poly(coord->b[al][i]);
                    Tensor rhs({P.B.get(), P.G->alg.get()});
                    for (size_t j = 0; j < P.V->n; ++j)
                        for (const auto& [bw, bc] : coord->b[al][j].terms)
                            for (const auto& [aw, ac] : P.V->coact[j][i].terms)
                                rhs.insert({bw, aw}, bc * ac);
                    if (lhs != rhs.normalized())
                        return std::make_pair(false, "b[" + std::to_string(al) + "][" +
                                                         std::to_string(i) + "]");
                }
            return std::make_pair(true, std::string());
        });
    } else {
        rep.skip("frame.d-coor", "1 (x) theta_i = sum_a b_ai D(f_a)",
                 "no coordinate family declared for this instance");
    }

    if (red) {
        Report rr = verify_reduction(*red);
        rep.merge(rr);
    }

    rep.sort_by_name();
    return rep;
}

Report leibniz_criterion(const Bundle& P, const HorMap& D, const HorMap& frame,
                         const CheckConfig& cfg) {
    Report rep;
    rep.seed = cfg.seed;
    run_check(rep, "leibniz.pair-condition", "d_M(f) D(b) + D[d_M(f) b] = 0", [&] {
        for (size_t k = 0; k < P.base_gens.size(); ++k) {
            Hor dmf = frame(Hor::from_b(&P, P.base_generator(k)));
            for (size_t g = 0; g < P.B->size(); ++g) {
                Hor b = Hor::from_b(&P, P.B->generator(P.B->gen(static_cast<int>(g)).name));
                Hor lhs = hor_mul(dmf, D(b)) + D(hor_mul(dmf, b));
                if (!lhs.is_zero())
                    return std::make_pair(false, "(f, b) = (" + P.base_gens[k] + ", " +
                                                     P.B->gen(static_cast<int>(g)).name + ")");
            }
        }
        return std::make_pair(true, std::string());
    });
    run_check(rep, "leibniz.graded", "D(xy) = D(x)y + (-1)^deg(x) x D(y)", [&] {
        Sampler smp(cfg.seed + 2);
        auto bwords = P.B->normal_words_upto(cfg.blen);
        for (int k = 0; k < cfg.samples; ++k) {
            size_t dx = smp.rng() % 2;
            Hor x = smp.hor(P, bwords, dx, 2);
            Hor y = smp.hor(P, bwords, smp.rng() % 2, 2);
            Hor rhs = hor_mul(D(x), y) + (dx % 2 == 0 ? hor_mul(x, D(y)) : -hor_mul(x, D(y)));
            if (D(hor_mul(x, y)) != rhs)
                return std::make_pair(false, "x = " + hor_witness(x));
        }
        return std::make_pair(true, std::string());
    });
    rep.sort_by_name();
    return rep;
}

KerEpsMap curvature_extract(const Bundle& P, const HorMap& D,
                            std::shared_ptr<const ReductionData> red) {
    KerEpsMap rho;
    rho.P = &P;
    rho.red = red;
    for (const auto& [g, fam] : red->pairs) {
        Hor acc(&P);
        for (const auto& [q, p] : fam)
            acc += hor_mul(Hor::from_b(&P, q), D(D(Hor::from_b(&P, p))));
        rho.seeds[g] = -acc;
    }
    return rho;
}

Report curvature_resubstitution(const Bundle& P, const HorMap& D, const KerEpsMap& rho,
                                const CheckConfig& cfg) {
    Report rep;
    rep.seed = cfg.seed;
    run_check(rep, "curvature.resubstitution", "D^2(phi) = -sum phi_k rho(c_k)", [&] {
        auto elems = sample_elements(P, cfg);
        for (const auto& h : elems) {
            Hor lhs = D(D(h));
            Hor rhs(&P);
            HorA fw = f_wedge(h);
            for (const auto& [k, c] : fw.terms) {
                Hor phik(&P);
                phik.terms.emplace(std::make_pair(std::get<0>(k), std::get<1>(k)), c);
                Hor rv = rho.apply_word(std::get<2>(k));
                if (!rv.is_zero()) rhs += hor_mul(phik, rv);
            }
            if (lhs != -rhs) return std::make_pair(false, "phi = " + hor_witness(h));
        }
        return std::make_pair(true, std::string());
    });
    rep.sort_by_name();
    return rep;
}

Report curvature_identities(const Bundle& P, const HorMap& D, const KerEpsMap& rho,
                            const CheckConfig& cfg) {
    Report rep;
    rep.seed = cfg.seed;
    const auto& A = P.A();
    auto words = A.normal_words_upto(3);

    run_check(rep, "curvature.covariance", "F^ rho = (rho (x) id) ad", [&] {
        for (const auto& w : words) {
            NcPoly a = A.monomial(w, A.s_one());
            HorA lhs = f_wedge(rho.apply(a));
            Tensor ad = P.G->adjoint_action(a);
            HorA rhs(&P);
            for (const auto& [k, c] : ad.terms) {
                Hor rv = rho.apply_word(k[0]);
                for (const auto& [hk, hc] : rv.terms)
                    rhs.insert(hk.first, hk.second, k[1], c * hc);
            }
            if (lhs != rhs) return std::make_pair(false, "a = " + A.word_str(w));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "curvature.bianchi", "D rho = 0 on corep entries", [&] {
        for (const auto& [g, seed] : rho.seeds) {
            Hor dv = D(seed);
            if (!dv.is_zero()) return std::make_pair(false, "entry " + A.gen(g).name);
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "curvature.hermitian", "rho(a)* = -rho[kappa(a)*]", [&] {
        for (const auto& w : words) {
            NcPoly a = A.monomial(w, A.s_one());
            Hor lhs = hor_star(rho.apply(a));
            Hor rhs = -rho.apply(A.star(P.G->antipode(a)));
            if (lhs != rhs) return std::make_pair(false, "a = " + A.word_str(w));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "curvature.module", "rho(a) phi = sum phi_k rho(a c_k) + eps(a) D^2(phi)", [&] {
        Sampler smp(cfg.seed + 3);
        auto bwords = P.B->normal_words_upto(cfg.blen);
        for (size_t g = 0; g < A.size(); ++g) {
            NcPoly a = A.generator(A.gen(static_cast<int>(g)).name);
            for (int k = 0; k < cfg.samples / 4 + 2; ++k) {
                Hor phi = smp.hor(P, bwords, smp.rng() % 2, 2);
                Hor lhs = hor_mul(rho.apply(a), phi);
                Hor rhs = D(D(phi)).scaled(P.G->counit(a));
                HorA fw = f_wedge(phi);
                for (const auto& [kk, c] : fw.terms) {
                    Hor phik(&P);
                    phik.terms.emplace(std::make_pair(std::get<0>(kk), std::get<1>(kk)), c);
                    NcPoly ac = a * A.monomial(std::get<2>(kk), A.s_one());
                    rhs += hor_mul(phik, rho.apply(ac));
                }
                if (lhs != rhs)
                    return std::make_pair(false, "a = " + A.gen(static_cast<int>(g)).name);
            }
        }
        return std::make_pair(true, std::string());
    });

    rep.sort_by_name();
    return rep;
}

KerEpsMap chi_extract(const Bundle& P, const HorMap& D, const HorMap& frame,
                      std::shared_ptr<const ReductionData> red, Report* checks,
                      const CheckConfig& cfg) {
    HorMap E = [D, frame](const Hor& h) { return D(h) - frame(h); };

    if (checks) {
        run_check(*checks, "chi.vertical", "E vanishes on the base forms", [&] {
            for (size_t d = 0; d <= 2; ++d) {
                auto inv = invariant_slice(P, cfg.blen, d);
                for (const auto& h : inv)
                    if (!E(h).is_zero())
                        return std::make_pair(false, "base form " + hor_witness(h));
            }
            return std::make_pair(true, std::string());
        });
    }

    KerEpsMap chi;
    chi.P = &P;
    chi.red = red;
    for (const auto& [g, fam] : red->pairs) {
        Hor acc(&P);
        for (const auto& [q, p] : fam)
            acc += hor_mul(Hor::from_b(&P, q), E(Hor::from_b(&P, p)));
        chi.seeds[g] = -acc;
    }

    if (checks) {
        auto chi_ptr = std::make_shared<KerEpsMap>(chi);
        HorMap Ek = vertical_from_chi(&P, chi_ptr);
        run_check(*checks, "chi.reproduces", "E(phi) = -(-1)^deg sum phi_k chi(c_k)", [&] {
            auto elems = sample_elements(P, cfg);
            for (const auto& h : elems)
                if (E(h) != Ek(h)) return std::make_pair(false, "phi = " + hor_witness(h));
            return std::make_pair(true, std::string());
        });
        checks->sort_by_name();
    }
    return chi;
}

Report verify_chi_props(const Bundle& P, const KerEpsMap& chi, const CheckConfig& cfg) {
    Report rep;
    rep.seed = cfg.seed;
    const auto& A = P.A();
    auto words = A.normal_words_upto(2);
    auto chi_ptr = std::make_shared<KerEpsMap>(chi);
    HorMap E = vertical_from_chi(&P, chi_ptr);

    run_check(rep, "chi.E1", "F^ chi(a) = (chi (x) id) ad(a)", [&] {
        for (const auto& w : words) {
            NcPoly a = A.monomial(w, A.s_one());
            HorA lhs = f_wedge(chi.apply(a));
            Tensor ad = P.G->adjoint_action(a);
            HorA rhs(&P);
            for (const auto& [k, c] : ad.terms) {
                Hor cv = chi.apply_word(k[0]);
                for (const auto& [hk, hc] : cv.terms)
                    rhs.insert(hk.first, hk.second, k[1], c * hc);
            }
            if (lhs != rhs) return std::make_pair(false, "a = " + A.word_str(w));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "chi.E2", "chi[kappa(a)*] = -chi(a)*", [&] {
        for (const auto& w : words) {
            NcPoly a = A.monomial(w, A.s_one());
            Hor lhs = chi.apply(A.star(P.G->antipode(a)));
            Hor rhs = -hor_star(chi.apply(a));
            if (lhs != rhs) return std::make_pair(false, "witness " + A.word_str(w));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "chi.E3",
              "chi(a) phi = eps(a) E(phi) + (-1)^deg(phi) sum phi_k chi(a c_k)", [&] {
                  Sampler smp(cfg.seed + 4);
                  auto bwords = P.B->normal_words_upto(cfg.blen);
                  std::vector<Hor> phis;
                  for (size_t g = 0; g < P.B->size(); ++g)
                      phis.push_back(
                          Hor::from_b(&P, P.B->generator(P.B->gen(static_cast<int>(g)).name)));
                  for (size_t i = 0; i < P.V->n; ++i)
                      phis.push_back(Hor::from_v(&P, P.V->basis_elt(i)));
                  for (int k = 0; k < cfg.samples / 2 + 4; ++k)
                      phis.push_back(smp.hor(P, bwords, smp.rng() % 2, 2));
                  for (size_t g = 0; g < A.size(); ++g) {
                      NcPoly a = A.generator(A.gen(static_cast<int>(g)).name);
                      for (const auto& phi : phis) {
                          if (!phi.is_homogeneous()) continue;
                          int d = phi.degree();
                          Hor lhs = hor_mul(chi.apply(a), phi);
                          Hor rhs = E(phi).scaled(P.G->counit(a));
                          Hor tail(&P);
                          HorA fw = f_wedge(phi);
                          for (const auto& [kk, c] : fw.terms) {
                              Hor phik(&P);
                              phik.terms.emplace(
                                  std::make_pair(std::get<0>(kk), std::get<1>(kk)), c);
                              NcPoly ac = a * A.monomial(std::get<2>(kk), A.s_one());
                              tail += hor_mul(phik, chi.apply(ac));
                          }
                          rhs += (d % 2 == 0) ? tail : -tail;
                          if (lhs != rhs)
                              return std::make_pair(false,
                                                    "a = " + A.gen(static_cast<int>(g)).name +
                                                        ", phi = " + hor_witness(phi));
                      }
                  }
                  return std::make_pair(true, std::string());
              });

    run_check(rep, "chi.antisym", "chi(g) + sum_a q_a chi(g*) p_a = 0", [&] {
        for (const auto& [g, fam] : chi.red->pairs) {
            int partner = A.gen(g).star;
            Hor sum = chi.apply_word(Word(1, static_cast<char>(g)));
            for (const auto& [q, p] : fam)
                sum += hor_mul(Hor::from_b(&P, q),
                               hor_mul(chi.apply_word(Word(1, static_cast<char>(partner))),
                                       Hor::from_b(&P, p)));
            if (!sum.is_zero()) return std::make_pair(false, "entry " + A.gen(g).name);
        }
        return std::make_pair(true, std::string());
    });

    rep.sort_by_name();
    return rep;
}

Report connecting_identity_check(const Bundle& P, const HorMap& D, const KerEpsMap& chi,
                                 std::shared_ptr<const ReductionData> red,
                                 const CheckConfig& cfg) {
    Report rep;
    rep.seed = cfg.seed;
    const auto& A = P.A();
    auto chi_ptr = std::make_shared<KerEpsMap>(chi);
    HorMap E = vertical_from_chi(&P, chi_ptr);
    HorMap DE = sum_map(D, E);
    KerEpsMap rho_d = curvature_extract(P, D, red);
    KerEpsMap rho_de = curvature_extract(P, DE, red);

    run_check(rep, "connecting.identity",
              "rho_{D+E}(a) = rho_D(a) + D chi(a) + chi(a(1)) chi(a(2))", [&] {
                  auto words = A.normal_words_upto(3);
                  for (const auto& w : words) {
                      NcPoly a = A.monomial(w, A.s_one());
                      Hor lhs = rho_de.apply(a);
                      Hor rhs = rho_d.apply(a) + D(chi.apply(a));
                      Tensor two = P.G->sweedler(a, 2);
                      for (const auto& [k, c] : two.terms)
                          rhs += hor_mul(chi.apply_word(k[0]), chi.apply_word(k[1])).scaled(c);
                      if (lhs != rhs) return std::make_pair(false, "a = " + A.word_str(w));
                  }
                  return std::make_pair(true, std::string());
              });
    rep.sort_by_name();
    return rep;
}

RegularitySpace regularity_space(const Bundle& P, const ReductionData& red, size_t L,
                                 bool include_sym12) {
    const auto& A = P.A();
    auto inv1 = invariant_slice(P, L, 1);  // covariant candidates for grouplike coactions
    std::vector<int> gens;
    for (const auto& [g, fam] : red.pairs) gens.push_back(g);

    RegularitySpace out;
    out.candidate_dim = 2 * gens.size() * inv1.size();
    if (inv1.empty()) return out;

    // unknowns: per generator, per candidate, real and imaginary components
    struct Unknown {
        int gen;
        size_t beta;
        bool imag;
    };
    std::vector<Unknown> unknowns;
    for (int g : gens)
        for (size_t b = 0; b < inv1.size(); ++b) {
            unknowns.push_back({g, b, false});
            unknowns.push_back({g, b, true});
        }

    Scalar iunit = Scalar::unit_i(P.B->params);

    // evaluate all constraint expressions at a unit seed assignment
    auto eval_rows = [&](const std::map<int, Hor>& seeds) {
        KerEpsMap chi;
        chi.P = &P;
        chi.red = std::make_shared<ReductionData>(red);
        chi.seeds = seeds;
        for (int g : gens)
            if (!chi.seeds.count(g)) chi.seeds[g] = Hor(&P);
        std::vector<std::map<std::tuple<int, Word, Word>, Scalar>> rows;
        int eq = 0;
        // antisymmetricity per generator
        for (int g : gens) {
            int partner = A.gen(g).star;
            Hor sum = chi.apply_word(Word(1, static_cast<char>(g)));
            for (const auto& [q, p] : red.pairs.at(g))
                sum += hor_mul(Hor::from_b(&P, q),
                               hor_mul(chi.apply_word(Word(1, static_cast<char>(partner))),
                                       Hor::from_b(&P, p)));
            std::map<std::tuple<int, Word, Word>, Scalar> row;
            for (const auto& [k, c] : sum.terms) row[{eq, k.first, k.second}] = c;
            rows.push_back(std::move(row));
            ++eq;
        }
        // hermiticity: chi[kappa(g)*] + chi(g)* = 0
        for (int g : gens) {
            NcPoly m = A.star(P.G->antipode(A.generator(A.gen(g).name)));
            Hor sum = chi.apply(m) + hor_star(chi.apply_word(Word(1, static_cast<char>(g))));
            std::map<std::tuple<int, Word, Word>, Scalar> row;
            for (const auto& [k, c] : sum.terms) row[{eq, k.first, k.second}] = c;
            rows.push_back(std::move(row));
            ++eq;
        }
        // sym-12 per column: sum_j theta_j chi(u_ji) = 0
        if (include_sym12) {
            for (size_t i = 0; i < P.V->n; ++i) {
                Hor sum(&P);
                for (size_t j = 0; j < P.V->n; ++j)
                    sum += hor_mul(Hor::from_v(&P, P.V->basis_elt(j)),
                                   chi.apply(P.V->coact[j][i]));
                std::map<std::tuple<int, Word, Word>, Scalar> row;
                for (const auto& [k, c] : sum.terms) row[{eq, k.first, k.second}] = c;
                rows.push_back(std::move(row));
                ++eq;
            }
        }
        // merge all equations into a single sparse vector keyed by (eq, word, word)
        std::map<std::tuple<int, Word, Word>, Scalar> merged;
        for (const auto& r : rows)
            for (const auto& [k, c] : r) merged[k] = c;
        return merged;
    };

    std::vector<std::map<std::tuple<int, Word, Word>, Scalar>> cols;
    for (const auto& u : unknowns) {
        std::map<int, Hor> seeds;
        Hor val = inv1[u.beta];
        if (u.imag) val = val.scaled(iunit);
        seeds[u.gen] = val;
        cols.push_back(eval_rows(seeds));
    }

    Indexer<std::tuple<int, Word, Word>> ix;
    for (const auto& c : cols)
        for (const auto& [k, v] : c) ix.id(k);
    Mat m(ix.size(), cols.size());
    for (size_t c = 0; c < cols.size(); ++c)
        for (const auto& [k, v] : cols[c]) m.at(ix.pos.at(k), c) = v;
    auto ker = kernel_basis(std::move(m));

    out.dim = ker.size();
    for (const auto& v : ker) {
        std::map<int, Hor> seeds;
        for (int g : gens) seeds[g] = Hor(&P);
        for (size_t k = 0; k < unknowns.size(); ++k) {
            if (v[k].is_zero()) continue;
            Hor val = inv1[unknowns[k].beta];
            if (unknowns[k].imag) val = val.scaled(iunit);
            seeds[unknowns[k].gen] += val.scaled(v[k]);
        }
        out.basis.push_back(std::move(seeds));
    }
    return out;
}

std::pair<HorMap, HorMap> decompose_hermitian(const Bundle& P, const HorMap& D) {
    HorMap Dstar = star_conj_map(&P, D);
    Scalar half = Scalar::from(GaussRat(Rat(1, 2)), P.B->params);
    Scalar mhalf_i = Scalar::from(GaussRat(Rat(0), Rat(-1, 2)), P.B->params);
    HorMap D1 = [D, Dstar, half](const Hor& h) { return (D(h) + Dstar(h)).scaled(half); };
    HorMap D2 = [D, Dstar, mhalf_i](const Hor& h) { return (D(h) - Dstar(h)).scaled(mhalf_i); };
    return {D1, D2};
}

}  // namespace qfb
