#include "qfb/horizontal.hpp"

#include <random>
#include <sstream>

#include "qfb/report.hpp"

namespace qfb {

Tensor Bundle::F_word(const Word& w) const {
    Tensor t = Tensor::unit({B.get(), G->alg.get()});
    for (char g : w) t = t * F_gen.at(static_cast<int>(g));
    return t;
}

Tensor Bundle::F_poly(const NcPoly& p) const {
    Tensor out({B.get(), G->alg.get()});
    for (const auto& [w, c] : p.terms) out += F_word(w).scaled(c);
    return out;
}

bool Bundle::is_base(const NcPoly& p) const {
    Tensor diff = F_poly(p) - Tensor::of(p).outer(Tensor::unit({G->alg.get()}));
    return diff.is_zero();
}

NcPoly Bundle::base_generator(size_t k) const { return B->generator(base_gens.at(k)); }

Hor Hor::unit(const Bundle* p) {
    Hor h(p);
    h.terms.emplace(std::make_pair(Word(), Word()), p->B->s_one());
    return h;
}

Hor Hor::from_b(const Bundle* p, const NcPoly& b) {
    Hor h(p);
    NcPoly nb = p->B->normal_form(b);
    for (const auto& [w, c] : nb.terms) h.terms.emplace(std::make_pair(w, Word()), c);
    return h;
}

Hor Hor::from_v(const Bundle* p, const NcPoly& v) {
    Hor h(p);
    NcPoly nv = p->V->ext->normal_form(v);
    for (const auto& [w, c] : nv.terms) h.terms.emplace(std::make_pair(Word(), w), c);
    return h;
}

Hor Hor::from_parts(const Bundle* p, const NcPoly& b, const NcPoly& v) {
    Hor h(p);
    NcPoly nb = p->B->normal_form(b);
    NcPoly nv = p->V->ext->normal_form(v);
    for (const auto& [bw, bc] : nb.terms)
        for (const auto& [vw, vc] : nv.terms) h.insert(bw, vw, bc * vc);
    return h;
}

void Hor::insert(const Word& bw, const Word& vw, const Scalar& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(bw, vw);
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

void Hor::insert_reduced(const Word& bw, const Word& vw, const Scalar& c) {
    if (c.is_zero()) return;
    NcPoly nb = P->B->normal_form(P->B->monomial(bw, P->B->s_one()));
    NcPoly nv = P->V->ext->normal_form(P->V->ext->monomial(vw, P->V->ext->s_one()));
    for (const auto& [wb, cb] : nb.terms)
        for (const auto& [wv, cv] : nv.terms) insert(wb, wv, c * cb * cv);
}

Hor Hor::operator-() const {
    Hor out(P);
    for (const auto& [k, c] : terms) out.terms.emplace(k, -c);
    return out;
}

Hor& Hor::operator+=(const Hor& o) {
    if (!P) P = o.P;
    for (const auto& [k, c] : o.terms) insert(k.first, k.second, c);
    return *this;
}

Hor& Hor::operator-=(const Hor& o) {
    if (!P) P = o.P;
    for (const auto& [k, c] : o.terms) insert(k.first, k.second, -c);
    return *this;
}

Hor Hor::scaled(const Scalar& c) const {
    Hor out(P);
    if (c.is_zero()) return out;
    for (const auto& [k, v] : terms) out.insert(k.first, k.second, v * c);
    return out;
}

int Hor::degree() const {
    if (terms.empty()) return 0;
    return P->V->ext->word_degree(terms.begin()->first.second);
}

bool Hor::is_homogeneous() const {
    if (terms.empty()) return true;
    int d = degree();
    for (const auto& [k, c] : terms)
        if (P->V->ext->word_degree(k.second) != d) return false;
    return true;
}

Hor Hor::homogeneous_part(int d) const {
    Hor out(P);
    for (const auto& [k, c] : terms)
        if (P->V->ext->word_degree(k.second) == d) out.terms.emplace(k, c);
    return out;
}

std::string Hor::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms) {
        if (!first) os << " + ";
        std::string cs = c.str();
        if (cs != "1") os << cs << " ";
        os << P->B->word_str(k.first) << " (x) " << P->V->ext->word_str(k.second);
        first = false;
    }
    return os.str();
}

Hor hor_mul(const Hor& x, const Hor& y) {
    const Bundle* P = x.P ? x.P : y.P;
    Hor out(P);
    for (const auto& [kx, cx] : x.terms)
        for (const auto& [ky, cy] : y.terms) {
            // (q (x) theta)(b (x) eta) = sum q b_k (x) (theta o c_k) eta
            Tensor fb = P->F_word(ky.first);
            for (const auto& [fk, fc] : fb.terms) {
                NcPoly moved = P->V->circ_word(kx.second, fk[1]);
                if (moved.is_zero()) continue;
                NcPoly bpart = P->B->normal_form(P->B->monomial(kx.first + fk[0], P->B->s_one()));
                for (const auto& [vw, vc] : moved.terms) {
                    NcPoly vfull = P->V->ext->normal_form(
                        P->V->ext->monomial(vw + ky.second, P->V->ext->s_one()));
                    for (const auto& [bw, bc] : bpart.terms)
                        for (const auto& [vw2, vc2] : vfull.terms)
                            out.insert(bw, vw2, cx * cy * fc * vc * bc * vc2);
                }
            }
        }
    return out;
}

Hor hor_star(const Hor& x) {
    const Bundle* P = x.P;
    Hor out(P);
    for (const auto& [k, c] : x.terms) {
        Tensor fb = P->F_word(k.first);
        NcPoly vstar = P->V->star_v(P->V->ext->monomial(k.second, P->V->ext->s_one()));
        for (const auto& [fk, fc] : fb.terms) {
            int bsign = 1, asign = 1;
            Word bs = P->B->star_word_raw(fk[0], bsign);
            Word as = P->A().star_word_raw(fk[1], asign);
            NcPoly moved = P->V->circ_v(vstar, P->A().monomial(as, P->A().s_one()));
            Scalar coef = (c * fc).conj();
            if (bsign * asign < 0) coef = -coef;
            NcPoly bnf = P->B->normal_form(P->B->monomial(bs, P->B->s_one()));
            for (const auto& [bw, bc] : bnf.terms)
                for (const auto& [vw, vc] : moved.terms) out.insert(bw, vw, coef * bc * vc);
        }
    }
    return out;
}

HorA HorA::of(const Hor& x) {
    HorA t(x.P);
    for (const auto& [k, c] : x.terms)
        t.terms.emplace(std::make_tuple(k.first, k.second, Word()), c);
    return t;
}

void HorA::insert(const Word& bw, const Word& vw, const Word& aw, const Scalar& c) {
    if (c.is_zero()) return;
    auto key = std::make_tuple(bw, vw, aw);
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

HorA HorA::operator-() const {
    HorA out(P);
    for (const auto& [k, c] : terms) out.terms.emplace(k, -c);
    return out;
}

HorA& HorA::operator+=(const HorA& o) {
    if (!P) P = o.P;
    for (const auto& [k, c] : o.terms) insert(std::get<0>(k), std::get<1>(k), std::get<2>(k), c);
    return *this;
}

HorA& HorA::operator-=(const HorA& o) {
    if (!P) P = o.P;
    for (const auto& [k, c] : o.terms) insert(std::get<0>(k), std::get<1>(k), std::get<2>(k), -c);
    return *this;
}

HorA HorA::scaled(const Scalar& c) const {
    HorA out(P);
    if (c.is_zero()) return out;
    for (const auto& [k, v] : terms)
        out.insert(std::get<0>(k), std::get<1>(k), std::get<2>(k), v * c);
    return out;
}

HorA HorA::map_hor(const std::function<Hor(const Hor&)>& f) const {
    HorA out(P);
    for (const auto& [k, c] : terms) {
        Hor h(P);
        h.terms.emplace(std::make_pair(std::get<0>(k), std::get<1>(k)), c);
        Hor img = f(h);
        for (const auto& [hk, hc] : img.terms)
            out.insert(hk.first, hk.second, std::get<2>(k), hc);
    }
    return out;
}

Hor HorA::contract_a(const std::function<Scalar(const Word&)>& f) const {
    Hor out(P);
    for (const auto& [k, c] : terms) {
        Scalar v = f(std::get<2>(k));
        if (!v.is_zero()) out.insert(std::get<0>(k), std::get<1>(k), c * v);
    }
    return out;
}

std::string HorA::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms) {
        if (!first) os << " + ";
        std::string cs = c.str();
        if (cs != "1") os << cs << " ";
        os << P->B->word_str(std::get<0>(k)) << " (x) " << P->V->ext->word_str(std::get<1>(k))
           << " (x) " << P->A().word_str(std::get<2>(k));
        first = false;
    }
    return os.str();
}

HorA hor_a_mul(const HorA& x, const HorA& y) {
    const Bundle* P = x.P ? x.P : y.P;
    HorA out(P);
    for (const auto& [kx, cx] : x.terms)
        for (const auto& [ky, cy] : y.terms) {
            Hor hx(P), hy(P);
            hx.terms.emplace(std::make_pair(std::get<0>(kx), std::get<1>(kx)), P->B->s_one());
            hy.terms.emplace(std::make_pair(std::get<0>(ky), std::get<1>(ky)), P->B->s_one());
            Hor prod = hor_mul(hx, hy);
            NcPoly ap = P->A().normal_form(
                P->A().monomial(std::get<2>(kx) + std::get<2>(ky), P->A().s_one()));
            for (const auto& [hk, hc] : prod.terms)
                for (const auto& [aw, ac] : ap.terms)
                    out.insert(hk.first, hk.second, aw, cx * cy * hc * ac);
        }
    return out;
}

HorA f_wedge(const Hor& x) {
    const Bundle* P = x.P;
    HorA out(P);
    for (const auto& [k, c] : x.terms) {
        Tensor fb = P->F_word(k.first);                 // B (x) A
        Tensor cv = P->V->coaction_word(k.second);      // V^ (x) A
        for (const auto& [fk, fc] : fb.terms)
            for (const auto& [ck, cc] : cv.terms) {
                NcPoly ap = P->A().normal_form(P->A().monomial(fk[1] + ck[1], P->A().s_one()));
                for (const auto& [aw, ac] : ap.terms)
                    out.insert(fk[0], ck[0], aw, c * fc * cc * ac);
            }
    }
    return out;
}

bool is_f_invariant(const Hor& x) { return f_wedge(x) == HorA::of(x); }

Hor base_project(const Hor& x) {
    const Bundle* P = x.P;
    return f_wedge(x).contract_a([&](const Word& w) { return P->G->haar_word(w); });
}

std::vector<Hor> hor_slice(const Bundle& P, size_t blen, size_t vdeg) {
    std::vector<Hor> out;
    auto bwords = P.B->normal_words_upto(blen);
    // V-words of the requested degree: generators all have degree one, so
    // degree = length for the exterior carrier
    auto vwords = P.V->ext->normal_words(vdeg);
    for (const auto& bw : bwords)
        for (const auto& vw : vwords) {
            Hor h(&P);
            h.terms.emplace(std::make_pair(bw, vw), P.B->s_one());
            out.push_back(std::move(h));
        }
    return out;
}

Report verify_bundle(const Bundle& P, uint64_t seed, int samples, size_t blen) {
    Report rep;
    rep.seed = seed;
    const auto& B = *P.B;
    const auto& A = P.A();
    std::mt19937_64 rng(seed);
    auto words = B.normal_words_upto(blen);

    run_check(rep, "bundle.coaction-rule-closure", "F respects the relations", [&] {
        for (const auto& r : B.rules) {
            if (P.F_word(r.lhs) != P.F_poly(r.rhs))
                return std::make_pair(false, "rule " + B.word_str(r.lhs));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "bundle.coaction-star", "F(b*) = (* (x) *) F(b)", [&] {
        for (int k = 0; k < samples; ++k) {
            const Word& w = words[rng() % words.size()];
            NcPoly b = B.normal_form(B.monomial(w, B.s_one()));
            if (P.F_poly(B.star(b)) != tensor_star(P.F_poly(b)))
                return std::make_pair(false, "witness " + B.word_str(w));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "bundle.comodule", "(F (x) id) F = (id (x) phi) F, (id (x) eps) F = id", [&] {
        for (int k = 0; k < samples; ++k) {
            const Word& w = words[rng() % words.size()];
            NcPoly b = B.normal_form(B.monomial(w, B.s_one()));
            Tensor f = P.F_poly(b);
            Tensor left = f.expand_slot(0, {P.B.get(), P.G->alg.get()},
                                        [&](const Word& v) { return P.F_word(v); });
            Tensor right = f.expand_slot(1, {P.G->alg.get(), P.G->alg.get()},
                                         [&](const Word& v) { return P.G->coproduct_word(v); });
            if (left != right) return std::make_pair(false, "witness " + B.word_str(w));
            NcPoly back =
                f.contract_slot(1, [&](const Word& v) { return P.G->counit_word(v); })
                    .slot_as_poly(0);
            if (B.normal_form(back) != b) return std::make_pair(false, "counit leg at " + B.word_str(w));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "bundle.base-fixed", "declared base generators are fixed points", [&] {
        for (const auto& name : P.base_gens) {
            if (!P.is_base(B.generator(name))) return std::make_pair(false, "generator " + name);
        }
        return std::make_pair(true, std::string());
    });

    rep.sort_by_name();
    return rep;
}

std::vector<Hor> invariant_slice(const Bundle& P, size_t blen, size_t vdeg) {
    auto slice = hor_slice(P, blen, vdeg);
    // solve F^(x) - x (x) 1 = 0 within the slice
    Indexer<std::tuple<Word, Word, Word>> ix;
    std::vector<std::map<std::tuple<Word, Word, Word>, Scalar>> rows;
    for (const auto& h : slice) {
        HorA diff = f_wedge(h) - HorA::of(h);
        rows.push_back(diff.terms);
    }
    Mat m = rows_from_sparse(rows, ix);
    // kernel of the transpose action: combinations x with sum x_i row_i = 0
    Mat mt(m.cols, m.rows);
    for (size_t r = 0; r < m.rows; ++r)
        for (size_t c = 0; c < m.cols; ++c) mt.at(c, r) = m.at(r, c);
    auto ker = kernel_basis(std::move(mt));
    std::vector<Hor> out;
    for (const auto& v : ker) {
        Hor h(&P);
        for (size_t k = 0; k < slice.size(); ++k)
            if (!v[k].is_zero()) h += slice[k].scaled(v[k]);
        out.push_back(std::move(h));
    }
    return out;
}

}  // namespace qfb
