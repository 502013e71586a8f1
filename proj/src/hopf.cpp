#include "qfb/hopf.hpp"

#include <random>

namespace qfb {

Tensor Hopf::coproduct_word(const Word& w) const {
    Tensor t = Tensor::unit({alg.get(), alg.get()});
    for (char g : w) t = t * cop_gen.at(static_cast<int>(g));
    return t;
}

Tensor Hopf::coproduct(const NcPoly& p) const {
    Tensor out({alg.get(), alg.get()});
    for (const auto& [w, c] : p.terms) out += coproduct_word(w).scaled(c);
    return out;
}

Tensor Hopf::sweedler(const NcPoly& p, size_t k) const {
    if (k < 1) throw std::invalid_argument("sweedler: k must be >= 1");
    Tensor t = Tensor::of(alg->normal_form(p));
    for (size_t s = 1; s < k; ++s) {
        // expand the last slot with the coproduct
        t = t.expand_slot(t.slots() - 1, {alg.get(), alg.get()},
                          [this](const Word& w) { return coproduct_word(w); });
    }
    return t;
}

Scalar Hopf::counit_word(const Word& w) const {
    Scalar v = alg->s_one();
    for (char g : w) v *= eps_gen.at(static_cast<int>(g));
    return v;
}

Scalar Hopf::counit(const NcPoly& p) const {
    Scalar v = alg->s_zero();
    for (const auto& [w, c] : p.terms) v += c * counit_word(w);
    return v;
}

NcPoly Hopf::antipode(const NcPoly& p) const {
    NcPoly out(alg.get());
    for (const auto& [w, c] : p.terms) {
        NcPoly prod = alg->unit();
        for (char g : w) prod = kappa_gen.at(static_cast<int>(g)) * prod;  // reversing
        out += prod.scaled(c);
    }
    return alg->normal_form(out);
}

NcPoly Hopf::antipode_inv(const NcPoly& p) const {
    NcPoly out(alg.get());
    for (const auto& [w, c] : p.terms) {
        NcPoly prod = alg->unit();
        for (char g : w) prod = kappa_inv_gen.at(static_cast<int>(g)) * prod;
        out += prod.scaled(c);
    }
    return alg->normal_form(out);
}

Scalar Hopf::haar_word(const Word& w) const {
    auto it = haar_table.find(w);
    if (it != haar_table.end()) return it->second;
    if (haar_default) return *haar_default;
    throw HaarError("haar functional undefined on word " + alg->word_str(w) +
                    "; extend the haar table");
}

Scalar Hopf::haar(const NcPoly& p) const {
    Scalar v = alg->s_zero();
    for (const auto& [w, c] : p.terms) v += c * haar_word(w);
    return v;
}

Tensor Hopf::adjoint_action(const NcPoly& p) const {
    Tensor three = sweedler(p, 3);
    Tensor out({alg.get(), alg.get()});
    for (const auto& [k, c] : three.terms) {
        NcPoly right(alg.get());
        right.insert(k[0], alg->s_one());
        NcPoly second = antipode(right);
        NcPoly third(alg.get());
        third.insert(k[2], alg->s_one());
        second = second * third;
        for (const auto& [w2, c2] : second.terms) out.insert({k[1], w2}, c * c2);
    }
    return out.normalized();
}

const Corep* Hopf::corep(const std::string& name) const {
    for (const auto& c : coreps)
        if (c.name == name) return &c;
    return nullptr;
}

Tensor tensor_star(const Tensor& t) {
    Tensor out(t.algs);
    for (const auto& [k, c] : t.terms) {
        std::vector<Word> sk(k.size());
        int total_sign = 1;
        for (size_t s = 0; s < k.size(); ++s) {
            int sign = 1;
            sk[s] = t.algs[s]->star_word_raw(k[s], sign);
            total_sign *= sign;
        }
        Scalar sc = c.conj();
        if (total_sign < 0) sc = -sc;
        out.insert(std::move(sk), sc);
    }
    return out.normalized();
}

namespace {

struct Sampler {
    std::mt19937_64 rng;
    explicit Sampler(uint64_t seed) : rng(seed) {}

    const Word& pick(const std::vector<Word>& ws) { return ws[rng() % ws.size()]; }
};

}  // namespace

Report verify_group_data(const Hopf& h, const VerifyOptions& opt) {
    Report rep;
    rep.seed = opt.seed;
    const PresentedAlgebra& A = h.A();
    Sampler smp(opt.seed);
    auto words = A.normal_words_upto(static_cast<size_t>(opt.max_word_len));

    std::vector<Word> probe;
    for (size_t g = 0; g < A.size(); ++g) probe.push_back(Word(1, static_cast<char>(g)));
    for (int k = 0; k < opt.samples; ++k) probe.push_back(smp.pick(words));

    auto tensor_of_word = [&](const Word& w) {
        NcPoly p(&A);
        p.insert(w, A.s_one());
        return p;
    };

    run_check(rep, "hopf.coproduct-star-hom", "phi(a*) = (* (x) *) phi(a)", [&] {
        for (const Word& w : probe) {
            NcPoly a = A.normal_form(tensor_of_word(w));
            if (h.coproduct(A.star(a)) != tensor_star(h.coproduct(a)))
                return std::make_pair(false, "witness " + A.word_str(w));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "hopf.coproduct-rule-closure", "phi respects the relations", [&] {
        for (const auto& r : A.rules) {
            if (h.coproduct_word(r.lhs) != h.coproduct(r.rhs))
                return std::make_pair(false, "rule " + A.word_str(r.lhs));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "hopf.counit-character", "eps is a *-character", [&] {
        for (const auto& r : A.rules)
            if (h.counit_word(r.lhs) != h.counit(r.rhs))
                return std::make_pair(false, "rule " + A.word_str(r.lhs));
        for (const Word& w : probe) {
            NcPoly a = A.normal_form(tensor_of_word(w));
            if (h.counit(A.star(a)) != h.counit(a).conj())
                return std::make_pair(false, "witness " + A.word_str(w));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "hopf.antipode-rule-closure", "kappa respects the relations", [&] {
        for (const auto& r : A.rules) {
            NcPoly prod = A.unit();
            for (char g : r.lhs) prod = h.kappa_gen.at(static_cast<int>(g)) * prod;
            if (prod != h.antipode(r.rhs))
                return std::make_pair(false, "rule " + A.word_str(r.lhs));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "hopf.coassociativity", "(phi (x) id) phi = (id (x) phi) phi", [&] {
        for (const Word& w : probe) {
            NcPoly a = A.normal_form(tensor_of_word(w));
            Tensor t = h.coproduct(a);
            Tensor left = t.expand_slot(0, {&A, &A},
                                        [&](const Word& v) { return h.coproduct_word(v); });
            Tensor right = t.expand_slot(1, {&A, &A},
                                         [&](const Word& v) { return h.coproduct_word(v); });
            if (left != right) return std::make_pair(false, "witness " + A.word_str(w));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "hopf.counit-axiom", "(eps (x) id) phi = id = (id (x) eps) phi", [&] {
        for (const Word& w : probe) {
            NcPoly a = A.normal_form(tensor_of_word(w));
            Tensor t = h.coproduct(a);
            NcPoly l = t.contract_slot(0, [&](const Word& v) { return h.counit_word(v); })
                           .slot_as_poly(0);
            NcPoly r = t.contract_slot(1, [&](const Word& v) { return h.counit_word(v); })
                           .slot_as_poly(0);
            if (A.normal_form(l) != a || A.normal_form(r) != a)
                return std::make_pair(false, "witness " + A.word_str(w));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "hopf.antipode-axiom", "m(kappa (x) id) phi = eps(.)1 = m(id (x) kappa) phi",
              [&] {
                  for (const Word& w : probe) {
                      NcPoly a = A.normal_form(tensor_of_word(w));
                      Tensor t = h.coproduct(a);
                      NcPoly expected = A.unit().scaled(h.counit(a));
                      NcPoly l = t.map_slot(0, [&](const Word& v) {
                                     return h.antipode(A.monomial(v, A.s_one()));
                                 }).merge_slots(0).slot_as_poly(0);
                      NcPoly r = t.map_slot(1, [&](const Word& v) {
                                     return h.antipode(A.monomial(v, A.s_one()));
                                 }).merge_slots(0).slot_as_poly(0);
                      if (A.normal_form(l) != expected || A.normal_form(r) != expected)
                          return std::make_pair(false, "witness " + A.word_str(w));
                  }
                  return std::make_pair(true, std::string());
              });

    run_check(rep, "hopf.antipode-inverse", "kappa^-1 kappa = id on generators", [&] {
        for (size_t g = 0; g < A.size(); ++g) {
            NcPoly a = A.generator(A.gen(static_cast<int>(g)).name);
            if (h.antipode_inv(h.antipode(a)) != a)
                return std::make_pair(false, "witness " + A.gen(static_cast<int>(g)).name);
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "hopf.haar-normalized", "h(1) = 1", [&] {
        bool ok = h.haar(A.unit()).is_one();
        return std::make_pair(ok, ok ? std::string() : "h(1) != 1");
    });

    run_check(rep, "hopf.haar-invariance", "(id (x) h) phi(a) = h(a) 1 = (h (x) id) phi(a)", [&] {
        for (const Word& w : words) {
            NcPoly a = A.normal_form(tensor_of_word(w));
            if (a.is_zero()) continue;
            Tensor t = h.coproduct(a);
            NcPoly expect = A.unit().scaled(h.haar(a));
            NcPoly l = t.contract_slot(1, [&](const Word& v) { return h.haar_word(v); })
                           .slot_as_poly(0);
            NcPoly r = t.contract_slot(0, [&](const Word& v) { return h.haar_word(v); })
                           .slot_as_poly(0);
            if (A.normal_form(l) != expect || A.normal_form(r) != expect)
                return std::make_pair(false, "witness " + A.word_str(w));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "hopf.haar-antipode", "h kappa = h on the spanning set", [&] {
        for (const Word& w : words) {
            NcPoly a = A.normal_form(tensor_of_word(w));
            if (h.haar(h.antipode(a)) != h.haar(a))
                return std::make_pair(false, "witness " + A.word_str(w));
        }
        return std::make_pair(true, std::string());
    });

    for (const auto& u : h.coreps) {
        run_check(rep, "hopf.corep-" + u.name + "-comatrix",
                  "phi(u_ij) = sum_k u_ik (x) u_kj, eps(u_ij) = delta_ij", [&] {
                      for (size_t i = 0; i < u.dim; ++i)
                          for (size_t j = 0; j < u.dim; ++j) {
                              Tensor lhs = h.coproduct(u.entries[i][j]);
                              Tensor rhs({&A, &A});
                              for (size_t k = 0; k < u.dim; ++k)
                                  rhs += Tensor::of(u.entries[i][k]).outer(
                                      Tensor::of(u.entries[k][j]));
                              if (lhs != rhs.normalized())
                                  return std::make_pair(false, "entry (" + std::to_string(i) +
                                                                   "," + std::to_string(j) + ")");
                              Scalar e = h.counit(u.entries[i][j]);
                              Scalar expect = i == j ? A.s_one() : A.s_zero();
                              if (e != expect)
                                  return std::make_pair(false, "counit entry (" +
                                                                   std::to_string(i) + "," +
                                                                   std::to_string(j) + ")");
                          }
                      return std::make_pair(true, std::string());
                  });
        if (u.unitary) {
            run_check(rep, "hopf.corep-" + u.name + "-unitary",
                      "sum_k u_ki* u_kj = delta_ij 1 = sum_k u_ik u_jk*", [&] {
                          for (size_t i = 0; i < u.dim; ++i)
                              for (size_t j = 0; j < u.dim; ++j) {
                                  NcPoly l(&A), r(&A);
                                  for (size_t k = 0; k < u.dim; ++k) {
                                      l += A.star(u.entries[k][i]) * u.entries[k][j];
                                      r += u.entries[i][k] * A.star(u.entries[j][k]);
                                  }
                                  NcPoly expect =
                                      i == j ? A.unit() : A.zero();
                                  if (A.normal_form(l) != expect || A.normal_form(r) != expect)
                                      return std::make_pair(
                                          false, "entry (" + std::to_string(i) + "," +
                                                     std::to_string(j) + ")");
                              }
                          return std::make_pair(true, std::string());
                      });
        }
    }

    rep.sort_by_name();
    return rep;
}

}  // namespace qfb
