#include "qfb/fodc.hpp"

namespace qfb {

std::vector<Scalar> Fodc::to_vector(const NcPoly& a) const {
    std::vector<Scalar> v(slice_words_.size(), A().s_zero());
    for (const auto& [w, c] : a.terms) {
        auto it = word_pos_.find(w);
        if (it == word_pos_.end())
            throw std::runtime_error("calculus slice too small for word " + A().word_str(w) +
                                     "; raise slice_length");
        v[it->second] += c;
    }
    return v;
}

std::vector<Scalar> Fodc::reduce_vector(std::vector<Scalar> v) const {
    for (size_t r = 0; r < echelon_.size(); ++r) {
        const Scalar& coef = v[pivots_[r]];
        if (coef.is_zero()) continue;
        Scalar f = coef;
        for (size_t k = 0; k < v.size(); ++k) v[k] -= f * echelon_[r][k];
    }
    return v;
}

void Fodc::build() {
    const auto& A = this->A();
    slice_words_ = A.normal_words_upto(slice_len);
    word_pos_.clear();
    for (size_t k = 0; k < slice_words_.size(); ++k) word_pos_[slice_words_[k]] = k;

    // right-ideal slice rows
    std::vector<std::vector<Scalar>> rows;
    for (const auto& r : ideal)
        for (const auto& w : slice_words_) {
            NcPoly p = A.normal_form(r * A.monomial(w, A.s_one()));
            bool fits = true;
            for (const auto& [pw, pc] : p.terms)
                if (!word_pos_.count(pw)) fits = false;
            if (!fits || p.is_zero()) continue;
            rows.push_back(to_vector(p));
        }
    Mat m(rows.size(), slice_words_.size());
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < rows[r].size(); ++c) m.at(r, c) = rows[r][c];
    pivots_ = rref(m);
    echelon_.clear();
    for (size_t r = 0; r < pivots_.size(); ++r) {
        std::vector<Scalar> row(m.cols);
        for (size_t c = 0; c < m.cols; ++c) row[c] = m.at(r, c);
        echelon_.push_back(std::move(row));
    }

    rep_residuals_.clear();
    for (const auto& rep : basis_reps) {
        if (!P->G->counit(rep).is_zero())
            throw std::runtime_error("calculus basis representative is not in ker(eps)");
        rep_residuals_.push_back(reduce_vector(to_vector(rep)));
    }

    // pi of every slice word, solved once
    word_pi_.clear();
    for (const auto& w : slice_words_) {
        NcPoly a(P->G->alg.get());
        a.insert(w, A.s_one());
        word_pi_[w] = solve_coords(a);
    }

    // star matrix from pi(a)* = -pi(kappa(a)*)
    gstar = Mat(dim(), dim());
    for (size_t i = 0; i < dim(); ++i) {
        NcPoly m2 = -A.star(P->G->antipode(basis_reps[i]));
        auto coords = pi_coords(m2);
        for (size_t j = 0; j < dim(); ++j) gstar.at(i, j) = coords[j];
    }

    // module matrices per generator
    gcirc.clear();
    for (size_t g = 0; g < A.size(); ++g) {
        Mat mg(dim(), dim());
        for (size_t i = 0; i < dim(); ++i) {
            NcPoly ba = basis_reps[i] * A.generator(A.gen(static_cast<int>(g)).name);
            auto coords = pi_coords(ba);
            for (size_t j = 0; j < dim(); ++j) mg.at(i, j) = coords[j];
        }
        gcirc[static_cast<int>(g)] = mg;
    }
}

std::vector<Scalar> Fodc::solve_coords(const NcPoly& a) const {
    const auto& A = this->A();
    NcPoly v = A.normal_form(a - A.unit().scaled(P->G->counit(a)));
    auto res = reduce_vector(to_vector(v));
    // solve res = sum x_i rep_residuals_[i]
    Mat m(slice_words_.size(), dim());
    for (size_t i = 0; i < dim(); ++i)
        for (size_t k = 0; k < slice_words_.size(); ++k) m.at(k, i) = rep_residuals_[i][k];
    auto sol = solve(std::move(m), res);
    if (!sol)
        throw std::runtime_error("declared invariant basis does not span the class of " + a.str());
    return *sol;
}

std::vector<Scalar> Fodc::pi_coords(const NcPoly& a) const {
    const auto& A = this->A();
    NcPoly na = A.normal_form(a);
    std::vector<Scalar> out(dim(), A.s_zero());
    for (const auto& [w, c] : na.terms) {
        auto it = word_pi_.find(w);
        if (it == word_pi_.end())
            throw std::runtime_error("calculus slice too small for word " + A.word_str(w) +
                                     "; raise slice_length");
        for (size_t i = 0; i < dim(); ++i) out[i] += c * it->second[i];
    }
    return out;
}

NcPoly Fodc::pi(const NcPoly& a) const {
    auto coords = pi_coords(a);
    NcPoly out(gext.get());
    for (size_t i = 0; i < dim(); ++i) out.insert(Word(1, static_cast<char>(i)), coords[i]);
    return out;
}

bool Fodc::in_ideal(const NcPoly& a) const {
    auto res = reduce_vector(to_vector(A().normal_form(a)));
    for (const auto& c : res)
        if (!c.is_zero()) return false;
    return true;
}

NcPoly Fodc::circ_basis(size_t i, const NcPoly& a) const {
    return pi(basis_reps[i] * a);
}

Mat Fodc::circ_matrix(const NcPoly& a) const {
    Mat m(dim(), dim());
    for (size_t i = 0; i < dim(); ++i) {
        auto coords = pi_coords(basis_reps[i] * a);
        for (size_t j = 0; j < dim(); ++j) m.at(i, j) = coords[j];
    }
    return m;
}

NcPoly Fodc::circ_word(const Word& gw, const Word& aw) const {
    if (gw.empty()) return gext->unit().scaled(P->G->counit_word(aw));
    if (gw.size() == 1) {
        Mat m = mat_identity(dim(), A().params);
        for (char g : aw) m = mat_mul(m, gcirc.at(static_cast<int>(g)));
        size_t i = static_cast<size_t>(gw[0]);
        NcPoly out(gext.get());
        for (size_t j = 0; j < dim(); ++j) out.insert(Word(1, static_cast<char>(j)), m.at(i, j));
        return out;
    }
    Word head(1, gw[0]);
    Word rest = gw.substr(1);
    Tensor cop = P->G->coproduct_word(aw);
    NcPoly out(gext.get());
    for (const auto& [k, c] : cop.terms)
        out += (circ_word(head, k[0]) * circ_word(rest, k[1])).scaled(c);
    return gext->normal_form(out);
}

Tensor Fodc::varpi_basis(size_t i) const {
    Tensor ad = P->G->adjoint_action(basis_reps[i]);
    Tensor out({gext.get(), P->G->alg.get()});
    for (const auto& [k, c] : ad.terms) {
        NcPoly g = pi(A().monomial(k[0], A().s_one()));
        for (const auto& [gw, gc] : g.terms) out.insert({gw, k[1]}, c * gc);
    }
    return out;
}

NcPoly Fodc::star_gamma(const NcPoly& g) const {
    NcPoly out(gext.get());
    for (const auto& [gw, gc] : g.terms) {
        size_t m = gw.size();
        NcPoly prod = gext->unit();
        for (size_t k = 0; k < m; ++k) {
            size_t i = static_cast<size_t>(gw[k]);
            NcPoly img(gext.get());
            for (size_t j = 0; j < dim(); ++j)
                img.insert(Word(1, static_cast<char>(j)), gstar.at(i, j));
            prod = img * prod;
        }
        Scalar c = gc.conj();
        if ((m * (m - 1) / 2) % 2 == 1) c = -c;
        out += prod.scaled(c);
    }
    return gext->normal_form(out);
}

std::vector<Scalar> Fodc::pi_pi_coproduct(const NcPoly& a) const {
    Tensor cop = P->G->coproduct(a);
    std::vector<Scalar> coords(dim() * dim(), A().s_zero());
    for (const auto& [k, c] : cop.terms) {
        auto c1 = pi_coords(A().monomial(k[0], A().s_one()));
        auto c2 = pi_coords(A().monomial(k[1], A().s_one()));
        for (size_t i = 0; i < dim(); ++i)
            for (size_t j = 0; j < dim(); ++j) coords[i * dim() + j] += c * c1[i] * c2[j];
    }
    return coords;
}

NcPoly Fodc::rep_combination(const std::vector<Scalar>& coords) const {
    NcPoly out(P->G->alg.get());
    for (size_t i = 0; i < dim(); ++i) out += basis_reps[i].scaled(coords[i]);
    return out;
}

std::optional<std::string> delta_from_coproduct(const Fodc& f, std::vector<Mat>& out) {
    for (const auto& r : f.ideal) {
        auto coords = f.pi_pi_coproduct(r);
        for (const auto& c : coords)
            if (!c.is_zero())
                return "ideal generator " + r.str() + " has nonzero (pi (x) pi) coproduct";
    }
    out.clear();
    for (size_t i = 0; i < f.dim(); ++i) {
        auto coords = f.pi_pi_coproduct(f.basis_reps[i]);
        Mat m(f.dim(), f.dim());
        for (size_t a = 0; a < f.dim(); ++a)
            for (size_t b = 0; b < f.dim(); ++b) m.at(a, b) = coords[a * f.dim() + b];
        out.push_back(std::move(m));
    }
    return std::nullopt;
}

NcPoly Fodc::d_wedge_word(const Word& gw) const {
    if (gw.empty()) return gext->zero();
    NcPoly head_d = d_wedge.at(static_cast<int>(gw[0]));
    if (gw.size() == 1) return head_d;
    Word rest = gw.substr(1);
    NcPoly head(gext.get());
    head.insert(Word(1, gw[0]), gext->s_one());
    NcPoly out = head_d * gext->normal_form(gext->monomial(rest, gext->s_one()));
    out -= head * d_wedge_word(rest);  // (-1)^1 from the degree-1 head
    return gext->normal_form(out);
}

NcPoly Fodc::d_wedge_apply(const NcPoly& g) const {
    NcPoly out(gext.get());
    for (const auto& [w, c] : g.terms) out += d_wedge_word(w).scaled(c);
    return gext->normal_form(out);
}

Report verify_ideal(const Fodc& f, const IdealVerifyOptions& opt) {
    Report rep;
    rep.seed = opt.seed;
    const auto& A = f.A();
    const auto& G = *f.P->G;

    run_check(rep, "fodc.kernel-of-counit", "R is contained in ker(eps)", [&] {
        for (const auto& r : f.ideal)
            if (!G.counit(r).is_zero()) return std::make_pair(false, "generator " + r.str());
        return std::make_pair(true, std::string());
    });

    run_check(rep, "fodc.right-ideal", "R A is contained in R", [&] {
        for (const auto& r : f.ideal)
            for (size_t g = 0; g < A.size(); ++g) {
                NcPoly ra = r * A.generator(A.gen(static_cast<int>(g)).name);
                if (!f.in_ideal(ra))
                    return std::make_pair(false, "generator times " +
                                                     A.gen(static_cast<int>(g)).name);
            }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "fodc.ad-invariant", "ad(R) is contained in R (x) A", [&] {
        for (const auto& r : f.ideal) {
            Tensor ad = G.adjoint_action(r);
            // group by the second leg and test the first leg for membership
            std::map<Word, NcPoly> grouped;
            for (const auto& [k, c] : ad.terms) {
                auto& p = grouped[k[1]];
                p.alg = G.alg.get();
                p.insert(k[0], c);
            }
            for (auto& [aw, p] : grouped)
                if (!f.in_ideal(p))
                    return std::make_pair(false, "component along " + A.word_str(aw));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "fodc.star-condition", "kappa(R)* is contained in R", [&] {
        for (const auto& r : f.ideal)
            if (!f.in_ideal(A.star(G.antipode(r))))
                return std::make_pair(false, "generator " + r.str());
        return std::make_pair(true, std::string());
    });

    run_check(rep, "fodc.annihilated", "supplied curvature and vertical maps kill R", [&] {
        for (const auto& r : f.ideal)
            for (const auto* m : opt.annihilating_maps)
                if (!m->apply(r).is_zero())
                    return std::make_pair(false, "generator " + r.str());
        return std::make_pair(true, std::string());
    });

    if (opt.maximality_bound > 0) {
        run_check(rep, "fodc.maximality",
                  "no shorter annihilated element escapes R (bound " +
                      std::to_string(opt.maximality_bound) + ")",
                  [&] {
                      auto words = A.normal_words_upto(opt.maximality_bound);
                      // columns = ker-eps slice basis w - eps(w) 1
                      std::vector<NcPoly> basis;
                      for (const auto& w : words) {
                          if (w.empty()) continue;
                          NcPoly v = A.monomial(w, A.s_one());
                          basis.push_back(A.normal_form(v - A.unit().scaled(G.counit(v))));
                      }
                      Indexer<std::tuple<size_t, Word, Word>> ix;
                      std::vector<std::map<std::tuple<size_t, Word, Word>, Scalar>> cols;
                      for (const auto& v : basis) {
                          std::map<std::tuple<size_t, Word, Word>, Scalar> col;
                          for (size_t mi = 0; mi < opt.annihilating_maps.size(); ++mi) {
                              Hor hv = opt.annihilating_maps[mi]->apply(v);
                              for (const auto& [k, c] : hv.terms)
                                  col[{mi, k.first, k.second}] += c;
                          }
                          cols.push_back(std::move(col));
                      }
                      for (const auto& c : cols)
                          for (const auto& [k, v] : c) ix.id(k);
                      Mat m(ix.size(), cols.size());
                      for (size_t c = 0; c < cols.size(); ++c)
                          for (const auto& [k, v] : cols[c]) m.at(ix.pos.at(k), c) = v;
                      auto ker = kernel_basis(std::move(m));
                      for (const auto& kv : ker) {
                          NcPoly elt(G.alg.get());
                          for (size_t k = 0; k < basis.size(); ++k)
                              if (!kv[k].is_zero()) elt += basis[k].scaled(kv[k]);
                          if (!f.in_ideal(elt))
                              return std::make_pair(false,
                                                    "annihilated element outside R: " + elt.str());
                      }
                      return std::make_pair(true, std::string());
                  });
    } else {
        rep.skip("fodc.maximality", "no shorter annihilated element escapes R",
                 "probe not configured for this instance");
    }

    run_check(rep, "fodc.basis-spans", "the declared basis spans ker(eps)/R on the slice", [&] {
        auto words = A.normal_words_upto(3);
        for (const auto& w : words) {
            NcPoly a = A.monomial(w, A.s_one());
            f.pi_coords(a);  // throws when not spanned
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "fodc.circ-welldef", "pi(b) o a = pi(b a) descends to the quotient", [&] {
        for (const auto& r : f.ideal)
            for (size_t g = 0; g < A.size(); ++g) {
                NcPoly ra = r * A.generator(A.gen(static_cast<int>(g)).name);
                auto coords = f.pi_coords(ra);
                for (const auto& c : coords)
                    if (!c.is_zero())
                        return std::make_pair(false, "R o " + A.gen(static_cast<int>(g)).name);
            }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "fodc.varpi-welldef", "(pi (x) id) ad kills R", [&] {
        for (const auto& r : f.ideal) {
            Tensor ad = G.adjoint_action(r);
            std::map<Word, NcPoly> grouped;
            for (const auto& [k, c] : ad.terms) {
                auto& p = grouped[k[1]];
                p.alg = G.alg.get();
                p.insert(k[0], c);
            }
            for (auto& [aw, p] : grouped) {
                auto coords = f.pi_coords(p);
                for (const auto& c : coords)
                    if (!c.is_zero())
                        return std::make_pair(false, "component along " + A.word_str(aw));
            }
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "fodc.higher-rules-welldef", "d^ descends through the declared relations", [&] {
        for (const auto& rule : f.gext->rules) {
            NcPoly lhs_d = f.d_wedge_word(rule.lhs);
            NcPoly rhs_d = f.d_wedge_apply(rule.rhs);
            if (lhs_d != rhs_d)
                return std::make_pair(false, "relation " + f.gext->word_str(rule.lhs));
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "fodc.d-squared", "d^ d^ = 0 on the basis", [&] {
        for (size_t i = 0; i < f.dim(); ++i) {
            NcPoly dd = f.d_wedge_apply(f.d_wedge.at(static_cast<int>(i)));
            if (!dd.is_zero())
                return std::make_pair(false, "basis " + f.basis_names[i]);
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "fodc.delta-legs", "multiplying the legs of delta reproduces d^", [&] {
        for (size_t i = 0; i < f.dim(); ++i) {
            NcPoly prod(f.gext.get());
            for (size_t a = 0; a < f.dim(); ++a)
                for (size_t b = 0; b < f.dim(); ++b) {
                    Word w;
                    w.push_back(static_cast<char>(a));
                    w.push_back(static_cast<char>(b));
                    prod.insert(w, f.delta[i].at(a, b));
                }
            prod = f.gext->normal_form(prod);
            if (prod != f.d_wedge.at(static_cast<int>(i)))
                return std::make_pair(false, "basis " + f.basis_names[i]);
        }
        return std::make_pair(true, std::string());
    });

    run_check(rep, "fodc.delta-hermitian", "delta(theta*) = (star (x) star flip) delta(theta)",
              [&] {
                  // (x (x) y)* = -y* (x) x* in coordinates through gstar
                  for (size_t i = 0; i < f.dim(); ++i) {
                      Mat lhs(f.dim(), f.dim());
                      for (size_t a = 0; a < f.dim(); ++a)
                          for (size_t b = 0; b < f.dim(); ++b) lhs.at(a, b) = A.s_zero();
                      for (size_t j = 0; j < f.dim(); ++j)
                          for (size_t a = 0; a < f.dim(); ++a)
                              for (size_t b = 0; b < f.dim(); ++b)
                                  lhs.at(a, b) += f.gstar.at(i, j) * f.delta[j].at(a, b);
                      Mat rhs(f.dim(), f.dim());
                      for (size_t a = 0; a < f.dim(); ++a)
                          for (size_t b = 0; b < f.dim(); ++b) {
                              Scalar s = A.s_zero();
                              for (size_t x = 0; x < f.dim(); ++x)
                                  for (size_t y = 0; y < f.dim(); ++y)
                                      s += (-f.delta[i].at(x, y).conj()) * f.gstar.at(y, a) *
                                           f.gstar.at(x, b);
                              rhs.at(a, b) = s;
                          }
                      for (size_t a = 0; a < f.dim(); ++a)
                          for (size_t b = 0; b < f.dim(); ++b)
                              if (lhs.at(a, b) != rhs.at(a, b))
                                  return std::make_pair(false, "basis " + f.basis_names[i]);
                  }
                  return std::make_pair(true, std::string());
              });

    rep.sort_by_name();
    return rep;
}

}  // namespace qfb
