#include "qfb/tensor.hpp"

#include <sstream>

namespace qfb {

Tensor Tensor::unit(std::vector<const PresentedAlgebra*> a) {
    Tensor t(std::move(a));
    std::vector<Word> key(t.algs.size());
    Scalar one = t.algs.empty() ? Scalar::one() : t.algs[0]->s_one();
    t.terms.emplace(std::move(key), one);
    return t;
}

Tensor Tensor::of(const NcPoly& p) {
    Tensor t({p.alg});
    for (const auto& [w, c] : p.terms) t.terms.emplace(std::vector<Word>{w}, c);
    return t;
}

void Tensor::insert(std::vector<Word> key, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

Tensor Tensor::operator-() const {
    Tensor out(algs);
    for (const auto& [k, c] : terms) out.terms.emplace(k, -c);
    return out;
}

Tensor& Tensor::operator+=(const Tensor& o) {
    if (algs.empty()) algs = o.algs;
    for (const auto& [k, c] : o.terms) insert(k, c);
    return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
    if (algs.empty()) algs = o.algs;
    for (const auto& [k, c] : o.terms) insert(k, -c);
    return *this;
}

Tensor operator*(const Tensor& a, const Tensor& b) {
    Tensor raw(a.algs.empty() ? b.algs : a.algs);
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) {
            std::vector<Word> k(ka.size());
            for (size_t s = 0; s < ka.size(); ++s) k[s] = ka[s] + kb[s];
            raw.insert(std::move(k), ca * cb);
        }
    return raw.normalized();
}

Tensor Tensor::scaled(const Scalar& c) const {
    Tensor out(algs);
    if (c.is_zero()) return out;
    for (const auto& [k, v] : terms) out.insert(k, v * c);
    return out;
}

Tensor Tensor::outer(const Tensor& o) const {
    std::vector<const PresentedAlgebra*> as = algs;
    as.insert(as.end(), o.algs.begin(), o.algs.end());
    Tensor out(std::move(as));
    for (const auto& [ka, ca] : terms)
        for (const auto& [kb, cb] : o.terms) {
            std::vector<Word> k = ka;
            k.insert(k.end(), kb.begin(), kb.end());
            out.insert(std::move(k), ca * cb);
        }
    return out;
}

Tensor Tensor::map_slot(size_t slot, const std::function<NcPoly(const Word&)>& f) const {
    Tensor out(algs);
    for (const auto& [k, c] : terms) {
        NcPoly img = f(k[slot]);
        if (img.alg) out.algs[slot] = img.alg;
        for (const auto& [w, cc] : img.terms) {
            std::vector<Word> kk = k;
            kk[slot] = w;
            out.insert(std::move(kk), c * cc);
        }
    }
    return out.normalized();
}

Tensor Tensor::expand_slot(size_t slot, const std::vector<const PresentedAlgebra*>& repl,
                           const std::function<Tensor(const Word&)>& f) const {
    std::vector<const PresentedAlgebra*> as;
    for (size_t s = 0; s < algs.size(); ++s) {
        if (s == slot)
            as.insert(as.end(), repl.begin(), repl.end());
        else
            as.push_back(algs[s]);
    }
    Tensor out(std::move(as));
    for (const auto& [k, c] : terms) {
        Tensor img = f(k[slot]);
        for (const auto& [ik, ic] : img.terms) {
            std::vector<Word> kk;
            for (size_t s = 0; s < algs.size(); ++s) {
                if (s == slot)
                    kk.insert(kk.end(), ik.begin(), ik.end());
                else
                    kk.push_back(k[s]);
            }
            out.insert(std::move(kk), c * ic);
        }
    }
    return out.normalized();
}

Tensor Tensor::contract_slot(size_t slot, const std::function<Scalar(const Word&)>& f) const {
    std::vector<const PresentedAlgebra*> as;
    for (size_t s = 0; s < algs.size(); ++s)
        if (s != slot) as.push_back(algs[s]);
    Tensor out(std::move(as));
    for (const auto& [k, c] : terms) {
        Scalar v = f(k[slot]);
        if (v.is_zero()) continue;
        std::vector<Word> kk;
        for (size_t s = 0; s < k.size(); ++s)
            if (s != slot) kk.push_back(k[s]);
        out.insert(std::move(kk), c * v);
    }
    return out;
}

Tensor Tensor::merge_slots(size_t a) const {
    std::vector<const PresentedAlgebra*> as;
    for (size_t s = 0; s < algs.size(); ++s)
        if (s != a + 1) as.push_back(algs[s]);
    Tensor out(std::move(as));
    for (const auto& [k, c] : terms) {
        std::vector<Word> kk;
        for (size_t s = 0; s < k.size(); ++s) {
            if (s == a)
                kk.push_back(k[a] + k[a + 1]);
            else if (s != a + 1)
                kk.push_back(k[s]);
        }
        out.insert(std::move(kk), c);
    }
    return out.normalized();
}

NcPoly Tensor::slot_as_poly(size_t slot) const {
    NcPoly p(algs[slot]);
    for (const auto& [k, c] : terms) {
        for (size_t s = 0; s < k.size(); ++s)
            if (s != slot && !k[s].empty())
                throw std::logic_error("slot_as_poly: other slots not trivial");
        p.insert(k[slot], c);
    }
    return p;
}

Tensor Tensor::normalized() const {
    Tensor out(algs);
    for (const auto& [k, c] : terms) {
        // reduce each slot word; distribute the resulting polynomials
        std::vector<std::pair<std::vector<Word>, Scalar>> parts{{std::vector<Word>{}, c}};
        for (size_t s = 0; s < k.size(); ++s) {
            NcPoly w(algs[s]);
            w.insert(k[s], algs[s] ? algs[s]->s_one() : Scalar::one());
            NcPoly nf = algs[s] ? algs[s]->normal_form(w) : w;
            std::vector<std::pair<std::vector<Word>, Scalar>> next;
            for (const auto& [pk, pc] : parts)
                for (const auto& [nw, nc] : nf.terms) {
                    auto kk = pk;
                    kk.push_back(nw);
                    next.emplace_back(std::move(kk), pc * nc);
                }
            parts = std::move(next);
        }
        for (auto& [kk, cc] : parts) out.insert(std::move(kk), cc);
    }
    return out;
}

std::string Tensor::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms) {
        if (!first) os << " + ";
        std::string cs = c.str();
        if (cs != "1") os << cs << " ";
        for (size_t s = 0; s < k.size(); ++s) {
            if (s) os << " (x) ";
            os << (algs[s] ? algs[s]->word_str(k[s]) : std::string("1"));
        }
        first = false;
    }
    return os.str();
}

}  // namespace qfb
