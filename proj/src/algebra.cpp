#include "qfb/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qfb {

void NcPoly::insert(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms.find(w);
    if (it == terms.end()) {
        terms.emplace(w, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

NcPoly NcPoly::operator-() const {
    NcPoly out(alg);
    for (const auto& [w, c] : terms) out.terms.emplace(w, -c);
    return out;
}

NcPoly& NcPoly::operator+=(const NcPoly& o) {
    if (!alg) alg = o.alg;
    for (const auto& [w, c] : o.terms) insert(w, c);
    return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& o) {
    if (!alg) alg = o.alg;
    for (const auto& [w, c] : o.terms) insert(w, -c);
    return *this;
}

NcPoly operator*(const NcPoly& a, const NcPoly& b) {
    const PresentedAlgebra* alg = a.alg ? a.alg : b.alg;
    NcPoly raw(alg);
    for (const auto& [wa, ca] : a.terms)
        for (const auto& [wb, cb] : b.terms) raw.insert(wa + wb, ca * cb);
    return alg ? alg->normal_form(raw) : raw;
}

NcPoly NcPoly::scaled(const Scalar& c) const {
    NcPoly out(alg);
    if (c.is_zero()) return out;
    for (const auto& [w, v] : terms) out.insert(w, v * c);
    return out;
}

NcPoly NcPoly::homogeneous_part(int degree) const {
    NcPoly out(alg);
    for (const auto& [w, c] : terms)
        if (alg->word_degree(w) == degree) out.terms.emplace(w, c);
    return out;
}

int NcPoly::degree() const {
    if (terms.empty()) return 0;
    return alg->word_degree(terms.begin()->first);
}

std::string NcPoly::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms) {
        std::string cs = c.str();
        if (!first) os << " + ";
        if (w.empty()) {
            os << cs;
        } else if (cs == "1") {
            os << alg->word_str(w);
        } else if (cs == "-1") {
            os << "-" << alg->word_str(w);
        } else {
            os << cs << " " << alg->word_str(w);
        }
        first = false;
    }
    return os.str();
}

int PresentedAlgebra::add_generator(const std::string& name, int degree) {
    if (gen_id(name) >= 0) throw std::invalid_argument(label + ": duplicate generator " + name);
    gens.push_back({name, degree, -1});
    return static_cast<int>(gens.size()) - 1;
}

void PresentedAlgebra::set_star_pair(const std::string& a, const std::string& b) {
    int ia = gen_id(a), ib = gen_id(b);
    if (ia < 0 || ib < 0) throw std::invalid_argument(label + ": unknown generator in star pair");
    gens[static_cast<size_t>(ia)].star = ib;
    gens[static_cast<size_t>(ib)].star = ia;
}

int PresentedAlgebra::gen_id(const std::string& name) const {
    for (size_t k = 0; k < gens.size(); ++k)
        if (gens[k].name == name) return static_cast<int>(k);
    return -1;
}

bool PresentedAlgebra::lenlex_less(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

int PresentedAlgebra::word_degree(const Word& w) const {
    int d = 0;
    for (char ch : w) d += gens[static_cast<size_t>(ch)].degree;
    return d;
}

void PresentedAlgebra::add_rule(Word lhs, NcPoly rhs) {
    if (lhs.empty()) throw std::invalid_argument(label + ": empty rule left-hand side");
    for (const auto& [w, c] : rhs.terms)
        if (!lenlex_less(w, lhs))
            throw std::invalid_argument(label + ": rule " + word_str(lhs) +
                                        " does not reduce (term " + word_str(w) + ")");
    rhs.alg = this;
    rules.push_back({std::move(lhs), std::move(rhs)});
}

NcPoly PresentedAlgebra::unit() const {
    NcPoly p(this);
    p.terms.emplace(Word(), s_one());
    return p;
}

NcPoly PresentedAlgebra::monomial(const Word& w, const Scalar& c) const {
    NcPoly p(this);
    p.insert(w, c);
    return normal_form(p);
}

NcPoly PresentedAlgebra::generator(const std::string& name) const {
    int id = gen_id(name);
    if (id < 0) throw std::invalid_argument(label + ": unknown generator " + name);
    Word w;
    w.push_back(static_cast<char>(id));
    return monomial(w, s_one());
}

bool PresentedAlgebra::reduce_once(const Word& w, size_t& rule, size_t& pos) const {
    // leftmost position, first applicable rule there
    for (size_t p = 0; p < w.size(); ++p)
        for (size_t r = 0; r < rules.size(); ++r) {
            const Word& lhs = rules[r].lhs;
            if (p + lhs.size() <= w.size() && w.compare(p, lhs.size(), lhs) == 0) {
                rule = r;
                pos = p;
                return true;
            }
        }
    return false;
}

NcPoly PresentedAlgebra::normal_form(const NcPoly& p) const {
    NcPoly out(this);
    std::vector<std::pair<Word, Scalar>> work(p.terms.begin(), p.terms.end());
    size_t steps = 0;
    while (!work.empty()) {
        auto [w, c] = std::move(work.back());
        work.pop_back();
        if (c.is_zero()) continue;
        size_t r = 0, pos = 0;
        if (!reduce_once(w, r, pos)) {
            out.insert(w, c);
            continue;
        }
        if (++steps > step_budget)
            throw std::runtime_error(label + ": reduction budget exhausted at word " + word_str(w));
        const RewriteRule& rule = rules[r];
        Word prefix = w.substr(0, pos);
        Word suffix = w.substr(pos + rule.lhs.size());
        for (const auto& [rw, rc] : rule.rhs.terms) work.emplace_back(prefix + rw + suffix, c * rc);
    }
    return out;
}

Word PresentedAlgebra::star_word_raw(const Word& w, int& sign) const {
    Word out;
    long s = 0;
    // (g1...gm)* = +/- gm* ... g1*, sign from pairwise degree exchanges
    for (size_t k = w.size(); k-- > 0;) {
        const Generator& g = gens[static_cast<size_t>(w[k])];
        if (g.star < 0)
            throw std::runtime_error(label + ": generator " + g.name + " has no star partner");
        out.push_back(static_cast<char>(g.star));
    }
    for (size_t a = 0; a < w.size(); ++a)
        for (size_t b = a + 1; b < w.size(); ++b)
            s += gens[static_cast<size_t>(w[a])].degree * gens[static_cast<size_t>(w[b])].degree;
    sign = (s % 2 == 0) ? 1 : -1;
    return out;
}

NcPoly PresentedAlgebra::star(const NcPoly& p) const {
    NcPoly out(this);
    for (const auto& [w, c] : p.terms) {
        int sign = 1;
        Word sw = star_word_raw(w, sign);
        Scalar sc = c.conj();
        if (sign < 0) sc = -sc;
        out.insert(sw, sc);
    }
    return normal_form(out);
}

ConfluenceReport PresentedAlgebra::check_confluence(size_t max_len, bool check_star) const {
    ConfluenceReport rep;
    std::set<std::tuple<Word, size_t, size_t>> seen;
    auto record = [&](const Word& w, size_t ra, size_t pa, size_t rb, size_t pb) {
        if (w.size() > max_len) return;
        NcPoly left(this), right(this);
        const RewriteRule& a = rules[ra];
        const RewriteRule& b = rules[rb];
        for (const auto& [rw, rc] : a.rhs.terms)
            left.insert(w.substr(0, pa) + rw + w.substr(pa + a.lhs.size()), rc);
        for (const auto& [rw, rc] : b.rhs.terms)
            right.insert(w.substr(0, pb) + rw + w.substr(pb + b.lhs.size()), rc);
        NcPoly ln = normal_form(left), rn = normal_form(right);
        OverlapReport o;
        o.word = w;
        o.rule_a = ra;
        o.rule_b = rb;
        o.joins = (ln == rn);
        o.left_nf = ln.str();
        o.right_nf = rn.str();
        if (!o.joins) rep.pass = false;
        rep.overlaps.push_back(std::move(o));
    };
    for (size_t ra = 0; ra < rules.size(); ++ra)
        for (size_t rb = 0; rb < rules.size(); ++rb) {
            const Word& la = rules[ra].lhs;
            const Word& lb = rules[rb].lhs;
            // proper overlap: suffix of la = prefix of lb
            for (size_t k = 1; k < std::min(la.size(), lb.size()); ++k) {
                if (la.compare(la.size() - k, k, lb, 0, k) == 0) {
                    Word w = la + lb.substr(k);
                    if (seen.insert({w, ra, rb}).second) record(w, ra, 0, rb, la.size() - k);
                }
            }
            // containment: lb inside la
            if (ra != rb && lb.size() < la.size()) {
                for (size_t p = 0; p + lb.size() <= la.size(); ++p)
                    if (la.compare(p, lb.size(), lb) == 0 && seen.insert({la, ra, rb}).second)
                        record(la, ra, 0, rb, p);
            }
        }
    if (check_star) {
        for (const auto& rule : rules) {
            bool has_partners = true;
            for (char ch : rule.lhs)
                if (gens[static_cast<size_t>(ch)].star < 0) has_partners = false;
            if (!has_partners) continue;
            NcPoly lhs(this);
            lhs.terms.emplace(rule.lhs, s_one());
            NcPoly diff = normal_form(star(lhs) - star(rule.rhs));
            if (!diff.is_zero()) {
                rep.pass = false;
                rep.star_failures.push_back(word_str(rule.lhs) + " -> " + rule.rhs.str() +
                                            " (residual " + diff.str() + ")");
            }
        }
    }
    return rep;
}

std::vector<Word> PresentedAlgebra::normal_words(size_t length) const {
    std::vector<Word> cur{Word()};
    for (size_t l = 0; l < length; ++l) {
        std::vector<Word> next;
        for (const Word& w : cur)
            for (size_t g = 0; g < gens.size(); ++g) {
                Word ext = w;
                ext.push_back(static_cast<char>(g));
                size_t r = 0, pos = 0;
                if (!reduce_once(ext, r, pos)) next.push_back(std::move(ext));
            }
        cur = std::move(next);
    }
    return cur;
}

std::vector<Word> PresentedAlgebra::normal_words_upto(size_t bound) const {
    std::vector<Word> out;
    for (size_t l = 0; l <= bound; ++l) {
        auto ws = normal_words(l);
        out.insert(out.end(), ws.begin(), ws.end());
    }
    return out;
}

std::string PresentedAlgebra::word_str(const Word& w) const {
    if (w.empty()) return "1";
    std::ostringstream os;
    size_t k = 0;
    while (k < w.size()) {
        size_t run = 1;
        while (k + run < w.size() && w[k + run] == w[k]) ++run;
        if (k > 0) os << " ";
        os << gens[static_cast<size_t>(w[k])].name;
        if (run > 1) os << "^" << run;
        k += run;
    }
    return os.str();
}

Word PresentedAlgebra::parse_word(const std::vector<std::string>& names) const {
    Word w;
    for (const auto& n : names) {
        int id = gen_id(n);
        if (id < 0) throw std::invalid_argument(label + ": unknown generator " + n);
        w.push_back(static_cast<char>(id));
    }
    return w;
}

std::vector<NcPoly> all_normal_forms(const PresentedAlgebra& alg, const NcPoly& p, size_t budget) {
    // depth-first over every single-step rewrite of every term
    std::set<std::string> visited;
    std::vector<NcPoly> results;
    auto key = [](const NcPoly& q) { return q.str(); };
    std::vector<NcPoly> stack{p};
    size_t steps = 0;
    std::set<std::string> irreducible;
    while (!stack.empty()) {
        NcPoly cur = std::move(stack.back());
        stack.pop_back();
        if (!visited.insert(key(cur)).second) continue;
        if (++steps > budget) throw std::runtime_error("all_normal_forms budget exhausted");
        bool reduced_any = false;
        for (const auto& [w, c] : cur.terms) {
            for (size_t pos = 0; pos < w.size(); ++pos)
                for (const auto& rule : alg.rules) {
                    if (pos + rule.lhs.size() > w.size()) continue;
                    if (w.compare(pos, rule.lhs.size(), rule.lhs) != 0) continue;
                    reduced_any = true;
                    NcPoly next = cur;
                    next.insert(w, -c);
                    for (const auto& [rw, rc] : rule.rhs.terms)
                        next.insert(w.substr(0, pos) + rw + w.substr(pos + rule.lhs.size()),
                                    c * rc);
                    stack.push_back(std::move(next));
                }
        }
        if (!reduced_any && irreducible.insert(key(cur)).second) results.push_back(cur);
    }
    return results;
}

}  // namespace qfb
