#include "qfb/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace qfb {

std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

GaussRat GaussRat::inv() const {
    Rat n = re * re + im * im;
    if (n == 0) throw std::domain_error("division by zero scalar");
    return GaussRat(re / n, -im / n);
}

GaussRat& GaussRat::operator+=(const GaussRat& o) {
    re += o.re;
    im += o.im;
    return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
    Rat r = re * o.re - im * o.im;
    Rat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

std::string GaussRat::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    if (re != 0) {
        os << rat_to_string(re);
        if (im > 0) os << "+";
    }
    if (im != 0) {
        if (im == -1)
            os << "-";
        else if (im != 1)
            os << rat_to_string(im) << "*";
        os << "i";
    }
    return os.str();
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
    uint64_t da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MPoly MPoly::constant(GaussRat c, size_t nvars) {
    MPoly p;
    if (!c.is_zero()) p.terms.emplace(Monomial(nvars, 0), std::move(c));
    return p;
}

MPoly MPoly::variable(size_t var, size_t nvars, uint32_t exp) {
    MPoly p;
    Monomial m(nvars, 0);
    m[var] = exp;
    p.terms.emplace(std::move(m), GaussRat(1));
    return p;
}

bool MPoly::is_constant() const {
    if (terms.empty()) return true;
    if (terms.size() > 1) return false;
    const Monomial& m = terms.begin()->first;
    return std::all_of(m.begin(), m.end(), [](uint32_t e) { return e == 0; });
}

GaussRat MPoly::constant_value() const {
    if (terms.empty()) return GaussRat(0);
    return terms.begin()->second;
}

MPoly MPoly::resized(size_t nvars) const {
    MPoly out;
    for (const auto& [m, c] : terms) {
        Monomial mm = m;
        mm.resize(nvars, 0);
        out.terms.emplace(std::move(mm), c);
    }
    return out;
}

void MPoly::insert_term(Monomial m, GaussRat c) {
    if (c.is_zero()) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(std::move(m), std::move(c));
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

MPoly MPoly::operator-() const {
    MPoly out;
    for (const auto& [m, c] : terms) out.terms.emplace(m, -c);
    return out;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    for (const auto& [m, c] : o.terms) insert_term(m, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    for (const auto& [m, c] : o.terms) insert_term(m, -c);
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly out;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            Monomial m(std::max(ma.size(), mb.size()), 0);
            for (size_t k = 0; k < ma.size(); ++k) m[k] += ma[k];
            for (size_t k = 0; k < mb.size(); ++k) m[k] += mb[k];
            out.insert_term(std::move(m), ca * cb);
        }
    return out;
}

MPoly MPoly::scaled(const GaussRat& c) const {
    MPoly out;
    if (c.is_zero()) return out;
    for (const auto& [m, v] : terms) out.terms.emplace(m, v * c);
    return out;
}

MPoly MPoly::conj() const {
    MPoly out;
    for (const auto& [m, v] : terms) out.terms.emplace(m, v.conj());
    return out;
}

int MPoly::degree_in(size_t var) const {
    int d = 0;
    for (const auto& [m, c] : terms)
        if (var < m.size()) d = std::max(d, static_cast<int>(m[var]));
    return d;
}

MPoly MPoly::eval(size_t var, const Rat& value) const {
    MPoly out;
    for (const auto& [m, c] : terms) {
        GaussRat cc = c;
        Monomial mm = m;
        if (var < mm.size()) {
            Rat f = 1;
            for (uint32_t k = 0; k < mm[var]; ++k) f *= value;
            cc *= GaussRat(f);
            mm[var] = 0;
        }
        out.insert_term(std::move(mm), std::move(cc));
    }
    return out;
}

std::string MPoly::str(const ParamTable* tab) const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // leading terms sit last in the map; print descending
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string cs = c.str();
        bool is_unit = (cs == "1" || cs == "-1");
        std::string mono;
        for (size_t k = 0; k < m.size(); ++k) {
            if (m[k] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += tab ? tab->names[k] : ("x" + std::to_string(k));
            if (m[k] > 1) mono += "^" + std::to_string(m[k]);
        }
        if (!first) os << (cs[0] == '-' ? " - " : " + ");
        std::string body = cs;
        if (!first && body[0] == '-') body = body.substr(1);
        if (mono.empty()) {
            os << body;
        } else if (is_unit) {
            os << (first && cs == "-1" ? "-" : "") << mono;
        } else {
            if (body.find('+') != std::string::npos || body.find('-', 1) != std::string::npos)
                os << "(" << body << ")*" << mono;
            else
                os << body << "*" << mono;
        }
        first = false;
    }
    return os.str();
}

namespace {

bool mono_divides(const Monomial& a, const Monomial& b) {
    // a | b
    for (size_t k = 0; k < a.size(); ++k)
        if (a[k] > (k < b.size() ? b[k] : 0)) return false;
    return true;
}

Monomial mono_div(const Monomial& b, const Monomial& a) {
    Monomial m = b;
    for (size_t k = 0; k < a.size(); ++k) m[k] -= a[k];
    return m;
}

// Coefficients of p viewed as univariate in `var`.
std::map<uint32_t, MPoly> coeffs_in(const MPoly& p, size_t var) {
    std::map<uint32_t, MPoly> out;
    for (const auto& [m, c] : p.terms) {
        Monomial mm = m;
        uint32_t e = var < mm.size() ? mm[var] : 0;
        if (var < mm.size()) mm[var] = 0;
        out[e].insert_term(std::move(mm), c);
    }
    return out;
}

MPoly from_coeffs(const std::map<uint32_t, MPoly>& cs, size_t var) {
    MPoly out;
    for (const auto& [e, p] : cs)
        for (const auto& [m, c] : p.terms) {
            Monomial mm = m;
            if (var >= mm.size()) mm.resize(var + 1, 0);
            mm[var] += e;
            out.insert_term(std::move(mm), c);
        }
    return out;
}

MPoly normalize_leading(const MPoly& p) {
    if (p.is_zero()) return p;
    return p.scaled(p.leading().second.inv());
}

int main_variable(const MPoly& a, const MPoly& b) {
    size_t n = std::max(a.nvars(), b.nvars());
    for (size_t k = n; k-- > 0;)
        if (a.degree_in(k) > 0 || b.degree_in(k) > 0) return static_cast<int>(k);
    return -1;
}

MPoly content_in(const MPoly& p, size_t var) {
    MPoly g;
    for (const auto& [e, c] : coeffs_in(p, var)) g = poly_gcd(g, c);
    return g;
}

// Pseudo-remainder of a by b in variable var.
MPoly prem(MPoly a, const MPoly& b, size_t var) {
    int db = b.degree_in(var);
    auto bc = coeffs_in(b, var);
    MPoly lb = bc[static_cast<uint32_t>(db)];
    while (!a.is_zero()) {
        int da = a.degree_in(var);
        if (da < db) break;
        auto ac = coeffs_in(a, var);
        MPoly la = ac[static_cast<uint32_t>(da)];
        MPoly xs = MPoly::variable(var, std::max(a.nvars(), b.nvars()),
                                   static_cast<uint32_t>(da - db));
        a = a * lb - b * (la * xs);
    }
    return a;
}

}  // namespace

MPoly divexact(const MPoly& a, const MPoly& b) {
    if (b.is_zero()) throw std::domain_error("divexact by zero polynomial");
    MPoly rem = a;
    MPoly q;
    size_t n = std::max(a.nvars(), b.nvars());
    if (rem.nvars() < n) rem = rem.resized(n);
    MPoly bb = b.nvars() < n ? b.resized(n) : b;
    while (!rem.is_zero()) {
        const auto& [ma, ca] = rem.leading();
        const auto& [mb, cb] = bb.leading();
        if (!mono_divides(mb, ma)) throw std::domain_error("inexact polynomial division");
        Monomial mq = mono_div(ma, mb);
        GaussRat cq = ca / cb;
        MPoly t;
        t.terms.emplace(mq, cq);
        q += t;
        rem -= t * bb;
    }
    return q;
}

MPoly poly_gcd(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return normalize_leading(b);
    if (b.is_zero()) return normalize_leading(a);
    int var = main_variable(a, b);
    if (var < 0) return MPoly::constant(GaussRat(1), std::max(a.nvars(), b.nvars()));
    size_t v = static_cast<size_t>(var);
    MPoly ca = content_in(a, v), cb = content_in(b, v);
    MPoly cont = poly_gcd(ca, cb);
    MPoly pa = divexact(a, ca), pb = divexact(b, cb);
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
    while (!pb.is_zero()) {
        MPoly r = prem(pa, pb, v);
        pa = std::move(pb);
        if (r.is_zero()) {
            pb = MPoly();
        } else {
            pb = divexact(r, content_in(r, v));
        }
    }
    return normalize_leading(cont * divexact(pa, content_in(pa, v)));
}

Scalar::Scalar() : num(), den(MPoly::constant(GaussRat(1), 0)) {}

Scalar Scalar::zero(std::shared_ptr<const ParamTable> t) {
    Scalar s;
    s.tab = std::move(t);
    size_t n = s.tab ? s.tab->size() : 0;
    s.num = MPoly();
    s.den = MPoly::constant(GaussRat(1), n);
    return s;
}

Scalar Scalar::one(std::shared_ptr<const ParamTable> t) { return from(GaussRat(1), std::move(t)); }

Scalar Scalar::from(GaussRat c, std::shared_ptr<const ParamTable> t) {
    Scalar s;
    s.tab = std::move(t);
    size_t n = s.tab ? s.tab->size() : 0;
    s.num = MPoly::constant(std::move(c), n);
    s.den = MPoly::constant(GaussRat(1), n);
    return s;
}

Scalar Scalar::from_int(long v, std::shared_ptr<const ParamTable> t) {
    return from(GaussRat(v), std::move(t));
}

Scalar Scalar::unit_i(std::shared_ptr<const ParamTable> t) {
    return from(GaussRat::unit_i(), std::move(t));
}

Scalar Scalar::parameter(const std::shared_ptr<const ParamTable>& t, const std::string& name) {
    int k = t->index_of(name);
    if (k < 0) throw std::invalid_argument("undeclared parameter: " + name);
    Scalar s;
    s.tab = t;
    s.num = MPoly::variable(static_cast<size_t>(k), t->size());
    s.den = MPoly::constant(GaussRat(1), t->size());
    return s;
}

Scalar Scalar::make(std::shared_ptr<const ParamTable> t, MPoly n, MPoly d) {
    if (d.is_zero()) throw std::domain_error("zero denominator");
    Scalar s;
    s.tab = std::move(t);
    s.num = std::move(n);
    s.den = std::move(d);
    s.canonicalize();
    return s;
}

bool Scalar::is_one() const {
    return num.is_constant() && den.is_constant() && !num.is_zero() &&
           (num.constant_value() / den.constant_value()).is_one();
}

GaussRat Scalar::constant_value() const {
    if (!is_constant()) throw std::domain_error("scalar is not constant: " + str());
    if (num.is_zero()) return GaussRat(0);
    return num.constant_value() / den.constant_value();
}

void Scalar::canonicalize() {
    size_t n = tab ? tab->size() : 0;
    if (num.nvars() < n) num = num.resized(n);
    if (den.nvars() < n) den = den.resized(n);
    if (num.is_zero()) {
        den = MPoly::constant(GaussRat(1), n);
        return;
    }
    if (num.is_constant() && den.is_constant()) {
        GaussRat v = num.constant_value() / den.constant_value();
        num = MPoly::constant(std::move(v), n);
        den = MPoly::constant(GaussRat(1), n);
        return;
    }
    MPoly g = poly_gcd(num, den);
    if (!g.is_constant()) {
        num = divexact(num, g);
        den = divexact(den, g);
    }
    GaussRat lc = den.leading().second;
    if (!lc.is_one()) {
        GaussRat il = lc.inv();
        num = num.scaled(il);
        den = den.scaled(il);
    }
}

void Scalar::coerce(const Scalar& o, Scalar& a, Scalar& b) const {
    a = *this;
    b = o;
    if (!a.tab && b.tab) {
        a.tab = b.tab;
        a.num = a.num.resized(b.tab->size());
        a.den = a.den.resized(b.tab->size());
    } else if (a.tab && !b.tab) {
        b.tab = a.tab;
        b.num = b.num.resized(a.tab->size());
        b.den = b.den.resized(a.tab->size());
    } else if (a.tab && b.tab && a.tab != b.tab && a.tab->names != b.tab->names) {
        throw std::invalid_argument("scalars over different parameter tables");
    }
}

Scalar Scalar::operator-() const {
    Scalar s = *this;
    s.num = -s.num;
    return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    Scalar a, b;
    coerce(o, a, b);
    MPoly n = a.num * b.den + b.num * a.den;
    MPoly d = a.den * b.den;
    *this = make(a.tab ? a.tab : b.tab, std::move(n), std::move(d));
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
    Scalar a, b;
    coerce(o, a, b);
    *this = make(a.tab ? a.tab : b.tab, a.num * b.num, a.den * b.den);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inv(); }

Scalar Scalar::inv() const {
    if (is_zero()) throw std::domain_error("division by zero scalar");
    return make(tab, den, num);
}

Scalar Scalar::conj() const {
    Scalar s;
    s.tab = tab;
    s.num = num.conj();
    s.den = den.conj();
    s.canonicalize();
    return s;
}

Scalar Scalar::pow(long e) const {
    Scalar r = one(tab);
    Scalar base = e < 0 ? inv() : *this;
    long n = e < 0 ? -e : e;
    for (long k = 0; k < n; ++k) r *= base;
    return r;
}

Scalar Scalar::substitute(const std::string& param, const Rat& value) const {
    if (!tab) return *this;
    int k = tab->index_of(param);
    if (k < 0) return *this;
    MPoly n = num.eval(static_cast<size_t>(k), value);
    MPoly d = den.eval(static_cast<size_t>(k), value);
    if (d.is_zero())
        throw SpecializeError("denominator " + den.str(tab.get()) + " vanishes at " + param +
                              " = " + rat_to_string(value));
    return make(tab, std::move(n), std::move(d));
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_zero() && b.is_zero()) return true;
    Scalar x, y;
    a.coerce(b, x, y);
    return x.num == y.num && x.den == y.den;
}

bool operator<(const Scalar& a, const Scalar& b) {
    auto key = [](const Scalar& s) { return s.str(); };
    return key(a) < key(b);
}

std::string Scalar::str() const {
    const ParamTable* t = tab.get();
    if (den.is_constant() && den.constant_value().is_one()) {
        if (num.terms.size() <= 1) return num.str(t);
        return "(" + num.str(t) + ")";
    }
    std::string n = num.terms.size() == 1 ? num.str(t) : "(" + num.str(t) + ")";
    std::string d = den.terms.size() == 1 ? den.str(t) : "(" + den.str(t) + ")";
    return n + "/" + d;
}

}  // namespace qfb
