#include "qfb/expr.hpp"

#include <cctype>

namespace qfb {

namespace {

// The parser is generic over the value type: scalars, algebra elements and
// horizontal elements share the grammar, only the symbol resolution and the
// product differ.
template <class V>
struct Ops {
    std::function<V(const Scalar&)> from_scalar;
    std::function<std::optional<V>(const std::string&)> from_symbol;
    std::function<V(const V&, const V&)> mul;
    std::function<V(const V&, const V&)> add;
    std::function<V(const V&)> neg;
    std::function<std::optional<Scalar>(const V&)> as_scalar;  // for division
    std::function<V(const V&, long)> pow;
};

template <class V>
class Parser {
public:
    Parser(std::string text, const Ops<V>& ops, std::shared_ptr<const ParamTable> tab,
           const std::map<std::string, Rat>* values)
        : text_(std::move(text)), ops_(ops), tab_(std::move(tab)), values_(values) {}

    V parse() {
        V v = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return v;
    }

private:
    std::string text_;
    const Ops<V>& ops_;
    std::shared_ptr<const ParamTable> tab_;
    const std::map<std::string, Rat>* values_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool eat(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    V expr() {
        V v = eat('-') ? ops_.neg(term()) : term();
        for (;;) {
            if (eat('+')) {
                v = ops_.add(v, term());
            } else if (eat('-')) {
                v = ops_.add(v, ops_.neg(term()));
            } else {
                return v;
            }
        }
    }

    bool atom_ahead() {
        skip_ws();
        if (pos_ >= text_.size()) return false;
        char c = text_[pos_];
        return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_';
    }

    V term() {
        V v = factor();
        for (;;) {
            skip_ws();
            if (eat('*')) {
                v = ops_.mul(v, factor());
            } else if (eat('/')) {
                V d = factor();
                auto s = ops_.as_scalar(d);
                if (!s || s->is_zero())
                    throw ParseError("division requires a nonzero scalar divisor", pos_);
                v = ops_.mul(v, ops_.from_scalar(s->inv()));
            } else if (atom_ahead()) {
                v = ops_.mul(v, factor());
            } else {
                return v;
            }
        }
    }

    V factor() {
        V v = primary();
        skip_ws();
        if (eat('^')) {
            skip_ws();
            bool negexp = eat('-');
            size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (start == pos_) throw ParseError("expected an exponent", pos_);
            long e = std::stol(text_.substr(start, pos_ - start));
            if (negexp) {
                auto s = ops_.as_scalar(v);
                if (!s) throw ParseError("negative powers need a scalar base", pos_);
                return ops_.from_scalar(s->pow(-e));
            }
            return ops_.pow(v, e);
        }
        return v;
    }

    V primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        char ch = text_[pos_];
        if (ch == '(') {
            ++pos_;
            V v = expr();
            if (!eat(')')) throw ParseError("missing closing parenthesis", pos_);
            return v;
        }
        if (ch == '-') {
            ++pos_;
            return ops_.neg(factor());
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            Int n(text_.substr(start, pos_ - start));
            return ops_.from_scalar(Scalar::from(GaussRat(Rat(n)), tab_));
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name = text_.substr(start, pos_ - start);
            // a directly attached star belongs to the symbol when declared
            if (pos_ < text_.size() && text_[pos_] == '*') {
                if (ops_.from_symbol(name + "*")) {
                    ++pos_;
                    name += "*";
                }
            }
            if (name == "i") return ops_.from_scalar(Scalar::unit_i(tab_));
            if (auto v = ops_.from_symbol(name)) return *v;
            if (tab_ && tab_->index_of(name) >= 0) {
                if (values_) {
                    auto it = values_->find(name);
                    if (it != values_->end())
                        return ops_.from_scalar(Scalar::from(GaussRat(it->second), tab_));
                }
                return ops_.from_scalar(Scalar::parameter(tab_, name));
            }
            throw ParseError("unknown symbol " + name, start);
        }
        throw ParseError(std::string("unexpected character '") + ch + "'", pos_);
    }
};

template <class V>
V pow_by_mul(const Ops<V>& ops, const V& unit, const V& v, long e) {
    if (e < 0) throw std::invalid_argument("negative power of an algebra element");
    V out = unit;
    for (long k = 0; k < e; ++k) out = ops.mul(out, v);
    return out;
}

}  // namespace

NcPoly parse_element(const PresentedAlgebra& alg, const std::string& text,
                     const std::map<std::string, Rat>* values) {
    Ops<NcPoly> ops;
    ops.from_scalar = [&](const Scalar& s) { return alg.unit().scaled(s); };
    ops.from_symbol = [&](const std::string& n) -> std::optional<NcPoly> {
        int id = alg.gen_id(n);
        if (id < 0) return std::nullopt;
        return alg.generator(n);
    };
    ops.mul = [](const NcPoly& a, const NcPoly& b) { return a * b; };
    ops.add = [](const NcPoly& a, const NcPoly& b) { return a + b; };
    ops.neg = [](const NcPoly& a) { return -a; };
    ops.as_scalar = [&](const NcPoly& a) -> std::optional<Scalar> {
        if (a.is_zero()) return Scalar::zero(alg.params);
        if (a.terms.size() == 1 && a.terms.begin()->first.empty()) return a.terms.begin()->second;
        return std::nullopt;
    };
    ops.pow = [&](const NcPoly& a, long e) { return pow_by_mul(ops, alg.unit(), a, e); };
    Parser<NcPoly> p(text, ops, alg.params, values);
    return alg.normal_form(p.parse());
}

Scalar parse_scalar(const std::shared_ptr<const ParamTable>& tab, const std::string& text,
                    const std::map<std::string, Rat>* values) {
    Ops<Scalar> ops;
    ops.from_scalar = [](const Scalar& s) { return s; };
    ops.from_symbol = [](const std::string&) -> std::optional<Scalar> { return std::nullopt; };
    ops.mul = [](const Scalar& a, const Scalar& b) { return a * b; };
    ops.add = [](const Scalar& a, const Scalar& b) { return a + b; };
    ops.neg = [](const Scalar& a) { return -a; };
    ops.as_scalar = [](const Scalar& a) -> std::optional<Scalar> { return a; };
    ops.pow = [](const Scalar& a, long e) { return a.pow(e); };
    Parser<Scalar> p(text, ops, tab, values);
    return p.parse();
}

Hor parse_hor(const Bundle& P, const std::string& text, const std::map<std::string, Rat>* values) {
    Ops<Hor> ops;
    ops.from_scalar = [&](const Scalar& s) { return Hor::unit(&P).scaled(s); };
    ops.from_symbol = [&](const std::string& n) -> std::optional<Hor> {
        if (P.B->gen_id(n) >= 0) return Hor::from_b(&P, P.B->generator(n));
        if (P.V->ext->gen_id(n) >= 0) return Hor::from_v(&P, P.V->ext->generator(n));
        return std::nullopt;
    };
    ops.mul = [](const Hor& a, const Hor& b) { return hor_mul(a, b); };
    ops.add = [](const Hor& a, const Hor& b) { return a + b; };
    ops.neg = [](const Hor& a) { return -a; };
    ops.as_scalar = [&](const Hor& a) -> std::optional<Scalar> {
        if (a.is_zero()) return Scalar::zero(P.B->params);
        if (a.terms.size() == 1 && a.terms.begin()->first.first.empty() &&
            a.terms.begin()->first.second.empty())
            return a.terms.begin()->second;
        return std::nullopt;
    };
    ops.pow = [&](const Hor& a, long e) { return pow_by_mul(ops, Hor::unit(&P), a, e); };
    Parser<Hor> p(text, ops, P.B->params, values);
    return p.parse();
}

}  // namespace qfb
