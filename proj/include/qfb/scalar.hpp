#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qfb {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

std::string rat_to_string(const Rat& r);

/// Gaussian rational a + b*i with exact components.
struct GaussRat {
    Rat re;
    Rat im;

    GaussRat() = default;
    GaussRat(long n) : re(n) {}
    GaussRat(Rat r) : re(std::move(r)) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat unit_i() { return GaussRat(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }
    GaussRat conj() const { return GaussRat(re, -im); }
    GaussRat inv() const;

    GaussRat operator-() const { return GaussRat(-re, -im); }
    GaussRat& operator+=(const GaussRat& o);
    GaussRat& operator-=(const GaussRat& o);
    GaussRat& operator*=(const GaussRat& o);
    GaussRat& operator/=(const GaussRat& o) { return *this *= o.inv(); }

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    std::string str() const;
};

/// Declared formal parameters (lambda, mu, c, ...). All are fixed by
/// conjugation; they stand for real constants.
struct ParamTable {
    std::vector<std::string> names;

    int index_of(const std::string& n) const {
        for (size_t k = 0; k < names.size(); ++k)
            if (names[k] == n) return static_cast<int>(k);
        return -1;
    }
    size_t size() const { return names.size(); }
};

using Monomial = std::vector<uint32_t>;

/// Graded lexicographic order; total degree first, then lex on exponents.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial over the Gaussian rationals.
class MPoly {
public:
    std::map<Monomial, GaussRat, GrlexLess> terms;

    MPoly() = default;
    static MPoly constant(GaussRat c, size_t nvars);
    static MPoly variable(size_t var, size_t nvars, uint32_t exp = 1);

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const;
    GaussRat constant_value() const;  // requires is_constant()
    size_t nvars() const { return terms.empty() ? 0 : terms.begin()->first.size(); }

    /// Leading (grlex-greatest) term.
    const std::pair<const Monomial, GaussRat>& leading() const { return *terms.rbegin(); }

    MPoly resized(size_t nvars) const;

    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    MPoly scaled(const GaussRat& c) const;
    MPoly conj() const;

    int degree_in(size_t var) const;
    /// Partial evaluation of one variable at a rational point.
    MPoly eval(size_t var, const Rat& value) const;

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms == b.terms; }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    std::string str(const ParamTable* tab) const;

    void insert_term(Monomial m, GaussRat c);
};

/// Exact quotient a/b; throws if b does not divide a.
MPoly divexact(const MPoly& a, const MPoly& b);
/// Monic multivariate gcd (primitive PRS).
MPoly poly_gcd(const MPoly& a, const MPoly& b);

class SpecializeError : public std::runtime_error {
public:
    explicit SpecializeError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Rational function in the declared parameters over the Gaussian
/// rationals. Kept canonical at all times: gcd-reduced, denominator
/// monic in grlex order, zero stored as 0/1. Equality is syntactic.
class Scalar {
public:
    std::shared_ptr<const ParamTable> tab;
    MPoly num;
    MPoly den;

    Scalar();  // zero with no table
    static Scalar zero(std::shared_ptr<const ParamTable> t = nullptr);
    static Scalar one(std::shared_ptr<const ParamTable> t = nullptr);
    static Scalar from(GaussRat c, std::shared_ptr<const ParamTable> t = nullptr);
    static Scalar from_int(long n, std::shared_ptr<const ParamTable> t = nullptr);
    static Scalar unit_i(std::shared_ptr<const ParamTable> t = nullptr);
    static Scalar parameter(const std::shared_ptr<const ParamTable>& t, const std::string& name);
    static Scalar make(std::shared_ptr<const ParamTable> t, MPoly n, MPoly d);

    bool is_zero() const { return num.is_zero(); }
    bool is_one() const;
    bool is_constant() const { return num.is_constant() && den.is_constant(); }
    GaussRat constant_value() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    Scalar inv() const;
    Scalar conj() const;
    Scalar pow(long e) const;

    /// Substitutes one parameter by an exact rational. Throws
    /// SpecializeError when a denominator vanishes at that value.
    Scalar substitute(const std::string& param, const Rat& value) const;

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    /// Order for use as a map key; not meaningful arithmetically.
    friend bool operator<(const Scalar& a, const Scalar& b);

    std::string str() const;

private:
    void canonicalize();
    void coerce(const Scalar& o, Scalar& a, Scalar& b) const;
};

}  // namespace qfb
