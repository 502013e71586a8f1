#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qfb/scalar.hpp"

namespace qfb {

/// A word over generator ids, one byte per letter. The empty word is the unit.
using Word = std::string;

inline Word word_of(std::initializer_list<int> ids) {
    Word w;
    for (int k : ids) w.push_back(static_cast<char>(k));
    return w;
}

struct Generator {
    std::string name;
    int degree = 0;
    int star = -1;  // id of the star partner, -1 if undeclared
};

class PresentedAlgebra;

/// Linear combination of normal words with Scalar coefficients.
class NcPoly {
public:
    const PresentedAlgebra* alg = nullptr;
    std::map<Word, Scalar> terms;

    NcPoly() = default;
    explicit NcPoly(const PresentedAlgebra* a) : alg(a) {}

    bool is_zero() const { return terms.empty(); }
    void insert(const Word& w, const Scalar& c);

    NcPoly operator-() const;
    NcPoly& operator+=(const NcPoly& o);
    NcPoly& operator-=(const NcPoly& o);
    friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
    friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
    friend NcPoly operator*(const NcPoly& a, const NcPoly& b);
    NcPoly scaled(const Scalar& c) const;

    friend bool operator==(const NcPoly& a, const NcPoly& b) { return a.terms == b.terms; }
    friend bool operator!=(const NcPoly& a, const NcPoly& b) { return !(a == b); }

    /// Picks out the component whose words have the given total degree.
    NcPoly homogeneous_part(int degree) const;
    int degree() const;  // degree of a homogeneous element, 0 for 0

    std::string str() const;
};

struct RewriteRule {
    Word lhs;
    NcPoly rhs;
};

struct OverlapReport {
    Word word;
    size_t rule_a = 0, rule_b = 0;
    bool joins = false;
    std::string left_nf, right_nf;
};

struct ConfluenceReport {
    bool pass = true;
    std::vector<OverlapReport> overlaps;
    std::vector<std::string> star_failures;  // rules whose star image is not derivable
};

/// A *-algebra presented by generators and a rewriting system that is
/// strictly decreasing for the length-lexicographic word order.
class PresentedAlgebra {
public:
    std::string label;
    std::shared_ptr<const ParamTable> params;
    std::vector<Generator> gens;
    std::vector<RewriteRule> rules;
    size_t step_budget = 200000;

    PresentedAlgebra() = default;
    PresentedAlgebra(std::string lbl, std::shared_ptr<const ParamTable> tab)
        : label(std::move(lbl)), params(std::move(tab)) {}

    int add_generator(const std::string& name, int degree = 0);
    void set_star_pair(const std::string& a, const std::string& b);
    /// Validates that every word of rhs is lenlex-smaller than lhs.
    void add_rule(Word lhs, NcPoly rhs);

    int gen_id(const std::string& name) const;  // -1 if absent
    const Generator& gen(int id) const { return gens[static_cast<size_t>(id)]; }
    size_t size() const { return gens.size(); }

    bool lenlex_less(const Word& a, const Word& b) const;
    int word_degree(const Word& w) const;

    Scalar s_zero() const { return Scalar::zero(params); }
    Scalar s_one() const { return Scalar::one(params); }

    NcPoly zero() const { return NcPoly(this); }
    NcPoly unit() const;
    NcPoly monomial(const Word& w, const Scalar& c) const;
    NcPoly generator(const std::string& name) const;

    /// Fully reduces every word of p; idempotent. Throws when the step
    /// budget is exhausted, naming the offending word.
    NcPoly normal_form(const NcPoly& p) const;
    Word star_word_raw(const Word& w, int& sign) const;  // no reduction
    /// Antilinear graded-antimultiplicative star using declared partners.
    NcPoly star(const NcPoly& p) const;

    /// Enumerates critical pairs up to max_len and checks joinability.
    /// When check_star is set, also requires star images of rules to reduce
    /// to zero (closure of the rule set under *).
    ConfluenceReport check_confluence(size_t max_len, bool check_star = true) const;

    /// All irreducible words of exactly the given length.
    std::vector<Word> normal_words(size_t length) const;
    /// All irreducible words of length <= bound (including the unit).
    std::vector<Word> normal_words_upto(size_t bound) const;

    std::string word_str(const Word& w) const;
    Word parse_word(const std::vector<std::string>& names) const;

private:
    bool reduce_once(const Word& w, size_t& rule, size_t& pos) const;
};

/// Test oracle: explores every one-step reduction order and collects the
/// set of irreducible results. Order-independence means a singleton.
std::vector<NcPoly> all_normal_forms(const PresentedAlgebra& alg, const NcPoly& p,
                                     size_t budget = 20000);

}  // namespace qfb
