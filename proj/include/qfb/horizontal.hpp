#pragma once

#include "qfb/bimodule.hpp"

namespace qfb {

/// Quantum principal bundle data: total algebra with coaction of the group
/// and the declared generating set of the base subalgebra.
struct Bundle {
    const Hopf* G = nullptr;
    const Bimodule* V = nullptr;
    std::shared_ptr<PresentedAlgebra> B;
    std::map<int, Tensor> F_gen;          // F(g) in B (x) A per generator
    std::vector<std::string> base_gens;   // generators of the base subalgebra

    const PresentedAlgebra& total() const { return *B; }
    const PresentedAlgebra& A() const { return *G->alg; }

    Tensor F_word(const Word& w) const;   // multiplicative extension
    Tensor F_poly(const NcPoly& p) const;
    /// Base membership decided by normal-forming F(v) - v (x) 1.
    bool is_base(const NcPoly& p) const;
    NcPoly base_generator(size_t k) const;
};

/// Element of the horizontal algebra B (x) V^, kept in left-normal form.
class Hor {
public:
    const Bundle* P = nullptr;
    std::map<std::pair<Word, Word>, Scalar> terms;

    Hor() = default;
    explicit Hor(const Bundle* p) : P(p) {}

    static Hor unit(const Bundle* p);
    static Hor from_b(const Bundle* p, const NcPoly& b);
    static Hor from_v(const Bundle* p, const NcPoly& v);
    static Hor from_parts(const Bundle* p, const NcPoly& b, const NcPoly& v);

    bool is_zero() const { return terms.empty(); }
    void insert(const Word& bw, const Word& vw, const Scalar& c);
    /// Inserts with reduction of both legs.
    void insert_reduced(const Word& bw, const Word& vw, const Scalar& c);

    Hor operator-() const;
    Hor& operator+=(const Hor& o);
    Hor& operator-=(const Hor& o);
    friend Hor operator+(Hor a, const Hor& b) { return a += b; }
    friend Hor operator-(Hor a, const Hor& b) { return a -= b; }
    Hor scaled(const Scalar& c) const;

    friend bool operator==(const Hor& a, const Hor& b) { return a.terms == b.terms; }
    friend bool operator!=(const Hor& a, const Hor& b) { return !(a == b); }

    /// Degree of the exterior leg; element must be homogeneous.
    int degree() const;
    bool is_homogeneous() const;
    Hor homogeneous_part(int d) const;

    std::string str() const;
};

/// Product of Lemma form (q (x) theta)(b (x) eta) = sum q b_k (x) (theta o c_k) eta.
Hor hor_mul(const Hor& x, const Hor& y);
/// Star (b (x) theta)* = sum b_k* (x) (theta* o c_k*).
Hor hor_star(const Hor& x);

/// Element of hor_P (x) A carrying coaction values.
class HorA {
public:
    const Bundle* P = nullptr;
    std::map<std::tuple<Word, Word, Word>, Scalar> terms;

    HorA() = default;
    explicit HorA(const Bundle* p) : P(p) {}

    static HorA of(const Hor& x);  // x (x) 1

    void insert(const Word& bw, const Word& vw, const Word& aw, const Scalar& c);
    bool is_zero() const { return terms.empty(); }

    HorA operator-() const;
    HorA& operator+=(const HorA& o);
    HorA& operator-=(const HorA& o);
    friend HorA operator+(HorA a, const HorA& b) { return a += b; }
    friend HorA operator-(HorA a, const HorA& b) { return a -= b; }
    HorA scaled(const Scalar& c) const;

    friend bool operator==(const HorA& a, const HorA& b) { return a.terms == b.terms; }
    friend bool operator!=(const HorA& a, const HorA& b) { return !(a == b); }

    /// Applies a linear map to the horizontal leg.
    HorA map_hor(const std::function<Hor(const Hor&)>& f) const;
    /// Applies a functional to the group leg and drops it.
    Hor contract_a(const std::function<Scalar(const Word&)>& f) const;

    std::string str() const;
};

/// Algebra product on hor_P (x) A (group leg has degree zero).
HorA hor_a_mul(const HorA& x, const HorA& y);

/// The coaction F^ extending F and the bimodule coaction.
HorA f_wedge(const Hor& x);

/// Whether F^(x) = x (x) 1.
bool is_f_invariant(const Hor& x);

/// p0 = (id (x) h) F^, the projection onto the base-form subalgebra.
Hor base_project(const Hor& x);

/// Basis of the F^-invariant subspace of the slice spanned by
/// (normal B-words of length <= blen) x (normal V-words of degree vdeg).
std::vector<Hor> invariant_slice(const Bundle& P, size_t blen, size_t vdeg);

/// All slice basis elements (b-word (x) v-word) for sampling and solving.
std::vector<Hor> hor_slice(const Bundle& P, size_t blen, size_t vdeg);

/// Structural bundle checks: the coaction is a *-homomorphism respecting
/// the relations, the comodule axioms hold, and declared base generators
/// are fixed points.
Report verify_bundle(const Bundle& P, uint64_t seed = 1, int samples = 40, size_t blen = 3);

}  // namespace qfb
