#pragma once

#include "qfb/algebra.hpp"

namespace qfb {

/// Tensor product of degree-zero presented algebras. Each term is one word
/// per slot; slots never flatten into each other.
class Tensor {
public:
    std::vector<const PresentedAlgebra*> algs;
    std::map<std::vector<Word>, Scalar> terms;

    Tensor() = default;
    explicit Tensor(std::vector<const PresentedAlgebra*> a) : algs(std::move(a)) {}

    static Tensor unit(std::vector<const PresentedAlgebra*> a);
    static Tensor of(const NcPoly& p);  // single slot

    size_t slots() const { return algs.size(); }
    bool is_zero() const { return terms.empty(); }

    void insert(std::vector<Word> key, const Scalar& c);

    Tensor operator-() const;
    Tensor& operator+=(const Tensor& o);
    Tensor& operator-=(const Tensor& o);
    friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
    friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
    /// Slotwise product; slots must agree.
    friend Tensor operator*(const Tensor& a, const Tensor& b);
    Tensor scaled(const Scalar& c) const;

    /// Tensor product: concatenates slots.
    Tensor outer(const Tensor& o) const;

    /// Replaces slot content through a linear map given on normal words.
    Tensor map_slot(size_t slot, const std::function<NcPoly(const Word&)>& f) const;
    /// Replaces one slot by several; f returns a tensor over the new slots.
    Tensor expand_slot(size_t slot, const std::vector<const PresentedAlgebra*>& repl,
                       const std::function<Tensor(const Word&)>& f) const;
    /// Applies a scalar functional to one slot and drops it.
    Tensor contract_slot(size_t slot, const std::function<Scalar(const Word&)>& f) const;
    /// Multiplies two slots together inside the algebra of slot `a`
    /// (the slots must share that algebra); result replaces slot a, slot b
    /// disappears. Requires b = a + 1.
    Tensor merge_slots(size_t a) const;

    NcPoly slot_as_poly(size_t slot) const;  // requires all other slots trivial
    Tensor normalized() const;

    friend bool operator==(const Tensor& a, const Tensor& b) { return a.terms == b.terms; }
    friend bool operator!=(const Tensor& a, const Tensor& b) { return !(a == b); }

    std::string str() const;
};

}  // namespace qfb
