#pragma once

#include <random>

#include "qfb/horizontal.hpp"

namespace qfb {

/// Deterministic sample generator for property checks.
struct Sampler {
    std::mt19937_64 rng;

    explicit Sampler(uint64_t seed) : rng(seed) {}

    long small_int() { return static_cast<long>(rng() % 7) - 3; }

    Scalar scalar(const std::shared_ptr<const ParamTable>& tab) {
        GaussRat g(Rat(small_int()), Rat((rng() % 3 == 0) ? small_int() : 0));
        return Scalar::from(g, tab);
    }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[rng() % v.size()];
    }

    NcPoly poly(const PresentedAlgebra& alg, const std::vector<Word>& words, int nterms) {
        NcPoly p(&alg);
        for (int k = 0; k < nterms; ++k) p.insert(pick(words), scalar(alg.params));
        return alg.normal_form(p);
    }

    /// Random homogeneous horizontal element of the given exterior degree.
    Hor hor(const Bundle& P, const std::vector<Word>& bwords, size_t vdeg, int nterms) {
        auto vwords = P.V->ext->normal_words(vdeg);
        Hor h(&P);
        if (vwords.empty()) return h;
        for (int k = 0; k < nterms; ++k)
            h.insert_reduced(pick(bwords), pick(vwords), scalar(P.B->params));
        return h;
    }
};

}  // namespace qfb
