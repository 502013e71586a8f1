#pragma once

#include "qfb/report.hpp"
#include "qfb/tensor.hpp"

namespace qfb {

class HaarError : public std::runtime_error {
public:
    explicit HaarError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Corep {
    std::string name;
    size_t dim = 0;
    std::vector<std::vector<NcPoly>> entries;  // entries[i][j] = u_ij
    bool unitary = true;
};

/// Presented Hopf *-algebra with structure maps on generators, a Haar
/// functional given on normal words, and named corepresentations.
class Hopf {
public:
    std::shared_ptr<PresentedAlgebra> alg;
    std::map<int, Tensor> cop_gen;
    std::map<int, Scalar> eps_gen;
    std::map<int, NcPoly> kappa_gen;
    std::map<int, NcPoly> kappa_inv_gen;
    std::optional<Scalar> haar_default;
    std::map<Word, Scalar> haar_table;
    std::vector<Corep> coreps;

    const PresentedAlgebra& A() const { return *alg; }

    Tensor coproduct(const NcPoly& p) const;
    Tensor coproduct_word(const Word& w) const;  // raw letters, no prior reduction
    /// Iterated coproduct with k slots (k >= 1).
    Tensor sweedler(const NcPoly& p, size_t k) const;
    Scalar counit(const NcPoly& p) const;
    Scalar counit_word(const Word& w) const;
    NcPoly antipode(const NcPoly& p) const;
    NcPoly antipode_inv(const NcPoly& p) const;
    Scalar haar_word(const Word& w) const;
    Scalar haar(const NcPoly& p) const;

    /// ad(a) = a(2) (x) kappa(a(1)) a(3), the adjoint coaction on the algebra.
    Tensor adjoint_action(const NcPoly& p) const;

    const Corep* corep(const std::string& name) const;
};

/// Componentwise star on a tensor of *-algebras (antilinear).
Tensor tensor_star(const Tensor& t);

struct VerifyOptions {
    uint64_t seed = 1;
    int samples = 100;
    int max_word_len = 4;
};

/// Itemized verification of the Hopf *-algebra axioms, Haar invariance and
/// corepresentation identities, with counterexample witnesses on failure.
Report verify_group_data(const Hopf& h, const VerifyOptions& opt = {});

}  // namespace qfb
