#pragma once

#include "qfb/hopf.hpp"
#include "qfb/linalg.hpp"

namespace qfb {

/// Bicovariant *-bimodule over the group, presented by its left-invariant
/// part: a basis theta_1..theta_n with right coaction matrix, right-module
/// functionals (one matrix per group generator) and the star matrix. The
/// braiding and the quadratic exterior algebra are derived.
class Bimodule {
public:
    const Hopf* G = nullptr;
    std::shared_ptr<PresentedAlgebra> ext;  // exterior algebra carrier, basis in degree 1
    size_t n = 0;
    std::vector<std::vector<NcPoly>> coact;  // coact[j][i] = u_ji, coaction theta_i -> sum_j theta_j (x) u_ji
    std::map<int, Mat> circ;                 // per group generator g: theta_j o g = sum_i M_ji theta_i
    Mat star_mat;                            // theta_i* = sum_j S_ij theta_j
    bool expect_trivial_kernel = false;      // classical n=1 bimodules have ker(I+tau) = 0
    size_t closure_degree = 5;               // quadratic ideal closed by linear algebra up to here

    // derived
    Mat tau;
    size_t tau_ker_dim = 0;
    std::vector<std::vector<Scalar>> im_rows;  // echelon basis of im(I+tau), pivots lenlex-largest

    const PresentedAlgebra& V() const { return *ext; }
    const PresentedAlgebra& A() const { return *G->alg; }

    /// Module matrix of a word / element of the group algebra.
    Mat circ_matrix_word(const Word& aw) const;
    Mat circ_matrix(const NcPoly& a) const;

    /// Right action of the group algebra on the exterior algebra,
    /// (eta theta) o a = (eta o a(1))(theta o a(2)), 1 o a = eps(a) 1.
    NcPoly circ_word(const Word& vw, const Word& aw) const;
    NcPoly circ_v(const NcPoly& v, const NcPoly& a) const;

    /// Multiplicative coaction on the exterior algebra, as V^ (x) A.
    Tensor coaction_word(const Word& vw) const;
    Tensor coaction_v(const NcPoly& v) const;

    /// Antilinear graded star through the star matrix.
    NcPoly star_v(const NcPoly& v) const;

    NcPoly basis_elt(size_t i) const;

    /// Fills tau from the coaction and module structure and reports the
    /// kernel dimension of I + tau.
    void compute_braiding();
    /// Installs rewrite rules for the quadratic quotient: degree-2 rules
    /// spanning im(I + tau), then echelon rules of the induced ideal slice
    /// per degree up to closure_degree, so normal forms are unique without
    /// assuming the quadratic rules alone are confluent.
    void build_exterior_rules();

    std::vector<size_t> exterior_dims(size_t upto) const;

    /// Pair index helpers for tau (row-major).
    size_t pair_index(size_t a, size_t b) const { return a * n + b; }
};

/// Rebases the bimodule: new basis theta'_i = sum_j C_ij theta_j.
Bimodule change_basis(const Bimodule& b, const Mat& C, const std::vector<std::string>& names);

struct BimoduleVerifyOptions {
    uint64_t seed = 1;
    int samples = 60;
    int max_word_len = 3;
    /// Optional declared reference braiding to compare against; mismatched
    /// entries are reported as notes without failing the check.
    const Mat* reference_tau = nullptr;
};

Report verify_bimodule(const Bimodule& b, const BimoduleVerifyOptions& opt = {});

}  // namespace qfb
