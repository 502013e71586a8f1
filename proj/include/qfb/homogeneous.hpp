#pragma once

#include "qfb/torsion.hpp"

namespace qfb {

/// Quantum-group inclusion data: the big group H with a first-order
/// calculus, the projection onto the structure group, a splitting of the
/// invariant part, and the derived framed bundle over the quotient.
struct Homogeneous {
    const Hopf* H = nullptr;  // primed group
    const Hopf* G = nullptr;
    std::map<int, NcPoly> sigma;          // per H-generator, image in A
    std::map<int, NcPoly> sigma_section;  // per A-generator, a lift in A'
    bool phi_bicovariant = false;

    // invariant part of the calculus on H
    std::shared_ptr<PresentedAlgebra> phi_ext;  // basis carrier, degree-1 generators
    std::map<int, NcPoly> pi_prime_gen;         // per H-generator
    std::map<int, Mat> phi_circ;                // module matrices per H-generator
    Mat phi_star;
    std::vector<size_t> L_idx, Lperp_idx;  // splitting

    std::vector<NcPoly> K_lifts;  // c_i with pi'(c_i) = theta_i, in the fixed-point algebra
    std::vector<std::string> base_gens;

    // derived by build_derived()
    Bimodule bim;     // the bimodule carried by L
    Bundle bundle;    // total algebra = A', F = (id (x) sigma) phi'
    std::shared_ptr<CoordinateFields> fields;
    HorMap nabla;

    size_t ldim() const { return L_idx.size(); }

    NcPoly sigma_apply(const NcPoly& q) const;         // into A
    NcPoly pi_prime_word(const Word& w) const;         // eps-derivation extension
    NcPoly pi_prime(const NcPoly& q) const;
    Tensor ad_star(const NcPoly& q) const;             // over (A', A)
    Tensor phi_fix_action(const NcPoly& q) const;      // (id (x) sigma) phi'
    bool in_K(const NcPoly& q) const;
    NcPoly p_L(const NcPoly& phi_elt) const;           // projection onto L
    /// pi_L as an element of the L-bimodule carrier.
    NcPoly pi_L(const NcPoly& q) const;

    /// Builds the bimodule on L, the bundle, and the frame structure
    /// nabla(b (x) v) = sum b_k (x) pi_L(q_k) v.
    void build_derived();
};

struct HomogeneousVerifyOptions {
    uint64_t seed = 1;
    size_t word_len = 3;
    /// Ideal generators of the induced calculus with their declared lifts.
    std::vector<std::pair<NcPoly, NcPoly>> ideal_lifts;  // (r in A, q in A' with sigma(q) = r)
};

Report verify_homogeneous(const Homogeneous& h, const HomogeneousVerifyOptions& opt = {});

struct CoordinateElements {
    std::vector<NcPoly> c;  // one per L-basis class
    CoordinateSpan span;    // the induced b, f family
};

/// Finds c_i in the fixed-point slice with ad_*(c_i) = sum c_j (x) u_ji and
/// pi'(c_i) = theta_i, then solves sum_a b_ai E(f_a) = 1 (x) c_i for the
/// b family over the declared f candidates. Returns nullopt with a
/// diagnostic when no solution exists within the slices.
std::optional<CoordinateElements> coordinate_elements(const Homogeneous& h, size_t k_slice,
                                                      size_t b_slice,
                                                      const std::vector<NcPoly>& f_candidates,
                                                      std::string* diag = nullptr);

}  // namespace qfb
