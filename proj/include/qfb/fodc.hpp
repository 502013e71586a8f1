#pragma once

#include "qfb/connection.hpp"

namespace qfb {

/// First-order differential calculus on the group, given by a right ideal
/// inside ker(eps). The left-invariant part ker(eps)/R is realized through
/// an exact linear reduction on a bounded word slice, with a declared
/// normal basis theta_1..theta_m represented by elements of ker(eps).
class Fodc {
public:
    const Bundle* P = nullptr;
    std::vector<NcPoly> ideal;
    size_t slice_len = 6;
    std::vector<std::string> basis_names;
    std::vector<NcPoly> basis_reps;  // in ker(eps)

    /// Carrier of the higher calculus on the invariant part: generators are
    /// the basis classes in degree one, relations are instance data.
    std::shared_ptr<PresentedAlgebra> gext;
    std::map<int, NcPoly> d_wedge;  // d^ values on the basis, degree-2 elements
    std::vector<Mat> delta;         // delta(theta_i) in Gamma_inv (x) Gamma_inv

    // derived
    Mat gstar;  // theta_i* = sum_j S_ij theta_j, from pi(a)* = -pi(kappa(a)*)
    std::map<int, Mat> gcirc;  // module matrices per group generator

    const PresentedAlgebra& A() const { return P->A(); }

    void build();  // echelonizes the ideal slice, derives star and module data

    size_t dim() const { return basis_names.size(); }

    /// Coordinates of pi(a) over the basis; throws if the word slice is too
    /// small or the basis does not span.
    std::vector<Scalar> pi_coords(const NcPoly& a) const;
    NcPoly pi(const NcPoly& a) const;  // as a degree-1 element of gext

    bool in_ideal(const NcPoly& a) const;  // membership within the slice

    /// Right module structure pi(b) o a = pi(b a) on basis classes.
    NcPoly circ_basis(size_t i, const NcPoly& a) const;
    Mat circ_matrix(const NcPoly& a) const;
    /// Extension to higher-degree words, (eta theta) o a = (eta o a(1))(theta o a(2)).
    NcPoly circ_word(const Word& gw, const Word& aw) const;

    /// Induced adjoint coaction varpi(pi(a)) = (pi (x) id) ad(a).
    Tensor varpi_basis(size_t i) const;  // over (gext, A)

    /// Star on the invariant part and its graded extension.
    NcPoly star_gamma(const NcPoly& g) const;

    /// Graded Leibniz extension of d^ to words of the invariant algebra.
    NcPoly d_wedge_word(const Word& gw) const;
    NcPoly d_wedge_apply(const NcPoly& g) const;

    /// (pi (x) pi) of the coproduct; the candidate embedded differential. Not
    /// well defined for every calculus: use delta_from_coproduct to probe.
    std::vector<Scalar> pi_pi_coproduct(const NcPoly& a) const;  // coords over basis x basis

    NcPoly rep_combination(const std::vector<Scalar>& coords) const;

private:
    std::vector<Word> slice_words_;
    std::map<Word, size_t> word_pos_;
    std::vector<std::vector<Scalar>> echelon_;      // ideal slice rows, reduced
    std::vector<size_t> pivots_;
    std::vector<std::vector<Scalar>> rep_residuals_;
    std::map<Word, std::vector<Scalar>> word_pi_;   // pi coordinates per slice word

    std::vector<Scalar> to_vector(const NcPoly& a) const;
    std::vector<Scalar> reduce_vector(std::vector<Scalar> v) const;
    std::vector<Scalar> solve_coords(const NcPoly& a) const;
};

/// Builds delta(theta_i) = (pi (x) pi) phi(rep_i) and checks it vanishes on
/// the ideal generators; returns the witness generator on failure.
std::optional<std::string> delta_from_coproduct(const Fodc& f, std::vector<Mat>& out);

struct IdealVerifyOptions {
    uint64_t seed = 1;
    /// Maximality probe bound; 0 disables the probe.
    size_t maximality_bound = 0;
    std::vector<const KerEpsMap*> annihilating_maps;  // supplied rho and chi
};

/// The five calculus invariants plus the optional maximality probe, and the
/// consistency checks of the higher calculus data.
Report verify_ideal(const Fodc& f, const IdealVerifyOptions& opt = {});

}  // namespace qfb
