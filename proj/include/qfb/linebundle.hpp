#pragma once

#include "qfb/fodc.hpp"

namespace qfb {

/// Framed line bundle over a presented base: the total algebra is graded by
/// the coaction weight, the grading automorphism scales degree n by
/// lambda^n, and the frame is determined by the single lowering map
/// X = X_psi through nabla(b) = X(b) (x) psi + lambda X* L(b) (x) psi*.
struct LineBundleData {
    const Bundle* P = nullptr;
    const CoordinateFields* X = nullptr;  // frame fields in the complex basis
    Scalar lambda;
    Scalar coefficient;                   // X(xi)
    std::map<int, NcPoly> gamma;          // base automorphism on generators
    std::map<int, NcPoly> gamma_inv;

    /// Coaction weight of a normal word; the word must be homogeneous.
    int weight(const Word& w) const;
    NcPoly L_apply(const NcPoly& b, int power = 1) const;  // L^power
    NcPoly gamma_apply(const NcPoly& b, long power) const;  // gamma^power on base elements
    NcPoly X_apply(const NcPoly& b) const;       // the lowering map
    NcPoly X_star_apply(const NcPoly& b) const;  // X*(b) = X(b*)*
};

Report verify_line_bundle(const LineBundleData& lb, const CheckConfig& cfg = {});

/// Exact comparison of the extracted curvature with the geometric-sum
/// formulas on u^{+-n}, n <= n_max, and the closed-form value on u.
Report curvature_series_check(const LineBundleData& lb, const HorMap& nabla,
                              std::shared_ptr<const ReductionData> red, size_t n_max);

/// Checks the curvature is a scalar multiple of psi psi*, then verifies the
/// one-dimensional minimal calculus with the standard ideal.
Report minimal_calculus_so2(const LineBundleData& lb, const HorMap& nabla,
                            std::shared_ptr<const ReductionData> red, const Fodc& fodc,
                            size_t maximality_bound);

/// Splits a degree-1 base form into holomorphic and antiholomorphic parts;
/// throws when the input is not invariant.
std::pair<Hor, Hor> holomorphic_split(const Hor& x);

}  // namespace qfb
