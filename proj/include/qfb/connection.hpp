#pragma once

#include "qfb/horizontal.hpp"
#include "qfb/sampling.hpp"

namespace qfb {

/// Horizontal coordinate vector fields: images X_i(g) on total-algebra
/// generators, one family per basis direction of V. Extension to words uses
/// the twisted Leibniz rule X_i(qb) = q X_i(b) + sum mu_ji(c_k) X_j(q) b_k.
struct CoordinateFields {
    const Bundle* P = nullptr;
    std::vector<std::map<int, NcPoly>> images;  // [i][generator id]

    NcPoly apply_word(size_t i, const Word& w) const;
    NcPoly apply(size_t i, const NcPoly& b) const;
};

/// A linear map on the horizontal algebra; values are immutable closures
/// over instance data.
using HorMap = std::function<Hor(const Hor&)>;

/// The frame action nabla(b (x) w) = sum_i X_i(b) (x) theta_i w.
HorMap frame_map(const Bundle* P, std::shared_ptr<const CoordinateFields> X);

/// Dual pairs used to reduce maps on the group algebra: for each group
/// generator g a family (q_a, p_a) with F(p_a) = p_a (x) g and
/// sum_a q_a p_a = 1.
struct ReductionData {
    const Bundle* P = nullptr;
    std::map<int, std::vector<std::pair<NcPoly, NcPoly>>> pairs;
};

Report verify_reduction(const ReductionData& rd);

/// Linear map from the group algebra into hor_P vanishing on the unit,
/// seeded on generators and extended along normal words by
/// f(a g) = sum_a q_a f(a) p_a + eps(a) f(g). Curvature and vertical maps
/// are both of this shape.
class KerEpsMap {
public:
    const Bundle* P = nullptr;
    std::shared_ptr<const ReductionData> red;
    std::map<int, Hor> seeds;

    Hor apply_word(const Word& w) const;
    Hor apply(const NcPoly& a) const;
};

/// The vertical displacement E determined by chi through
/// E(phi) = -(-1)^{deg phi} sum phi_k chi(c_k).
HorMap vertical_from_chi(const Bundle* P, std::shared_ptr<const KerEpsMap> chi);

HorMap zero_map(const Bundle* P);
HorMap sum_map(HorMap a, HorMap b);
HorMap scale_map(HorMap a, Scalar s);
/// D*(phi) = D(phi*)*.
HorMap star_conj_map(const Bundle* P, HorMap a);

/// Torsion components T^i = D(1 (x) theta_i).
std::vector<Hor> torsion_components(const Bundle& P, const HorMap& D);

struct CheckConfig {
    uint64_t seed = 1;
    int samples = 40;
    size_t blen = 2;
    size_t max_vdeg = 2;
};

Report verify_coordinate_fields(const CoordinateFields& X);

/// Coordinate spanning family of Definition form: f_alpha in the base,
/// b[alpha][i] with 1 (x) theta_i = sum_alpha b_ai nabla(f_alpha).
struct CoordinateSpan {
    std::vector<NcPoly> f;
    std::vector<std::vector<NcPoly>> b;
};

/// Itemized frame-structure verification: antiderivation, hermiticity,
/// covariance, vanishing on the generated horizontal subalgebra, and the
/// coordinate-spanning identity when a family is supplied.
Report verify_frame(const Bundle& P, const HorMap& D, const CoordinateSpan* coord,
                    const ReductionData* red, const CheckConfig& cfg = {});

/// Checks d_M(f) D(b) + D[d_M(f) b] = 0 on generator pairs; equivalent to
/// the graded Leibniz rule and to the existence of the curvature map.
Report leibniz_criterion(const Bundle& P, const HorMap& D, const HorMap& frame,
                         const CheckConfig& cfg = {});

/// rho_D(g) = -sum_a q_a D^2(p_a) on generators, with the product extension
/// rho(a g) = sum q rho(a) p + eps(a) rho(g).
KerEpsMap curvature_extract(const Bundle& P, const HorMap& D,
                            std::shared_ptr<const ReductionData> red);

/// Verifies D^2(phi) = -sum phi_k rho(c_k) on samples.
Report curvature_resubstitution(const Bundle& P, const HorMap& D, const KerEpsMap& rho,
                                const CheckConfig& cfg = {});

/// The four curvature identities.
Report curvature_identities(const Bundle& P, const HorMap& D, const KerEpsMap& rho,
                            const CheckConfig& cfg = {});

/// chi of the displacement E = D - frame; fails when E does not vanish on
/// the base forms.
KerEpsMap chi_extract(const Bundle& P, const HorMap& D, const HorMap& frame,
                      std::shared_ptr<const ReductionData> red, Report* checks,
                      const CheckConfig& cfg = {});

/// E1, E2, E3 and the antisymmetricity identity for a vertical map.
Report verify_chi_props(const Bundle& P, const KerEpsMap& chi, const CheckConfig& cfg = {});

/// rho_{D+E}(a) = rho_D(a) + D chi(a) + chi(a(1)) chi(a(2)) on corep entries
/// and products up to length 3.
Report connecting_identity_check(const Bundle& P, const HorMap& D, const KerEpsMap& chi,
                                 std::shared_ptr<const ReductionData> red,
                                 const CheckConfig& cfg = {});

struct RegularitySpace {
    size_t dim = 0;
    std::vector<std::map<int, Hor>> basis;  // per group generator seed values
    size_t candidate_dim = 0;
};

/// Exact solution space of {sym-12, antisymmetricity, hermiticity} within
/// the covariant candidate seeds with total-algebra words of length <= L.
/// Dropping sym-12 gives the negative control.
RegularitySpace regularity_space(const Bundle& P, const ReductionData& red, size_t L,
                                 bool include_sym12 = true);

/// D = D1 + i D2 with both parts hermitian.
std::pair<HorMap, HorMap> decompose_hermitian(const Bundle& P, const HorMap& D);

}  // namespace qfb
