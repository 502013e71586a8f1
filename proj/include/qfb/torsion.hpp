#pragma once

#include "qfb/omega.hpp"

namespace qfb {

/// A connection form on the induced calculus: omega(theta_i) = 1 (x) theta_i
/// plus a declared first-order horizontal part per basis class. An empty
/// part list is the frame connection.
struct ConnectionForm {
    const Calculus* C = nullptr;
    std::vector<Hor> chi_part;  // one hor^1 element per basis class

    Omega value(size_t i) const;             // omega(theta_i)
    Omega value_pi(const NcPoly& a) const;   // omega(pi(a))
};

/// Covariant derivative D_omega(phi) = d(phi) - (-1)^deg(phi) sum phi_k
/// omega(pi(c_k)) of a horizontal element.
Omega cov_derivative(const ConnectionForm& w, const Hor& phi);

/// Torsion components T^i = D_omega(1 (x) theta_i).
std::vector<Omega> torsion_form(const ConnectionForm& w);

/// Hermiticity of the torsion and the coaction square.
Report verify_torsion(const ConnectionForm& w, const CheckConfig& cfg = {});

/// Curvature form R = d omega - <omega, omega> on a basis class.
Omega curvature_form(const ConnectionForm& w, size_t i);
Omega curvature_form_pi(const ConnectionForm& w, const NcPoly& a);

/// Multiplicativity defect rho(a) = <omega,omega> pi(a) + omega pi(a(1))
/// omega pi(a(2)).
Omega rho_defect(const ConnectionForm& w, const NcPoly& a);

/// Second structure equation D_omega T^i = -sum theta_j R^{ji}
/// - sum T^j rho(u_ji).
Report second_structure_check(const ConnectionForm& w, const CheckConfig& cfg = {});

/// Pseudotensorial property of omega under F^hat.
Report verify_connection_form(const ConnectionForm& w, const CheckConfig& cfg = {});

/// Builds omega from a vertical map after checking that it annihilates the
/// calculus ideal; verifies the two routes to the covariant derivative and
/// to the curvature agree, and that the connection is regular.
Report connection_from_chi(const Calculus& C, std::shared_ptr<const KerEpsMap> chi,
                           ConnectionForm* out, const CheckConfig& cfg = {});

}  // namespace qfb
