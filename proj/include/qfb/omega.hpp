#pragma once

#include "qfb/fodc.hpp"

namespace qfb {

/// Total-calculus context: the bundle, the induced calculus on the group,
/// the frame structure and its curvature.
struct Calculus {
    const Bundle* P = nullptr;
    std::shared_ptr<Fodc> fodc;
    HorMap frame;
    std::shared_ptr<const KerEpsMap> rho;  // curvature of the frame

    Hor rho_gamma(size_t i) const { return rho->apply(fodc->basis_reps[i]); }
};

/// Element of the total calculus hor_P (x) Gamma_inv^.
class Omega {
public:
    const Calculus* C = nullptr;
    std::map<std::tuple<Word, Word, Word>, Scalar> terms;  // (b, v, gamma)

    Omega() = default;
    explicit Omega(const Calculus* c) : C(c) {}

    static Omega of_hor(const Calculus* c, const Hor& h);
    static Omega of_gamma(const Calculus* c, const NcPoly& g);
    static Omega unit(const Calculus* c);

    bool is_zero() const { return terms.empty(); }
    void insert(const Word& bw, const Word& vw, const Word& gw, const Scalar& c);

    Omega operator-() const;
    Omega& operator+=(const Omega& o);
    Omega& operator-=(const Omega& o);
    friend Omega operator+(Omega a, const Omega& b) { return a += b; }
    friend Omega operator-(Omega a, const Omega& b) { return a -= b; }
    Omega scaled(const Scalar& c) const;

    friend bool operator==(const Omega& a, const Omega& b) { return a.terms == b.terms; }
    friend bool operator!=(const Omega& a, const Omega& b) { return !(a == b); }

    int total_degree_of(const std::tuple<Word, Word, Word>& k) const;
    Omega homogeneous_part(int d) const;
    std::set<int> degrees() const;

    /// The purely horizontal component as a Hor (gamma leg trivial); the
    /// remainder is returned through rest when given.
    Hor horizontal_part(Omega* rest = nullptr) const;

    std::string str() const;
};

Omega omega_mul(const Omega& x, const Omega& y);
Omega omega_star(const Omega& x);
/// d(phi) = frame(phi) + (-1)^deg sum phi_k (x) pi(c_k) on horizontal parts,
/// d(theta) = d^(theta) + rho(theta) on invariant classes, extended by the
/// graded Leibniz rule.
Omega omega_d(const Omega& x);

/// Element of Omega(P) (x)^ Gamma^, with Gamma^ presented as A (x) Gamma_inv^.
class OmegaGamma {
public:
    const Calculus* C = nullptr;
    std::map<std::tuple<Word, Word, Word, Word, Word>, Scalar> terms;

    OmegaGamma() = default;
    explicit OmegaGamma(const Calculus* c) : C(c) {}

    static OmegaGamma of_omega(const Omega& x);

    bool is_zero() const { return terms.empty(); }
    void insert(const std::tuple<Word, Word, Word, Word, Word>& k, const Scalar& c);

    OmegaGamma operator-() const;
    OmegaGamma& operator+=(const OmegaGamma& o);
    OmegaGamma& operator-=(const OmegaGamma& o);
    friend OmegaGamma operator+(OmegaGamma a, const OmegaGamma& b) { return a += b; }
    friend OmegaGamma operator-(OmegaGamma a, const OmegaGamma& b) { return a -= b; }
    OmegaGamma scaled(const Scalar& c) const;

    friend bool operator==(const OmegaGamma& a, const OmegaGamma& b) {
        return a.terms == b.terms;
    }
    friend bool operator!=(const OmegaGamma& a, const OmegaGamma& b) { return !(a == b); }

    std::string str() const;
};

OmegaGamma og_mul(const OmegaGamma& x, const OmegaGamma& y);
OmegaGamma og_star(const OmegaGamma& x);
OmegaGamma og_d(const OmegaGamma& x);

/// F^hat: the coaction of the total calculus, determined by F^ on horizontal
/// elements and by varpi + embedding on invariant classes.
OmegaGamma f_hat(const Omega& x);

struct OmegaVerifyOptions {
    uint64_t seed = 1;
    int samples = 40;
    size_t blen = 2;
};

/// d^2 = 0, d* = *d, associativity, star involution, F^hat homomorphism and
/// hermiticity, compatibility of F^hat with the differentials, restriction
/// statements, and horizontality recovery on a spanning slice.
Report verify_omega(const Calculus& C, const OmegaVerifyOptions& opt = {});

}  // namespace qfb
