#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace wcop {

using Complex = std::complex<double>;

/// Value and first derivative at a point.
struct Jet {
    Complex value;
    Complex derivative;
};

/// Analytic self-map of the unit disk, built from closed forms.
///
/// Every variant carries a structural bound on sup |phi| that is computed from
/// the representation alone. Classifiers branch on that bound (||phi|| < 1 vs
/// ||phi|| = 1), so it is never inferred from sampling.
class SelfMap {
public:
    /// phi(z) = a z + b, requires |a| + |b| <= 1.
    static SelfMap affine(Complex a, Complex b);
    static SelfMap identity();
    static SelfMap constant(Complex c);
    /// phi(z) = s z^k, k >= 1, |s| <= 1.
    static SelfMap monomial(int k, Complex s);
    /// phi(z) = (z - a) / (1 - conj(a) z), |a| < 1.
    static SelfMap blaschke_factor(Complex a);
    /// phi(z) = c * prod_k (z - a_k) / (1 - conj(a_k) z), |c| = 1.
    static SelfMap blaschke_product(std::vector<Complex> zeros, Complex unimodular = 1.0);
    /// phi(z) = s * inner(z), |s| <= 1.
    static SelfMap scaled(Complex s, SelfMap inner);
    /// phi(z) = outer(inner(z)).
    static SelfMap composition(SelfMap outer, SelfMap inner);

    /// Throws DomainError for |z| >= 1.
    Complex eval(Complex z) const;
    Complex deriv(Complex z) const;
    Jet jet(Complex z) const;
    /// No domain check; used when composing with values already known to lie in the disk.
    Jet jet_unchecked(Complex z) const;

    /// Certified upper bound for sup_{|z| <= r} |phi(z)|, r in [0, 1].
    double sup_on_radius(double r) const;
    /// sup_{|z|<1} |phi(z)| bound, in [0, 1].
    double sup_norm_estimate() const noexcept { return sup_norm_; }

    std::string describe() const;

    struct Node;

private:
    explicit SelfMap(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
    double sup_norm_ = 1.0;
};

/// Sampled check of the self-map property and the Schwarz-Pick inequality.
struct SelfMapCheck {
    bool maps_into_disk = true;
    bool schwarz_pick = true;
    double max_modulus = 0.0;
    /// max of (1-|z|^2)|phi'(z)| / (1-|phi(z)|^2) over samples.
    double max_schwarz_pick_ratio = 0.0;
    std::string detail;
    bool ok() const noexcept { return maps_into_disk && schwarz_pick; }
};

/// Samples radii 1 - 2^{-k}, k = 0..depth, and `angular` equispaced angles.
SelfMapCheck check_self_map(const SelfMap& phi, int depth = 30, int angular = 256);

}  // namespace wcop
