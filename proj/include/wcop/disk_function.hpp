#pragma once

#include "wcop/self_map.hpp"

#include <memory>
#include <string>
#include <vector>

namespace wcop {

/// Closed-form analytic function on the unit disk with exact derivative.
///
/// Values are immutable and cheap to copy (shared expression tree). All
/// derivatives are evaluated in closed form through the product and chain
/// rules; nothing here uses finite differences.
class DiskFunction {
public:
    /// The zero function.
    DiskFunction();

    static DiskFunction constant(Complex c);
    static DiskFunction identity();
    /// c_0 + c_1 z + ... + c_N z^N.
    static DiskFunction power_series(std::vector<Complex> coefficients);
    /// scale * (1 - conj(a) z)^(-q), principal branch, |a| < 1, q > 0.
    ///
    /// Re(1 - conj(a) z) > 0 on the disk, so the branch cut is never crossed.
    static DiskFunction fractional_kernel(Complex base, double exponent, Complex scale = 1.0);
    static DiskFunction sum(std::vector<DiskFunction> terms);
    static DiskFunction product(DiskFunction lhs, DiskFunction rhs);
    static DiskFunction scaled(Complex factor, DiskFunction f);
    /// f o phi.
    static DiskFunction composed(DiskFunction f, SelfMap phi);

    /// Throws DomainError unless |z| < 1.
    Complex eval(Complex z) const;
    Complex deriv(Complex z) const;
    Jet jet(Complex z) const;
    Jet jet_unchecked(Complex z) const;

    /// Boundary directions (angles) where the function may concentrate, taken
    /// from the fractional-kernel base points it contains. Compositions
    /// contribute nothing because their peaks depend on the self-map.
    std::vector<double> peak_angles() const;

    /// True when the function is a finite polynomial (after expanding sums,
    /// products and scalings; compositions and kernels excluded).
    bool is_polynomial() const;

    std::string describe() const;

    struct Node;

private:
    explicit DiskFunction(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

DiskFunction operator+(const DiskFunction& lhs, const DiskFunction& rhs);
DiskFunction operator*(const DiskFunction& lhs, const DiskFunction& rhs);
DiskFunction operator*(Complex factor, const DiskFunction& f);

}  // namespace wcop
