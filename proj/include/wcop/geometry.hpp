#pragma once

#include "wcop/self_map.hpp"

namespace wcop {

/// 1 - |z|^2 as (1 - |z|)(1 + |z|), which keeps full relative accuracy near the circle.
inline double one_minus_modulus_squared(Complex z) {
    const double m = std::abs(z);
    return (1.0 - m) * (1.0 + m);
}

/// |(z - w) / (1 - conj(z) w)|.
double pseudo_hyperbolic(Complex z, Complex w);

/// Bergman metric beta(z, w) = atanh(rho(z, w)). Throws DomainError off the open disk.
double bergman_metric(Complex z, Complex w);

/// The involutive automorphism z -> (a - z) / (1 - conj(a) z).
SelfMap disk_automorphism(Complex a);

/// Empirical comparability of 1 - |z|^2 and 1 - |a|^2 over the Bergman metric
/// disk {z : beta(a, z) < radius}.
///
/// Points are placed on a Vogel spiral in the pseudo-hyperbolic disk of radius
/// tanh(radius) and pulled back through the automorphism at `a`, so every
/// sample lies inside the metric disk. Returns the largest of
/// (1-|z|^2)/(1-|a|^2) and its reciprocal.
double metric_disk_comparability(Complex a, double radius, int samples);

}  // namespace wcop
