#include "wcop/geometry.hpp"

#include "wcop/errors.hpp"

#include <cmath>
#include <numbers>

namespace wcop {

namespace {

void require_in_disk(Complex z, const char* name) {
    if (!(std::abs(z) < 1.0))
        throw DomainError(std::string(name) + " must lie in the open unit disk");
}

}  // namespace

double pseudo_hyperbolic(Complex z, Complex w) {
    require_in_disk(z, "z");
    require_in_disk(w, "w");
    return std::abs((z - w) / (1.0 - std::conj(z) * w));
}

double bergman_metric(Complex z, Complex w) {
    const double rho = pseudo_hyperbolic(z, w);
    return std::atanh(std::min(rho, 1.0 - 1e-17));
}

SelfMap disk_automorphism(Complex a) {
    return SelfMap::scaled(-1.0, SelfMap::blaschke_factor(a));
}

double metric_disk_comparability(Complex a, double radius, int samples) {
    require_in_disk(a, "center");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw DomainError("metric disk radius must be positive and finite");
    if (samples < 1) throw DomainError("need at least one sample");

    const SelfMap sigma = disk_automorphism(a);
    const double reach = std::tanh(radius);
    const double center_gap = 1.0 - std::norm(a);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));

    double worst = 1.0;
    for (int j = 0; j < samples; ++j) {
        const double rho = reach * std::sqrt((j + 0.5) / samples);
        const Complex zeta = std::polar(rho, golden * j);
        const Complex z = sigma.eval(zeta);
        const double ratio = (1.0 - std::norm(z)) / center_gap;
        worst = std::max({worst, ratio, 1.0 / ratio});
    }
    return worst;
}

}  // namespace wcop
