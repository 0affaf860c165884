#include "wcop/self_map.hpp"

#include "wcop/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <variant>

namespace wcop {

namespace {

constexpr double kUnitSlack = 1e-12;

struct Affine {
    Complex a, b;
};
struct Monomial {
    int k;
    Complex s;
};
struct BlaschkeFactor {
    Complex a;
    double gap;  // 1 - |a|^2
};
struct BlaschkeProduct {
    std::vector<BlaschkeFactor> factors;
    Complex unimodular;
};
struct Scaled {
    Complex s;
    SelfMap inner;
};
struct Composition {
    SelfMap outer, inner;
};

void require_in_disk(Complex z) {
    if (!(std::abs(z) < 1.0)) {
        std::ostringstream os;
        os << "point " << z << " is not inside the unit disk";
        throw DomainError(os.str());
    }
}

// 1 - conj(a) z written so that it is exact to working precision near z = a.
Complex one_minus_conj_times(const BlaschkeFactor& f, Complex z) {
    return f.gap + std::conj(f.a) * (f.a - z);
}

Jet factor_jet(const BlaschkeFactor& f, Complex z) {
    const Complex denom = one_minus_conj_times(f, z);
    return {(z - f.a) / denom, f.gap / (denom * denom)};
}

double factor_bound(const BlaschkeFactor& f, double r) {
    const double m = std::abs(f.a);
    return (r + m) / (1.0 + m * r);
}

BlaschkeFactor make_factor(Complex a) {
    if (!(std::abs(a) < 1.0)) {
        std::ostringstream os;
        os << "Blaschke zero " << a << " must satisfy |a| < 1";
        throw ValidationError(os.str());
    }
    return {a, 1.0 - std::norm(a)};
}

}  // namespace

struct SelfMap::Node {
    std::variant<Affine, Monomial, BlaschkeFactor, BlaschkeProduct, Scaled, Composition> form;
};

SelfMap::SelfMap(std::shared_ptr<const Node> node) : node_(std::move(node)) {
    // Bounds within rounding of 1 are rounded up so touching maps are never treated as interior.
    const double bound = sup_on_radius(1.0);
    sup_norm_ = bound >= 1.0 - kUnitSlack ? 1.0 : bound;
}

SelfMap SelfMap::affine(Complex a, Complex b) {
    if (!std::isfinite(std::abs(a)) || !std::isfinite(std::abs(b)))
        throw ValidationError("affine self-map coefficients must be finite");
    const double bound = std::abs(a) + std::abs(b);
    if (bound > 1.0 + kUnitSlack) {
        std::ostringstream os;
        os << "affine map is not a self-map: |a|+|b| = " << bound << " > 1";
        throw ValidationError(os.str());
    }
    return SelfMap(std::make_shared<const Node>(Node{Affine{a, b}}));
}

SelfMap SelfMap::identity() { return affine(1.0, 0.0); }

SelfMap SelfMap::constant(Complex c) { return affine(0.0, c); }

SelfMap SelfMap::monomial(int k, Complex s) {
    if (k < 1) throw ValidationError("monomial self-map needs a positive power");
    if (std::abs(s) > 1.0 + kUnitSlack) {
        std::ostringstream os;
        os << "monomial scale |s| = " << std::abs(s) << " exceeds 1";
        throw ValidationError(os.str());
    }
    return SelfMap(std::make_shared<const Node>(Node{Monomial{k, s}}));
}

SelfMap SelfMap::blaschke_factor(Complex a) {
    return SelfMap(std::make_shared<const Node>(Node{make_factor(a)}));
}

SelfMap SelfMap::blaschke_product(std::vector<Complex> zeros, Complex unimodular) {
    if (zeros.empty()) throw ValidationError("Blaschke product needs at least one zero");
    if (std::abs(std::abs(unimodular) - 1.0) > kUnitSlack)
        throw ValidationError("Blaschke product constant must be unimodular");
    BlaschkeProduct product{{}, unimodular};
    product.factors.reserve(zeros.size());
    for (Complex a : zeros) product.factors.push_back(make_factor(a));
    return SelfMap(std::make_shared<const Node>(Node{std::move(product)}));
}

SelfMap SelfMap::scaled(Complex s, SelfMap inner) {
    if (std::abs(s) > 1.0 + kUnitSlack) {
        std::ostringstream os;
        os << "scaled self-map factor |s| = " << std::abs(s) << " exceeds 1";
        throw ValidationError(os.str());
    }
    return SelfMap(std::make_shared<const Node>(Node{Scaled{s, std::move(inner)}}));
}

SelfMap SelfMap::composition(SelfMap outer, SelfMap inner) {
    return SelfMap(
        std::make_shared<const Node>(Node{Composition{std::move(outer), std::move(inner)}}));
}

Complex SelfMap::eval(Complex z) const { return jet(z).value; }

Complex SelfMap::deriv(Complex z) const { return jet(z).derivative; }

Jet SelfMap::jet(Complex z) const {
    require_in_disk(z);
    return jet_unchecked(z);
}

Jet SelfMap::jet_unchecked(Complex z) const {
    return std::visit(
        [z](const auto& f) -> Jet {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Affine>) {
                return {f.a * z + f.b, f.a};
            } else if constexpr (std::is_same_v<T, Monomial>) {
                Complex lower = 1.0;
                for (int i = 1; i < f.k; ++i) lower *= z;
                return {f.s * lower * z, f.s * static_cast<double>(f.k) * lower};
            } else if constexpr (std::is_same_v<T, BlaschkeFactor>) {
                return factor_jet(f, z);
            } else if constexpr (std::is_same_v<T, BlaschkeProduct>) {
                Jet acc{f.unimodular, 0.0};
                for (const auto& factor : f.factors) {
                    const Jet b = factor_jet(factor, z);
                    acc = {acc.value * b.value, acc.derivative * b.value + acc.value * b.derivative};
                }
                return acc;
            } else if constexpr (std::is_same_v<T, Scaled>) {
                const Jet inner = f.inner.jet_unchecked(z);
                return {f.s * inner.value, f.s * inner.derivative};
            } else {
                const Jet inner = f.inner.jet_unchecked(z);
                const Jet outer = f.outer.jet_unchecked(inner.value);
                return {outer.value, outer.derivative * inner.derivative};
            }
        },
        node_->form);
}

double SelfMap::sup_on_radius(double r) const {
    r = std::clamp(r, 0.0, 1.0);
    return std::visit(
        [r](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Affine>) {
                return std::abs(f.a) * r + std::abs(f.b);
            } else if constexpr (std::is_same_v<T, Monomial>) {
                return std::abs(f.s) * std::pow(r, f.k);
            } else if constexpr (std::is_same_v<T, BlaschkeFactor>) {
                return factor_bound(f, r);
            } else if constexpr (std::is_same_v<T, BlaschkeProduct>) {
                double bound = 1.0;
                for (const auto& factor : f.factors) bound *= factor_bound(factor, r);
                return bound;
            } else if constexpr (std::is_same_v<T, Scaled>) {
                return std::abs(f.s) * f.inner.sup_on_radius(r);
            } else {
                return f.outer.sup_on_radius(std::min(1.0, f.inner.sup_on_radius(r)));
            }
        },
        node_->form);
}

std::string SelfMap::describe() const {
    std::ostringstream os;
    std::visit(
        [&os](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Affine>) {
                os << "affine(a=" << f.a << ", b=" << f.b << ")";
            } else if constexpr (std::is_same_v<T, Monomial>) {
                os << "monomial(k=" << f.k << ", s=" << f.s << ")";
            } else if constexpr (std::is_same_v<T, BlaschkeFactor>) {
                os << "blaschke(a=" << f.a << ")";
            } else if constexpr (std::is_same_v<T, BlaschkeProduct>) {
                os << "blaschke_product(c=" << f.unimodular << ", zeros=[";
                for (std::size_t i = 0; i < f.factors.size(); ++i)
                    os << (i ? ", " : "") << f.factors[i].a;
                os << "])";
            } else if constexpr (std::is_same_v<T, Scaled>) {
                os << "scaled(s=" << f.s << ", " << f.inner.describe() << ")";
            } else {
                os << "compose(" << f.outer.describe() << ", " << f.inner.describe() << ")";
            }
        },
        node_->form);
    return os.str();
}

SelfMapCheck check_self_map(const SelfMap& phi, int depth, int angular) {
    SelfMapCheck check;
    for (int k = 0; k <= depth; ++k) {
        const double r = 1.0 - std::ldexp(1.0, -k);
        for (int j = 0; j < angular; ++j) {
            const double theta = 2.0 * std::numbers::pi * j / angular;
            const Complex z = std::polar(r, theta);
            const Jet w = phi.jet_unchecked(z);
            const double m = std::abs(w.value);
            check.max_modulus = std::max(check.max_modulus, m);
            if (m > 1.0 + kUnitSlack && check.maps_into_disk) {
                check.maps_into_disk = false;
                std::ostringstream os;
                os << "|phi(z)| = " << m << " > 1 at z = " << z;
                check.detail = os.str();
            }
            const double lhs = (1.0 - r * r) * std::abs(w.derivative);
            const double rhs = 1.0 - m * m;
            if (rhs > 0.0) {
                check.max_schwarz_pick_ratio = std::max(check.max_schwarz_pick_ratio, lhs / rhs);
            }
            if (lhs > rhs * (1.0 + 1e-9) + 1e-13 && check.schwarz_pick) {
                check.schwarz_pick = false;
                std::ostringstream os;
                os << "Schwarz-Pick violated at z = " << z << ": " << lhs << " > " << rhs;
                if (check.detail.empty()) check.detail = os.str();
            }
        }
    }
    return check;
}

}  // namespace wcop
