#include "wcop/disk_function.hpp"

#include "wcop/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <variant>

namespace wcop {

namespace {

struct PowerSeries {
    std::vector<Complex> coefficients;
};
struct FractionalKernel {
    Complex base;
    double exponent;
    Complex scale;
    double gap;  // 1 - |base|^2
};
struct Sum {
    std::vector<DiskFunction> terms;
};
struct Product {
    DiskFunction lhs, rhs;
};
struct Scaled {
    Complex factor;
    DiskFunction f;
};
struct Composed {
    DiskFunction f;
    SelfMap phi;
};

Jet power_series_jet(const PowerSeries& s, Complex z) {
    Complex value = 0.0;
    Complex derivative = 0.0;
    for (auto it = s.coefficients.rbegin(); it != s.coefficients.rend(); ++it) {
        derivative = derivative * z + value;
        value = value * z + *it;
    }
    return {value, derivative};
}

Jet kernel_jet(const FractionalKernel& k, Complex z) {
    // 1 - conj(a) z, rewritten to stay exact near z = a.
    const Complex base = k.gap + std::conj(k.base) * (k.base - z);
    if (!(base.real() > 0.0)) {
        std::ostringstream os;
        os << "fractional kernel left the principal sheet at z = " << z;
        throw DomainError(os.str());
    }
    const Complex log_base = std::log(base);
    const Complex value = k.scale * std::exp(-k.exponent * log_base);
    return {value, value * k.exponent * std::conj(k.base) / base};
}

}  // namespace

struct DiskFunction::Node {
    std::variant<PowerSeries, FractionalKernel, Sum, Product, Scaled, Composed> form;
};

DiskFunction::DiskFunction() : DiskFunction(constant(0.0)) {}

DiskFunction::DiskFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

DiskFunction DiskFunction::constant(Complex c) { return power_series({c}); }

DiskFunction DiskFunction::identity() { return power_series({0.0, 1.0}); }

DiskFunction DiskFunction::power_series(std::vector<Complex> coefficients) {
    if (coefficients.empty()) coefficients.push_back(0.0);
    for (Complex c : coefficients)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw ValidationError("power series coefficients must be finite");
    return DiskFunction(std::make_shared<const Node>(Node{PowerSeries{std::move(coefficients)}}));
}

DiskFunction DiskFunction::fractional_kernel(Complex base, double exponent, Complex scale) {
    if (!(std::abs(base) < 1.0)) {
        std::ostringstream os;
        os << "fractional kernel base " << base << " must satisfy |a| < 1";
        throw ValidationError(os.str());
    }
    if (!(exponent > 0.0) || !std::isfinite(exponent))
        throw ValidationError("fractional kernel exponent must be positive and finite");
    const double m = std::abs(base);
    FractionalKernel k{base, exponent, scale, (1.0 - m) * (1.0 + m)};
    return DiskFunction(std::make_shared<const Node>(Node{k}));
}

DiskFunction DiskFunction::sum(std::vector<DiskFunction> terms) {
    if (terms.empty()) return DiskFunction();
    return DiskFunction(std::make_shared<const Node>(Node{Sum{std::move(terms)}}));
}

DiskFunction DiskFunction::product(DiskFunction lhs, DiskFunction rhs) {
    return DiskFunction(std::make_shared<const Node>(Node{Product{std::move(lhs), std::move(rhs)}}));
}

DiskFunction DiskFunction::scaled(Complex factor, DiskFunction f) {
    return DiskFunction(std::make_shared<const Node>(Node{Scaled{factor, std::move(f)}}));
}

DiskFunction DiskFunction::composed(DiskFunction f, SelfMap phi) {
    return DiskFunction(std::make_shared<const Node>(Node{Composed{std::move(f), std::move(phi)}}));
}

Complex DiskFunction::eval(Complex z) const { return jet(z).value; }

Complex DiskFunction::deriv(Complex z) const { return jet(z).derivative; }

Jet DiskFunction::jet(Complex z) const {
    if (!(std::abs(z) < 1.0)) {
        std::ostringstream os;
        os << "point " << z << " is not inside the unit disk";
        throw DomainError(os.str());
    }
    return jet_unchecked(z);
}

Jet DiskFunction::jet_unchecked(Complex z) const {
    return std::visit(
        [z](const auto& f) -> Jet {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, PowerSeries>) {
                return power_series_jet(f, z);
            } else if constexpr (std::is_same_v<T, FractionalKernel>) {
                return kernel_jet(f, z);
            } else if constexpr (std::is_same_v<T, Sum>) {
                Jet acc{0.0, 0.0};
                for (const auto& term : f.terms) {
                    const Jet t = term.jet_unchecked(z);
                    acc.value += t.value;
                    acc.derivative += t.derivative;
                }
                return acc;
            } else if constexpr (std::is_same_v<T, Product>) {
                const Jet a = f.lhs.jet_unchecked(z);
                const Jet b = f.rhs.jet_unchecked(z);
                return {a.value * b.value, a.derivative * b.value + a.value * b.derivative};
            } else if constexpr (std::is_same_v<T, Scaled>) {
                const Jet inner = f.f.jet_unchecked(z);
                return {f.factor * inner.value, f.factor * inner.derivative};
            } else {
                const Jet inner = f.phi.jet_unchecked(z);
                const Jet outer = f.f.jet_unchecked(inner.value);
                return {outer.value, outer.derivative * inner.derivative};
            }
        },
        node_->form);
}

std::vector<double> DiskFunction::peak_angles() const {
    std::vector<double> angles;
    std::visit(
        [&angles](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, FractionalKernel>) {
                if (std::abs(f.base) > 0.0) angles.push_back(std::arg(f.base));
            } else if constexpr (std::is_same_v<T, Sum>) {
                for (const auto& term : f.terms) {
                    auto more = term.peak_angles();
                    angles.insert(angles.end(), more.begin(), more.end());
                }
            } else if constexpr (std::is_same_v<T, Product>) {
                for (const auto* part : {&f.lhs, &f.rhs}) {
                    auto more = part->peak_angles();
                    angles.insert(angles.end(), more.begin(), more.end());
                }
            } else if constexpr (std::is_same_v<T, Scaled>) {
                angles = f.f.peak_angles();
            }
        },
        node_->form);
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end()), angles.end());
    return angles;
}

bool DiskFunction::is_polynomial() const {
    return std::visit(
        [](const auto& f) -> bool {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, PowerSeries>) {
                return true;
            } else if constexpr (std::is_same_v<T, Sum>) {
                return std::all_of(f.terms.begin(), f.terms.end(),
                                   [](const DiskFunction& t) { return t.is_polynomial(); });
            } else if constexpr (std::is_same_v<T, Product>) {
                return f.lhs.is_polynomial() && f.rhs.is_polynomial();
            } else if constexpr (std::is_same_v<T, Scaled>) {
                return f.f.is_polynomial();
            } else {
                return false;
            }
        },
        node_->form);
}

std::string DiskFunction::describe() const {
    std::ostringstream os;
    std::visit(
        [&os](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, PowerSeries>) {
                os << "poly[";
                for (std::size_t i = 0; i < f.coefficients.size(); ++i)
                    os << (i ? ", " : "") << f.coefficients[i];
                os << "]";
            } else if constexpr (std::is_same_v<T, FractionalKernel>) {
                os << "kernel(a=" << f.base << ", q=" << f.exponent << ", scale=" << f.scale << ")";
            } else if constexpr (std::is_same_v<T, Sum>) {
                os << "sum(";
                for (std::size_t i = 0; i < f.terms.size(); ++i)
                    os << (i ? ", " : "") << f.terms[i].describe();
                os << ")";
            } else if constexpr (std::is_same_v<T, Product>) {
                os << "product(" << f.lhs.describe() << ", " << f.rhs.describe() << ")";
            } else if constexpr (std::is_same_v<T, Scaled>) {
                os << "scaled(" << f.factor << ", " << f.f.describe() << ")";
            } else {
                os << "compose(" << f.f.describe() << ", " << f.phi.describe() << ")";
            }
        },
        node_->form);
    return os.str();
}

DiskFunction operator+(const DiskFunction& lhs, const DiskFunction& rhs) {
    return DiskFunction::sum({lhs, rhs});
}

DiskFunction operator*(const DiskFunction& lhs, const DiskFunction& rhs) {
    return DiskFunction::product(lhs, rhs);
}

DiskFunction operator*(Complex factor, const DiskFunction& f) {
    return DiskFunction::scaled(factor, f);
}

}  // namespace wcop
