#include "wcop/weights.hpp"

#include "wcop/errors.hpp"

#include <cmath>
#include <sstream>

namespace wcop {

NormalWeight::NormalWeight(double alpha, double log_exponent, double s, double t)
    : alpha_(alpha), log_exponent_(log_exponent), s_(s), t_(t) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw ValidationError("weight exponent alpha must be positive and finite");
    if (!std::isfinite(log_exponent)) throw ValidationError("weight log exponent must be finite");
    if (!(s > 0.0) || !(s < t) || !std::isfinite(t)) {
        std::ostringstream os;
        os << "normality witnesses must satisfy 0 < s < t (got s=" << s << ", t=" << t << ")";
        throw ValidationError(os.str());
    }
}

double NormalWeight::operator()(double r) const {
    if (!(r >= 0.0 && r < 1.0)) {
        std::ostringstream os;
        os << "weight evaluated at r = " << r << " outside [0, 1)";
        throw DomainError(os.str());
    }
    return at_gap(1.0 - r);
}

double NormalWeight::at_gap(double gap) const {
    double value = std::pow(gap, alpha_);
    if (log_exponent_ != 0.0) value *= std::pow(1.0 - std::log(gap), log_exponent_);
    return value;
}

namespace {

// log(omega(r) / (1-r)^c) at gap x.
double log_ratio(const NormalWeight& w, double x, double c) {
    return (w.alpha() - c) * std::log(x) + w.log_exponent() * std::log1p(-std::log(x));
}

}  // namespace

NormalityReport check_normality(const NormalWeight& weight) {
    NormalityReport report;
    auto fail = [&report](const char* which, int k, const std::string& why) {
        report.normal = false;
        report.failed_condition = which;
        report.first_violation = k;
        report.detail = why;
    };

    struct Condition {
        const char* name;
        double exponent;
        double direction;  // -1: must decrease toward 0, +1: must increase toward infinity
    };
    for (const Condition c : {Condition{"s", weight.s(), -1.0}, Condition{"t", weight.t(), +1.0}}) {
        double previous = log_ratio(weight, 1.0, c.exponent);
        const double first = previous;
        for (int k = 1; k <= kNormalityGridDepth; ++k) {
            const double current = log_ratio(weight, std::ldexp(1.0, -k), c.exponent);
            const double slack = 1e-12 * std::max(1.0, std::abs(previous));
            if (c.direction * (current - previous) < -slack) {
                std::ostringstream os;
                os << "weight not normal for witness " << c.name << "=" << c.exponent << ": omega/(1-r)^"
                   << c.name << (c.direction < 0 ? " increases" : " decreases") << " at r = 1-2^-" << k;
                fail(c.name, k, os.str());
                return report;
            }
            previous = current;
        }
        if (c.direction * (previous - first) <= 1e-9) {
            std::ostringstream os;
            os << "weight not normal for witness " << c.name << "=" << c.exponent << ": omega/(1-r)^"
               << c.name << " is flat on the dyadic grid";
            fail(c.name, kNormalityGridDepth, os.str());
            return report;
        }
    }
    return report;
}

SpaceSpec::SpaceSpec(double p_, NormalWeight weight_) : p(p_), weight(weight_) {
    if (!(p > 0.0) || !std::isfinite(p)) throw ValidationError("space exponent p must be positive and finite");
}

SpaceSpec SpaceSpec::bergman(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw ValidationError("space exponent p must be positive and finite");
    const double alpha = 1.0 / p;
    return SpaceSpec(p, NormalWeight(alpha, 0.0, alpha / 2.0, 1.5 * alpha));
}

bool SpaceSpec::is_bergman() const noexcept {
    return weight.log_exponent() == 0.0 && std::abs(weight.alpha() * p - 1.0) < 1e-14;
}

}  // namespace wcop
