#pragma once

#include <optional>
#include <string>

namespace wcop {

/// omega(r) = (1-r)^alpha * log(e/(1-r))^log_exponent with user-supplied
/// normality witnesses 0 < s < t.
class NormalWeight {
public:
    NormalWeight(double alpha, double log_exponent, double s, double t);

    /// omega(r), 0 <= r < 1.
    double operator()(double r) const;
    /// omega evaluated through the gap x = 1 - r, 0 < x <= 1. Accurate for tiny x.
    double at_gap(double gap) const;

    double alpha() const noexcept { return alpha_; }
    double log_exponent() const noexcept { return log_exponent_; }
    double s() const noexcept { return s_; }
    double t() const noexcept { return t_; }

private:
    double alpha_;
    double log_exponent_;
    double s_;
    double t_;
};

/// Result of the dyadic monotonicity test for normality.
struct NormalityReport {
    bool normal = true;
    /// "s" or "t" when a condition fails.
    std::string failed_condition;
    /// Grid index k (r_k = 1 - 2^{-k}) of the first violation.
    std::optional<int> first_violation;
    std::string detail;
};

inline constexpr int kNormalityGridDepth = 40;

/// omega/(1-r)^s must decrease to 0 and omega/(1-r)^t must increase to
/// infinity along r_k = 1 - 2^{-k}, k = 0..40.
NormalityReport check_normality(const NormalWeight& weight);

/// H(p,p,omega).
struct SpaceSpec {
    double p;
    NormalWeight weight;

    SpaceSpec(double p, NormalWeight weight);

    /// A^p: omega(r) = (1-r)^{1/p}, witnesses s = alpha/2, t = 3 alpha/2.
    static SpaceSpec bergman(double p);
    bool is_bergman() const noexcept;
};

}  // namespace wcop
