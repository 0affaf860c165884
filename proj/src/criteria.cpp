#include "wcop/criteria.hpp"

#include "wcop/errors.hpp"
#include "wcop/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace wcop {

namespace {

struct Denominators {
    double weight_gap = 0.0;  // omega(|phi|)
    double one_minus_sq = 0.0;  // 1 - |phi|^2
};

Denominators denominators(Complex image, const SpaceSpec& space) {
    const double modulus = std::abs(image);
    const double gap = std::max(1.0 - modulus, std::numeric_limits<double>::min());
    return {space.weight.at_gap(gap), gap * (1.0 + modulus)};
}

double q1_unchecked(Complex z, const SymbolPair& sym, const SpaceSpec& space) {
    const Jet u = sym.u.jet_unchecked(z);
    const double numerator = one_minus_modulus_squared(z) * std::abs(u.derivative);
    if (numerator == 0.0) return 0.0;
    const auto d = denominators(sym.phi.jet_unchecked(z).value, space);
    return numerator / (d.weight_gap * std::pow(d.one_minus_sq, 1.0 / space.p));
}

double q2_unchecked(Complex z, const SymbolPair& sym, const SpaceSpec& space) {
    const Jet phi = sym.phi.jet_unchecked(z);
    const double numerator = one_minus_modulus_squared(z) * std::abs(sym.u.jet_unchecked(z).value * phi.derivative);
    if (numerator == 0.0) return 0.0;
    const auto d = denominators(phi.value, space);
    return numerator / (d.weight_gap * std::pow(d.one_minus_sq, 1.0 + 1.0 / space.p));
}

void require_interior(Complex z) {
    if (!(std::abs(z) < 1.0)) throw DomainError("criterion quantities need |z| < 1");
}

std::vector<int> sampled_indices(const BoundaryProfile& profile) {
    std::vector<int> idx;
    for (std::size_t k = 0; k < profile.size(); ++k)
        if (profile.states[k] == EntryState::Sampled) idx.push_back(static_cast<int>(k));
    return idx;
}

DiskQuantity level_of(const SelfMap& phi) {
    return [phi](Complex z) { return std::abs(phi.jet_unchecked(z).value); };
}

Verdict vacuous_holds(std::string quantity, BoundaryProfile profile, double bound) {
    Verdict v;
    v.status = VerdictStatus::Holds;
    v.quantity = std::move(quantity);
    v.kind = CriterionKind::LimitToZero;
    v.profile = std::move(profile);
    v.sup_estimate = v.profile.values.empty() ? 0.0 : v.profile.values.front();
    v.vacuous = true;
    std::ostringstream os;
    os << "sup |phi| <= " << bound << " < 1: no sequence with |phi(z_n)| -> 1";
    v.notes = os.str();
    return v;
}

Verdict phi_limit_verdict(CriterionQuantity which, const char* name, const SymbolPair& sym, const SpaceSpec& space,
                          const RadialGrid& grid, const CriteriaOptions& options) {
    auto profile = criterion_profile(which, sym, space, ProfileTrigger::ByModulusOfPhiOfZ, grid, options);
    const double bound = sym.phi.sup_norm_estimate();
    if (bound < 1.0 && !options.force_boundary_analysis) return vacuous_holds(name, std::move(profile), bound);
    return limit_verdict(name, std::move(profile));
}

Verdict z_limit_verdict(CriterionQuantity which, const char* name, const SymbolPair& sym, const SpaceSpec& space,
                        const RadialGrid& grid, const CriteriaOptions& options) {
    return limit_verdict(name, criterion_profile(which, sym, space, ProfileTrigger::ByModulusOfZ, grid, options));
}

Verdict little_bloch_verdict(const DiskFunction& u, const RadialGrid& grid, const CriteriaOptions& options) {
    auto lb = little_bloch_profile(u, grid, options.exec);
    Verdict v = limit_verdict("u_in_little_bloch", std::move(lb.profile), lb.seminorm);
    if (lb.little_bloch) v.status = VerdictStatus::Holds;
    else if (v.status == VerdictStatus::Holds) v.status = VerdictStatus::Inconclusive;
    if (u.is_polynomial()) v.notes = "polynomial multiplier";
    return v;
}

Classification assemble(std::vector<Verdict> parts) {
    Classification c;
    c.overall = combine(parts);
    c.parts = std::move(parts);
    return c;
}

EquivalenceProbe finish_probe(std::string name, Verdict lhs, std::vector<Verdict> rhs) {
    EquivalenceProbe probe;
    probe.name = std::move(name);
    probe.lhs_status = lhs.status;
    probe.rhs_status = combine(rhs);
    probe.lhs = std::move(lhs);
    probe.rhs = std::move(rhs);
    probe.decided = probe.lhs_status != VerdictStatus::Inconclusive && probe.rhs_status != VerdictStatus::Inconclusive;
    probe.agree = probe.decided && probe.lhs_status == probe.rhs_status;
    return probe;
}

}  // namespace

const char* to_string(VerdictStatus status) noexcept {
    switch (status) {
        case VerdictStatus::Holds: return "Holds";
        case VerdictStatus::Fails: return "Fails";
        case VerdictStatus::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

double q1(Complex z, const SymbolPair& sym, const SpaceSpec& space) {
    require_interior(z);
    return q1_unchecked(z, sym, space);
}

double q2(Complex z, const SymbolPair& sym, const SpaceSpec& space) {
    require_interior(z);
    return q2_unchecked(z, sym, space);
}

DiskQuantity criterion_quantity(CriterionQuantity which, const SymbolPair& sym, const SpaceSpec& space) {
    if (which == CriterionQuantity::Q1)
        return [sym, space](Complex z) { return q1_unchecked(z, sym, space); };
    return [sym, space](Complex z) { return q2_unchecked(z, sym, space); };
}

BoundaryProfile criterion_profile(CriterionQuantity which, const SymbolPair& sym, const SpaceSpec& space,
                                  ProfileTrigger trigger, const RadialGrid& grid, const CriteriaOptions& options) {
    const auto quantity = criterion_quantity(which, sym, space);
    if (trigger == ProfileTrigger::ByModulusOfZ) return modulus_profile(quantity, grid, sym.u.peak_angles(), options.exec);
    return level_profile(quantity, level_of(sym.phi), sym.phi.sup_norm_estimate(), options.force_boundary_analysis,
                         grid, options.exec);
}

double tail_slope(const BoundaryProfile& profile, int window) {
    const auto idx = sampled_indices(profile);
    if (static_cast<int>(idx.size()) < 2) return 0.0;
    const std::size_t first = idx.size() > static_cast<std::size_t>(window) ? idx.size() - window : 0;
    double peak = 0.0;
    for (std::size_t i = first; i < idx.size(); ++i) peak = std::max(peak, profile.band_maxima[idx[i]]);
    if (!(peak > 0.0)) return 0.0;
    const double tiny = std::numeric_limits<double>::min();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(idx.size() - first);
    for (std::size_t i = first; i < idx.size(); ++i) {
        const double x = idx[i] * std::numbers::ln2;
        const double y = std::log(std::max(profile.band_maxima[idx[i]], tiny));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    return denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

Verdict supremum_verdict(std::string quantity, BoundaryProfile profile) {
    Verdict v;
    v.quantity = std::move(quantity);
    v.kind = CriterionKind::Supremum;
    v.divergence_slope = tail_slope(profile);
    const auto idx = sampled_indices(profile);
    const double sup = profile.values.empty() ? 0.0 : profile.values.front();
    if (static_cast<int>(idx.size()) < kSlopeWindow) {
        v.status = VerdictStatus::Inconclusive;
        v.sup_estimate = sup;
        v.notes = "too few sampled bands";
    } else {
        const double last = profile.band_maxima[idx.back()];
        const double earlier = profile.band_maxima[idx[idx.size() - kSlopeWindow]];
        if (sup == 0.0) {
            v.status = VerdictStatus::Holds;
            v.sup_estimate = 0.0;
        } else if (v.divergence_slope > kDivergenceSlope) {
            v.status = VerdictStatus::Fails;
            v.notes = "band maxima grow like a power of 1/(1-|z|)";
        } else if (v.divergence_slope < kFlatSlope && last <= kPlateauGrowth * earlier) {
            v.status = VerdictStatus::Holds;
            v.sup_estimate = sup;
        } else {
            v.status = VerdictStatus::Inconclusive;
            v.sup_estimate = sup;
            v.notes = "slope between the flat and divergent thresholds";
        }
    }
    v.profile = std::move(profile);
    return v;
}

Verdict limit_verdict(std::string quantity, BoundaryProfile profile, std::optional<double> reference) {
    Verdict v;
    v.quantity = std::move(quantity);
    v.kind = CriterionKind::LimitToZero;
    v.divergence_slope = tail_slope(profile);
    const auto idx = sampled_indices(profile);
    if (idx.empty()) {
        const bool vacuous = std::any_of(profile.states.begin(), profile.states.end(),
                                         [](EntryState s) { return s == EntryState::VacuouslyEmpty; });
        v.status = vacuous ? VerdictStatus::Holds : VerdictStatus::Inconclusive;
        v.vacuous = vacuous;
        v.sup_estimate = 0.0;
        v.notes = vacuous ? "every boundary region is empty" : "no sampled boundary region";
        v.profile = std::move(profile);
        return v;
    }
    const double v0 = profile.values[idx.front()];
    v.sup_estimate = v0;
    if (profile.trigger == ProfileTrigger::ByModulusOfPhiOfZ &&
        idx.back() < static_cast<int>(profile.size()) - kSlopeWindow) {
        v.status = VerdictStatus::Inconclusive;
        v.notes = "sampled |phi| stops at band " + std::to_string(idx.back()) + ", short of the boundary tail";
        v.profile = std::move(profile);
        return v;
    }
    const double threshold = std::max(kLimitRelative * reference.value_or(v0), kLimitAbsolute);
    const double last = profile.values[idx.back()];
    bool decreasing = false, negligible = false;
    if (idx.size() >= 3) {
        const double a = profile.values[idx[idx.size() - 3]];
        const double b = profile.values[idx[idx.size() - 2]];
        decreasing = a > b && b > last;
        negligible = a <= kLimitAbsolute;
    }
    if (last < threshold && (decreasing || negligible)) {
        v.status = VerdictStatus::Holds;
    } else if (last >= threshold && v.divergence_slope > -kDivergenceSlope) {
        v.status = VerdictStatus::Fails;
        v.notes = "tail does not decay";
    } else {
        v.status = VerdictStatus::Inconclusive;
        v.notes = idx.size() < 3 ? "too few sampled bands" : "tail decays but is not yet below threshold";
    }
    v.profile = std::move(profile);
    return v;
}

VerdictStatus combine(const std::vector<Verdict>& parts) {
    bool all_hold = true;
    for (const auto& p : parts) {
        if (p.status == VerdictStatus::Fails) return VerdictStatus::Fails;
        if (p.status != VerdictStatus::Holds) all_hold = false;
    }
    return all_hold ? VerdictStatus::Holds : VerdictStatus::Inconclusive;
}

Classification classify_bounded_into_bloch(const SymbolPair& sym, const SpaceSpec& space, const RadialGrid& grid,
                                           const CriteriaOptions& options) {
    std::vector<Verdict> parts;
    parts.push_back(supremum_verdict(
        "q1", criterion_profile(CriterionQuantity::Q1, sym, space, ProfileTrigger::ByModulusOfZ, grid, options)));
    parts.push_back(supremum_verdict(
        "q2", criterion_profile(CriterionQuantity::Q2, sym, space, ProfileTrigger::ByModulusOfZ, grid, options)));
    return assemble(std::move(parts));
}

Classification classify_compact_into_bloch(const SymbolPair& sym, const SpaceSpec& space, const RadialGrid& grid,
                                           const Classification& bounded, const CriteriaOptions& options) {
    if (!bounded.holds())
        throw PreconditionUnmet(std::string("compactness into B needs a bounded operator; boundedness verdict is ") +
                                to_string(bounded.overall));
    std::vector<Verdict> parts;
    parts.push_back(phi_limit_verdict(CriterionQuantity::Q1, "q1_phi_limit", sym, space, grid, options));
    parts.push_back(phi_limit_verdict(CriterionQuantity::Q2, "q2_phi_limit", sym, space, grid, options));
    return assemble(std::move(parts));
}

Classification classify_compact_into_bloch(const SymbolPair& sym, const SpaceSpec& space, const RadialGrid& grid,
                                           const CriteriaOptions& options) {
    return classify_compact_into_bloch(sym, space, grid, classify_bounded_into_bloch(sym, space, grid, options),
                                       options);
}

Classification classify_bounded_into_little_bloch(const SymbolPair& sym, [[maybe_unused]] const SpaceSpec& space,
                                                  const RadialGrid& grid, const Classification& bounded,
                                                  const CriteriaOptions& options) {
    std::vector<Verdict> parts = bounded.parts;
    parts.push_back(little_bloch_verdict(sym.u, grid, options));
    const DiskQuantity weighted = [&sym](Complex z) {
        return one_minus_modulus_squared(z) * std::abs(sym.u.jet_unchecked(z).value * sym.phi.jet_unchecked(z).derivative);
    };
    parts.push_back(
        limit_verdict("u_phi_prime_limit", modulus_profile(weighted, grid, sym.u.peak_angles(), options.exec)));
    return assemble(std::move(parts));
}

Classification classify_bounded_into_little_bloch(const SymbolPair& sym, const SpaceSpec& space,
                                                  const RadialGrid& grid, const CriteriaOptions& options) {
    return classify_bounded_into_little_bloch(sym, space, grid, classify_bounded_into_bloch(sym, space, grid, options),
                                              options);
}

Classification classify_compact_into_little_bloch(const SymbolPair& sym, const SpaceSpec& space,
                                                  const RadialGrid& grid, const CriteriaOptions& options) {
    std::vector<Verdict> parts;
    parts.push_back(z_limit_verdict(CriterionQuantity::Q1, "q1_limit", sym, space, grid, options));
    parts.push_back(z_limit_verdict(CriterionQuantity::Q2, "q2_limit", sym, space, grid, options));
    return assemble(std::move(parts));
}

EquivalenceProbe limit_equivalence_q1(const SymbolPair& sym, const SpaceSpec& space, const RadialGrid& grid,
                                      const CriteriaOptions& options) {
    Verdict lhs = z_limit_verdict(CriterionQuantity::Q1, "q1_limit", sym, space, grid, options);
    std::vector<Verdict> rhs;
    rhs.push_back(phi_limit_verdict(CriterionQuantity::Q1, "q1_phi_limit", sym, space, grid, options));
    rhs.push_back(little_bloch_verdict(sym.u, grid, options));
    return finish_probe("q1_limit_equivalence", std::move(lhs), std::move(rhs));
}

EquivalenceProbe limit_equivalence_q2(const SymbolPair& sym, const SpaceSpec& space, const RadialGrid& grid,
                                      const CriteriaOptions& options) {
    Verdict lhs = z_limit_verdict(CriterionQuantity::Q2, "q2_limit", sym, space, grid, options);
    std::vector<Verdict> rhs;
    rhs.push_back(phi_limit_verdict(CriterionQuantity::Q2, "q2_phi_limit", sym, space, grid, options));
    const DiskQuantity gap_squared = [&sym](Complex z) {
        const double gap = 1.0 - std::abs(z);
        return gap * gap * std::abs(sym.u.jet_unchecked(z).value * sym.phi.jet_unchecked(z).derivative);
    };
    rhs.push_back(limit_verdict("gap_squared_u_phi_prime_limit",
                                modulus_profile(gap_squared, grid, sym.u.peak_angles(), options.exec)));
    return finish_probe("q2_limit_equivalence", std::move(lhs), std::move(rhs));
}

double bergman_corollary_ratio(Complex z, const SymbolPair& sym, double p) {
    require_interior(z);
    const SpaceSpec space = SpaceSpec::bergman(p);
    const Jet phi = sym.phi.jet_unchecked(z);
    const double modulus = std::abs(phi.value);
    const double one_minus_sq = (1.0 - modulus) * (1.0 + modulus);
    const double corollary_denominator = std::pow(one_minus_sq, 1.0 + 2.0 / p);
    const double numerator = one_minus_modulus_squared(z) * std::abs(sym.u.jet_unchecked(z).value * phi.derivative);
    if (numerator > 0.0) return q2_unchecked(z, sym, space) / (numerator / corollary_denominator);
    const auto d = denominators(phi.value, space);
    return corollary_denominator / (d.weight_gap * std::pow(d.one_minus_sq, 1.0 + 1.0 / p));
}

}  // namespace wcop
