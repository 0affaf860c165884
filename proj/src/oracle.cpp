#include "wcop/oracle.hpp"

#include "wcop/errors.hpp"
#include "wcop/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wcop {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTrendStep = 0.05;
constexpr double kDecayFraction = 0.25;
constexpr double kZeroValue = 1e-12;

void require_interior(Complex w, const char* what) {
    if (!(std::abs(w) < 1.0)) throw DomainError(std::string(what) + " needs a point with |w| < 1");
}

// |Tf(0)| + max(grid Bloch seminorm, local value at the anchor).
double bloch_value(const DiskFunction& tf, Complex anchor, const RadialGrid& grid, Execution exec) {
    const double hint[] = {std::arg(anchor)};
    const auto sample = grid_sup(
        [&tf](Complex z) { return one_minus_modulus_squared(z) * std::abs(tf.jet_unchecked(z).derivative); }, grid, hint,
        exec);
    const double local = (1.0 - std::norm(anchor)) * std::abs(tf.jet_unchecked(anchor).derivative);
    return std::abs(tf.jet_unchecked(0.0).value) + std::max(sample.value, local);
}

SupSample band_argmax(const DiskQuantity& quantity, int band, const RadialGrid& grid, Execution exec) {
    const auto radii = band_radii(band, grid.panel_order);
    const int m = grid.angular_nodes;
    const auto rows = kernels::row_maxima(exec, radii.size(), m, [&](std::size_t i, std::size_t j) {
        return quantity(std::polar(radii[i], kTwoPi * j / m));
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].value > rows[best].value) best = i;
    return {rows[best].value, std::polar(radii[best], kTwoPi * rows[best].column / m)};
}

bool decaying(const std::vector<double>& v) {
    if (v.size() < 3) return false;
    const double peak = *std::max_element(v.begin(), v.end());
    if (peak <= kZeroValue) return true;
    const std::size_t n = v.size();
    return v[n - 3] > v[n - 2] && v[n - 2] > v[n - 1] && v[n - 1] <= kDecayFraction * peak;
}

bool bounded_away(const std::vector<double>& v) {
    if (v.size() < 3) return false;
    const double peak = *std::max_element(v.begin(), v.end());
    if (peak <= kZeroValue) return false;
    const std::size_t n = v.size();
    return std::min({v[n - 3], v[n - 2], v[n - 1]}) >= kDecayFraction * peak;
}

void fill_probe_values(ProbeSequence& seq, const SymbolPair& sym, const SpaceSpec& space, const RadialGrid& grid,
                       Execution exec) {
    for (Complex z : seq.points) {
        const Complex image = sym.phi.jet_unchecked(z).value;
        seq.f_values.push_back(bloch_value(operator_apply(sym, make_f_w(image, space)), z, grid, exec));
        seq.g_values.push_back(bloch_value(operator_apply(sym, make_g_lambda(image, space)), z, grid, exec));
    }
}

}  // namespace

DiskFunction make_f_w(Complex w, const SpaceSpec& space) {
    require_interior(w, "f_w");
    const double t = space.weight.t();
    const double gap = one_minus_modulus_squared(w);
    const double scale = std::pow(gap, t + 1.0) / space.weight.at_gap(1.0 - std::abs(w));
    return DiskFunction::fractional_kernel(w, 1.0 / space.p + t + 1.0, scale);
}

DiskFunction make_g_lambda(Complex lambda_image, const SpaceSpec& space) {
    require_interior(lambda_image, "g_lambda");
    const double t = space.weight.t();
    const double gap = one_minus_modulus_squared(lambda_image);
    const double weight = space.weight.at_gap(1.0 - std::abs(lambda_image));
    const double q = 1.0 / space.p + t + 1.0;
    // gap^{t+2}/(1-conj(c)z)^{q+1} - gap^{t+1}/(1-conj(c)z)^q
    //   = conj(c) (z - c) gap^{t+1} / (1-conj(c)z)^{q+1},
    // which vanishes exactly at c instead of cancelling two large terms.
    const Complex c_bar = std::conj(lambda_image);
    return DiskFunction::product(DiskFunction::power_series({-c_bar * lambda_image, c_bar}),
                                 DiskFunction::fractional_kernel(lambda_image, q + 1.0, std::pow(gap, t + 1.0) / weight));
}

DiskFunction operator_apply(const SymbolPair& sym, const DiskFunction& f) {
    return DiskFunction::product(sym.u, DiskFunction::composed(f, sym.phi));
}

std::vector<DiskFunction> TestFamily::members(const SpaceSpec& space) const {
    std::vector<DiskFunction> out;
    switch (kind) {
        case FamilyKind::FW:
            for (Complex w : parameters) out.push_back(make_f_w(w, space));
            break;
        case FamilyKind::GLambda:
            for (Complex c : parameters) out.push_back(make_g_lambda(c, space));
            break;
        case FamilyKind::Monomials:
            for (Complex d : parameters) {
                const int degree = static_cast<int>(std::lround(d.real()));
                if (degree < 0) throw ValidationError("monomial degree must be nonnegative");
                std::vector<Complex> coeffs(degree + 1, 0.0);
                coeffs.back() = 1.0;
                out.push_back(DiskFunction::power_series(std::move(coeffs)));
            }
            break;
        case FamilyKind::Custom:
            out = custom;
            break;
    }
    return out;
}

double operator_lower_bound(const SymbolPair& sym, const SpaceSpec& space, const TestFamily& family,
                            const RadialGrid& grid, const NormOptions& options) {
    double best = 0.0;
    for (const auto& f : family.members(space)) {
        const double norm = bergman_type_norm(f, space, grid, options);
        if (norm == 0.0) continue;
        best = std::max(best, bloch_norm(operator_apply(sym, f), grid, options.exec) / norm);
    }
    return best;
}

const char* to_string(Trend trend) noexcept {
    switch (trend) {
        case Trend::Stabilizing: return "Stabilizing";
        case Trend::Diverging: return "Diverging";
        case Trend::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

Trend classify_trend(const std::vector<double>& running) {
    const std::size_t n = running.size();
    if (n < 4) return Trend::Undetermined;
    const double last = running[n - 1];
    if (last <= kZeroValue) return Trend::Stabilizing;
    bool growing = true;
    for (std::size_t i = n - 3; i < n; ++i)
        if (!(running[i] > (1.0 + kTrendStep) * running[i - 1])) growing = false;
    if (growing) return Trend::Diverging;
    if ((last - running[n - 4]) / last < kTrendStep) return Trend::Stabilizing;
    return Trend::Undetermined;
}

SweepTrend matched_lower_bound_sweep(const SymbolPair& sym, const SpaceSpec& space, const RadialGrid& grid,
                                     const NormOptions& options) {
    const auto a = criterion_quantity(CriterionQuantity::Q1, sym, space);
    const auto b = criterion_quantity(CriterionQuantity::Q2, sym, space);
    const DiskQuantity combined = [&](Complex z) { return a(z) + b(z); };
    SweepTrend sweep;
    double running = 0.0;
    for (int k = 0; k < grid.depth; ++k) {
        const Complex lambda = band_argmax(combined, k, grid, options.exec).where;
        const auto f = make_f_w(sym.phi.jet_unchecked(lambda).value, space);
        const double norm = bergman_type_norm(f, space, grid, options);
        const double value = norm == 0.0 ? 0.0 : bloch_value(operator_apply(sym, f), lambda, grid, options.exec) / norm;
        running = std::max(running, value);
        sweep.depths.push_back(k);
        sweep.points.push_back(lambda);
        sweep.member_values.push_back(value);
        sweep.values.push_back(running);
    }
    sweep.trend = classify_trend(sweep.values);
    return sweep;
}

SweepTrend radial_lower_bound_sweep(const SymbolPair& sym, const SpaceSpec& space, const std::vector<int>& depths,
                                    const RadialGrid& grid, const NormOptions& options) {
    SweepTrend sweep;
    double running = 0.0;
    for (int k : depths) {
        const Complex w = 1.0 - std::ldexp(1.0, -k);
        const auto f = make_f_w(w, space);
        const double norm = bergman_type_norm(f, space, grid, options);
        const double value = norm == 0.0 ? 0.0 : bloch_norm(operator_apply(sym, f), grid, options.exec) / norm;
        running = std::max(running, value);
        sweep.depths.push_back(k);
        sweep.points.push_back(w);
        sweep.member_values.push_back(value);
        sweep.values.push_back(running);
    }
    sweep.trend = classify_trend(sweep.values);
    return sweep;
}

const char* to_string(ProbeEvidence evidence) noexcept {
    switch (evidence) {
        case ProbeEvidence::VacuouslyCompact: return "VacuouslyCompactEvidence";
        case ProbeEvidence::Compact: return "CompactEvidence";
        case ProbeEvidence::NonCompact: return "NonCompactEvidence";
        case ProbeEvidence::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

CompactnessProbe compactness_probe(const SymbolPair& sym, const SpaceSpec& space, const RadialGrid& grid,
                                   const NormOptions& options) {
    CompactnessProbe probe;
    if (sym.phi.sup_norm_estimate() < 1.0) {
        probe.evidence = ProbeEvidence::VacuouslyCompact;
        return probe;
    }
    const int m = grid.angular_nodes;
    const DiskQuantity modulus = [&sym](Complex z) { return std::abs(sym.phi.jet_unchecked(z).value); };

    ProbeSequence radial{"argmax_modulus", {}, {}, {}, {}};
    for (int k = 1; k < grid.depth; ++k) {
        const double r = 1.0 - std::ldexp(1.0, -k);
        const auto rows = kernels::row_maxima(options.exec, 1, m, [&](std::size_t, std::size_t j) {
            return modulus(std::polar(r, kTwoPi * j / m));
        });
        radial.depths.push_back(k);
        radial.points.push_back(std::polar(r, kTwoPi * rows[0].column / m));
    }

    // Bands of |phi|: the best q1 + q2 sample whose image lies in [1 - 2^{-k}, 1 - 2^{-k-1}).
    ProbeSequence matched{"matched_level", {}, {}, {}, {}};
    {
        const auto a = criterion_quantity(CriterionQuantity::Q1, sym, space);
        const auto b = criterion_quantity(CriterionQuantity::Q2, sym, space);
        std::vector<double> best(grid.depth, -1.0);
        std::vector<Complex> where(grid.depth, 0.0);
        for (int band = 0; band < grid.depth; ++band) {
            const auto radii = band_radii(band, grid.panel_order);
            for (double r : radii) {
                for (int j = 0; j < m; ++j) {
                    const Complex z = std::polar(r, kTwoPi * j / m);
                    const double level = modulus(z);
                    if (!(level > 0.0)) continue;
                    const int k = static_cast<int>(std::floor(-std::log2(1.0 - level)));
                    if (k < 1 || k >= grid.depth) continue;
                    const double value = a(z) + b(z);
                    if (value > best[k]) {
                        best[k] = value;
                        where[k] = z;
                    }
                }
            }
        }
        for (int k = 1; k < grid.depth; ++k) {
            if (best[k] < 0.0) continue;
            matched.depths.push_back(k);
            matched.points.push_back(where[k]);
        }
    }

    probe.sequences = {radial, matched};
    bool all_decay = true, any_away = false;
    for (auto& seq : probe.sequences) {
        fill_probe_values(seq, sym, space, grid, options.exec);
        all_decay = all_decay && decaying(seq.f_values) && decaying(seq.g_values);
        any_away = any_away || bounded_away(seq.f_values) || bounded_away(seq.g_values);
    }
    probe.evidence = any_away ? ProbeEvidence::NonCompact
                     : all_decay ? ProbeEvidence::Compact
                                 : ProbeEvidence::Undetermined;
    return probe;
}

std::vector<NamedFunction> envelope_battery(const SpaceSpec& space) {
    auto monomial = [](int degree) {
        std::vector<Complex> coeffs(degree + 1, 0.0);
        coeffs.back() = 1.0;
        return DiskFunction::power_series(std::move(coeffs));
    };
    return {
        {"1", monomial(0)},
        {"z", monomial(1)},
        {"z^2", monomial(2)},
        {"z^5", monomial(5)},
        {"f_w(0)", make_f_w(0.0, space)},
        {"f_w(0.5)", make_f_w(0.5, space)},
        {"f_w(0.9)", make_f_w(0.9, space)},
        {"f_w(0.99)", make_f_w(0.99, space)},
    };
}

EmpiricalConstants measure_empirical_constants(const SpaceSpec& space, const RadialGrid& grid,
                                               const NormOptions& options) {
    EmpiricalConstants out;
    bool first = true;
    for (const auto& [name, f] : envelope_battery(space)) {
        EnvelopeMeasurement m;
        m.name = name;
        m.envelopes = pointwise_envelopes(f, space, grid, options);
        m.derivative_norm = derivative_form_norm(f, space, grid, options);
        m.norm_ratio = m.envelopes.norm == 0.0 ? 1.0 : m.derivative_norm / m.envelopes.norm;
        out.growth_max = std::max(out.growth_max, m.envelopes.growth);
        out.derivative_growth_max = std::max(out.derivative_growth_max, m.envelopes.derivative_growth);
        out.norm_ratio_min = first ? m.norm_ratio : std::min(out.norm_ratio_min, m.norm_ratio);
        out.norm_ratio_max = first ? m.norm_ratio : std::max(out.norm_ratio_max, m.norm_ratio);
        first = false;
        out.members.push_back(std::move(m));
    }
    return out;
}

double chain_constant(const SymbolPair& sym, const SpaceSpec& space, double sup_q1, double sup_q2,
                      const RadialGrid& grid, const NormOptions& options) {
    const double criterion = sup_q1 + sup_q2;
    if (!(criterion > 0.0)) return 0.0;
    double best = 0.0;
    for (const auto& [name, f] : envelope_battery(space)) {
        const double norm = bergman_type_norm(f, space, grid, options);
        if (norm == 0.0) continue;
        best = std::max(best, bloch_seminorm(operator_apply(sym, f), grid, options.exec) / (criterion * norm));
    }
    return best;
}

}  // namespace wcop
