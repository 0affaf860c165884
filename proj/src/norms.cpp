#include "wcop/norms.hpp"

#include "wcop/errors.hpp"
#include "wcop/geometry.hpp"
#include "wcop/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace wcop {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double abs_pow(Complex c, double p) {
    return p == 2.0 ? std::norm(c) : std::pow(std::abs(c), p);
}

std::vector<double> sample_angles(int angular_nodes, std::span<const double> extra) {
    std::vector<double> angles;
    angles.reserve(angular_nodes + extra.size());
    for (int j = 0; j < angular_nodes; ++j) angles.push_back(kTwoPi * j / angular_nodes);
    for (double a : extra) {
        double t = std::fmod(a, kTwoPi);
        if (t < 0.0) t += kTwoPi;
        angles.push_back(t);
    }
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end(), [](double a, double b) { return b - a < 1e-14; }),
                 angles.end());
    return angles;
}

// Neighbouring angles of angles[j] on the circle.
std::pair<double, double> angle_bracket(const std::vector<double>& angles, std::size_t j) {
    const std::size_t n = angles.size();
    const double prev = j == 0 ? angles[n - 1] - kTwoPi : angles[j - 1];
    const double next = j + 1 == n ? angles[0] + kTwoPi : angles[j + 1];
    return {prev, next};
}

// Coordinate-wise golden-section refinement inside [r_lo, r_hi] x [t_lo, t_hi].
SupSample refine(const DiskQuantity& q, SupSample start, double r_lo, double r_hi, double t_lo, double t_hi) {
    double r = std::abs(start.where);
    double theta = std::arg(start.where);
    if (theta < t_lo) theta += kTwoPi;
    if (theta > t_hi) theta -= kTwoPi;
    SupSample best = start;
    auto consider = [&](double rr, double tt) {
        const Complex z = std::polar(rr, tt);
        const double v = q(z);
        if (v > best.value) best = {v, z};
    };
    for (int round = 0; round < 2; ++round) {
        if (r_hi > r_lo) {
            const double rr = golden_section_max([&](double x) { return q(std::polar(x, theta)); }, r_lo, r_hi);
            consider(rr, theta);
            r = std::abs(best.where);
        }
        if (r > 0.0 && t_hi > t_lo) {
            const double tt = golden_section_max([&](double t) { return q(std::polar(r, t)); }, t_lo, t_hi);
            consider(tt == tt ? r : r, tt);
            theta = std::arg(best.where);
            if (theta < t_lo) theta += kTwoPi;
            if (theta > t_hi) theta -= kTwoPi;
        }
    }
    return best;
}

std::vector<double> all_radii(const RadialGrid& grid) {
    std::vector<double> radii;
    for (int k = 0; k < grid.depth; ++k) {
        auto band = band_radii(k, grid.panel_order);
        radii.insert(radii.end(), band.begin(), band.end());
    }
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    return radii;
}

double radius_at_gap(double x) { return 1.0 - x; }

}  // namespace

RadialGrid::RadialGrid(int depth_, int angular_nodes_, int panel_order_)
    : depth(depth_), angular_nodes(angular_nodes_), panel_order(panel_order_) {
    validate();
}

void RadialGrid::validate() const {
    std::ostringstream os;
    if (depth < 4) os << "grid depth K must be at least 4 (got " << depth << ")";
    else if (depth > 48) os << "grid depth K must be at most 48 (got " << depth << ")";
    else if (angular_nodes < 64 || (angular_nodes & (angular_nodes - 1)) != 0)
        os << "angular nodes M must be a power of two >= 64 (got " << angular_nodes << ")";
    else if (panel_order < 8) os << "panel order must be at least 8 (got " << panel_order << ")";
    else return;
    throw ValidationError(os.str());
}

int BoundaryProfile::last_sampled() const noexcept {
    for (int k = static_cast<int>(states.size()) - 1; k >= 0; --k)
        if (states[k] == EntryState::Sampled) return k;
    return -1;
}

bool BoundaryProfile::nonincreasing() const noexcept {
    for (std::size_t k = 1; k < values.size(); ++k)
        if (values[k] > values[k - 1]) return false;
    return true;
}

std::vector<double> band_radii(int band, int panel_order) {
    static thread_local int cached_order = -1;
    static thread_local GaussLegendreRule rule;
    if (cached_order != panel_order) {
        rule = gauss_legendre(panel_order);
        cached_order = panel_order;
    }
    const double lo = std::ldexp(1.0, -band - 1), hi = std::ldexp(1.0, -band);
    std::vector<double> radii;
    radii.reserve(panel_order + 2);
    radii.push_back(radius_at_gap(hi));
    for (double node : rule.nodes) radii.push_back(radius_at_gap(lo + 0.5 * (hi - lo) * (1.0 + node)));
    radii.push_back(radius_at_gap(lo));
    std::sort(radii.begin(), radii.end());
    return radii;
}

SupSample grid_sup(const DiskQuantity& quantity, const RadialGrid& grid, std::span<const double> extra_angles,
                   Execution exec) {
    grid.validate();
    const auto radii = all_radii(grid);
    const auto angles = sample_angles(grid.angular_nodes, extra_angles);
    const auto rows = kernels::row_maxima(exec, radii.size(), angles.size(), [&](std::size_t i, std::size_t j) {
        return quantity(std::polar(radii[i], angles[j]));
    });
    std::size_t best_row = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].value > rows[best_row].value) best_row = i;
    const std::size_t col = rows[best_row].column;
    SupSample start{rows[best_row].value, std::polar(radii[best_row], angles[col])};
    const double r_lo = best_row == 0 ? radii[0] : radii[best_row - 1];
    const double r_hi = best_row + 1 == radii.size() ? radii.back() : radii[best_row + 1];
    const auto [t_lo, t_hi] = angle_bracket(angles, col);
    return refine(quantity, start, r_lo, r_hi, t_lo, t_hi);
}

BoundaryProfile modulus_profile(const DiskQuantity& quantity, const RadialGrid& grid,
                                std::span<const double> extra_angles, Execution exec) {
    grid.validate();
    const auto angles = sample_angles(grid.angular_nodes, extra_angles);
    std::vector<double> radii;
    std::vector<std::size_t> band_start;
    for (int k = 0; k < grid.depth; ++k) {
        band_start.push_back(radii.size());
        auto band = band_radii(k, grid.panel_order);
        radii.insert(radii.end(), band.begin(), band.end());
    }
    band_start.push_back(radii.size());
    const auto rows = kernels::row_maxima(exec, radii.size(), angles.size(), [&](std::size_t i, std::size_t j) {
        return quantity(std::polar(radii[i], angles[j]));
    });

    BoundaryProfile profile;
    profile.trigger = ProfileTrigger::ByModulusOfZ;
    profile.thresholds.resize(grid.depth);
    profile.band_maxima.resize(grid.depth);
    profile.values.resize(grid.depth);
    profile.states.assign(grid.depth, EntryState::Sampled);
    for (int k = 0; k < grid.depth; ++k) {
        profile.thresholds[k] = 1.0 - std::ldexp(1.0, -k);
        std::size_t best = band_start[k];
        for (std::size_t i = band_start[k]; i < band_start[k + 1]; ++i)
            if (rows[i].value > rows[best].value) best = i;
        const std::size_t col = rows[best].column;
        SupSample start{rows[best].value, std::polar(radii[best], angles[col])};
        const double r_lo = best == band_start[k] ? radii[best] : radii[best - 1];
        const double r_hi = best + 1 == band_start[k + 1] ? radii[best] : radii[best + 1];
        const auto [t_lo, t_hi] = angle_bracket(angles, col);
        profile.band_maxima[k] = refine(quantity, start, r_lo, r_hi, t_lo, t_hi).value;
    }
    double running = 0.0;
    for (int k = grid.depth - 1; k >= 0; --k) {
        running = std::max(running, profile.band_maxima[k]);
        profile.values[k] = running;
    }
    return profile;
}

BoundaryProfile level_profile(const DiskQuantity& quantity, const DiskQuantity& level, double level_bound,
                              bool force, const RadialGrid& grid, Execution exec) {
    grid.validate();
    const auto radii = all_radii(grid);
    const auto angles = sample_angles(grid.angular_nodes, {});
    const std::size_t n = radii.size() * angles.size();
    auto point = [&](std::size_t i) { return std::polar(radii[i / angles.size()], angles[i % angles.size()]); };
    std::vector<double> levels(n), values(n);
    kernels::evaluate(exec, n, [&](std::size_t i) { return level(point(i)); }, levels);
    kernels::evaluate(exec, n, [&](std::size_t i) { return quantity(point(i)); }, values);

    const int depth = grid.depth;
    BoundaryProfile profile;
    profile.trigger = ProfileTrigger::ByModulusOfPhiOfZ;
    profile.thresholds.resize(depth);
    for (int k = 0; k < depth; ++k) profile.thresholds[k] = 1.0 - std::ldexp(1.0, -k);
    profile.band_maxima.assign(depth, 0.0);
    std::vector<bool> occupied(depth, false);
    for (std::size_t i = 0; i < n; ++i) {
        const double l = levels[i];
        if (!(l > 0.0)) continue;
        // Largest k with l > 1 - 2^{-k}.
        int k = 0;
        while (k + 1 < depth && l > profile.thresholds[k + 1]) ++k;
        occupied[k] = true;
        profile.band_maxima[k] = std::max(profile.band_maxima[k], values[i]);
    }
    profile.values.assign(depth, 0.0);
    profile.states.assign(depth, EntryState::Sampled);
    double running = 0.0;
    bool any = false;
    for (int k = depth - 1; k >= 0; --k) {
        if (occupied[k]) {
            any = true;
            running = std::max(running, profile.band_maxima[k]);
        }
        profile.values[k] = any ? running : 0.0;
        if (!force && level_bound <= profile.thresholds[k]) profile.states[k] = EntryState::VacuouslyEmpty;
        else if (!any) profile.states[k] = EntryState::Unsampled;
    }
    return profile;
}

double integral_mean(const DiskFunction& f, double p, double r, int angular_nodes, Execution exec) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("integral mean needs 0 <= r < 1");
    if (!(p > 0.0)) throw DomainError("integral mean needs p > 0");
    if (angular_nodes < 1) throw DomainError("integral mean needs at least one node");
    const double mean = kernels::chunked_mean(exec, static_cast<std::size_t>(angular_nodes), [&](std::size_t j) {
        return abs_pow(f.jet_unchecked(std::polar(r, kTwoPi * j / angular_nodes)).value, p);
    });
    return std::pow(mean, 1.0 / p);
}

namespace {

double circle_mean(const DiskFunction& f, double p, double r, bool derivative, std::span<const double> hints,
                   double tol) {
    if (r == 0.0) {
        const Jet j = f.jet_unchecked(0.0);
        return abs_pow(derivative ? j.derivative : j.value, p);
    }
    return periodic_mean(
        [&](double theta) {
            const Jet j = f.jet_unchecked(std::polar(r, theta));
            return abs_pow(derivative ? j.derivative : j.value, p);
        },
        hints, tol);
}

GapIntegralOptions gap_options(const RadialGrid& grid, const NormOptions& options) {
    GapIntegralOptions gap;
    gap.min_panels = grid.depth;
    gap.max_panels = std::max(options.max_panels, grid.depth + 3);
    gap.rel_tol = options.rel_tol;
    return gap;
}

}  // namespace

double bergman_type_norm(const DiskFunction& f, const SpaceSpec& space, const RadialGrid& grid,
                         const NormOptions& options) {
    grid.validate();
    const double p = space.p;
    const auto hints = f.peak_angles();
    const auto rule = gauss_legendre(grid.panel_order);
    const auto integral = integrate_dyadic_gap(
        [&](double x) {
            const double r = radius_at_gap(x);
            const double w = std::pow(space.weight.at_gap(x), p);
            return circle_mean(f, p, r, false, hints, options.angular_tol) * w / x * r;
        },
        rule, gap_options(grid, options), options.exec);
    return std::pow(std::max(integral.value, 0.0), 1.0 / p);
}

double bergman_type_area_integral(const DiskFunction& f, const SpaceSpec& space, const RadialGrid& grid,
                                  const NormOptions& options) {
    grid.validate();
    const double p = space.p;
    const auto rule = gauss_legendre(grid.panel_order);
    const int m = grid.angular_nodes;
    const auto integral = integrate_dyadic_gap(
        [&](double x) {
            const double r = radius_at_gap(x);
            double ring = 0.0;
            for (int j = 0; j < m; ++j)
                ring += abs_pow(f.jet_unchecked(std::polar(r, kTwoPi * j / m)).value, p) * (kTwoPi / m);
            // dA = r dr dtheta / pi
            return ring / std::numbers::pi * r * std::pow(space.weight.at_gap(x), p) / x;
        },
        rule, gap_options(grid, options), options.exec);
    return integral.value;
}

double derivative_form_norm(const DiskFunction& f, const SpaceSpec& space, const RadialGrid& grid,
                            const NormOptions& options) {
    grid.validate();
    const double p = space.p;
    const auto hints = f.peak_angles();
    const auto rule = gauss_legendre(grid.panel_order);
    const auto integral = integrate_dyadic_gap(
        [&](double x) {
            const double r = radius_at_gap(x);
            const double one_minus_r2 = x * (2.0 - x);
            const double w = std::pow(space.weight.at_gap(x), p);
            return 2.0 * r * circle_mean(f, p, r, true, hints, options.angular_tol) * std::pow(one_minus_r2, p) * w /
                   x;
        },
        rule, gap_options(grid, options), options.exec);
    const double at_origin = abs_pow(f.jet_unchecked(0.0).value, p);
    return std::pow(at_origin + std::max(integral.value, 0.0), 1.0 / p);
}

SupSample bloch_seminorm_sample(const DiskFunction& f, const RadialGrid& grid, Execution exec) {
    const auto hints = f.peak_angles();
    return grid_sup(
        [&f](Complex z) { return one_minus_modulus_squared(z) * std::abs(f.jet_unchecked(z).derivative); }, grid, hints,
        exec);
}

double bloch_seminorm(const DiskFunction& f, const RadialGrid& grid, Execution exec) {
    return bloch_seminorm_sample(f, grid, exec).value;
}

double bloch_norm(const DiskFunction& f, const RadialGrid& grid, Execution exec) {
    return std::abs(f.jet_unchecked(0.0).value) + bloch_seminorm(f, grid, exec);
}

LittleBlochProfile little_bloch_profile(const DiskFunction& f, const RadialGrid& grid, Execution exec) {
    LittleBlochProfile result;
    const auto hints = f.peak_angles();
    const DiskQuantity q = [&f](Complex z) { return one_minus_modulus_squared(z) * std::abs(f.jet_unchecked(z).derivative); };
    result.profile = modulus_profile(q, grid, hints, exec);
    result.seminorm = std::max(grid_sup(q, grid, hints, exec).value, result.profile.values.front());
    const auto& v = result.profile.values;
    const std::size_t n = v.size();
    const double floor = std::max(1e-3 * result.seminorm, 1e-9);
    const bool decreasing = v[n - 3] > v[n - 2] && v[n - 2] > v[n - 1];
    const bool negligible = v[n - 3] <= 1e-9;
    result.little_bloch = v[n - 1] < floor && (decreasing || negligible);
    return result;
}

SwIntegral sw_integral_check(double beta, double m, double rho, const RadialGrid& grid) {
    if (!(beta > -1.0)) throw DomainError("integral check needs beta > -1");
    if (!(m > 1.0 + beta)) throw DomainError("integral check needs m > 1 + beta");
    if (!(rho > 0.0 && rho < 1.0)) throw DomainError("integral check needs 0 < rho < 1");
    grid.validate();
    const double gap = 1.0 - rho;
    GapIntegralOptions options;
    options.min_panels = grid.depth;
    options.max_panels = 1000;
    options.rel_tol = 1e-13;
    const auto rule = gauss_legendre(grid.panel_order);
    const auto integral = integrate_dyadic_gap(
        [&](double x) { return std::pow(x, beta) / std::pow(gap + rho * x, m); }, rule, options,
        Execution::Serial);
    return {integral.value, std::pow(gap, 1.0 + beta - m)};
}

PointwiseEnvelopes pointwise_envelopes(const DiskFunction& f, const SpaceSpec& space, const RadialGrid& grid,
                                       const NormOptions& options) {
    PointwiseEnvelopes env;
    env.norm = bergman_type_norm(f, space, grid, options);
    if (env.norm == 0.0) return env;
    const double p = space.p;
    const auto hints = f.peak_angles();
    const auto growth = grid_sup(
        [&](Complex z) {
            const double r = std::abs(z);
            return std::abs(f.jet_unchecked(z).value) * space.weight.at_gap(1.0 - r) *
                   std::pow(1.0 - r * r, 1.0 / p);
        },
        grid, hints, options.exec);
    const auto derivative_growth = grid_sup(
        [&](Complex z) {
            const double r = std::abs(z);
            return std::abs(f.jet_unchecked(z).derivative) * space.weight.at_gap(1.0 - r) *
                   std::pow(1.0 - r * r, 1.0 / p + 1.0);
        },
        grid, hints, options.exec);
    env.growth = growth.value / env.norm;
    env.derivative_growth = derivative_growth.value / env.norm;
    return env;
}

}  // namespace wcop
