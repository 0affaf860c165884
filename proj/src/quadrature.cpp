#include "wcop/quadrature.hpp"

#include "wcop/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>

namespace wcop {

GaussLegendreRule gauss_legendre(int order) {
    if (order < 1) throw ValidationError("Gauss-Legendre order must be positive");
    GaussLegendreRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int n = 2; n <= order; ++n) {
                const double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
                p0 = p1;
                p1 = p2;
            }
            if (order == 1) p0 = 1.0;
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int n = 2; n <= order; ++n) {
            const double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
            p0 = p1;
            p1 = p2;
        }
        if (order == 1) p0 = 1.0;
        dp = order * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
    return rule;
}

namespace {

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo, hi, integral, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel kronrod15(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[j] * pair;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

double periodic_mean(const std::function<double(double)>& integrand, std::span<const double> breakpoints,
                     double rel_tol, int initial_panels, int max_panels) {
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> cuts;
    cuts.reserve(initial_panels + breakpoints.size() + 1);
    for (int j = 0; j < initial_panels; ++j) cuts.push_back(two_pi * j / initial_panels);
    for (double b : breakpoints) {
        double t = std::fmod(b, two_pi);
        if (t < 0.0) t += two_pi;
        cuts.push_back(t);
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> unique_cuts;
    for (double c : cuts)
        if (unique_cuts.empty() || c - unique_cuts.back() > 1e-13) unique_cuts.push_back(c);
    if (two_pi - unique_cuts.back() <= 1e-13) unique_cuts.pop_back();
    unique_cuts.push_back(two_pi);

    std::priority_queue<Panel> queue;
    double total = 0.0, error = 0.0;
    for (std::size_t i = 0; i + 1 < unique_cuts.size(); ++i) {
        const Panel p = kronrod15(integrand, unique_cuts[i], unique_cuts[i + 1]);
        total += p.integral;
        error += p.error;
        queue.push(p);
    }
    while (error > rel_tol * std::abs(total) && static_cast<int>(queue.size()) < max_panels) {
        const Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) break;
        const Panel left = kronrod15(integrand, worst.lo, mid);
        const Panel right = kronrod15(integrand, mid, worst.hi);
        total += left.integral + right.integral - worst.integral;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }
    // Resum from the final partition so round-off from the running updates does not accumulate.
    std::vector<Panel> panels;
    panels.reserve(queue.size());
    while (!queue.empty()) {
        panels.push_back(queue.top());
        queue.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
    double sum = 0.0;
    for (const Panel& p : panels) sum += p.integral;
    return sum / two_pi;
}

GapIntegral integrate_dyadic_gap(const std::function<double(double)>& g, const GaussLegendreRule& rule,
                                 const GapIntegralOptions& options, Execution exec) {
    const std::size_t order = rule.nodes.size();
    GapIntegral result;
    double running = 0.0;
    std::vector<double> values;

    auto geometric = [](double c0, double c1, double c2) {
        if (!(c0 > 0.0 && c1 > 0.0 && c2 > 0.0)) return false;
        const double q1 = c1 / c0, q2 = c2 / c1;
        return q1 < 0.999 && q2 < 0.999 && std::abs(q2 - q1) <= 0.1;
    };

    int next = 0;
    while (next < options.max_panels) {
        const int batch = std::min(next == 0 ? std::max(options.min_panels, 4) : 4, options.max_panels - next);
        const int first = next;
        values.assign(static_cast<std::size_t>(batch) * order, 0.0);
        kernels::evaluate(
            exec, values.size(),
            [&](std::size_t i) {
                const int k = first + static_cast<int>(i / order);
                const double lo = std::ldexp(1.0, -k - 1), hi = std::ldexp(1.0, -k);
                const double x = lo + 0.5 * (hi - lo) * (1.0 + rule.nodes[i % order]);
                return g(x);
            },
            values);
        for (int b = 0; b < batch; ++b) {
            const int k = first + b;
            const double half = 0.5 * (std::ldexp(1.0, -k) - std::ldexp(1.0, -k - 1));
            double c = 0.0;
            for (std::size_t i = 0; i < order; ++i) c += rule.weights[i] * values[b * order + i];
            c *= half;
            result.panel_contributions.push_back(c);
            running += c;
            const auto n = result.panel_contributions.size();
            if (static_cast<int>(n) < std::max(options.min_panels, 3)) continue;
            const double c0 = result.panel_contributions[n - 3], c1 = result.panel_contributions[n - 2];
            if (c0 == 0.0 && c1 == 0.0 && c == 0.0) {
                result.value = running;
                return result;
            }
            if (geometric(c0, c1, c) && c <= options.rel_tol * running) {
                const double q = c / c1;
                result.tail = c * q / (1.0 - q);
                result.value = running + result.tail;
                return result;
            }
        }
        next += batch;
    }
    const auto n = result.panel_contributions.size();
    const double c0 = result.panel_contributions[n - 3], c1 = result.panel_contributions[n - 2],
                 c2 = result.panel_contributions[n - 1];
    if (!geometric(c0, c1, c2)) {
        std::ostringstream os;
        os << "dyadic panel contributions do not decay geometrically after " << n << " panels (last three: " << c0
           << ", " << c1 << ", " << c2 << ")";
        throw NonConvergent(os.str());
    }
    const double q = c2 / c1;
    result.tail = c2 * q / (1.0 - q);
    result.value = running + result.tail;
    return result;
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi, int iterations) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iterations && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++i) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? c : d;
}

}  // namespace wcop
