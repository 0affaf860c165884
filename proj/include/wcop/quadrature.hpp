#pragma once

#include "wcop/kernels.hpp"

#include <functional>
#include <span>
#include <vector>

namespace wcop {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int order);

/// (1/2pi) * integral over [0, 2pi) of a periodic integrand by globally
/// adaptive Gauss-Kronrod (7/15). The initial partition has `initial_panels`
/// uniform pieces plus a breakpoint at every entry of `breakpoints`, so narrow
/// peaks at known angles sit at panel ends where Kronrod nodes cluster.
double periodic_mean(const std::function<double(double)>& integrand, std::span<const double> breakpoints,
                     double rel_tol = 1e-10, int initial_panels = 16, int max_panels = 8000);

struct GapIntegralOptions {
    /// Panels that are always evaluated before stopping is considered.
    int min_panels = 8;
    int max_panels = 50;
    /// Stop once a panel contributes less than rel_tol of the running sum.
    double rel_tol = 1e-10;
};

struct GapIntegral {
    double value = 0.0;
    /// Geometric tail estimate added past the last panel.
    double tail = 0.0;
    std::vector<double> panel_contributions;
};

/// integral_0^1 g(x) dx on dyadic panels [2^{-k-1}, 2^{-k}], k = 0, 1, ...
///
/// Panels are added until the contributions decay geometrically below
/// rel_tol; the remaining tail is summed as a geometric series. Throws
/// NonConvergent when the last three contributions are not geometrically
/// decaying at max_panels.
GapIntegral integrate_dyadic_gap(const std::function<double(double)>& g, const GaussLegendreRule& rule,
                                 const GapIntegralOptions& options, Execution exec = Execution::Parallel);

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
/// Returns the abscissa of the best evaluated point.
double golden_section_max(const std::function<double(double)>& f, double lo, double hi, int iterations = 60);

}  // namespace wcop
