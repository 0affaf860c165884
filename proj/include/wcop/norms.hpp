#pragma once

#include "wcop/disk_function.hpp"
#include "wcop/kernels.hpp"
#include "wcop/weights.hpp"

#include <functional>
#include <vector>

namespace wcop {

/// Sampling and quadrature resolution shared by every disk computation.
///
/// Annuli are r_k = 1 - 2^{-k}, k = 0..depth; each radial panel carries
/// panel_order Gauss-Legendre nodes; angles are 2 pi j / angular_nodes.
struct RadialGrid {
    int depth = 16;
    int angular_nodes = 512;
    int panel_order = 12;

    RadialGrid() = default;
    RadialGrid(int depth, int angular_nodes, int panel_order);
    void validate() const;
};

enum class ProfileTrigger { ByModulusOfZ, ByModulusOfPhiOfZ };
enum class EntryState { Sampled, VacuouslyEmpty, Unsampled };

/// Nested suprema of a tracked quantity over the regions past each threshold.
///
/// values[k] is the sup over {trigger > thresholds[k]} (restricted to the
/// sampled disk |z| <= 1 - 2^{-depth}), so it is nonincreasing in k.
/// band_maxima[k] is the sup over thresholds[k] <= trigger < thresholds[k+1];
/// divergence and decay rates are read from those.
struct BoundaryProfile {
    ProfileTrigger trigger = ProfileTrigger::ByModulusOfZ;
    std::vector<double> thresholds;
    std::vector<double> values;
    std::vector<double> band_maxima;
    std::vector<EntryState> states;

    std::size_t size() const noexcept { return thresholds.size(); }
    /// Index of the last Sampled entry, or -1.
    int last_sampled() const noexcept;
    bool nonincreasing() const noexcept;
};

/// A real quantity sampled over the disk.
using DiskQuantity = std::function<double(Complex)>;

struct SupSample {
    double value = 0.0;
    Complex where = 0.0;
};

/// Radii of band k (1 - 2^{-k} to 1 - 2^{-k-1}): both ends plus the panel nodes, ascending.
std::vector<double> band_radii(int band, int panel_order);

/// Sup over the full sampling grid (all bands, all angles plus `extra_angles`)
/// followed by golden-section refinement in r and theta around the best sample.
SupSample grid_sup(const DiskQuantity& quantity, const RadialGrid& grid, std::span<const double> extra_angles = {},
                   Execution exec = Execution::Parallel);

/// Profile of `quantity` by |z|, one entry per band; each band maximum is refined.
BoundaryProfile modulus_profile(const DiskQuantity& quantity, const RadialGrid& grid,
                                std::span<const double> extra_angles = {}, Execution exec = Execution::Parallel);

/// Profile of `quantity` over the level sets of `level` (|phi(z)| in practice).
/// Entries whose threshold is at least `level_bound` are VacuouslyEmpty unless
/// `force` is set; nonempty regions with no grid sample are Unsampled.
BoundaryProfile level_profile(const DiskQuantity& quantity, const DiskQuantity& level, double level_bound,
                              bool force, const RadialGrid& grid, Execution exec = Execution::Parallel);

/// M_p(f, r) by the M-point trapezoid rule.
double integral_mean(const DiskFunction& f, double p, double r, int angular_nodes,
                     Execution exec = Execution::Parallel);

struct NormOptions {
    double rel_tol = 1e-10;
    double angular_tol = 1e-10;
    int max_panels = 50;
    Execution exec = Execution::Parallel;
};

/// ||f||_{H(p,p,omega)} in integral-means form:
/// (integral_0^1 M_p^p(r,f) omega^p(r) / (1-r) r dr)^{1/p}.
double bergman_type_norm(const DiskFunction& f, const SpaceSpec& space, const RadialGrid& grid,
                         const NormOptions& options = {});

/// integral_D |f|^p omega^p(|z|) / (1-|z|) dA in normalized area measure,
/// computed by a polar product rule on the uniform angular grid.
double bergman_type_area_integral(const DiskFunction& f, const SpaceSpec& space, const RadialGrid& grid,
                                  const NormOptions& options = {});

/// (|f(0)|^p + integral_D |f'|^p (1-|z|^2)^p omega^p(|z|)/(1-|z|) dA)^{1/p}.
double derivative_form_norm(const DiskFunction& f, const SpaceSpec& space, const RadialGrid& grid,
                            const NormOptions& options = {});

/// B(f) = sup (1-|z|^2) |f'(z)|.
double bloch_seminorm(const DiskFunction& f, const RadialGrid& grid, Execution exec = Execution::Parallel);
SupSample bloch_seminorm_sample(const DiskFunction& f, const RadialGrid& grid, Execution exec = Execution::Parallel);
/// |f(0)| + B(f).
double bloch_norm(const DiskFunction& f, const RadialGrid& grid, Execution exec = Execution::Parallel);

struct LittleBlochProfile {
    BoundaryProfile profile;
    double seminorm = 0.0;
    bool little_bloch = false;
};

/// (1-|z|^2)|f'(z)| by |z|. Little Bloch when the last value is below
/// max(1e-3 B(f), 1e-9) and the last three values decrease.
LittleBlochProfile little_bloch_profile(const DiskFunction& f, const RadialGrid& grid,
                                        Execution exec = Execution::Parallel);

struct SwIntegral {
    double numeric = 0.0;
    double bound_rhs = 0.0;
};

/// integral_0^1 (1-r)^beta / (1 - rho r)^m dr against (1-rho)^{1+beta-m}.
SwIntegral sw_integral_check(double beta, double m, double rho, const RadialGrid& grid);

struct PointwiseEnvelopes {
    double norm = 0.0;
    /// sup |f| omega(|z|) (1-|z|^2)^{1/p} / ||f||.
    double growth = 0.0;
    /// sup |f'| omega(|z|) (1-|z|^2)^{1/p+1} / ||f||.
    double derivative_growth = 0.0;
};

PointwiseEnvelopes pointwise_envelopes(const DiskFunction& f, const SpaceSpec& space, const RadialGrid& grid,
                                       const NormOptions& options = {});

}  // namespace wcop
