#pragma once

#include "wcop/disk_function.hpp"
#include "wcop/norms.hpp"
#include "wcop/self_map.hpp"
#include "wcop/weights.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wcop {

/// Multiplier u and self-map phi of the operator f -> u * (f o phi).
struct SymbolPair {
    DiskFunction u;
    SelfMap phi = SelfMap::identity();
};

enum class VerdictStatus { Holds, Fails, Inconclusive };
enum class CriterionKind { Supremum, LimitToZero };
enum class CriterionQuantity { Q1, Q2 };

const char* to_string(VerdictStatus status) noexcept;

/// Slope window and tolerances of the tail tests.
inline constexpr int kSlopeWindow = 4;
inline constexpr double kDivergenceSlope = 0.05;
inline constexpr double kFlatSlope = 0.01;
inline constexpr double kPlateauGrowth = 1.02;
inline constexpr double kLimitRelative = 1e-3;
inline constexpr double kLimitAbsolute = 1e-9;

struct Verdict {
    VerdictStatus status = VerdictStatus::Inconclusive;
    std::string quantity;
    CriterionKind kind = CriterionKind::Supremum;
    /// Sup over the sampled region; empty when the profile diverges.
    std::optional<double> sup_estimate;
    BoundaryProfile profile;
    /// Least-squares slope of log(band max) against log 1/(1-delta) over the last sampled bands.
    double divergence_slope = 0.0;
    bool vacuous = false;
    std::string notes;
};

/// A classification and the sub-verdicts it was assembled from.
struct Classification {
    VerdictStatus overall = VerdictStatus::Inconclusive;
    std::vector<Verdict> parts;

    bool holds() const noexcept { return overall == VerdictStatus::Holds; }
};

struct CriteriaOptions {
    /// Analyse the |phi| -> 1 region even when sup |phi| < 1.
    bool force_boundary_analysis = false;
    Execution exec = Execution::Parallel;
};

/// (1-|z|^2)|u'(z)| / (omega(|phi(z)|) (1-|phi(z)|^2)^{1/p}).
double q1(Complex z, const SymbolPair& sym, const SpaceSpec& space);
/// (1-|z|^2)|u(z) phi'(z)| / (omega(|phi(z)|) (1-|phi(z)|^2)^{1+1/p}).
double q2(Complex z, const SymbolPair& sym, const SpaceSpec& space);

DiskQuantity criterion_quantity(CriterionQuantity which, const SymbolPair& sym, const SpaceSpec& space);

/// Nested suprema of q1 or q2 by |z| or by |phi(z)|.
BoundaryProfile criterion_profile(CriterionQuantity which, const SymbolPair& sym, const SpaceSpec& space,
                                  ProfileTrigger trigger, const RadialGrid& grid, const CriteriaOptions& options = {});

double tail_slope(const BoundaryProfile& profile, int window = kSlopeWindow);
/// Finite-sup test on a profile.
Verdict supremum_verdict(std::string quantity, BoundaryProfile profile);
/// Tends-to-zero test on a profile; `reference` scales the relative threshold (defaults to values[0]).
Verdict limit_verdict(std::string quantity, BoundaryProfile profile, std::optional<double> reference = {});
VerdictStatus combine(const std::vector<Verdict>& parts);

/// Boundedness into B: sup q1 and sup q2 finite.
Classification classify_bounded_into_bloch(const SymbolPair& sym, const SpaceSpec& space, const RadialGrid& grid,
                                           const CriteriaOptions& options = {});

/// Compactness into B: q1 and q2 tend to 0 as |phi(z)| -> 1; vacuous when sup |phi| < 1.
/// Throws PreconditionUnmet unless `bounded` holds.
Classification classify_compact_into_bloch(const SymbolPair& sym, const SpaceSpec& space, const RadialGrid& grid,
                                           const Classification& bounded, const CriteriaOptions& options = {});
/// Runs the boundedness classification first.
Classification classify_compact_into_bloch(const SymbolPair& sym, const SpaceSpec& space, const RadialGrid& grid,
                                           const CriteriaOptions& options = {});

/// Boundedness into B0: bounded into B, u in B0, (1-|z|^2)|u phi'| -> 0 as |z| -> 1.
Classification classify_bounded_into_little_bloch(const SymbolPair& sym, const SpaceSpec& space,
                                                  const RadialGrid& grid, const CriteriaOptions& options = {});
/// Reuses an existing boundedness-into-B classification.
Classification classify_bounded_into_little_bloch(const SymbolPair& sym, const SpaceSpec& space,
                                                  const RadialGrid& grid, const Classification& bounded,
                                                  const CriteriaOptions& options = {});

/// Compactness into B0: q1 and q2 tend to 0 as |z| -> 1.
Classification classify_compact_into_little_bloch(const SymbolPair& sym, const SpaceSpec& space,
                                                  const RadialGrid& grid, const CriteriaOptions& options = {});

/// Both sides of a limit equivalence, evaluated independently.
struct EquivalenceProbe {
    std::string name;
    Verdict lhs;
    std::vector<Verdict> rhs;
    VerdictStatus lhs_status = VerdictStatus::Inconclusive;
    VerdictStatus rhs_status = VerdictStatus::Inconclusive;
    bool decided = false;
    bool agree = false;
};

/// q1 -> 0 as |z| -> 1  <=>  q1 -> 0 as |phi| -> 1 and u in B0.
EquivalenceProbe limit_equivalence_q1(const SymbolPair& sym, const SpaceSpec& space, const RadialGrid& grid,
                                      const CriteriaOptions& options = {});
/// q2 -> 0 as |z| -> 1  <=>  q2 -> 0 as |phi| -> 1 and (1-|z|)^2 |u phi'| -> 0.
EquivalenceProbe limit_equivalence_q2(const SymbolPair& sym, const SpaceSpec& space, const RadialGrid& grid,
                                      const CriteriaOptions& options = {});

/// For the A^p weight: q2 divided by (1-|z|^2)|u phi'| / (1-|phi|^2)^{1+2/p}, which is (1+|phi(z)|)^{1/p}.
double bergman_corollary_ratio(Complex z, const SymbolPair& sym, double p);

}  // namespace wcop
