#pragma once

#include "wcop/criteria.hpp"

#include <string>
#include <vector>

namespace wcop {

/// (1-|w|^2)^{t+1} / (omega(|w|) (1-conj(w) z)^{1/p+t+1}).
DiskFunction make_f_w(Complex w, const SpaceSpec& space);

/// Two-kernel combination at base c = phi(lambda) with g(c) = 0 and
/// g'(c) = conj(c) / (omega(|c|) (1-|c|^2)^{1+1/p}).
DiskFunction make_g_lambda(Complex lambda_image, const SpaceSpec& space);

/// u * (f o phi).
DiskFunction operator_apply(const SymbolPair& sym, const DiskFunction& f);

enum class FamilyKind { FW, GLambda, Monomials, Custom };

struct TestFamily {
    FamilyKind kind = FamilyKind::FW;
    /// Points w (FW), images phi(lambda) (GLambda) or degrees in the real part (Monomials).
    std::vector<Complex> parameters;
    std::vector<DiskFunction> custom;

    std::vector<DiskFunction> members(const SpaceSpec& space) const;
};

/// sup over the family of ||u C_phi f||_B / ||f||.
double operator_lower_bound(const SymbolPair& sym, const SpaceSpec& space, const TestFamily& family,
                            const RadialGrid& grid, const NormOptions& options = {});

enum class Trend { Stabilizing, Diverging, Undetermined };
const char* to_string(Trend trend) noexcept;

/// Stabilizing: running value changes < 5% over the last three steps.
/// Diverging: each of the last three steps grows by more than 5%.
Trend classify_trend(const std::vector<double>& running);

struct SweepTrend {
    std::vector<int> depths;
    std::vector<Complex> points;
    /// Lower bound contributed by each member.
    std::vector<double> member_values;
    /// Running maximum of member_values.
    std::vector<double> values;
    Trend trend = Trend::Undetermined;
};

/// Per band k, lambda_k maximizes q1 + q2 and the member is f_w at w = phi(lambda_k).
SweepTrend matched_lower_bound_sweep(const SymbolPair& sym, const SpaceSpec& space, const RadialGrid& grid,
                                     const NormOptions& options = {});

/// Members f_w at w = 1 - 2^{-k} for the given depths.
SweepTrend radial_lower_bound_sweep(const SymbolPair& sym, const SpaceSpec& space, const std::vector<int>& depths,
                                    const RadialGrid& grid, const NormOptions& options = {});

enum class ProbeEvidence { VacuouslyCompact, Compact, NonCompact, Undetermined };
const char* to_string(ProbeEvidence evidence) noexcept;

struct ProbeSequence {
    std::string name;
    std::vector<int> depths;
    std::vector<Complex> points;
    /// ||u C_phi f_n||_B and ||u C_phi g_n||_B with f_n, g_n built at phi(z_n).
    std::vector<double> f_values;
    std::vector<double> g_values;
};

struct CompactnessProbe {
    ProbeEvidence evidence = ProbeEvidence::Undetermined;
    /// "argmax_modulus": z_n maximizes |phi| on |z| = 1 - 2^{-n}.
    /// "matched_level": z_n maximizes q1 + q2 where |phi| lies in band n.
    std::vector<ProbeSequence> sequences;
};

/// Probe sequences with |phi(z_n)| -> 1; decaying values corroborate compactness,
/// values bounded away from zero corroborate non-compactness.
CompactnessProbe compactness_probe(const SymbolPair& sym, const SpaceSpec& space, const RadialGrid& grid,
                                   const NormOptions& options = {});

struct NamedFunction {
    std::string name;
    DiskFunction f;
};

/// {1, z, z^2, z^5, f_w at |w| = 0, 0.5, 0.9, 0.99}.
std::vector<NamedFunction> envelope_battery(const SpaceSpec& space);

struct EnvelopeMeasurement {
    std::string name;
    PointwiseEnvelopes envelopes;
    double derivative_norm = 0.0;
    /// derivative_norm / norm, or 1 when both vanish.
    double norm_ratio = 1.0;
};

struct EmpiricalConstants {
    std::vector<EnvelopeMeasurement> members;
    double growth_max = 0.0;
    double derivative_growth_max = 0.0;
    double norm_ratio_min = 0.0;
    double norm_ratio_max = 0.0;
};

EmpiricalConstants measure_empirical_constants(const SpaceSpec& space, const RadialGrid& grid,
                                               const NormOptions& options = {});

/// max over the battery of B(u C_phi f) / ((sup q1 + sup q2) ||f||); 0 when the denominator vanishes.
double chain_constant(const SymbolPair& sym, const SpaceSpec& space, double sup_q1, double sup_q2,
                      const RadialGrid& grid, const NormOptions& options = {});

}  // namespace wcop
