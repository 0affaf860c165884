#pragma once

#include "wcop/config.hpp"
#include "wcop/oracle.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace wcop {

struct NamedConfig {
    std::string name;
    std::string text;
};

/// Curated configurations: identity-into-bloch, half-scale, zero-multiplier, touching-affine.
const std::vector<NamedConfig>& curated_configs();

inline constexpr std::uint64_t kBatterySeed = 20240611;
inline constexpr int kBatterySize = 20;

struct RandomPair {
    std::string description;
    SymbolPair symbol;
};

/// Cycles through interior affine, boundary-touching affine, Blaschke factor and
/// two-factor Blaschke product maps; multipliers are polynomials of degree 0..3.
std::vector<RandomPair> random_battery(int count = kBatterySize, std::uint64_t seed = kBatterySeed);

/// Grid used for the randomized battery.
RadialGrid battery_grid();

struct PairOutcome {
    std::string description;
    VerdictStatus bounded = VerdictStatus::Inconclusive;
    Trend trend = Trend::Undetermined;
    std::vector<double> lower_bound;
    EquivalenceProbe q1_probe;
    EquivalenceProbe q2_probe;

    bool classifier_decided() const noexcept { return bounded != VerdictStatus::Inconclusive; }
    bool oracle_agrees() const noexcept;
};

struct BatterySummary {
    std::vector<PairOutcome> pairs;
    int decided = 0;
    int agreeing = 0;
    int inconclusive = 0;
    int probes_decided = 0;
    int probes_agreeing = 0;

    double inconclusive_rate() const noexcept;
};

BatterySummary run_random_battery(const std::vector<RandomPair>& pairs, const SpaceSpec& space, const RadialGrid& grid,
                                  Execution exec = Execution::Parallel);

nlohmann::ordered_json summary_json(const BatterySummary& summary);

}  // namespace wcop
