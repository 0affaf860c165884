#include "wcop/battery.hpp"

#include <numbers>
#include <random>
#include <sstream>

namespace wcop {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string complex_text(Complex z) {
    std::ostringstream os;
    os.precision(6);
    os << "(" << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i)";
    return os.str();
}

}  // namespace

const std::vector<NamedConfig>& curated_configs() {
    static const std::vector<NamedConfig> configs = {
        {"identity-into-bloch", R"({
  "name": "identity-into-bloch",
  "symbol": {"u": 1, "phi": "identity"},
  "space": "bergman:2",
  "tasks": ["bounded_bloch", "compact_bloch", "bounded_little_bloch", "compact_little_bloch", "lemma_probes", "oracle"]
})"},
        {"half-scale", R"({
  "name": "half-scale",
  "symbol": {"u": 1, "phi": {"scaled": {"s": 0.5, "phi": "identity"}}},
  "space": "bergman:2",
  "tasks": ["bounded_bloch", "compact_bloch", "bounded_little_bloch", "compact_little_bloch", "lemma_probes", "oracle"]
})"},
        {"zero-multiplier", R"({
  "name": "zero-multiplier",
  "symbol": {"u": 0, "phi": {"blaschke": {"a": [0.3, 0.4]}}},
  "space": "bergman:2",
  "tasks": ["bounded_bloch", "compact_bloch", "bounded_little_bloch", "compact_little_bloch", "lemma_probes", "oracle"]
})"},
        {"touching-affine", R"({
  "name": "touching-affine",
  "symbol": {"u": {"poly": [1, -2, 1]}, "phi": {"affine": {"a": 0.5, "b": 0.5}}},
  "space": "bergman:2",
  "tasks": ["bounded_bloch", "compact_bloch", "lemma_probes", "oracle"]
})"},
    };
    return configs;
}

std::vector<RandomPair> random_battery(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto angle = [&] { return kTwoPi * unit(rng); };
    auto in_disk = [&](double max_modulus) { return std::polar(max_modulus * std::sqrt(unit(rng)), angle()); };

    std::vector<RandomPair> out;
    for (int i = 0; i < count; ++i) {
        RandomPair pair;
        std::ostringstream phi_text;
        switch (i % 4) {
            case 0: {
                const double total = 0.5 + 0.45 * unit(rng);
                const double share = 0.2 + 0.6 * unit(rng);
                const Complex a = std::polar(total * share, angle()), b = std::polar(total * (1.0 - share), angle());
                pair.symbol.phi = SelfMap::affine(a, b);
                phi_text << "affine a=" << complex_text(a) << " b=" << complex_text(b);
                break;
            }
            case 1: {
                const double share = 0.2 + 0.6 * unit(rng);
                const Complex a = std::polar(share, angle()), b = std::polar(1.0 - share, angle());
                pair.symbol.phi = SelfMap::affine(a, b);
                phi_text << "touching affine a=" << complex_text(a) << " b=" << complex_text(b);
                break;
            }
            case 2: {
                const Complex a = in_disk(0.8);
                pair.symbol.phi = SelfMap::blaschke_factor(a);
                phi_text << "blaschke a=" << complex_text(a);
                break;
            }
            default: {
                const Complex a = in_disk(0.8), b = in_disk(0.8);
                pair.symbol.phi = SelfMap::blaschke_product({a, b});
                phi_text << "blaschke product zeros " << complex_text(a) << " " << complex_text(b);
                break;
            }
        }
        const int degree = static_cast<int>(unit(rng) * 4.0);
        std::vector<Complex> coeffs;
        std::ostringstream u_text;
        u_text << "u=[";
        for (int d = 0; d <= std::min(degree, 3); ++d) {
            const Complex c{2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0};
            coeffs.push_back(c);
            u_text << (d ? " " : "") << complex_text(c);
        }
        u_text << "]";
        pair.symbol.u = DiskFunction::power_series(std::move(coeffs));
        pair.description = u_text.str() + " phi=" + phi_text.str();
        out.push_back(std::move(pair));
    }
    return out;
}

RadialGrid battery_grid() { return RadialGrid(14, 256, 8); }

bool PairOutcome::oracle_agrees() const noexcept {
    return (bounded == VerdictStatus::Holds && trend == Trend::Stabilizing) ||
           (bounded == VerdictStatus::Fails && trend == Trend::Diverging);
}

double BatterySummary::inconclusive_rate() const noexcept {
    return pairs.empty() ? 0.0 : static_cast<double>(inconclusive) / static_cast<double>(pairs.size());
}

BatterySummary run_random_battery(const std::vector<RandomPair>& pairs, const SpaceSpec& space, const RadialGrid& grid,
                                  Execution exec) {
    BatterySummary summary;
    CriteriaOptions options;
    options.exec = exec;
    NormOptions norm_options;
    norm_options.exec = exec;
    for (const auto& pair : pairs) {
        PairOutcome outcome;
        outcome.description = pair.description;
        outcome.bounded = classify_bounded_into_bloch(pair.symbol, space, grid, options).overall;
        const auto sweep = matched_lower_bound_sweep(pair.symbol, space, grid, norm_options);
        outcome.trend = sweep.trend;
        outcome.lower_bound = sweep.values;
        outcome.q1_probe = limit_equivalence_q1(pair.symbol, space, grid, options);
        outcome.q2_probe = limit_equivalence_q2(pair.symbol, space, grid, options);
        if (outcome.classifier_decided()) {
            ++summary.decided;
            if (outcome.oracle_agrees()) ++summary.agreeing;
        } else {
            ++summary.inconclusive;
        }
        for (const auto* probe : {&outcome.q1_probe, &outcome.q2_probe}) {
            if (!probe->decided) continue;
            ++summary.probes_decided;
            if (probe->agree) ++summary.probes_agreeing;
        }
        summary.pairs.push_back(std::move(outcome));
    }
    return summary;
}

nlohmann::ordered_json summary_json(const BatterySummary& summary) {
    nlohmann::ordered_json j;
    j["pairs"] = summary.pairs.size();
    j["decided"] = summary.decided;
    j["agreeing"] = summary.agreeing;
    j["inconclusive"] = summary.inconclusive;
    j["inconclusiveRate"] = summary.inconclusive_rate();
    j["probesDecided"] = summary.probes_decided;
    j["probesAgreeing"] = summary.probes_agreeing;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& p : summary.pairs) {
        nlohmann::ordered_json r;
        r["symbol"] = p.description;
        r["boundedBloch"] = to_string(p.bounded);
        r["lowerBoundTrend"] = to_string(p.trend);
        r["lowerBound"] = p.lower_bound;
        r["q1Equivalence"] = {{"lhs", to_string(p.q1_probe.lhs_status)}, {"rhs", to_string(p.q1_probe.rhs_status)}};
        r["q2Equivalence"] = {{"lhs", to_string(p.q2_probe.lhs_status)}, {"rhs", to_string(p.q2_probe.rhs_status)}};
        rows.push_back(r);
    }
    j["results"] = rows;
    return j;
}

}  // namespace wcop
