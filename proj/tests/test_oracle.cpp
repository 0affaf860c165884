#include "support/generators.hpp"

#include "wcop/errors.hpp"
#include "wcop/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace wcop;
using wcop::testing::Gen;

namespace {

const RadialGrid kGrid(14, 256, 8);

SpaceSpec a2() { return SpaceSpec::bergman(2.0); }

SymbolPair pair(DiskFunction u, SelfMap phi) { return {std::move(u), std::move(phi)}; }

SelfMap half() { return SelfMap::scaled(0.5, SelfMap::identity()); }

DiskFunction one() { return DiskFunction::constant(1.0); }

}  // namespace

TEST_CASE("f_w examples") {
    const auto f0 = make_f_w(0.0, a2());
    for (Complex z : {Complex(0.0), Complex(0.3, -0.4), Complex(-0.99)}) CHECK(std::abs(f0.eval(z) - 1.0) < 1e-15);

    const auto f = make_f_w(0.5, a2());
    const auto expected = DiskFunction::fractional_kernel(0.5, 2.25, std::pow(0.75, 1.75) / std::sqrt(0.5));
    for (Complex z : {Complex(0.0), Complex(0.5), Complex(-0.2, 0.7)}) {
        CHECK(std::abs(f.eval(z) - expected.eval(z)) <= 1e-14 * std::abs(expected.eval(z)));
        CHECK(std::abs(f.deriv(z) - expected.deriv(z)) <= 1e-14 * std::abs(expected.deriv(z)));
    }
    CHECK_THROWS_AS(make_f_w(1.0, a2()), DomainError);
}

TEST_CASE("f_w norms are uniformly bounded along a boundary sweep") {
    for (const auto& space : {a2(), SpaceSpec(3.0, NormalWeight(1.5, 0.5, 0.5, 2.0))}) {
        double lo = INFINITY, hi = 0.0;
        std::vector<double> tail;
        for (double w : {0.0, 0.5, 0.9, 0.99, 1.0 - std::ldexp(1.0, -10), 1.0 - std::ldexp(1.0, -11),
                         1.0 - std::ldexp(1.0, -12)}) {
            const double n = bergman_type_norm(make_f_w(std::polar(w, 2.0), space), space, RadialGrid(16, 256, 8));
            lo = std::min(lo, n);
            hi = std::max(hi, n);
            tail.push_back(n);
        }
        CHECK(hi / lo <= 10.0);
        const std::size_t n = tail.size();
        CHECK_FALSE((tail[n - 1] > tail[n - 2] * 1.01 && tail[n - 2] > tail[n - 3] * 1.01));
    }
}

TEST_CASE("g identities hold along a sweep toward the circle") {
    Gen gen(51);
    for (const auto& space : {a2(), SpaceSpec::bergman(1.0), SpaceSpec(3.0, NormalWeight(1.5, 0.5, 0.5, 2.0))}) {
        for (int k = 1; k <= 12; ++k) {
            const Complex c = std::polar(1.0 - std::ldexp(1.0, -k), gen.angle());
            const auto g = make_g_lambda(c, space);
            const double m = std::abs(c);
            const Complex expected =
                std::conj(c) / (space.weight.at_gap(1.0 - m) * std::pow((1.0 - m) * (1.0 + m), 1.0 + 1.0 / space.p));
            INFO("k=", k, " p=", space.p);
            CHECK(std::abs(g.eval(c)) <= 1e-10);
            CHECK(std::abs(g.deriv(c) - expected) <= 1e-10 * std::abs(expected));
        }
    }
    // Away from the circle the two-kernel difference is well conditioned and must agree.
    for (int i = 0; i < 50; ++i) {
        const auto space = SpaceSpec::bergman(gen.uniform(0.5, 4.0));
        const Complex c = gen.point(0.9);
        const double gap = 1.0 - std::norm(c);
        const double w = space.weight(std::abs(c));
        const double t = space.weight.t();
        const double q = 1.0 / space.p + t + 1.0;
        const auto difference =
            DiskFunction::fractional_kernel(c, q + 1.0, std::pow(gap, t + 2.0) / w) +
            DiskFunction::fractional_kernel(c, q, -std::pow(gap, t + 1.0) / w);
        const auto g = make_g_lambda(c, space);
        for (int j = 0; j < 5; ++j) {
            const Complex z = gen.point(0.9);
            CHECK(std::abs(g.eval(z) - difference.eval(z)) <= 1e-11 * std::max(1.0, std::abs(difference.eval(z))));
            CHECK(std::abs(g.deriv(z) - difference.deriv(z)) <= 1e-11 * std::max(1.0, std::abs(difference.deriv(z))));
        }
    }
    const auto zero = make_g_lambda(0.0, a2());
    for (Complex z : {Complex(0.0), Complex(0.5, 0.5)}) {
        CHECK(std::abs(zero.eval(z)) < 1e-15);
        CHECK(std::abs(zero.deriv(z)) < 1e-15);
    }
    CHECK_THROWS_AS(make_g_lambda({0.0, 1.0}, a2()), DomainError);
}

TEST_CASE("operator_apply examples") {
    Gen gen(52);
    const auto f = gen.function(2);
    const auto same = operator_apply(pair(one(), SelfMap::identity()), f);
    for (int i = 0; i < 100; ++i) {
        const Complex z = gen.point(0.95);
        CHECK(std::abs(same.eval(z) - f.eval(z)) <= 1e-14 * std::max(1.0, std::abs(f.eval(z))));
    }
    const auto zero = operator_apply(pair(DiskFunction(), SelfMap::blaschke_factor(0.2)), f);
    CHECK(zero.eval({0.1, 0.3}) == Complex(0.0));

    const auto cube = operator_apply(pair(DiskFunction::identity(), SelfMap::monomial(2, 1.0)), DiskFunction::identity());
    const Complex z{0.3, 0.6};
    CHECK(std::abs(cube.eval(z) - z * z * z) < 1e-15);
    // max of 3 r^2 (1 - r^2) is 3/4 at r^2 = 1/2
    CHECK(bloch_seminorm(cube, kGrid) == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(bloch_seminorm(cube, kGrid) ==
          doctest::Approx(bloch_seminorm(DiskFunction::power_series({0.0, 0.0, 0.0, 1.0}), kGrid)).epsilon(1e-12));
}

TEST_CASE("property: operator_apply is linear") {
    Gen gen(53);
    for (int trial = 0; trial < 40; ++trial) {
        const auto sym = pair(gen.function(1), gen.self_map());
        const auto f = gen.function(1), g = gen.function(1);
        const Complex a = gen.coefficient();
        const auto lhs = operator_apply(sym, a * f + g);
        const auto tf = operator_apply(sym, f), tg = operator_apply(sym, g);
        for (int i = 0; i < 10; ++i) {
            const Complex z = gen.point(0.99);
            const Complex rhs = a * tf.eval(z) + tg.eval(z);
            CHECK(std::abs(lhs.eval(z) - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
            const Complex drhs = a * tf.deriv(z) + tg.deriv(z);
            CHECK(std::abs(lhs.deriv(z) - drhs) <= 1e-12 * std::max(1.0, std::abs(drhs)));
        }
    }
}

TEST_CASE("test families") {
    TestFamily fw{FamilyKind::FW, {0.0, 0.5}, {}};
    CHECK(fw.members(a2()).size() == 2);
    TestFamily mono{FamilyKind::Monomials, {0.0, 3.0}, {}};
    const auto m = mono.members(a2());
    REQUIRE(m.size() == 2);
    CHECK(std::abs(m[1].eval(0.5) - 0.125) < 1e-15);
    TestFamily custom{FamilyKind::Custom, {}, {DiskFunction::identity()}};
    CHECK(custom.members(a2()).size() == 1);
    TestFamily g{FamilyKind::GLambda, {0.3}, {}};
    CHECK(std::abs(g.members(a2()).front().eval(0.3)) < 1e-12);
}

TEST_CASE("operator lower bound examples") {
    const TestFamily fw{FamilyKind::FW, {0.0, 0.5, 0.9}, {}};
    CHECK(operator_lower_bound(pair(DiskFunction(), SelfMap::identity()), a2(), fw, kGrid) == 0.0);
    // u = 1, phi = identity on f = 1: ||1||_B / ||1|| = 1 / sqrt(1/2).
    const TestFamily just_one{FamilyKind::Custom, {}, {one()}};
    CHECK(operator_lower_bound(pair(one(), SelfMap::identity()), a2(), just_one, kGrid) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

    const auto bounded = radial_lower_bound_sweep(pair(one(), half()), a2(), {8, 9, 10, 11, 12}, kGrid);
    REQUIRE(bounded.values.size() == 5);
    CHECK(std::abs(bounded.values.back() - bounded.values.front()) <= 0.05 * bounded.values.back());
    CHECK(bounded.trend == Trend::Stabilizing);

    const auto unbounded = radial_lower_bound_sweep(pair(one(), SelfMap::identity()), a2(), {8, 9, 10, 11, 12}, kGrid);
    for (std::size_t i = 1; i < unbounded.values.size(); ++i) CHECK(unbounded.values[i] > unbounded.values[i - 1]);
    CHECK(unbounded.trend == Trend::Diverging);
}

TEST_CASE("matched sweep follows the boundedness verdict") {
    const auto bounded = matched_lower_bound_sweep(pair(one(), half()), a2(), kGrid);
    CHECK(bounded.trend == Trend::Stabilizing);
    const auto unbounded = matched_lower_bound_sweep(pair(one(), SelfMap::identity()), a2(), kGrid);
    CHECK(unbounded.trend == Trend::Diverging);
    const std::size_t n = unbounded.values.size();
    CHECK(unbounded.values[n - 1] > unbounded.values[n - 2]);
    CHECK(unbounded.values[n - 2] > unbounded.values[n - 3]);
    CHECK(unbounded.values[n - 3] > unbounded.values[n - 4]);
}

TEST_CASE("trend classification") {
    CHECK(classify_trend({1.0, 1.0, 1.0, 1.0}) == Trend::Stabilizing);
    CHECK(classify_trend({1.0, 2.0, 4.0, 8.0}) == Trend::Diverging);
    CHECK(classify_trend({1.0, 1.0, 1.1, 1.2}) == Trend::Undetermined);
    CHECK(classify_trend({0.0, 0.0, 0.0, 0.0}) == Trend::Stabilizing);
    CHECK(classify_trend({1.0, 2.0, 4.0}) == Trend::Undetermined);
    CHECK(std::string(to_string(Trend::Diverging)) == "Diverging");
}

TEST_CASE("compactness probe examples") {
    CHECK(compactness_probe(pair(one(), half()), a2(), kGrid).evidence == ProbeEvidence::VacuouslyCompact);

    const auto zero = compactness_probe(pair(DiskFunction(), SelfMap::identity()), a2(), kGrid);
    REQUIRE_FALSE(zero.sequences.empty());
    for (const auto& seq : zero.sequences) {
        for (double v : seq.f_values) CHECK(v == 0.0);
        for (double v : seq.g_values) CHECK(v == 0.0);
    }
    CHECK(zero.evidence == ProbeEvidence::Compact);

    const auto id = compactness_probe(pair(one(), SelfMap::identity()), a2(), kGrid);
    CHECK(id.evidence == ProbeEvidence::NonCompact);
    for (const auto& seq : id.sequences) {
        double peak = 0.0;
        for (double v : seq.g_values) peak = std::max(peak, v);
        const std::size_t n = seq.g_values.size();
        for (std::size_t i = n - 3; i < n; ++i) CHECK(seq.g_values[i] >= 0.25 * peak);
    }

    const auto touching = compactness_probe(
        pair(DiskFunction::power_series({1.0, -2.0, 1.0}), SelfMap::affine(0.5, 0.5)), a2(), kGrid);
    CHECK(touching.evidence == ProbeEvidence::NonCompact);
    CHECK(std::string(to_string(ProbeEvidence::VacuouslyCompact)) == "VacuouslyCompactEvidence");
}

TEST_CASE("empirical constants over the envelope battery") {
    const auto battery = envelope_battery(a2());
    REQUIRE(battery.size() == 8);
    const auto constants = measure_empirical_constants(a2(), kGrid);
    REQUIRE(constants.members.size() == 8);
    CHECK(std::isfinite(constants.growth_max));
    CHECK(std::isfinite(constants.derivative_growth_max));
    CHECK(constants.norm_ratio_min > 0.0);
    CHECK(constants.norm_ratio_max / constants.norm_ratio_min <= 10.0);
    // Constants: the derivative form reduces to |c| while the canonical norm is |c| sqrt(1/2).
    CHECK(constants.members.front().norm_ratio == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("chain constant dominates every battery member") {
    const auto sym = pair(DiskFunction::power_series({1.0, 0.5}), half());
    const auto bounded = classify_bounded_into_bloch(sym, a2(), kGrid);
    const double s1 = *bounded.parts[0].sup_estimate, s2 = *bounded.parts[1].sup_estimate;
    const double c = chain_constant(sym, a2(), s1, s2, kGrid);
    CHECK(std::isfinite(c));
    CHECK(c > 0.0);
    for (const auto& member : envelope_battery(a2())) {
        const double lhs = bloch_seminorm(operator_apply(sym, member.f), kGrid);
        CHECK(lhs <= c * (s1 + s2) * bergman_type_norm(member.f, a2(), kGrid) * (1.0 + 1e-12));
    }
    CHECK(chain_constant(pair(DiskFunction(), half()), a2(), 0.0, 0.0, kGrid) == 0.0);
}
