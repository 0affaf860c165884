#include "support/generators.hpp"

#include "wcop/disk_function.hpp"
#include "wcop/errors.hpp"
#include "wcop/geometry.hpp"
#include "wcop/norms.hpp"
#include "wcop/self_map.hpp"

#include <doctest.h>

#include <cmath>

using namespace wcop;
using wcop::testing::Gen;

namespace {

Complex central_difference(const DiskFunction& f, Complex z, double h) {
    return (f.eval(z + h) - f.eval(z - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("eval: identity, degenerate kernel, hand-evaluated kernel") {
    CHECK(DiskFunction::power_series({0.0, 1.0}).eval(0.3) == Complex(0.3));
    const auto flat = DiskFunction::fractional_kernel(0.0, 3.0, 1.0);
    CHECK(flat.eval({0.4, -0.7}) == Complex(1.0));
    CHECK(flat.eval(0.0) == Complex(1.0));
    const auto k = DiskFunction::fractional_kernel(0.5, 1.0, 1.0);
    CHECK(std::abs(k.eval(0.5) - 1.0 / (1.0 - 0.25)) < 1e-15);
}

TEST_CASE("eval and deriv reject points off the open disk") {
    const auto f = DiskFunction::identity();
    CHECK_THROWS_AS(f.eval(1.0), DomainError);
    CHECK_THROWS_AS(f.deriv({0.0, -1.2}), DomainError);
    CHECK_THROWS_AS(SelfMap::identity().eval(1.0), DomainError);
}

TEST_CASE("deriv: closed forms") {
    CHECK(std::abs(DiskFunction::power_series({0.0, 0.0, 1.0}).deriv(0.5) - 1.0) < 1e-15);
    // q conj(a) (1 - conj(a) z)^{-2} at z = 0
    CHECK(std::abs(DiskFunction::fractional_kernel(0.5, 1.0, 1.0).deriv(0.0) - 0.5) < 1e-15);
    const Complex a{0.3, -0.6};
    const double q = 2.5;
    const Complex z{-0.2, 0.45};
    const auto k = DiskFunction::fractional_kernel(a, q, 2.0);
    const Complex base = 1.0 - std::conj(a) * z;
    CHECK(std::abs(k.eval(z) - 2.0 * std::pow(base, -q)) < 1e-13);
    CHECK(std::abs(k.deriv(z) - 2.0 * q * std::conj(a) * std::pow(base, -q - 1.0)) < 1e-13);
}

TEST_CASE("kernel construction validates its parameters") {
    CHECK_THROWS_AS(DiskFunction::fractional_kernel(1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(DiskFunction::fractional_kernel(0.5, 0.0), ValidationError);
}

TEST_CASE("principal branch: Re(1 - conj(a) z) stays positive on a dense grid") {
    Gen gen(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Complex a = gen.point(0.999);
        const double q = gen.uniform(0.1, 4.0);
        const auto k = DiskFunction::fractional_kernel(a, q);
        for (int i = 0; i < 40; ++i) {
            const Complex z = std::polar(1.0 - std::ldexp(1.0, -(i % 20)), 0.157 * i);
            CHECK((1.0 - std::conj(a) * z).real() > 0.0);
            const Complex expected = std::pow(1.0 - std::conj(a) * z, -q);
            CHECK(std::abs(k.eval(z) - expected) <= 1e-10 * std::abs(expected));
        }
    }
}

TEST_CASE("property: closed-form derivative matches central differences for every variant") {
    Gen gen(2024);
    const double h = 1e-5;
    int checked = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const auto f = gen.function(2);
        for (int j = 0; j < 6; ++j) {
            const Complex z = gen.point(0.99);
            if (std::abs(z) + h >= 0.99) continue;
            const Complex exact = f.deriv(z);
            const Complex fd = central_difference(f, z, h);
            const double scale = std::max({std::abs(exact), std::abs(f.eval(z)), 1.0});
            INFO(f.describe(), " at ", z);
            CHECK(std::abs(fd - exact) <= 1e-6 * scale);
            ++checked;
        }
    }
    CHECK(checked > 500);
}

TEST_CASE("algebra: sums, products, scalings and compositions") {
    const auto z = DiskFunction::identity();
    const auto f = DiskFunction::power_series({1.0, 2.0});
    const Complex p{0.3, 0.2};
    CHECK(std::abs((f + z).eval(p) - (1.0 + 3.0 * p)) < 1e-15);
    CHECK(std::abs((f * z).deriv(p) - (1.0 + 4.0 * p)) < 1e-15);
    CHECK(std::abs((Complex(0.0, 2.0) * f).eval(p) - Complex(0.0, 2.0) * (1.0 + 2.0 * p)) < 1e-15);
    const auto composed = DiskFunction::composed(f, SelfMap::monomial(2, 0.5));
    CHECK(std::abs(composed.eval(p) - (1.0 + p * p)) < 1e-15);
    CHECK(std::abs(composed.deriv(p) - 2.0 * p) < 1e-15);
    CHECK(DiskFunction().eval(p) == Complex(0.0));
    CHECK(f.is_polynomial());
    CHECK_FALSE(DiskFunction::fractional_kernel(0.2, 1.0).is_polynomial());
}

TEST_CASE("peak angles come from kernel base points") {
    const auto f = DiskFunction::sum({DiskFunction::fractional_kernel(std::polar(0.9, 1.0), 2.0),
                                      DiskFunction::fractional_kernel(std::polar(0.5, -2.0), 1.0)});
    const auto angles = f.peak_angles();
    REQUIRE(angles.size() == 2);
    CHECK(std::abs(angles[0] - (-2.0)) < 1e-14);
    CHECK(std::abs(angles[1] - 1.0) < 1e-14);
    CHECK(DiskFunction::identity().peak_angles().empty());
}

TEST_CASE("self-maps: structural sup bounds") {
    CHECK(SelfMap::affine(0.3, 0.4).sup_norm_estimate() == doctest::Approx(0.7));
    CHECK(SelfMap::affine(0.5, 0.5).sup_norm_estimate() == 1.0);
    CHECK(SelfMap::scaled(0.5, SelfMap::identity()).sup_norm_estimate() == doctest::Approx(0.5));
    CHECK(SelfMap::monomial(3, 0.25).sup_norm_estimate() == doctest::Approx(0.25));
    CHECK(SelfMap::blaschke_factor({0.2, 0.3}).sup_norm_estimate() == 1.0);
    CHECK(SelfMap::constant(0.6).sup_norm_estimate() == doctest::Approx(0.6));
    CHECK_THROWS_AS(SelfMap::affine(0.6, 0.5), ValidationError);
    CHECK_THROWS_AS(SelfMap::blaschke_factor(1.0), ValidationError);
    CHECK_THROWS_AS(SelfMap::monomial(0, 1.0), ValidationError);
    CHECK_THROWS_AS(SelfMap::blaschke_product({0.1}, 2.0), ValidationError);
}

TEST_CASE("property: sampled self-map and Schwarz-Pick checks pass, structural bound dominates samples") {
    Gen gen(7);
    for (int trial = 0; trial < 60; ++trial) {
        const auto phi = gen.self_map();
        const auto check = check_self_map(phi, 30, 128);
        INFO(phi.describe(), " ", check.detail);
        CHECK(check.ok());
        CHECK(check.max_modulus <= 1.0 + 1e-12);
        CHECK(check.max_modulus <= phi.sup_norm_estimate() + 1e-12);
    }
}

TEST_CASE("property: finite Blaschke products are unimodular on the circle") {
    Gen gen(99);
    for (int trial = 0; trial < 20; ++trial) {
        const auto phi = SelfMap::blaschke_product({gen.point(0.8), gen.point(0.8), gen.point(0.5)},
                                                   std::polar(1.0, gen.angle()));
        for (int j = 0; j < 16; ++j) {
            const double theta = gen.angle();
            // Linear extrapolation in the gap from radii 1 - 2^{-24} and 1 - 2^{-25}.
            const double x1 = std::ldexp(1.0, -24), x2 = std::ldexp(1.0, -25);
            const double m1 = std::abs(phi.eval(std::polar(1.0 - x1, theta)));
            const double m2 = std::abs(phi.eval(std::polar(1.0 - x2, theta)));
            const double at_one = m2 + (m2 - m1) * x2 / (x1 - x2);
            CHECK(std::abs(at_one - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("bergman metric: closed forms, symmetry, domain") {
    CHECK(bergman_metric(0.0, 0.0) == 0.0);
    CHECK(std::abs(bergman_metric(0.0, 0.5) - 0.5 * std::log(3.0)) < 1e-15);
    CHECK_THROWS_AS(bergman_metric(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(bergman_metric(0.0, {0.0, 1.5}), DomainError);
    Gen gen(5);
    for (int i = 0; i < 100; ++i) {
        const Complex z = gen.point(0.99), w = gen.point(0.99);
        CHECK(std::abs(bergman_metric(z, w) - bergman_metric(w, z)) <= 1e-12 * (1.0 + bergman_metric(z, w)));
    }
}

TEST_CASE("property: bergman metric triangle inequality") {
    Gen gen(17);
    for (int i = 0; i < 2000; ++i) {
        const Complex a = gen.point(0.999), b = gen.point(0.999), c = gen.point(0.999);
        CHECK(bergman_metric(a, c) <= bergman_metric(a, b) + bergman_metric(b, c) + 1e-12);
    }
}

TEST_CASE("metric disk comparability") {
    // For a = 0 the metric disk is |z| < tanh r, so the ratio is 1 / (1 - tanh^2 r).
    const double r = 0.1;
    const double closed = 1.0 / (1.0 - std::tanh(r) * std::tanh(r));
    const double ratio = metric_disk_comparability(0.0, r, 4000);
    CHECK(ratio <= 1.23);
    CHECK(ratio <= closed + 1e-12);
    CHECK(ratio >= closed - 1e-3);
    CHECK(metric_disk_comparability(0.0, 1e-6, 100) == doctest::Approx(1.0).epsilon(1e-9));

    // a = 0.9, r = 1: compare with rejection sampling in a box around a.
    const Complex a = 0.9;
    const double sampled = metric_disk_comparability(a, 1.0, 20000);
    Gen gen(3);
    double brute = 1.0;
    const double gap_a = 1.0 - 0.81;
    for (int i = 0; i < 400000; ++i) {
        const Complex z{gen.uniform(-0.2, 1.0), gen.uniform(-0.8, 0.8)};
        if (std::abs(z) >= 1.0 || bergman_metric(a, z) >= 1.0) continue;
        const double gap_z = 1.0 - std::norm(z);
        brute = std::max({brute, gap_z / gap_a, gap_a / gap_z});
    }
    CHECK(std::isfinite(sampled));
    CHECK(sampled <= std::exp(2.0) * (1.0 + 0.9) / (1.0 - 0.9));
    CHECK(sampled >= 0.9 * brute);
    CHECK(brute <= sampled * 1.1);
}

TEST_CASE("property: Bloch seminorm is Mobius invariant") {
    Gen gen(41);
    const RadialGrid grid(16, 512, 12);
    for (int trial = 0; trial < 8; ++trial) {
        const auto f = trial % 2 ? gen.polynomial(5) : DiskFunction::fractional_kernel(gen.point(0.6), 1.5);
        const auto sigma = disk_automorphism(gen.point(0.5));
        const double base = bloch_seminorm(f, grid);
        const double moved = bloch_seminorm(DiskFunction::composed(f, sigma), grid);
        INFO(f.describe());
        CHECK(std::abs(moved - base) <= 0.01 * base);
    }
}
