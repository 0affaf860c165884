#include "support/generators.hpp"

#include "wcop/errors.hpp"
#include "wcop/weights.hpp"

#include <doctest.h>

#include <cmath>

using namespace wcop;
using wcop::testing::Gen;

TEST_CASE("weight_eval examples") {
    const NormalWeight root(0.5, 0.0, 0.25, 0.75);
    CHECK(root(0.0) == 1.0);
    CHECK(root(0.75) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(NormalWeight(1.0, 1.0, 0.5, 2.0)(0.0) == 1.0);
    CHECK_THROWS_AS(root(1.0), DomainError);
    CHECK_THROWS_AS(root(-0.1), DomainError);
}

TEST_CASE("at_gap agrees with direct evaluation and stays accurate for tiny gaps") {
    const NormalWeight w(1.5, 0.5, 0.5, 2.0);
    for (double r : {0.0, 0.3, 0.9, 0.999}) {
        const double direct = std::pow(1.0 - r, 1.5) * std::sqrt(std::log(std::exp(1.0) / (1.0 - r)));
        CHECK(w(r) == doctest::Approx(direct).epsilon(1e-13));
    }
    const double x = 1e-12;
    CHECK(w.at_gap(x) == doctest::Approx(std::pow(x, 1.5) * std::sqrt(1.0 - std::log(x))).epsilon(1e-14));
}

TEST_CASE("check_normality examples") {
    CHECK(check_normality(NormalWeight(0.5, 0.0, 0.25, 0.75)).normal);
    const auto bad = check_normality(NormalWeight(0.5, 0.0, 0.75, 1.0));
    CHECK_FALSE(bad.normal);
    CHECK(bad.failed_condition == "s");
    REQUIRE(bad.first_violation.has_value());
    CHECK(*bad.first_violation == 1);
    CHECK_FALSE(bad.detail.empty());
    CHECK_THROWS_AS(NormalWeight(0.5, 0.0, 0.5, 0.5), ValidationError);
    CHECK_THROWS_AS(NormalWeight(0.0, 0.0, 0.1, 0.5), ValidationError);
    CHECK_THROWS_AS(NormalWeight(0.5, 0.0, -0.1, 0.5), ValidationError);
}

TEST_CASE("log weights: the log factor helps the t condition and hurts the s condition") {
    CHECK(check_normality(NormalWeight(1.5, 0.5, 0.5, 2.0)).normal);
    // alpha - s must dominate the log exponent near r = 0.
    const auto report = check_normality(NormalWeight(0.5, 1.0, 0.25, 1.0));
    CHECK_FALSE(report.normal);
    CHECK(report.failed_condition == "s");
    // t = alpha: a positive log exponent still pushes omega/(1-r)^t to infinity, a negative one does not.
    CHECK(check_normality(NormalWeight(2.0, 1.0, 0.5, 2.0)).normal);
    const auto decaying = check_normality(NormalWeight(1.0, -1.0, 0.5, 1.0));
    CHECK_FALSE(decaying.normal);
    CHECK(decaying.failed_condition == "t");
}

TEST_CASE("property: a pure power weight is normal iff s < alpha < t") {
    Gen gen(12);
    int normal = 0, rejected = 0;
    for (int i = 0; i < 400; ++i) {
        const double alpha = gen.uniform(0.05, 3.0);
        const double s = gen.uniform(0.01, 3.0);
        const double t = s + gen.uniform(0.01, 3.0);
        const bool expected = s < alpha && alpha < t;
        const auto report = check_normality(NormalWeight(alpha, 0.0, s, t));
        INFO("alpha=", alpha, " s=", s, " t=", t);
        CHECK(report.normal == expected);
        (expected ? normal : rejected) += 1;
    }
    CHECK(normal > 50);
    CHECK(rejected > 50);
    // Boundary cases s = alpha and t = alpha give flat ratios.
    CHECK_FALSE(check_normality(NormalWeight(0.5, 0.0, 0.5, 1.0)).normal);
    CHECK_FALSE(check_normality(NormalWeight(0.5, 0.0, 0.25, 0.5)).normal);
}

TEST_CASE("property: weights are positive on the dyadic grid") {
    Gen gen(13);
    for (int i = 0; i < 100; ++i) {
        const NormalWeight w(gen.uniform(0.1, 3.0), gen.uniform(-2.0, 2.0), 0.05, 4.0);
        for (int k = 0; k <= kNormalityGridDepth; ++k) CHECK(w(1.0 - std::ldexp(1.0, -k)) > 0.0);
    }
}

TEST_CASE("property: weights decrease on [0.5, 1) when the log exponent is below alpha(1 + ln 2)") {
    // d/dx [x^a (1 - ln x)^g] has the sign of a(1 - ln x) - g, and 1 - ln x >= 1 + ln 2 on x <= 1/2.
    Gen gen(14);
    for (int i = 0; i < 200; ++i) {
        const double alpha = gen.uniform(0.05, 3.0);
        const double gamma = gen.uniform(0.0, 0.999 * alpha * (1.0 + std::log(2.0)));
        const NormalWeight w(alpha, gamma, 0.01, 5.0);
        double previous = w(0.5);
        for (int j = 1; j <= 250; ++j) {
            const double r = 1.0 - 0.5 * std::pow(0.9, j);
            const double current = w(r);
            INFO("alpha=", alpha, " gamma=", gamma, " r=", r);
            CHECK(current < previous);
            previous = current;
        }
    }
    // Past that bound the weight rises just above r = 1/2.
    const NormalWeight rising(0.5, 2.0, 0.01, 5.0);
    CHECK(rising(0.6) > rising(0.5));
}

TEST_CASE("Bergman specialization") {
    const auto a2 = SpaceSpec::bergman(2.0);
    CHECK(a2.is_bergman());
    CHECK(a2.weight.alpha() == 0.5);
    CHECK(a2.weight.log_exponent() == 0.0);
    CHECK(a2.weight.s() == 0.25);
    CHECK(a2.weight.t() == 0.75);
    CHECK(check_normality(a2.weight).normal);
    for (double p : {0.5, 1.0, 3.0, 7.0}) CHECK(check_normality(SpaceSpec::bergman(p).weight).normal);
    CHECK_FALSE(SpaceSpec(2.0, NormalWeight(1.5, 0.5, 0.5, 2.0)).is_bergman());
    CHECK_THROWS_AS(SpaceSpec::bergman(0.0), ValidationError);
    CHECK_THROWS_AS(SpaceSpec(-1.0, NormalWeight(0.5, 0.0, 0.25, 0.75)), ValidationError);
}
