#include "wcop/errors.hpp"
#include "wcop/kernels.hpp"
#include "wcop/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace wcop;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

double wiggly(std::size_t i) { return std::sin(0.37 * static_cast<double>(i)) * std::exp(-1e-4 * static_cast<double>(i)); }

}  // namespace

TEST_CASE("serial and parallel kernels are bit-identical") {
    for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{63}, std::size_t{64}, std::size_t{1000}, std::size_t{100003}}) {
        std::vector<double> a(n), b(n);
        kernels::serial::evaluate(n, wiggly, a);
        kernels::parallel::evaluate(n, wiggly, b);
        for (std::size_t i = 0; i < n; ++i) CHECK(same_bits(a[i], b[i]));
        CHECK(same_bits(kernels::serial::chunked_mean(n, wiggly), kernels::parallel::chunked_mean(n, wiggly)));
    }
    const auto cell = [](std::size_t r, std::size_t c) {
        return std::cos(0.1 * static_cast<double>(r * 31 + c)) + (c == 7 ? 2.0 : 0.0);
    };
    const auto rs = kernels::serial::row_maxima(97, 130, cell);
    const auto rp = kernels::parallel::row_maxima(97, 130, cell);
    REQUIRE(rs.size() == rp.size());
    for (std::size_t r = 0; r < rs.size(); ++r) {
        CHECK(same_bits(rs[r].value, rp[r].value));
        CHECK(rs[r].column == rp[r].column);
        CHECK(rs[r].column == 7);
    }
}

TEST_CASE("row maxima report the first column attaining the maximum") {
    const auto rows = kernels::row_maxima(Execution::Parallel, 3, 5, [](std::size_t, std::size_t c) {
        return c == 1 || c == 3 ? 1.0 : 0.0;
    });
    for (const auto& row : rows) {
        CHECK(row.value == 1.0);
        CHECK(row.column == 1);
    }
}

TEST_CASE("chunked mean of a constant and of an empty range") {
    CHECK(kernels::chunked_mean(Execution::Serial, 1000, [](std::size_t) { return 2.5; }) == 2.5);
    CHECK(kernels::chunked_mean(Execution::Parallel, 0, [](std::size_t) { return 2.5; }) == 0.0);
}

TEST_CASE("exceptions thrown by work items reach the caller in both modes") {
    const auto throwing = [](std::size_t i) -> double {
        if (i == 517) throw DomainError("bad sample");
        return 1.0;
    };
    std::vector<double> out(2000);
    for (Execution exec : {Execution::Serial, Execution::Parallel}) {
        CHECK_THROWS_AS(kernels::evaluate(exec, out.size(), throwing, out), DomainError);
        CHECK_THROWS_AS(kernels::chunked_mean(exec, out.size(), throwing), DomainError);
        CHECK_THROWS_AS(kernels::row_maxima(exec, 40, 40,
                                            [](std::size_t r, std::size_t c) -> double {
                                                if (r == 13 && c == 2) throw std::runtime_error("cell");
                                                return 0.0;
                                            }),
                        std::runtime_error);
    }
}

TEST_CASE("Gauss-Legendre rule integrates polynomials up to degree 2n-1 exactly") {
    for (int order : {1, 2, 8, 12, 20}) {
        const auto rule = gauss_legendre(order);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(order));
        double weight_sum = 0.0;
        for (double w : rule.weights) weight_sum += w;
        CHECK(weight_sum == doctest::Approx(2.0).epsilon(1e-14));
        for (int degree = 0; degree <= 2 * order - 1; ++degree) {
            double sum = 0.0;
            for (int i = 0; i < order; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], degree);
            const double exact = degree % 2 ? 0.0 : 2.0 / (degree + 1);
            CHECK(std::abs(sum - exact) < 1e-13);
        }
    }
}

TEST_CASE("periodic_mean: smooth and sharply peaked integrands") {
    const double none[] = {0.0};
    CHECK(periodic_mean([](double) { return 3.0; }, {}) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(periodic_mean([](double t) { return std::cos(t) * std::cos(t); }, {}) == doctest::Approx(0.5).epsilon(1e-12));
    // Poisson kernel has mean 1 for every radius; at r = 0.999 it is a narrow spike at the breakpoint.
    for (double r : {0.5, 0.9, 0.999}) {
        const auto poisson = [r](double t) { return (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(t - 1.0) + r * r); };
        const double peak[] = {1.0};
        CHECK(periodic_mean(poisson, peak) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(periodic_mean(poisson, none) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("dyadic gap integral: algebraic singularities and geometric tails") {
    const auto rule = gauss_legendre(12);
    for (double beta : {-0.5, 0.0, 0.5, 2.0}) {
        const auto r = integrate_dyadic_gap([beta](double x) { return std::pow(x, beta); }, rule, {});
        CHECK(r.value == doctest::Approx(1.0 / (1.0 + beta)).epsilon(1e-10));
    }
    const auto log_singular = integrate_dyadic_gap([](double x) { return -std::log(x); }, rule, {});
    CHECK(log_singular.value == doctest::Approx(1.0).epsilon(1e-10));
    for (Execution exec : {Execution::Serial, Execution::Parallel}) {
        const auto a = integrate_dyadic_gap([](double x) { return std::pow(x, -0.3) * std::cos(x); }, rule, {}, exec);
        const auto b = integrate_dyadic_gap([](double x) { return std::pow(x, -0.3) * std::cos(x); }, rule, {},
                                            exec == Execution::Serial ? Execution::Parallel : Execution::Serial);
        CHECK(same_bits(a.value, b.value));
    }
}

TEST_CASE("dyadic gap integral reports nonconvergence for a divergent integrand") {
    const auto rule = gauss_legendre(8);
    CHECK_THROWS_AS(integrate_dyadic_gap([](double x) { return 1.0 / x; }, rule, {}), NonConvergent);
    CHECK_THROWS_AS(integrate_dyadic_gap([](double x) { return std::pow(x, -1.5); }, rule, {}), NonConvergent);
}

TEST_CASE("golden-section search finds interior maxima") {
    CHECK(golden_section_max([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0) ==
          doctest::Approx(0.3).epsilon(1e-7));
    const double best = golden_section_max([](double r) { return 2.0 * r * (1.0 - r * r); }, 0.0, 1.0);
    CHECK(best == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-7));
    CHECK(golden_section_max([](double x) { return x; }, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-9));
}
