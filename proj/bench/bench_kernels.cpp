// Serial reference kernels against the OpenMP kernels, best of N wall-clock runs.
#include "wcop/criteria.hpp"
#include "wcop/kernels.hpp"
#include "wcop/norms.hpp"
#include "wcop/oracle.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

using namespace wcop;

namespace {

double best_of(int reps, const std::function<double()>& body, double& sink) {
    double best = INFINITY;
    for (int i = 0; i < reps; ++i) {
        const auto start = std::chrono::steady_clock::now();
        sink += body();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    return best;
}

void row(const std::string& name, int reps, const std::function<double(Execution)>& body) {
    double serial_sum = 0.0, parallel_sum = 0.0;
    const double serial = best_of(reps, [&] { return body(Execution::Serial); }, serial_sum);
    const double parallel = best_of(reps, [&] { return body(Execution::Parallel); }, parallel_sum);
    std::printf("%-34s %10.4f %10.4f %8.2fx  %s\n", name.c_str(), serial * 1e3, parallel * 1e3, serial / parallel,
                serial_sum == parallel_sum ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::max(1, std::atoi(argv[1])) : 5;
    std::printf("threads: %d, best of %d\n", omp_get_max_threads(), reps);
    std::printf("%-34s %10s %10s %9s\n", "workload", "serial ms", "omp ms", "speedup");

    const SpaceSpec space = SpaceSpec::bergman(2.0);
    const auto f = make_f_w(Complex(0.6, 0.7), space);
    constexpr std::size_t n = 1 << 20;
    const auto point = [](std::size_t j) { return std::polar(0.999, 2.0 * M_PI * static_cast<double>(j) / n); };

    row("evaluate (2^20 kernel values)", reps, [&](Execution exec) {
        std::vector<double> out(n);
        kernels::evaluate(exec, n, [&](std::size_t j) { return std::abs(f.eval(point(j))); }, out);
        return out[n / 3];
    });
    row("chunked_mean (2^20 kernel values)", reps, [&](Execution exec) {
        return kernels::chunked_mean(exec, n, [&](std::size_t j) { return std::norm(f.eval(point(j))); });
    });
    row("row_maxima (64 x 16384)", reps, [&](Execution exec) {
        const auto rows = kernels::row_maxima(exec, 64, 16384, [&](std::size_t i, std::size_t j) {
            const Complex z = std::polar(1.0 - std::ldexp(1.0, -static_cast<int>(i % 30) - 1), 6.283185307 * j / 16384);
            return std::abs(f.deriv(z));
        });
        return rows.back().value;
    });

    const RadialGrid grid;
    row("norm of f_w", reps, [&](Execution exec) {
        NormOptions options;
        options.exec = exec;
        return bergman_type_norm(f, space, grid, options);
    });
    const SymbolPair sym{DiskFunction::power_series({1.0, 0.5}), SelfMap::blaschke_factor(Complex(0.3, -0.4))};
    row("bounded-into-Bloch classification", reps, [&](Execution exec) {
        CriteriaOptions options;
        options.exec = exec;
        const auto c = classify_bounded_into_bloch(sym, space, RadialGrid(18, 256, 8), options);
        double acc = 0.0;
        for (const auto& v : c.parts) acc += v.sup_estimate.value_or(-1.0);
        return acc;
    });
    return 0;
}
