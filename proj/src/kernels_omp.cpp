#include "wcop/kernels.hpp"

#include <algorithm>
#include <exception>
#include <mutex>

namespace wcop::kernels {

namespace {

// Exceptions must not escape an OpenMP region; keep the one from the lowest index.
class FirstError {
public:
    void capture(std::size_t index) {
        std::lock_guard lock(mutex_);
        if (!error_ || index < index_) {
            error_ = std::current_exception();
            index_ = index;
        }
    }
    void rethrow() const {
        if (error_) std::rethrow_exception(error_);
    }

private:
    std::mutex mutex_;
    std::exception_ptr error_;
    std::size_t index_ = 0;
};

}  // namespace

namespace parallel {

void evaluate(std::size_t n, const IndexFn& f, std::span<double> out) {
    FirstError error;
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (long long i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
        } catch (...) {
            error.capture(static_cast<std::size_t>(i));
        }
    }
    error.rethrow();
}

std::vector<RowMax> row_maxima(std::size_t rows, std::size_t cols, const CellFn& f) {
    std::vector<RowMax> result(rows);
    FirstError error;
    const auto count = static_cast<long long>(rows);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < count; ++i) {
        try {
            RowMax best{-1.0, 0};
            for (std::size_t j = 0; j < cols; ++j) {
                const double v = f(static_cast<std::size_t>(i), j);
                if (v > best.value) best = {v, j};
            }
            result[static_cast<std::size_t>(i)] = best;
        } catch (...) {
            error.capture(static_cast<std::size_t>(i));
        }
    }
    error.rethrow();
    return result;
}

double chunked_mean(std::size_t n, const IndexFn& f) {
    if (n == 0) return 0.0;
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(chunks, 0.0);
    FirstError error;
    const auto count = static_cast<long long>(chunks);
#pragma omp parallel for schedule(static)
    for (long long c = 0; c < count; ++c) {
        try {
            double s = 0.0;
            const auto begin = static_cast<std::size_t>(c) * kChunk;
            const std::size_t end = std::min(n, begin + kChunk);
            for (std::size_t j = begin; j < end; ++j) s += f(j);
            partial[static_cast<std::size_t>(c)] = s;
        } catch (...) {
            error.capture(static_cast<std::size_t>(c));
        }
    }
    error.rethrow();
    double total = 0.0;
    for (double s : partial) total += s;
    return total / static_cast<double>(n);
}

}  // namespace parallel

void evaluate(Execution exec, std::size_t n, const IndexFn& f, std::span<double> out) {
    exec == Execution::Serial ? serial::evaluate(n, f, out) : parallel::evaluate(n, f, out);
}

std::vector<RowMax> row_maxima(Execution exec, std::size_t rows, std::size_t cols, const CellFn& f) {
    return exec == Execution::Serial ? serial::row_maxima(rows, cols, f)
                                     : parallel::row_maxima(rows, cols, f);
}

double chunked_mean(Execution exec, std::size_t n, const IndexFn& f) {
    return exec == Execution::Serial ? serial::chunked_mean(n, f) : parallel::chunked_mean(n, f);
}

}  // namespace wcop::kernels
