#pragma once

// Data-parallel sweeps used by the quadrature and sup-search code.
//
// Each kernel exists twice: a plain serial loop kept as the reference, and an
// OpenMP version. Both produce bit-identical results: work items are
// independent and every reduction runs in a fixed order after the parallel
// section.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace wcop {

enum class Execution { Serial, Parallel };

namespace kernels {

using IndexFn = std::function<double(std::size_t)>;
using CellFn = std::function<double(std::size_t, std::size_t)>;

struct RowMax {
    double value = 0.0;
    std::size_t column = 0;
};

/// Summation block for chunked_mean; fixed so the reduction order never depends on threads.
inline constexpr std::size_t kChunk = 64;

namespace serial {
void evaluate(std::size_t n, const IndexFn& f, std::span<double> out);
std::vector<RowMax> row_maxima(std::size_t rows, std::size_t cols, const CellFn& f);
double chunked_mean(std::size_t n, const IndexFn& f);
}  // namespace serial

namespace parallel {
void evaluate(std::size_t n, const IndexFn& f, std::span<double> out);
std::vector<RowMax> row_maxima(std::size_t rows, std::size_t cols, const CellFn& f);
double chunked_mean(std::size_t n, const IndexFn& f);
}  // namespace parallel

/// out[i] = f(i).
void evaluate(Execution exec, std::size_t n, const IndexFn& f, std::span<double> out);
/// Per row, the maximum of f(row, col) and the first column attaining it.
std::vector<RowMax> row_maxima(Execution exec, std::size_t rows, std::size_t cols, const CellFn& f);
/// (1/n) sum f(j), summed in blocks of kChunk.
double chunked_mean(Execution exec, std::size_t n, const IndexFn& f);

}  // namespace kernels
}  // namespace wcop
