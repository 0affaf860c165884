#include "wcop/kernels.hpp"

#include <algorithm>

namespace wcop::kernels::serial {

void evaluate(std::size_t n, const IndexFn& f, std::span<double> out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
}

std::vector<RowMax> row_maxima(std::size_t rows, std::size_t cols, const CellFn& f) {
    std::vector<RowMax> result(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        RowMax best{-1.0, 0};
        for (std::size_t j = 0; j < cols; ++j) {
            const double v = f(i, j);
            if (v > best.value) best = {v, j};
        }
        result[i] = best;
    }
    return result;
}

double chunked_mean(std::size_t n, const IndexFn& f) {
    if (n == 0) return 0.0;
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(chunks, 0.0);
    for (std::size_t c = 0; c < chunks; ++c) {
        double s = 0.0;
        const std::size_t end = std::min(n, (c + 1) * kChunk);
        for (std::size_t j = c * kChunk; j < end; ++j) s += f(j);
        partial[c] = s;
    }
    double total = 0.0;
    for (double s : partial) total += s;
    return total / static_cast<double>(n);
}

}  // namespace wcop::kernels::serial
