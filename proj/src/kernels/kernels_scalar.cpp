#include "hgsparse/kernels.hpp"

#include <algorithm>
#include <cmath>

// Reference backend. Four explicit accumulator lanes with std::fma keep the
// rounding sequence identical to the vector backends; this file is compiled
// with contraction disabled so the compiler cannot alter it.

namespace hgsparse::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc[0] = std::fma(x[i + 0], y[i + 0], acc[0]);
        acc[1] = std::fma(x[i + 1], y[i + 1], acc[1]);
        acc[2] = std::fma(x[i + 2], y[i + 2], acc[2]);
        acc[3] = std::fma(x[i + 3], y[i + 3], acc[3]);
    }
    for (std::size_t t = 0; i < n; ++i, ++t) acc[t] = std::fma(x[i], y[i], acc[t]);
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double sqnorm_scalar(const double* x, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc[0] = std::fma(x[i + 0], x[i + 0], acc[0]);
        acc[1] = std::fma(x[i + 1], x[i + 1], acc[1]);
        acc[2] = std::fma(x[i + 2], x[i + 2], acc[2]);
        acc[3] = std::fma(x[i + 3], x[i + 3], acc[3]);
    }
    for (std::size_t t = 0; i < n; ++i, ++t) acc[t] = std::fma(x[i], x[i], acc[t]);
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double sparse_dot_scalar(const std::int32_t* idx, const double* val, std::size_t nnz,
                         const double* x) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= nnz; i += 4) {
        acc[0] = std::fma(val[i + 0], x[idx[i + 0]], acc[0]);
        acc[1] = std::fma(val[i + 1], x[idx[i + 1]], acc[1]);
        acc[2] = std::fma(val[i + 2], x[idx[i + 2]], acc[2]);
        acc[3] = std::fma(val[i + 3], x[idx[i + 3]], acc[3]);
    }
    for (std::size_t t = 0; i < nnz; ++i, ++t) acc[t] = std::fma(val[i], x[idx[i]], acc[t]);
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

void scale_scalar(double a, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

double max_sq_scalar(const double* x, std::size_t n) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) best = std::max(best, x[i] * x[i]);
    return best;
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable t{"scalar",      dot_scalar,   sqnorm_scalar, sparse_dot_scalar,
                               axpy_scalar, scale_scalar, max_sq_scalar};
    return t;
}

}  // namespace hgsparse::kernels
