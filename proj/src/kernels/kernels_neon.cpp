#include "hgsparse/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

// NEON backend for aarch64. Two float64x2 registers stand in for the four
// accumulator lanes; the lane layout, fma rounding and combine order match
// the scalar reference bit for bit.

namespace hgsparse::kernels {
namespace {

double dot_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t acc01 = vdupq_n_f64(0.0);
    float64x2_t acc23 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc01 = vfmaq_f64(acc01, vld1q_f64(x + i), vld1q_f64(y + i));
        acc23 = vfmaq_f64(acc23, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
    }
    double lane[4];
    vst1q_f64(lane, acc01);
    vst1q_f64(lane + 2, acc23);
    for (std::size_t t = 0; i < n; ++i, ++t) lane[t] = std::fma(x[i], y[i], lane[t]);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double sqnorm_neon(const double* x, std::size_t n) {
    float64x2_t acc01 = vdupq_n_f64(0.0);
    float64x2_t acc23 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        float64x2_t a = vld1q_f64(x + i);
        float64x2_t b = vld1q_f64(x + i + 2);
        acc01 = vfmaq_f64(acc01, a, a);
        acc23 = vfmaq_f64(acc23, b, b);
    }
    double lane[4];
    vst1q_f64(lane, acc01);
    vst1q_f64(lane + 2, acc23);
    for (std::size_t t = 0; i < n; ++i, ++t) lane[t] = std::fma(x[i], x[i], lane[t]);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double sparse_dot_neon(const std::int32_t* idx, const double* val, std::size_t nnz,
                       const double* x) {
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= nnz; i += 4) {
        lane[0] = std::fma(val[i + 0], x[idx[i + 0]], lane[0]);
        lane[1] = std::fma(val[i + 1], x[idx[i + 1]], lane[1]);
        lane[2] = std::fma(val[i + 2], x[idx[i + 2]], lane[2]);
        lane[3] = std::fma(val[i + 3], x[idx[i + 3]], lane[3]);
    }
    for (std::size_t t = 0; i < nnz; ++i, ++t) lane[t] = std::fma(val[i], x[idx[i]], lane[t]);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
        vst1q_f64(y + i + 2, vfmaq_f64(vld1q_f64(y + i + 2), va, vld1q_f64(x + i + 2)));
    }
    for (; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

void scale_neon(double a, double* x, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        vst1q_f64(x + i, vmulq_f64(vld1q_f64(x + i), va));
        vst1q_f64(x + i + 2, vmulq_f64(vld1q_f64(x + i + 2), va));
    }
    for (; i < n; ++i) x[i] *= a;
}

double max_sq_neon(const double* x, std::size_t n) {
    float64x2_t best01 = vdupq_n_f64(0.0);
    float64x2_t best23 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        float64x2_t a = vld1q_f64(x + i);
        float64x2_t b = vld1q_f64(x + i + 2);
        best01 = vmaxq_f64(best01, vmulq_f64(a, a));
        best23 = vmaxq_f64(best23, vmulq_f64(b, b));
    }
    double lane[4];
    vst1q_f64(lane, best01);
    vst1q_f64(lane + 2, best23);
    double best = std::max(std::max(lane[0], lane[1]), std::max(lane[2], lane[3]));
    for (; i < n; ++i) best = std::max(best, x[i] * x[i]);
    return best;
}

}  // namespace

bool neon_table_available() { return true; }

const KernelTable& neon_table() {
    static const KernelTable t{"neon",    dot_neon,   sqnorm_neon, sparse_dot_neon,
                               axpy_neon, scale_neon, max_sq_neon};
    return t;
}

}  // namespace hgsparse::kernels

#else

#include <stdexcept>

namespace hgsparse::kernels {
bool neon_table_available() { return false; }
const KernelTable& neon_table() { throw std::logic_error("neon kernels not built on this platform"); }
}  // namespace hgsparse::kernels

#endif
