#include "hgsparse/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

// AVX2+FMA backend, compiled with -mavx2 -mfma for this file only. Mirrors
// the scalar lane scheme exactly: one 4-wide accumulator, scalar fma tail
// into lanes 0..2, combine (l0+l1)+(l2+l3).

namespace hgsparse::kernels {
namespace {

inline double combine(__m256d acc) {
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    for (std::size_t t = 0; i < n; ++i, ++t) lane[t] = std::fma(x[i], y[i], lane[t]);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double sqnorm_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    for (std::size_t t = 0; i < n; ++i, ++t) lane[t] = std::fma(x[i], x[i], lane[t]);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double sparse_dot_avx2(const std::int32_t* idx, const double* val, std::size_t nnz,
                       const double* x) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= nnz; i += 4) {
        __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + i));
        __m256d gathered = _mm256_i32gather_pd(x, vi, 8);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(val + i), gathered, acc);
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    for (std::size_t t = 0; i < nnz; ++i, ++t) lane[t] = std::fma(val[i], x[idx[i]], lane[t]);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, r);
    }
    for (; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

void scale_avx2(double a, double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), va));
    for (; i < n; ++i) x[i] *= a;
}

double max_sq_avx2(const double* x, std::size_t n) {
    __m256d best4 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        best4 = _mm256_max_pd(best4, _mm256_mul_pd(v, v));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, best4);
    double best = std::max(std::max(lane[0], lane[1]), std::max(lane[2], lane[3]));
    for (; i < n; ++i) best = std::max(best, x[i] * x[i]);
    return best;
}

}  // namespace

bool avx2_table_available() { return true; }

const KernelTable& avx2_table() {
    static const KernelTable t{"avx2",    dot_avx2,   sqnorm_avx2, sparse_dot_avx2,
                               axpy_avx2, scale_avx2, max_sq_avx2};
    return t;
}

}  // namespace hgsparse::kernels

#else

#include <stdexcept>

namespace hgsparse::kernels {
bool avx2_table_available() { return false; }
const KernelTable& avx2_table() { throw std::logic_error("avx2 kernels not built on this platform"); }
}  // namespace hgsparse::kernels

#endif
