#pragma once

#include <cstddef>
#include <cstdint>

namespace hgsparse::kernels {

// Vector kernels behind the numeric inner loops (row inner products, CG
// updates, sketch assembly, per-group max reductions).
//
// Every backend implements the same accumulation scheme: four independent
// lanes, fused multiply-add per lane, the tail of fewer than four elements
// fed to lanes 0..2 in order, and a fixed lane-combine order
// (lane0+lane1)+(lane2+lane3). Because scalar std::fma and the vector FMA
// round identically, all backends return bit-identical results; the
// equivalence suite asserts exact equality, and backend selection never
// changes any output of the library.
struct KernelTable {
    const char* name;
    // sum_i x[i]*y[i]
    double (*dot)(const double* x, const double* y, std::size_t n);
    // sum_i x[i]^2
    double (*sqnorm)(const double* x, std::size_t n);
    // sum_t val[t]*x[idx[t]]
    double (*sparse_dot)(const std::int32_t* idx, const double* val, std::size_t nnz,
                         const double* x);
    // y[i] += a*x[i]
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // x[i] *= a
    void (*scale)(double a, double* x, std::size_t n);
    // max_i x[i]^2, 0 for empty input
    double (*max_sq)(const double* x, std::size_t n);
};

enum class Backend { scalar, avx2, neon };

const KernelTable& table(Backend backend);  // throws if unsupported on this host
bool backend_supported(Backend backend);

// Active table. Chosen once at first use: the widest supported SIMD backend,
// unless HGSPARSE_KERNELS=scalar|avx2|neon|auto overrides it.
const KernelTable& active();
Backend active_backend();
void select_backend(Backend backend);  // throws std::invalid_argument if unsupported

}  // namespace hgsparse::kernels
