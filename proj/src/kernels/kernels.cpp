#include "hgsparse/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace hgsparse::kernels {

const KernelTable& scalar_table();
const KernelTable& avx2_table();
bool avx2_table_available();
const KernelTable& neon_table();
bool neon_table_available();

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend widest_supported() {
    if (backend_supported(Backend::avx2)) return Backend::avx2;
    if (backend_supported(Backend::neon)) return Backend::neon;
    return Backend::scalar;
}

Backend initial_backend() {
    if (const char* env = std::getenv("HGSPARSE_KERNELS")) {
        const std::string v(env);
        if (v == "scalar") return Backend::scalar;
        if (v == "avx2" && backend_supported(Backend::avx2)) return Backend::avx2;
        if (v == "neon" && backend_supported(Backend::neon)) return Backend::neon;
        // "auto", unknown names and unsupported requests all fall through
    }
    return widest_supported();
}

std::atomic<Backend>& current() {
    static std::atomic<Backend> backend{initial_backend()};
    return backend;
}

}  // namespace

bool backend_supported(Backend backend) {
    switch (backend) {
        case Backend::scalar: return true;
        case Backend::avx2: return avx2_table_available() && cpu_has_avx2();
        case Backend::neon: return neon_table_available();
    }
    return false;
}

const KernelTable& table(Backend backend) {
    switch (backend) {
        case Backend::scalar: return scalar_table();
        case Backend::avx2:
            if (!backend_supported(Backend::avx2))
                throw std::invalid_argument("avx2 kernels unavailable on this cpu");
            return avx2_table();
        case Backend::neon:
            if (!backend_supported(Backend::neon))
                throw std::invalid_argument("neon kernels unavailable on this cpu");
            return neon_table();
    }
    throw std::invalid_argument("unknown kernel backend");
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

const KernelTable& active() { return table(active_backend()); }

void select_backend(Backend backend) {
    if (!backend_supported(backend)) throw std::invalid_argument("kernel backend unavailable on this cpu");
    current().store(backend, std::memory_order_relaxed);
}

}  // namespace hgsparse::kernels
