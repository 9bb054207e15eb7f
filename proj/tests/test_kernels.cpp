#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "hgsparse/kernels.hpp"
#include "hgsparse/rng.hpp"

using hgsparse::SplitMix64;
namespace kn = hgsparse::kernels;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<double> v(n);
    for (auto& e : v) e = rng.next_normal() * std::exp(3.0 * (rng.next_double() - 0.5));
    return v;
}

std::vector<kn::Backend> testable_backends() {
    std::vector<kn::Backend> out{kn::Backend::scalar};
    if (kn::backend_supported(kn::Backend::avx2)) out.push_back(kn::Backend::avx2);
    if (kn::backend_supported(kn::Backend::neon)) out.push_back(kn::Backend::neon);
    return out;
}

}  // namespace

TEST_CASE("scalar dot matches a plain reference on short inputs") {
    const auto& t = kn::table(kn::Backend::scalar);
    const double x[] = {1.0, 2.0, 3.0, 4.0, 5.0};
    const double y[] = {2.0, -1.0, 0.5, 4.0, -2.0};
    CHECK(t.dot(x, y, 5) == doctest::Approx(1.0 * 2 - 2 + 1.5 + 16 - 10));
    CHECK(t.dot(x, y, 0) == 0.0);
    CHECK(t.sqnorm(x, 3) == doctest::Approx(14.0));
    CHECK(t.max_sq(y, 5) == doctest::Approx(16.0));
    CHECK(t.max_sq(y, 0) == 0.0);
}

TEST_CASE("every supported backend is bitwise identical to scalar") {
    const auto& ref = kn::table(kn::Backend::scalar);
    for (auto backend : testable_backends()) {
        const auto& t = kn::table(backend);
        CAPTURE(t.name);
        // lengths straddle the 4-lane block boundary to exercise every tail
        for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 63u, 64u, 65u, 1000u, 1001u, 1002u, 1003u}) {
            auto x = random_vec(n, 11 + n);
            auto y = random_vec(n, 77 + n);
            CHECK(t.dot(x.data(), y.data(), n) == ref.dot(x.data(), y.data(), n));
            CHECK(t.sqnorm(x.data(), n) == ref.sqnorm(x.data(), n));
            CHECK(t.max_sq(x.data(), n) == ref.max_sq(x.data(), n));

            auto ya = y;
            auto yb = y;
            t.axpy(0.37, x.data(), ya.data(), n);
            ref.axpy(0.37, x.data(), yb.data(), n);
            CHECK(ya == yb);

            auto xa = x;
            auto xb = x;
            t.scale(-1.75, xa.data(), n);
            ref.scale(-1.75, xb.data(), n);
            CHECK(xa == xb);
        }

        // gathered sparse dot against a dense target
        SplitMix64 rng(5);
        for (std::size_t nnz : {0u, 1u, 3u, 4u, 5u, 9u, 250u, 251u}) {
            std::vector<std::int32_t> idx(nnz);
            for (auto& i : idx) i = static_cast<std::int32_t>(rng.next_below(300));
            auto val = random_vec(nnz, 123 + nnz);
            auto x = random_vec(300, 321);
            CHECK(t.sparse_dot(idx.data(), val.data(), nnz, x.data()) ==
                  ref.sparse_dot(idx.data(), val.data(), nnz, x.data()));
        }
    }
}

TEST_CASE("backend selection is sticky and validated") {
    const auto before = kn::active_backend();
    kn::select_backend(kn::Backend::scalar);
    CHECK(kn::active_backend() == kn::Backend::scalar);
    CHECK(kn::active().name == kn::table(kn::Backend::scalar).name);
    if (!kn::backend_supported(kn::Backend::neon))
        CHECK_THROWS_AS(kn::select_backend(kn::Backend::neon), std::invalid_argument);
    kn::select_backend(before);
}

TEST_CASE("dot is exact on integer-valued data") {
    // integers up to 2^20 have exact double products and sums here
    std::vector<double> x(257), y(257);
    SplitMix64 rng(9);
    long double expect = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = static_cast<double>(rng.next_below(1 << 20)) - (1 << 19);
        y[i] = static_cast<double>(rng.next_below(1 << 10));
        expect += static_cast<long double>(x[i]) * y[i];
    }
    CHECK(kn::active().dot(x.data(), y.data(), x.size()) == static_cast<double>(expect));
}
