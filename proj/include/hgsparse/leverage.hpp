#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hgsparse/common.hpp"
#include "hgsparse/csr.hpp"

namespace hgsparse {

// Nonnegative row weights w; W = diag(w).
using RowWeights = std::vector<double>;

enum class SolverMode { exact, sketched };

struct SolverConfig {
    SolverMode mode = SolverMode::exact;
    // relative accuracy of the sketched estimate
    double delta = 0.25;
    // 0 resolves to ceil(8 * ln(max(m,2)) / delta^2)
    Index sketch_rows = 0;
    double cg_tolerance = 1e-10;
    Index cg_max_iter = 2000;
    double ridge = 0.0;
};

struct LeverageEstimate {
    std::vector<double> sigma;
    double nu = 0.0;  // certified upper bound on ||sigma||_1
    SolverMode mode = SolverMode::exact;
    double failure_probability = 0.0;
};

// Dense (A^T W A)^+ with eigenvalues below rel_tol * lambda_max zeroed.
struct DensePseudoinverse {
    Index n = 0;
    Index rank = 0;
    std::vector<double> inv;  // row-major n x n

    // a^T (A^T W A)^+ a for a sparse vector a
    double quadform(std::span<const std::int32_t> cols, std::span<const double> vals) const;
};

DensePseudoinverse normal_pseudoinverse(const CsrMatrix& A, std::span<const double> w,
                                        double rel_tol = 1e-12);

// sigma_j = w_j * a_j^T (A^T W A)^+ a_j; nu = ||sigma||_1; failure 0.
LeverageEstimate leverage_exact(const CsrMatrix& A, const RowWeights& w);

// Rademacher sketch of W^{1/2} A composed with conjugate-gradient solves
// against A^T W A, scaled by (1 - delta)^{-1} and clamped to that bound.
// nu = (1 + delta) / (1 - delta) * n. Deterministic given the seed.
LeverageEstimate leverage_sketched(const CsrMatrix& A, const RowWeights& w, const SolverConfig& cfg,
                                   std::uint64_t seed);

// Procedure w -> LeverageEstimate over a fixed matrix. Sketched mode draws an
// independent substream per call (call counter c uses substream(seed, c)), so
// a rebuilt overestimator replays the same call sequence bit for bit.
using Overestimator = std::function<LeverageEstimate(const RowWeights&)>;
Overestimator make_overestimator(const CsrMatrix& A, const SolverConfig& cfg, std::uint64_t seed);

struct CgResult {
    Index iterations = 0;
    double residual = 0.0;  // relative to ||b||
    bool converged = false;
};

// Jacobi-preconditioned CG on (A^T W A + ridge I) x = b; x is overwritten.
// Throws SolverFailure when the iteration cap is hit, unless `throw_on_fail`
// is cleared by a caller that inspects the result instead.
CgResult cg_solve_normal(const CsrMatrix& A, std::span<const double> w, std::span<const double> b,
                         std::span<double> x, double tolerance, Index max_iter, double ridge = 0.0,
                         bool throw_on_fail = true);

// Sketch row count the config resolves to for m matrix rows.
Index resolve_sketch_rows(const SolverConfig& cfg, Index m);

}  // namespace hgsparse
