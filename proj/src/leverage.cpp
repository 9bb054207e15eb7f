#include "hgsparse/leverage.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "hgsparse/kernels.hpp"
#include "hgsparse/rng.hpp"

namespace hgsparse {

namespace {

void check_weights(const CsrMatrix& A, std::span<const double> w) {
    if (static_cast<Index>(w.size()) != A.rows())
        throw std::invalid_argument("row weight count does not match the matrix");
    for (double v : w)
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("row weights must be finite and nonnegative");
    if (!A.all_finite()) throw std::invalid_argument("matrix has non-finite entries");
}

void check_config(const SolverConfig& cfg) {
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
    if (!(cfg.cg_tolerance > 0.0)) throw std::invalid_argument("cg tolerance must be positive");
    if (cfg.sketch_rows < 0) throw std::invalid_argument("sketch row count cannot be negative");
    if (cfg.cg_max_iter < 1) throw std::invalid_argument("cg iteration cap must be positive");
    if (!(cfg.ridge >= 0.0)) throw std::invalid_argument("ridge must be nonnegative");
}

}  // namespace

double DensePseudoinverse::quadform(std::span<const std::int32_t> cols,
                                    std::span<const double> vals) const {
    const auto& k = kernels::active();
    std::vector<double> t(static_cast<std::size_t>(n), 0.0);
    for (std::size_t p = 0; p < cols.size(); ++p)
        k.axpy(vals[p], inv.data() + static_cast<Index>(cols[p]) * n, t.data(),
               static_cast<std::size_t>(n));
    return k.sparse_dot(cols.data(), vals.data(), cols.size(), t.data());
}

DensePseudoinverse normal_pseudoinverse(const CsrMatrix& A, std::span<const double> w,
                                        double rel_tol) {
    check_weights(A, w);
    const Index n = A.cols();
    Eigen::MatrixXd N = Eigen::MatrixXd::Zero(n, n);
    for (Index r = 0; r < A.rows(); ++r) {
        const double wr = w[static_cast<std::size_t>(r)];
        if (wr == 0.0) continue;
        const auto cols = A.row_cols(r);
        const auto vals = A.row_vals(r);
        for (std::size_t a = 0; a < cols.size(); ++a)
            for (std::size_t b = 0; b < cols.size(); ++b)
                N(cols[a], cols[b]) += wr * vals[a] * vals[b];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(N);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    const Eigen::VectorXd& lam = es.eigenvalues();
    const Eigen::MatrixXd& V = es.eigenvectors();
    const double lmax = n > 0 ? lam.maxCoeff() : 0.0;
    const double cutoff = lmax > 0.0 ? rel_tol * lmax : 0.0;

    DensePseudoinverse out;
    out.n = n;
    Eigen::VectorXd dinv = Eigen::VectorXd::Zero(n);
    for (Index i = 0; i < n; ++i) {
        if (lmax > 0.0 && lam(i) > cutoff) {
            dinv(i) = 1.0 / lam(i);
            ++out.rank;
        }
    }
    Eigen::MatrixXd P = V * dinv.asDiagonal() * V.transpose();
    out.inv.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (Index r = 0; r < n; ++r)
        for (Index c = 0; c < n; ++c) out.inv[static_cast<std::size_t>(r * n + c)] = P(r, c);
    return out;
}

LeverageEstimate leverage_exact(const CsrMatrix& A, const RowWeights& w) {
    const auto P = normal_pseudoinverse(A, w);
    const Index m = A.rows();
    LeverageEstimate out;
    out.mode = SolverMode::exact;
    out.sigma.assign(static_cast<std::size_t>(m), 0.0);
    for (Index j = 0; j < m; ++j) {
        const double wj = w[static_cast<std::size_t>(j)];
        if (wj == 0.0) continue;
        out.sigma[static_cast<std::size_t>(j)] = wj * P.quadform(A.row_cols(j), A.row_vals(j));
    }
    double sum = 0.0;
    for (double s : out.sigma) sum += s;
    out.nu = sum;
    out.failure_probability = 0.0;
    return out;
}

CgResult cg_solve_normal(const CsrMatrix& A, std::span<const double> w, std::span<const double> b,
                         std::span<double> x, double tolerance, Index max_iter, double ridge,
                         bool throw_on_fail) {
    const Index n = A.cols();
    const auto nz = static_cast<std::size_t>(n);
    const auto& k = kernels::active();
    std::fill(x.begin(), x.end(), 0.0);

    const double bnorm = std::sqrt(k.sqnorm(b.data(), nz));
    CgResult res;
    if (bnorm == 0.0) {
        res.converged = true;
        return res;
    }

    auto diag = A.normal_diagonal(w, ridge);
    std::vector<double> precond(nz);
    for (std::size_t i = 0; i < nz; ++i) precond[i] = diag[i] > 1e-300 ? 1.0 / diag[i] : 1.0;

    std::vector<double> r(b.begin(), b.end());
    std::vector<double> z(nz), p(nz), Np(nz);
    std::vector<double> scratch(static_cast<std::size_t>(A.rows()));
    for (std::size_t i = 0; i < nz; ++i) z[i] = precond[i] * r[i];
    p = z;
    double rz = k.dot(r.data(), z.data(), nz);
    double rnorm = bnorm;

    for (Index it = 1; it <= max_iter; ++it) {
        A.normal_apply(w, p.data(), Np.data(), scratch.data(), ridge);
        const double pNp = k.dot(p.data(), Np.data(), nz);
        if (!(pNp > 0.0)) break;  // direction left the range; residual below decides
        const double alpha = rz / pNp;
        k.axpy(alpha, p.data(), x.data(), nz);
        k.axpy(-alpha, Np.data(), r.data(), nz);
        rnorm = std::sqrt(k.sqnorm(r.data(), nz));
        res.iterations = it;
        if (rnorm <= tolerance * bnorm) {
            res.converged = true;
            break;
        }
        for (std::size_t i = 0; i < nz; ++i) z[i] = precond[i] * r[i];
        const double rz_next = k.dot(r.data(), z.data(), nz);
        const double beta = rz_next / rz;
        rz = rz_next;
        k.scale(beta, p.data(), nz);
        k.axpy(1.0, z.data(), p.data(), nz);
    }
    res.residual = rnorm / bnorm;
    if (!res.converged && res.residual <= tolerance) res.converged = true;
    if (!res.converged && throw_on_fail)
        throw SolverFailure("cg did not reach tolerance " + std::to_string(tolerance) +
                                " (relative residual " + std::to_string(res.residual) + ")",
                            res.iterations, res.residual);
    return res;
}

Index resolve_sketch_rows(const SolverConfig& cfg, Index m) {
    if (cfg.sketch_rows > 0) return cfg.sketch_rows;
    const double lm = std::log(static_cast<double>(std::max<Index>(m, 2)));
    return std::max<Index>(1, static_cast<Index>(std::ceil(8.0 * lm / (cfg.delta * cfg.delta))));
}

LeverageEstimate leverage_sketched(const CsrMatrix& A, const RowWeights& w, const SolverConfig& cfg,
                                   std::uint64_t seed) {
    check_config(cfg);
    check_weights(A, w);
    const Index m = A.rows();
    const Index n = A.cols();
    const Index q = resolve_sketch_rows(cfg, m);
    const double inv_sqrt_q = 1.0 / std::sqrt(static_cast<double>(q));

    std::vector<double> sqw(static_cast<std::size_t>(m));
    for (Index j = 0; j < m; ++j) sqw[static_cast<std::size_t>(j)] = std::sqrt(w[static_cast<std::size_t>(j)]);

    // Z holds the q solves column by column, row-major n x q so that the
    // per-matrix-row accumulation below walks contiguous memory.
    std::vector<double> Z(static_cast<std::size_t>(n) * static_cast<std::size_t>(q), 0.0);
    std::atomic<bool> failed{false};
    std::atomic<Index> failed_iters{0};
    double failed_residual = 0.0;

    parallel_for(q, [&](Index lo, Index hi) {
        std::vector<double> coeff(static_cast<std::size_t>(m));
        std::vector<double> b(static_cast<std::size_t>(n));
        std::vector<double> zcol(static_cast<std::size_t>(n));
        for (Index s = lo; s < hi; ++s) {
            auto rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(s));
            for (Index j = 0; j < m; ++j)
                coeff[static_cast<std::size_t>(j)] = rng.next_sign() * sqw[static_cast<std::size_t>(j)] * inv_sqrt_q;
            std::fill(b.begin(), b.end(), 0.0);
            A.accumulate_rows(coeff, b.data());
            const auto res = cg_solve_normal(A, w, b, zcol, cfg.cg_tolerance, cfg.cg_max_iter,
                                             cfg.ridge, /*throw_on_fail=*/false);
            if (!res.converged && !failed.exchange(true)) {
                failed_iters.store(res.iterations);
                failed_residual = res.residual;
            }
            for (Index c = 0; c < n; ++c)
                Z[static_cast<std::size_t>(c) * static_cast<std::size_t>(q) + static_cast<std::size_t>(s)] =
                    zcol[static_cast<std::size_t>(c)];
        }
    });
    if (failed.load())
        throw SolverFailure("cg did not reach tolerance inside the sketch", failed_iters.load(),
                            failed_residual);

    LeverageEstimate out;
    out.mode = SolverMode::sketched;
    out.sigma.assign(static_cast<std::size_t>(m), 0.0);
    const double scale = 1.0 / (1.0 - cfg.delta);
    parallel_for(m, [&](Index lo, Index hi) {
        const auto& k = kernels::active();
        std::vector<double> acc(static_cast<std::size_t>(q));
        for (Index j = lo; j < hi; ++j) {
            const double wj = w[static_cast<std::size_t>(j)];
            if (wj == 0.0) continue;
            std::fill(acc.begin(), acc.end(), 0.0);
            const auto cols = A.row_cols(j);
            const auto vals = A.row_vals(j);
            for (std::size_t p = 0; p < cols.size(); ++p)
                k.axpy(vals[p], Z.data() + static_cast<std::size_t>(cols[p]) * static_cast<std::size_t>(q),
                       acc.data(), static_cast<std::size_t>(q));
            const double raw = k.sqnorm(acc.data(), static_cast<std::size_t>(q));
            out.sigma[static_cast<std::size_t>(j)] = std::min(wj * raw * scale, scale);
        }
    });

    out.nu = (1.0 + cfg.delta) / (1.0 - cfg.delta) * static_cast<double>(n);
    Index active_rows = 0;
    for (Index j = 0; j < m; ++j)
        if (w[static_cast<std::size_t>(j)] > 0.0) ++active_rows;
    const double exponent =
        static_cast<double>(q) * (cfg.delta * cfg.delta / 4.0 - cfg.delta * cfg.delta * cfg.delta / 6.0);
    const double bound = 2.0 * static_cast<double>(active_rows) * std::exp(-exponent);
    out.failure_probability = active_rows == 0 ? 0.0 : std::min(bound, 1.0 - 1e-12);
    return out;
}

Overestimator make_overestimator(const CsrMatrix& A, const SolverConfig& cfg, std::uint64_t seed) {
    check_config(cfg);
    auto counter = std::make_shared<std::uint64_t>(0);
    const CsrMatrix* mat = &A;
    return [mat, cfg, seed, counter](const RowWeights& w) {
        if (cfg.mode == SolverMode::exact) return leverage_exact(*mat, w);
        return leverage_sketched(*mat, w, cfg, SplitMix64::substream_seed(seed, (*counter)++));
    };
}

}  // namespace hgsparse
