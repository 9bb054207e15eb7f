// Acceptance gate: ten end-to-end checks with pinned tolerances, one verdict
// line per check. Exits nonzero when any of them fails.

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgsparse/certify.hpp"
#include "hgsparse/common.hpp"
#include "hgsparse/hypergraph.hpp"
#include "hgsparse/io.hpp"
#include "hgsparse/leverage.hpp"
#include "hgsparse/overestimates.hpp"
#include "hgsparse/report.hpp"
#include "hgsparse/rng.hpp"
#include "hgsparse/sampler.hpp"

using namespace hgsparse;

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double sum_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

double mean_of(const std::vector<double>& v) { return sum_of(v) / static_cast<double>(v.size()); }

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

std::vector<double> gaussian_vec(Index n, std::uint64_t seed) {
    auto rng = SplitMix64(seed);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = rng.next_normal();
    return x;
}

GraphicalHypergraph cycle_graph(Index n) {
    GraphicalHypergraph G;
    G.vertex_count = n;
    for (Index i = 0; i < n; ++i) {
        Hyperedge e;
        e.vertices = {std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)};
        G.edges.push_back(std::move(e));
    }
    return G;
}

// Unit instance with group sizes up to r (first group exactly r), at most 400
// rows and at most 40 columns; every row has 1..3 random normal entries.
MatrixHypergraph random_group_instance(int i) {
    auto rng = SplitMix64(9000 + static_cast<std::uint64_t>(i));
    const Index r = 2 + i % 7;
    const Index n = 6 + (i * 5) % 35;
    const Index budget = 40 + (i * 37) % 361;
    std::vector<Index> sizes{r};
    Index m = r;
    while (m < budget) {
        const Index s = 1 + static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(r)));
        if (m + s > 400) break;
        sizes.push_back(s);
        m += s;
    }
    CsrMatrix::Builder b(m, n);
    for (Index row = 0; row < m; ++row) {
        const Index nnz = 1 + static_cast<Index>(rng.next_below(3));
        std::vector<Index> cols;
        while (static_cast<Index>(cols.size()) < nnz) {
            const auto c = static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(n)));
            if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
        }
        std::sort(cols.begin(), cols.end());
        for (Index c : cols) b.add(row, c, rng.next_normal());
    }
    MatrixHypergraph G;
    G.matrix = std::move(b).finish();
    G.groups = RowGroups::contiguous(sizes);
    G.validate();
    return G;
}

// Identity block over the first `live` columns plus random sparse rows; with
// skip_last_col the final column stays empty, forcing a rank deficit.
CsrMatrix padded_matrix(Index m, Index n, std::uint64_t seed, bool skip_last_col) {
    const Index live = skip_last_col ? n - 1 : n;
    auto rng = SplitMix64(seed);
    CsrMatrix::Builder b(m, n);
    for (Index i = 0; i < live; ++i) b.add(i, i, 1.0);
    for (Index row = live; row < m; ++row) {
        const Index nnz = 1 + static_cast<Index>(rng.next_below(3));
        std::vector<Index> cols;
        while (static_cast<Index>(cols.size()) < std::min(nnz, live)) {
            const auto c = static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(live)));
            if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
        }
        std::sort(cols.begin(), cols.end());
        for (Index c : cols) b.add(row, c, rng.next_double() * 2.0 - 1.0 + 0.1);
    }
    return std::move(b).finish();
}

Overestimator exact_estimator(const CsrMatrix& A) { return make_overestimator(A, SolverConfig{}, 0); }

// shared between the first two checks
struct SuiteStat {
    double mass = 0.0;
    double columns = 0.0;
};
std::vector<SuiteStat> g_suite;

std::string check_overestimate_validity() {
    const double t0 = now_seconds();
    g_suite.clear();
    double worst_slack = 0.0;
    double worst_gap = -1e300;
    for (int i = 0; i < 50; ++i) {
        const auto G = random_group_instance(i);
        const Index r = G.rank();
        const Index T = default_iterations(r);
        const auto O = group_leverage_overestimate(G, T, exact_estimator(G.matrix));
        if (static_cast<Index>(O.iteration_score_sums.size()) != T)
            fail("instance " + std::to_string(i) + ": expected " + std::to_string(T) +
                 " recorded score sums");
        const auto rep = certify_overestimates(G, O);
        for (const auto& c : rep.checks) {
            worst_slack = std::max(worst_slack, c.worst_slack);
            if (!c.pass) fail("instance " + std::to_string(i) + ": " + c.name + ": " + c.detail);
        }
        const double mass = sum_of(O.tau);
        const double inflate = std::exp(std::log(static_cast<double>(r)) / static_cast<double>(T));
        const double bound = inflate * mean_of(O.iteration_score_sums);
        if (mass > bound + 1e-9)
            fail("instance " + std::to_string(i) + ": ||tau||_1 " + num(mass) +
                 " above inflated score mean " + num(bound));
        worst_gap = std::max(worst_gap, mass - bound);
        g_suite.push_back({mass, static_cast<double>(G.column_count())});
    }
    const double dt = now_seconds() - t0;
    if (worst_slack > 1e-8) fail("worst certification slack " + num(worst_slack));
    if (dt >= 30.0) fail("suite took " + num(dt) + "s, budget 30s");
    return "50 instances, worst slack " + num(worst_slack) + ", mass gap " + num(worst_gap);
}

std::string check_bound_mass_economy() {
    if (g_suite.size() != 50) fail("overestimate suite did not complete");
    double worst = 0.0;
    for (std::size_t i = 0; i < g_suite.size(); ++i) {
        const double cap = std::numbers::e * g_suite[i].columns;
        if (g_suite[i].mass > cap)
            fail("instance " + std::to_string(i) + ": ||tau||_1 " + num(g_suite[i].mass) +
                 " above e*n " + num(cap));
        worst = std::max(worst, g_suite[i].mass / cap);
    }
    return "50 instances, max ||tau||_1 / (e n) = " + num(worst);
}

std::string check_cut_error_scaling() {
    const double t0 = now_seconds();
    const auto G = generate_random(InstanceKind::uniform_hypergraph, 12, 300, 5,
                                   WeightLaw::log_uniform, 4242);
    const double constants[] = {0.5, 1.0, 2.0, 4.0, 8.0};
    std::vector<double> medians;
    for (const double constant : constants) {
        std::vector<double> errs;
        for (int s = 0; s < 30; ++s) {
            PipelineConfig cfg;
            cfg.constant = constant;
            cfg.seed = 5000 + static_cast<std::uint64_t>(s);
            cfg.quality_directions = 8;
            const auto res = sparsify(G, 0.5, cfg);
            if (!res.quality || !res.quality->max_rel_err_cuts) fail("cut sweep unavailable");
            errs.push_back(*res.quality->max_rel_err_cuts);
        }
        medians.push_back(median_of(errs));
    }
    std::ostringstream curve;
    for (std::size_t i = 0; i < medians.size(); ++i) curve << (i ? " " : "") << num(medians[i]);
    int inversions = 0;
    for (std::size_t i = 0; i + 1 < medians.size(); ++i)
        if (medians[i + 1] > medians[i] + 1e-12) ++inversions;
    if (inversions > 1) fail("medians " + curve.str() + " rise " + std::to_string(inversions) + " times");
    if (medians.back() > 0.5) fail("median cut error " + num(medians.back()) + " at constant 8");
    const double dt = now_seconds() - t0;
    if (dt >= 120.0) fail("sweep took " + num(dt) + "s, budget 120s");
    return "medians " + curve.str() + ", inversions " + std::to_string(inversions);
}

std::string check_subsample_unbiasedness() {
    const auto G = unitize(clique_expand(
        generate_random(InstanceKind::uniform_hypergraph, 10, 20, 4, WeightLaw::log_uniform, 1234)));
    const auto O = group_leverage_overestimate(G, default_iterations(G.rank()),
                                               exact_estimator(G.matrix));
    const double rho = 0.5 * static_cast<double>(G.group_count()) / sum_of(O.tau);
    auto plan = make_plan(O.tau, G.row_count(), G.rank(), 0.5, Schedule::explicit_rho, rho, 0);
    bool randomized = false;
    for (double p : plan.probabilities) randomized = randomized || p < 1.0;
    if (!randomized) fail("every keep probability clamped to 1");
    const auto x = gaussian_vec(G.column_count(), 777);
    const double f_G = energy_total(G, x);
    const int draws = 10000;
    double acc = 0.0, acc_sq = 0.0;
    for (int d = 0; d < draws; ++d) {
        plan.seed = 20000 + static_cast<std::uint64_t>(d);
        const auto S = subsample(G, plan);
        const double f_H = energy_total(S.hypergraph, x);
        acc += f_H;
        acc_sq += f_H * f_H;
    }
    const double mean = acc / draws;
    const double var = (acc_sq - draws * mean * mean) / (draws - 1);
    const double se = std::sqrt(var / draws);
    if (!(se > 0.0)) fail("degenerate draw variance");
    const double devs = std::abs(mean - f_G) / se;
    if (devs > 4.0)
        fail("sample mean " + num(mean) + " vs f_G " + num(f_G) + " is " + num(devs) + " SEs off");
    return "10000 draws, mean within " + num(devs) + " SEs of f_G";
}

std::string check_size_law() {
    // expected size never above rho * ||tau||_1
    const auto G = unitize(clique_expand(
        generate_random(InstanceKind::uniform_hypergraph, 10, 20, 4, WeightLaw::log_uniform, 1234)));
    const auto O = group_leverage_overestimate(G, default_iterations(G.rank()),
                                               exact_estimator(G.matrix));
    const double mass = sum_of(O.tau);
    const double rho = 0.5 * static_cast<double>(G.group_count()) / mass;
    const auto plan = make_plan(O.tau, G.row_count(), G.rank(), 0.5, Schedule::explicit_rho, rho, 1);
    const auto S = subsample(G, plan);
    if (S.expected_kept > plan.rho * mass * (1.0 + 1e-12))
        fail("expected kept " + num(S.expected_kept) + " above rho*||tau||_1 " +
             num(plan.rho * mass));

    // quartering under epsilon halving on a clamp-free instance
    const auto cyc = cycle_graph(60);
    PipelineConfig cfg;
    cfg.constant = 0.01;
    cfg.seed = 31;
    cfg.quality_directions = 8;
    const auto half = sparsify(cyc, 0.5, cfg);
    const auto quarter = sparsify(cyc, 0.25, cfg);
    double max_p = 0.0;
    for (const auto* res : {&half, &quarter}) {
        for (double p : res->output.plan.probabilities) max_p = std::max(max_p, p);
        const double m2 = sum_of(res->overestimates.tau);
        if (res->output.expected_kept > res->output.plan.rho * m2 * (1.0 + 1e-12))
            fail("expected kept above rho*||tau||_1 on the cycle");
    }
    if (max_p >= 1.0) fail("cycle instance clamped, max p " + num(max_p));
    const double ratio = quarter.output.expected_kept / half.output.expected_kept;
    if (ratio < 3.6 || ratio > 4.4) fail("epsilon halving scaled expected kept by " + num(ratio));
    return "expected kept within mass bound, halving ratio " + num(ratio) + ", max p " + num(max_p);
}

std::string check_star_lift_validity() {
    double worst_slack = 0.0;
    for (int i = 0; i < 30; ++i) {
        const Index n = 8 + (i * 3) % 18;
        const Index r = 3 + i % 4;
        const Index k = n + i % 6;
        const auto kind =
            (i % 2) ? InstanceKind::power_law_degrees : InstanceKind::uniform_hypergraph;
        const auto law = ((i / 2) % 2) ? WeightLaw::log_uniform : WeightLaw::constant;
        const auto G = generate_random(kind, n, k, r, law, 7000 + static_cast<std::uint64_t>(i));
        const auto O = graphical_overestimates(G, exact_estimator);
        const auto clique = unitize(clique_expand(G));
        const auto rep = certify_overestimates(clique, O);
        for (const auto& c : rep.checks) {
            worst_slack = std::max(worst_slack, c.worst_slack);
            if (!c.pass) fail("instance " + std::to_string(i) + ": " + c.name + ": " + c.detail);
        }
    }
    if (worst_slack > 1e-8) fail("worst clique certification slack " + num(worst_slack));
    return "30 instances, worst slack " + num(worst_slack);
}

std::string check_sketched_accuracy() {
    const double delta = 0.25;
    const double hi = (1.0 + delta) / (1.0 - delta) + 1e-9;
    const double lo = 1.0 - 1e-9;
    int failures = 0;
    double worst_hi = 0.0, worst_lo = 1e300;
    for (int i = 0; i < 50; ++i) {
        const Index m = 30 + (i * 7) % 51;
        const Index n = 6 + i % 7;
        const auto A = padded_matrix(m, n, 31000 + static_cast<std::uint64_t>(i), false);
        auto rng = SplitMix64(41000 + static_cast<std::uint64_t>(i));
        RowWeights w(static_cast<std::size_t>(m));
        for (auto& v : w) v = std::exp(std::log(0.1) + rng.next_double() * std::log(100.0));
        const auto exact = leverage_exact(A, w);
        SolverConfig cfg;
        cfg.mode = SolverMode::sketched;
        cfg.delta = delta;
        const auto sketched = leverage_sketched(A, w, cfg, 52000 + static_cast<std::uint64_t>(i));
        const double nu_formula = (1.0 + delta) / (1.0 - delta) * static_cast<double>(n);
        if (std::abs(sketched.nu - nu_formula) > 1e-9 * nu_formula)
            fail("nu " + num(sketched.nu) + " off the closed form " + num(nu_formula));
        if (!(sketched.failure_probability > 0.0 && sketched.failure_probability < 1.0))
            fail("failure probability " + num(sketched.failure_probability) + " out of (0,1)");
        bool in_band = true;
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (exact.sigma[j] <= 1e-14) continue;
            const double ratio = sketched.sigma[j] / exact.sigma[j];
            worst_hi = std::max(worst_hi, ratio);
            worst_lo = std::min(worst_lo, ratio);
            if (ratio < lo || ratio > hi) in_band = false;
        }
        if (!in_band) ++failures;
    }
    if (failures > 2)
        fail(std::to_string(failures) + "/50 instances out of band [" + num(lo) + ", " + num(hi) +
             "], allowed 2");
    return std::to_string(failures) + "/50 out of band, ratios in [" + num(worst_lo) + ", " +
           num(worst_hi) + "]";
}

std::string check_leverage_identities() {
    struct Shape {
        Index m, n;
    };
    const Shape shapes[] = {{12, 4}, {16, 5}, {20, 6}, {24, 7}, {30, 8},
                            {14, 5}, {18, 6}, {22, 4}, {26, 7}, {35, 8}};
    double worst_sum = 0.0, worst_scale = 0.0, worst_convex = -1e300;
    int triples = 0;
    for (int v = 0; v < 10; ++v) {
        const auto [m, n] = shapes[v];
        const bool deficient = v % 3 == 1;
        const auto A = padded_matrix(m, n, 61000 + static_cast<std::uint64_t>(v), deficient);
        auto rng = SplitMix64(62000 + static_cast<std::uint64_t>(v));
        const auto draw_weights = [&] {
            RowWeights w(static_cast<std::size_t>(m));
            for (auto& x : w) x = 0.05 + rng.next_double();
            return w;
        };
        const auto w = draw_weights();
        const auto est = leverage_exact(A, w);
        const auto P = normal_pseudoinverse(A, w);
        if (deficient && P.rank != n - 1) fail("expected a rank deficit on shape " + std::to_string(v));
        const double gap = std::abs(sum_of(est.sigma) - static_cast<double>(P.rank));
        if (gap > 1e-8) fail("score sum off rank by " + num(gap));
        worst_sum = std::max(worst_sum, gap);
        for (double s : est.sigma)
            if (s < 0.0 || s > 1.0 + 1e-9) fail("score " + num(s) + " outside [0, 1]");
        for (const double c : {1e-6, 3.7, 1e6}) {
            RowWeights cw = w;
            for (auto& x : cw) x *= c;
            const auto scaled = leverage_exact(A, cw);
            for (std::size_t j = 0; j < w.size(); ++j) {
                const double diff = std::abs(scaled.sigma[j] - est.sigma[j]);
                if (diff > 1e-9) fail("scale drift " + num(diff) + " at c " + num(c));
                worst_scale = std::max(worst_scale, diff);
            }
        }
        for (int t = 0; t < 100; ++t) {
            const auto w1 = draw_weights();
            const auto w2 = draw_weights();
            RowWeights mid(w1.size());
            for (std::size_t j = 0; j < mid.size(); ++j) mid[j] = 0.5 * (w1[j] + w2[j]);
            const auto e1 = leverage_exact(A, w1);
            const auto e2 = leverage_exact(A, w2);
            const auto em = leverage_exact(A, mid);
            for (std::size_t j = 0; j < mid.size(); ++j) {
                const double lhs = std::log(em.sigma[j] / mid[j]);
                const double rhs = 0.5 * std::log(e1.sigma[j] / w1[j]) +
                                   0.5 * std::log(e2.sigma[j] / w2[j]);
                if (lhs > rhs + 1e-9) fail("log-convexity violated by " + num(lhs - rhs));
                worst_convex = std::max(worst_convex, lhs - rhs);
            }
            ++triples;
        }
    }
    if (triples != 1000) fail("expected 1000 midpoint triples, ran " + std::to_string(triples));
    return "sum gap " + num(worst_sum) + ", scale drift " + num(worst_scale) +
           ", midpoint margin " + num(-worst_convex);
}

std::string check_determinism() {
    const auto G = generate_random(InstanceKind::uniform_hypergraph, 30, 60, 4,
                                   WeightLaw::log_uniform, 999);
    PipelineConfig cfg;
    cfg.solver.mode = SolverMode::sketched;
    cfg.seed = 2024;
    cfg.quality_directions = 16;
    const auto blob = [&] {
        const auto res = sparsify(G, 0.5, cfg);
        const auto H = compact(res.output);
        SizeInfo sizes;
        sizes.n = res.output.hypergraph.column_count();
        sizes.m = res.output.hypergraph.row_count();
        sizes.k = res.output.hypergraph.group_count();
        sizes.kept = static_cast<Index>(res.output.kept_groups.size());
        sizes.expected_kept = res.output.expected_kept;
        return write_mhg(H) + "\n" + write_tau(res.overestimates) + "\n" +
               report_json(res.report, res.quality, &res.output.plan, sizes);
    };
    const int saved = thread_count();
    set_thread_count(1);
    const auto first = blob();
    const auto second = blob();
    set_thread_count(4);
    const auto threaded = blob();
    set_thread_count(saved);
    if (first.empty()) fail("empty pipeline serialization");
    if (first != second) fail("two single-thread runs differ");
    if (first != threaded) fail("1-thread and 4-thread runs differ");
    if (first.find("\"overall\": true") == std::string::npos)
        fail("pipeline report did not certify");
    return std::to_string(first.size()) + " bytes identical across runs and threads {1, 4}";
}

std::string check_performance_smoke() {
    const double t0 = now_seconds();
    const auto G = generate_random(InstanceKind::uniform_hypergraph, 5000, 8300, 8,
                                   WeightLaw::constant, 123);
    PipelineConfig cfg;
    cfg.solver.mode = SolverMode::sketched;
    cfg.seed = 7;
    const auto res = sparsify(G, 0.5, cfg);
    const double dt = now_seconds() - t0;
    const Index m = res.output.hypergraph.row_count();
    if (m < 80000 || m > 120000) fail("expanded to " + std::to_string(m) + " rows, wanted ~1e5");
    if (res.output.kept_groups.empty()) fail("sparsifier kept nothing");
    if (!res.quality || res.quality->directions_tested <= 0) fail("quality scan missing");
    struct rusage ru{};
    getrusage(RUSAGE_SELF, &ru);
    const double peak_gb = static_cast<double>(ru.ru_maxrss) / (1024.0 * 1024.0);
    if (dt >= 120.0) fail("took " + num(dt) + "s, budget 120s");
    if (peak_gb >= 2.0) fail("peak rss " + num(peak_gb) + " GiB, budget 2 GiB");
    return std::to_string(m) + " rows in " + num(dt) + "s, peak rss " + num(peak_gb) +
           " GiB, kept " + std::to_string(res.output.kept_groups.size()) + "/" +
           std::to_string(res.output.hypergraph.group_count());
}

struct Gate {
    const char* name;
    std::string (*run)();
};

}  // namespace

int main() {
    const Gate gates[] = {
        {"overestimate-validity", check_overestimate_validity},
        {"bound-mass-economy", check_bound_mass_economy},
        {"cut-error-scaling", check_cut_error_scaling},
        {"subsample-unbiasedness", check_subsample_unbiasedness},
        {"size-law", check_size_law},
        {"star-lift-validity", check_star_lift_validity},
        {"sketched-accuracy", check_sketched_accuracy},
        {"leverage-identities", check_leverage_identities},
        {"determinism", check_determinism},
        {"performance-smoke", check_performance_smoke},
    };
    int failed = 0;
    int index = 0;
    for (const auto& gate : gates) {
        const double t0 = now_seconds();
        std::string detail;
        bool ok = true;
        try {
            detail = gate.run();
        } catch (const std::exception& e) {
            detail = e.what();
            ok = false;
        }
        ++index;
        if (!ok) ++failed;
        std::printf("[%s] %02d %-24s %s (%.1fs)\n", ok ? "PASS" : "FAIL", index, gate.name,
                    detail.c_str(), now_seconds() - t0);
        std::fflush(stdout);
    }
    std::printf("acceptance: %d/10 passed\n", 10 - failed);
    return failed == 0 ? 0 : 1;
}
