#include "hgsparse/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hgsparse/rng.hpp"

namespace hgsparse {

SamplingPlan make_plan(std::span<const double> tau, Index m, Index r, double epsilon,
                       Schedule schedule, double constant, std::uint64_t seed) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
    if (!(constant > 0.0)) throw std::invalid_argument("constant must be positive");
    const double lm = std::log(static_cast<double>(std::max<Index>(m, 2)));
    const double lr = std::log(static_cast<double>(std::max<Index>(r, 2)));
    SamplingPlan plan;
    plan.schedule = schedule;
    plan.epsilon = epsilon;
    plan.constant = constant;
    plan.seed = seed;
    switch (schedule) {
        case Schedule::chaining: plan.rho = constant / (epsilon * epsilon) * lm * lr; break;
        case Schedule::dudley: plan.rho = constant / (epsilon * epsilon) * lm * lm * lm; break;
        case Schedule::explicit_rho: plan.rho = constant; break;
    }
    plan.probabilities.resize(tau.size());
    for (std::size_t i = 0; i < tau.size(); ++i) {
        if (!(tau[i] > 0.0)) throw std::invalid_argument("tau entries must be positive");
        plan.probabilities[i] = std::min(1.0, plan.rho * tau[i]);
    }
    return plan;
}

SparsifierOutput subsample(const MatrixHypergraph& G, const SamplingPlan& plan) {
    if (!G.unit()) throw std::invalid_argument("subsample expects a unit hypergraph");
    const Index k = G.group_count();
    if (static_cast<Index>(plan.probabilities.size()) != k)
        throw std::invalid_argument("plan does not match the group count");

    SparsifierOutput out;
    out.plan = plan;
    out.hypergraph = G;
    std::vector<double> weights(static_cast<std::size_t>(k), 0.0);
    for (Index i = 0; i < k; ++i) {
        const double p = plan.probabilities[static_cast<std::size_t>(i)];
        out.expected_kept += p;
        if (p >= 1.0) {
            weights[static_cast<std::size_t>(i)] = 1.0;
            out.kept_groups.push_back(i);
            continue;
        }
        auto rng = SplitMix64::substream(plan.seed, static_cast<std::uint64_t>(i));
        if (rng.next_double() < p) {
            weights[static_cast<std::size_t>(i)] = 1.0 / p;
            out.kept_groups.push_back(i);
        }
    }
    out.hypergraph.group_weights = std::move(weights);
    return out;
}

MatrixHypergraph compact(const SparsifierOutput& S) {
    const auto& G = S.hypergraph;
    const auto& v = *G.group_weights;
    std::vector<Index> kept_rows;
    std::vector<Index> kept_sizes;
    std::vector<double> kept_weights;
    for (Index i = 0; i < G.group_count(); ++i) {
        if (v[static_cast<std::size_t>(i)] == 0.0) continue;
        kept_sizes.push_back(G.groups.group_size(i));
        kept_weights.push_back(v[static_cast<std::size_t>(i)]);
        for (Index r : G.groups.group(i)) kept_rows.push_back(r);
    }
    MatrixHypergraph out;
    out.matrix = G.matrix.select_rows(kept_rows);
    out.groups = RowGroups::contiguous(kept_sizes);
    out.group_weights = std::move(kept_weights);
    return out;
}

namespace {

PipelineResult run_pipeline(const MatrixHypergraph& unit, GroupOverestimates over,
                            const std::function<GroupOverestimates(std::uint64_t)>& recompute,
                            double epsilon, const PipelineConfig& cfg) {
    PipelineResult res;
    const bool sketched = cfg.solver.mode == SolverMode::sketched;
    const bool can_certify = cfg.certify && unit.row_count() <= cfg.certification_cap;

    if (can_certify) {
        CertReport rep = certify_overestimates(unit, over);
        int attempt = 0;
        while (!rep.overall() && sketched && attempt < cfg.max_retries) {
            ++attempt;
            over = recompute(SplitMix64::substream_seed(cfg.seed, kOverestimatorStream + 16 + attempt));
            rep = certify_overestimates(unit, over);
        }
        if (attempt > 0)
            rep.add("sketched-retries", rep.overall(), static_cast<double>(attempt),
                    rep.overall() ? "re-certified after " + std::to_string(attempt) + " fresh seeds"
                                  : "still failing after " + std::to_string(attempt) + " fresh seeds");
        res.report = std::move(rep);
    } else {
        res.report.add("certification-skipped", true, 0.0,
                       cfg.certify ? "row count exceeds the certification cap" : "disabled");
    }

    const auto plan = make_plan(over.tau, unit.row_count(), unit.rank(), epsilon, cfg.schedule,
                                cfg.constant, cfg.seed);
    res.output = subsample(unit, plan);
    if (cfg.certify)
        res.quality = measure_quality(unit, res.output.hypergraph, epsilon, cfg.quality_directions,
                                      cfg.cut_cap, SplitMix64::substream_seed(cfg.seed, kQualityStream));
    res.overestimates = std::move(over);
    return res;
}

}  // namespace

PipelineResult sparsify(const GraphicalHypergraph& G, double epsilon, const PipelineConfig& cfg) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
    G.validate();
    GraphicalHypergraph filtered;
    filtered.vertex_count = G.vertex_count;
    for (const auto& e : G.edges)
        if (e.weight > 0.0) filtered.edges.push_back(e);

    const MatrixHypergraph unit = unitize(clique_expand(filtered));
    Index star_rank = 1;
    for (const auto& e : filtered.edges)
        star_rank = std::max(star_rank, static_cast<Index>(e.vertices.size()) - 1);
    const Index iters = cfg.iterations > 0 ? cfg.iterations : default_iterations(star_rank);
    auto compute = [&](std::uint64_t seed) {
        return graphical_overestimates(
            filtered,
            [&](const CsrMatrix& A) { return make_overestimator(A, cfg.solver, seed); }, iters);
    };
    GroupOverestimates over = compute(SplitMix64::substream_seed(cfg.seed, kOverestimatorStream));
    return run_pipeline(unit, std::move(over), compute, epsilon, cfg);
}

PipelineResult sparsify(const MatrixHypergraph& G, double epsilon, const PipelineConfig& cfg) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
    G.validate();
    const MatrixHypergraph unit = G.unit() ? G : unitize(G);
    const Index iters = cfg.iterations > 0 ? cfg.iterations
                                           : default_iterations(std::max<Index>(unit.rank(), 1));
    auto compute = [&](std::uint64_t seed) {
        const auto estimate = make_overestimator(unit.matrix, cfg.solver, seed);
        return group_leverage_overestimate(unit, iters, estimate);
    };
    GroupOverestimates over = compute(SplitMix64::substream_seed(cfg.seed, kOverestimatorStream));
    return run_pipeline(unit, std::move(over), compute, epsilon, cfg);
}

}  // namespace hgsparse
