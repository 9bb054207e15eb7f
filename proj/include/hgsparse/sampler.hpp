#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hgsparse/certify.hpp"
#include "hgsparse/common.hpp"
#include "hgsparse/hypergraph.hpp"
#include "hgsparse/overestimates.hpp"

namespace hgsparse {

enum class Schedule { chaining, dudley, explicit_rho };

struct SamplingPlan {
    double rho = 0.0;
    std::vector<double> probabilities;  // p_i = min(1, rho * tau_i)
    Schedule schedule = Schedule::chaining;
    double epsilon = 0.0;
    double constant = 1.0;
    std::uint64_t seed = 0;
};

struct SparsifierOutput {
    // same matrix and groups as the input, with resampled group weights
    // (zeros kept until compact)
    MatrixHypergraph hypergraph;
    std::vector<Index> kept_groups;
    SamplingPlan plan;
    double expected_kept = 0.0;  // sum of p_i
};

// rho from the schedule: chaining C eps^-2 ln m ln r, dudley C eps^-2 ln^3 m,
// explicit C. Natural logs; m and r enter as max(.,2) so degenerate shapes
// (all-singleton groups, tiny row counts) still sample.
SamplingPlan make_plan(std::span<const double> tau, Index m, Index r, double epsilon,
                       Schedule schedule, double constant, std::uint64_t seed);

// Independent Bernoulli(p_i) per group; group i draws from
// SplitMix64::substream(plan.seed, i). p_i = 1 keeps deterministically with
// weight exactly 1.
SparsifierOutput subsample(const MatrixHypergraph& G, const SamplingPlan& plan);

// Drops zero-weight groups and their rows, preserving order.
MatrixHypergraph compact(const SparsifierOutput& S);

struct PipelineConfig {
    SolverConfig solver;
    Schedule schedule = Schedule::chaining;
    double constant = 1.0;
    std::uint64_t seed = 0;
    Index iterations = 0;  // 0 = default_iterations of the instance rank
    bool certify = true;
    Index certification_cap = 2000;  // skip pseudoinverse certification above this row count
    int max_retries = 3;             // fresh-seed retries when a sketched run fails to certify
    Index quality_directions = 50;
    Index cut_cap = 14;
};

struct PipelineResult {
    SparsifierOutput output;
    GroupOverestimates overestimates;
    CertReport report;
    std::optional<QualityStats> quality;
};

// Unitize, overestimate (star lift for graphical inputs), certify when
// feasible, plan, subsample, and measure quality. The overestimator, the
// sampling draws and the quality directions use disjoint substreams of the
// seed, so one seed pins the whole run.
PipelineResult sparsify(const GraphicalHypergraph& G, double epsilon, const PipelineConfig& cfg);
PipelineResult sparsify(const MatrixHypergraph& G, double epsilon, const PipelineConfig& cfg);

// Substream ids reserved by the pipeline; group draws use ids [0, k).
inline constexpr std::uint64_t kOverestimatorStream = 0x100000001ull;
inline constexpr std::uint64_t kQualityStream = 0x100000002ull;

}  // namespace hgsparse
