#pragma once

#include <cstdint>
#include <vector>

#include "hgsparse/certify.hpp"
#include "hgsparse/common.hpp"
#include "hgsparse/hypergraph.hpp"
#include "hgsparse/leverage.hpp"

namespace hgsparse {

enum class SourceMode { direct, star_lifted };

// Per-group leverage bounds tau with witness row weights wbar: the weights
// sum to 1 inside every group and max_{j in S_i} a_j^T (A^T Wbar A)^+ a_j
// stays below tau_i, with ||tau||_1 <= nu.
struct GroupOverestimates {
    std::vector<double> tau;
    std::vector<double> witness_weights;
    double nu = 0.0;
    Index iterations = 0;
    SourceMode source_mode = SourceMode::direct;
    // ||sigma~^(t)||_1 reported by the estimator at each iteration
    std::vector<double> iteration_score_sums;
};

// Smallest T with exp(log r / T) <= e: max(1, ceil(ln r)).
Index default_iterations(Index r);

// Iteratively reweighted group leverage overestimation on a unit hypergraph.
// Starts from uniform in-group weights, renormalizes estimated scores inside
// each group for T rounds, and returns the averaged iterates as the witness.
GroupOverestimates group_leverage_overestimate(const MatrixHypergraph& G, Index T,
                                               const Overestimator& estimate);

// Overestimates for the clique expansion of a graphical hypergraph, computed
// on its star expansion and lifted by the factor 2: the witness lives on the
// center-pair rows, every other pair row gets weight 0. T = 0 picks
// default_iterations of the star rank. Zero-weight hyperedges are dropped
// first, mirroring what unitize does to the clique expansion.
using OverestimatorFactory = std::function<Overestimator(const CsrMatrix&)>;
GroupOverestimates graphical_overestimates(const GraphicalHypergraph& G,
                                           const OverestimatorFactory& factory, Index T = 0);

// Exact-pseudoinverse check of the witness conditions: (a) in-group weight
// sums equal 1, (b) per-group max quadratic form is below tau, (c)
// ||tau||_1 <= nu. worst_slack is how far the quantity went past its bound
// (0 when satisfied with margin).
CertReport certify_overestimates(const MatrixHypergraph& G, const GroupOverestimates& O);

}  // namespace hgsparse
