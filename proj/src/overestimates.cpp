#include "hgsparse/overestimates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hgsparse {

Index default_iterations(Index r) {
    if (r < 1) throw std::invalid_argument("rank must be at least 1");
    return std::max<Index>(1, static_cast<Index>(std::ceil(std::log(static_cast<double>(r)))));
}

GroupOverestimates group_leverage_overestimate(const MatrixHypergraph& G, Index T,
                                               const Overestimator& estimate) {
    if (!G.unit()) throw std::invalid_argument("overestimation expects a unit hypergraph");
    if (T < 1) throw std::invalid_argument("iteration count must be positive");
    const Index m = G.row_count();
    const Index k = G.group_count();
    const Index r = G.rank();

    RowWeights w(static_cast<std::size_t>(m));
    for (Index i = 0; i < k; ++i) {
        const double uniform = 1.0 / static_cast<double>(G.groups.group_size(i));
        for (Index row : G.groups.group(i)) w[static_cast<std::size_t>(row)] = uniform;
    }

    GroupOverestimates out;
    out.iterations = T;
    out.source_mode = SourceMode::direct;
    out.tau.assign(static_cast<std::size_t>(k), 0.0);
    out.witness_weights.assign(static_cast<std::size_t>(m), 0.0);
    out.iteration_score_sums.reserve(static_cast<std::size_t>(T));
    double nu_sum = 0.0;

    for (Index t = 0; t < T; ++t) {
        for (Index j = 0; j < m; ++j) out.witness_weights[static_cast<std::size_t>(j)] += w[static_cast<std::size_t>(j)];
        const LeverageEstimate est = estimate(w);
        if (static_cast<Index>(est.sigma.size()) != m)
            throw std::runtime_error("estimator returned a score vector of the wrong length");
        nu_sum += est.nu;
        double score_sum = 0.0;
        for (double s : est.sigma) score_sum += s;
        out.iteration_score_sums.push_back(score_sum);

        for (Index i = 0; i < k; ++i) {
            double group_sum = 0.0;
            for (Index row : G.groups.group(i)) group_sum += est.sigma[static_cast<std::size_t>(row)];
            if (!(group_sum > 0.0))
                throw std::runtime_error("group " + std::to_string(i) +
                                         " has zero estimated leverage mass");
            out.tau[static_cast<std::size_t>(i)] += group_sum;
            for (Index row : G.groups.group(i))
                w[static_cast<std::size_t>(row)] = est.sigma[static_cast<std::size_t>(row)] / group_sum;
        }
    }

    const double inflate = std::exp(std::log(static_cast<double>(std::max<Index>(r, 1))) /
                                    static_cast<double>(T));
    for (auto& t : out.tau) t = inflate * t / static_cast<double>(T);
    for (auto& ww : out.witness_weights) ww /= static_cast<double>(T);
    out.nu = inflate * nu_sum / static_cast<double>(T);
    return out;
}

GroupOverestimates graphical_overestimates(const GraphicalHypergraph& G,
                                           const OverestimatorFactory& factory, Index T) {
    G.validate();
    GraphicalHypergraph filtered;
    filtered.vertex_count = G.vertex_count;
    for (const auto& e : G.edges)
        if (e.weight > 0.0) filtered.edges.push_back(e);

    const MatrixHypergraph star = unitize(star_expand(filtered));
    const Index iters = T > 0 ? T : default_iterations(std::max<Index>(star.rank(), 1));
    const Overestimator estimate = factory(star.matrix);
    GroupOverestimates inner = group_leverage_overestimate(star, iters, estimate);

    // lift onto the clique expansion: tau doubles, the witness mass of star
    // row (center, a) lands on the clique row of the pair {center, a}
    GroupOverestimates out;
    out.iterations = inner.iterations;
    out.source_mode = SourceMode::star_lifted;
    out.iteration_score_sums = std::move(inner.iteration_score_sums);
    out.nu = 2.0 * inner.nu;
    out.tau.resize(inner.tau.size());
    for (std::size_t i = 0; i < inner.tau.size(); ++i) out.tau[i] = 2.0 * inner.tau[i];

    Index clique_rows = 0;
    for (const auto& e : filtered.edges) {
        const Index s = static_cast<Index>(e.vertices.size());
        clique_rows += s * (s - 1) / 2;
    }
    out.witness_weights.assign(static_cast<std::size_t>(clique_rows), 0.0);
    Index star_row = 0;
    Index clique_base = 0;
    for (const auto& e : filtered.edges) {
        const Index s = static_cast<Index>(e.vertices.size());
        const Index center_pos = 0;  // star_expand default centers the lowest vertex
        for (Index pos = 0; pos < s; ++pos) {
            if (pos == center_pos) continue;
            const Index p = std::min(center_pos, pos);
            const Index q = std::max(center_pos, pos);
            out.witness_weights[static_cast<std::size_t>(clique_base + clique_pair_offset(s, p, q))] =
                inner.witness_weights[static_cast<std::size_t>(star_row)];
            ++star_row;
        }
        clique_base += s * (s - 1) / 2;
    }
    return out;
}

CertReport certify_overestimates(const MatrixHypergraph& G, const GroupOverestimates& O) {
    const Index m = G.row_count();
    const Index k = G.group_count();
    if (static_cast<Index>(O.tau.size()) != k || static_cast<Index>(O.witness_weights.size()) != m)
        throw std::invalid_argument("overestimates do not match the hypergraph shape");

    CertReport rep;

    double worst_sum_dev = 0.0;
    for (Index i = 0; i < k; ++i) {
        double s = 0.0;
        for (Index row : G.groups.group(i)) s += O.witness_weights[static_cast<std::size_t>(row)];
        worst_sum_dev = std::max(worst_sum_dev, std::abs(s - 1.0));
    }
    rep.add("witness-normalization", worst_sum_dev <= 1e-9, worst_sum_dev,
            "max in-group deviation of witness sums from 1 is " + std::to_string(worst_sum_dev));

    const auto group_max = brute_force_group_leverage(G, O.witness_weights);
    double worst_excess = 0.0;
    double worst_ratio = 0.0;
    Index worst_group = -1;
    for (Index i = 0; i < k; ++i) {
        const double ratio = group_max[static_cast<std::size_t>(i)] / O.tau[static_cast<std::size_t>(i)];
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst_group = i;
        }
        worst_excess = std::max(worst_excess, ratio - 1.0);
    }
    const bool quad_ok = worst_excess <= 1e-8;
    rep.add("quadform-below-tau", quad_ok, std::max(0.0, worst_excess),
            "worst quadform/tau ratio " + std::to_string(worst_ratio) + " at group " +
                std::to_string(worst_group));

    double tau_sum = 0.0;
    for (double t : O.tau) tau_sum += t;
    const double over = tau_sum - O.nu;
    rep.add("tau-mass-below-nu", over <= 1e-9, std::max(0.0, over),
            "||tau||_1 = " + std::to_string(tau_sum) + ", nu = " + std::to_string(O.nu));

    bool positive = true;
    for (double t : O.tau) positive = positive && t > 0.0;
    rep.add("tau-positive", positive, positive ? 0.0 : 1.0,
            positive ? "all tau entries positive" : "some tau entry is not positive");
    return rep;
}

}  // namespace hgsparse
