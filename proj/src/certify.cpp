#include "hgsparse/certify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hgsparse/rng.hpp"

namespace hgsparse {

namespace {
constexpr double kDenomGuard = 1e-14;

std::vector<double> gaussian_direction(Index n, std::uint64_t seed, std::uint64_t stream) {
    auto rng = SplitMix64::substream(seed, stream);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = rng.next_normal();
    return x;
}
}  // namespace

QualityStats measure_quality(const MatrixHypergraph& G, const MatrixHypergraph& H, double epsilon,
                             Index n_directions, Index cut_cap, std::uint64_t seed) {
    if (G.column_count() != H.column_count())
        throw std::invalid_argument("hypergraphs live on different vertex sets");
    if (n_directions < 1) throw std::invalid_argument("at least one direction required");
    const Index n = G.column_count();

    QualityStats out;
    out.epsilon_target = epsilon;
    for (Index d = 0; d < n_directions; ++d) {
        const auto x = gaussian_direction(n, seed, static_cast<std::uint64_t>(d));
        const double fg = energy_total(G, x);
        if (fg < kDenomGuard) continue;
        const double fh = energy_total(H, x);
        out.max_rel_err_random = std::max(out.max_rel_err_random, std::abs(fh / fg - 1.0));
        ++out.directions_tested;
    }

    if (n <= cut_cap) {
        double worst = 0.0;
        std::vector<double> x(static_cast<std::size_t>(n));
        const std::uint64_t last = (std::uint64_t{1} << n) - 1;
        for (std::uint64_t mask = 1; mask < last; ++mask) {
            for (Index v = 0; v < n; ++v)
                x[static_cast<std::size_t>(v)] = (mask >> v) & 1u ? 1.0 : 0.0;
            const double fg = energy_total(G, x);
            if (fg < kDenomGuard) continue;
            const double fh = energy_total(H, x);
            worst = std::max(worst, std::abs(fh / fg - 1.0));
        }
        out.max_rel_err_cuts = worst;
    }
    return out;
}

CertReport group_contribution_check(const MatrixHypergraph& G, std::span<const double> tau,
                                    std::span<const double> wbar, Index n_directions,
                                    std::uint64_t seed) {
    if (static_cast<Index>(tau.size()) != G.group_count())
        throw std::invalid_argument("tau length does not match group count");
    if (static_cast<Index>(wbar.size()) != G.row_count())
        throw std::invalid_argument("witness length does not match row count");
    const Index n = G.column_count();

    double worst = 0.0;
    Index worst_group = -1;
    Index tested = 0;
    for (Index d = 0; d < n_directions; ++d) {
        const auto x = gaussian_direction(n, seed, static_cast<std::uint64_t>(d));
        const auto prof = energy(G, x);
        if (prof.total < kDenomGuard) continue;
        ++tested;
        for (Index i = 0; i < G.group_count(); ++i) {
            const double lhs = prof.per_group[static_cast<std::size_t>(i)];
            const double excess = lhs / (tau[static_cast<std::size_t>(i)] * prof.total) - 1.0;
            if (excess > worst) {
                worst = excess;
                worst_group = i;
            }
        }
    }

    CertReport rep;
    const bool pass = worst <= 1e-8;
    rep.add("group-contribution", pass, worst,
            pass ? "max_j <a_j,x>^2 <= tau_i f(x) on " + std::to_string(tested) + " directions"
                 : "group " + std::to_string(worst_group) + " exceeds tau_i f(x) by " +
                       std::to_string(worst));
    return rep;
}

GraphicalHypergraph generate_random(InstanceKind kind, Index n, Index k, Index r, WeightLaw weight_law,
                                    std::uint64_t seed) {
    if (kind == InstanceKind::graph && r != 2)
        throw std::invalid_argument("graph instances require r = 2");
    if (r < 2 || r > n) throw std::invalid_argument("need 2 <= r <= n");
    if (k < 1) throw std::invalid_argument("need at least one hyperedge");
    if (k * r < n) throw std::invalid_argument("k hyperedges of size <= r cannot touch n vertices");

    auto rng = SplitMix64::substream(seed, 0);
    GraphicalHypergraph g;
    g.vertex_count = n;
    g.edges.reserve(static_cast<std::size_t>(k));

    // power-law vertex draws via cdf inversion over weights (v+1)^{-1.2}
    std::vector<double> cdf;
    if (kind == InstanceKind::power_law_degrees) {
        cdf.resize(static_cast<std::size_t>(n));
        double acc = 0.0;
        for (Index v = 0; v < n; ++v) {
            acc += std::pow(static_cast<double>(v + 1), -1.2);
            cdf[static_cast<std::size_t>(v)] = acc;
        }
    }
    auto draw_vertex = [&]() -> Index {
        if (kind != InstanceKind::power_law_degrees) return static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(n)));
        const double u = rng.next_double() * cdf.back();
        return static_cast<Index>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    };
    auto draw_weight = [&]() -> double {
        if (weight_law == WeightLaw::constant) return 1.0;
        return std::pow(10.0, 3.0 * rng.next_double());  // log-uniform over [1, 1e3]
    };

    for (Index e = 0; e < k; ++e) {
        const Index size = kind == InstanceKind::graph
                               ? 2
                               : 2 + static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(r - 1)));
        std::vector<Index> verts;
        verts.reserve(static_cast<std::size_t>(size));
        while (static_cast<Index>(verts.size()) < size) {
            const Index v = draw_vertex();
            if (std::find(verts.begin(), verts.end(), v) == verts.end()) verts.push_back(v);
        }
        std::sort(verts.begin(), verts.end());
        g.edges.push_back({std::move(verts), draw_weight()});
    }

    // patch isolated vertices: prefer inserting into a hyperedge with room,
    // otherwise displace one occurrence of a vertex that appears elsewhere too
    for (;;) {
        std::vector<Index> appearances(static_cast<std::size_t>(n), 0);
        for (const auto& e : g.edges)
            for (Index v : e.vertices) ++appearances[static_cast<std::size_t>(v)];
        Index isolated = -1;
        for (Index v = 0; v < n; ++v)
            if (appearances[static_cast<std::size_t>(v)] == 0) {
                isolated = v;
                break;
            }
        if (isolated < 0) break;

        std::vector<Index> roomy;
        for (Index e = 0; e < k; ++e)
            if (static_cast<Index>(g.edges[static_cast<std::size_t>(e)].vertices.size()) < r) roomy.push_back(e);
        if (!roomy.empty()) {
            auto& verts = g.edges[static_cast<std::size_t>(roomy[rng.next_below(roomy.size())])].vertices;
            verts.insert(std::lower_bound(verts.begin(), verts.end(), isolated), isolated);
            continue;
        }
        // all hyperedges are full; k*r >= n guarantees some vertex repeats
        Index dup = -1;
        for (Index v = 0; v < n; ++v)
            if (appearances[static_cast<std::size_t>(v)] > 1) {
                dup = v;
                break;
            }
        for (auto& e : g.edges) {
            auto it = std::find(e.vertices.begin(), e.vertices.end(), dup);
            if (it != e.vertices.end() &&
                !std::binary_search(e.vertices.begin(), e.vertices.end(), isolated)) {
                e.vertices.erase(it);
                e.vertices.insert(std::lower_bound(e.vertices.begin(), e.vertices.end(), isolated), isolated);
                break;
            }
        }
    }

    g.validate();
    return g;
}

std::vector<double> brute_force_group_leverage(const MatrixHypergraph& G, const RowWeights& w) {
    const auto P = normal_pseudoinverse(G.matrix, w);
    std::vector<double> out(static_cast<std::size_t>(G.group_count()), 0.0);
    for (Index i = 0; i < G.group_count(); ++i) {
        double best = 0.0;
        for (Index rrow : G.groups.group(i))
            best = std::max(best, P.quadform(G.matrix.row_cols(rrow), G.matrix.row_vals(rrow)));
        out[static_cast<std::size_t>(i)] = best;
    }
    return out;
}

}  // namespace hgsparse
