#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hgsparse/common.hpp"
#include "hgsparse/csr.hpp"

namespace hgsparse {

struct Hyperedge {
    std::vector<Index> vertices;  // sorted, distinct, each in [0, n)
    double weight = 1.0;
};

// Vertex-set hypergraph: weighted hyperedges of cardinality >= 2.
struct GraphicalHypergraph {
    Index vertex_count = 0;
    std::vector<Hyperedge> edges;

    Index rank() const;  // max hyperedge cardinality, 0 when empty
    void validate() const;
};

// Partition of row indices [0, m) into k nonempty groups; group i owns
// rows[ptr[i] .. ptr[i+1]) in their original relative order.
struct RowGroups {
    std::vector<Index> ptr{0};
    std::vector<Index> rows;

    Index group_count() const { return static_cast<Index>(ptr.size()) - 1; }
    Index row_count() const { return static_cast<Index>(rows.size()); }
    Index group_size(Index i) const { return ptr[i + 1] - ptr[i]; }
    std::span<const Index> group(Index i) const {
        return {rows.data() + ptr[i], static_cast<std::size_t>(group_size(i))};
    }

    static RowGroups contiguous(std::span<const Index> sizes);
    // group_of_row[r] in [0, k); rows keep their relative order inside a group
    static RowGroups from_ids(std::span<const Index> group_of_row, Index k);
};

// Row matrix A with rows partitioned into groups; optional group weights v.
// Absent weights mean the unit hypergraph.
struct MatrixHypergraph {
    CsrMatrix matrix;
    RowGroups groups;
    std::optional<std::vector<double>> group_weights;

    Index row_count() const { return matrix.rows(); }
    Index column_count() const { return matrix.cols(); }
    Index group_count() const { return groups.group_count(); }
    Index rank() const;  // max group size
    bool unit() const { return !group_weights.has_value(); }
    void validate() const;
};

struct EnergyProfile {
    double total = 0.0;
    std::vector<double> per_group;
    // row index attaining the group max; -1 when the energy was evaluated on
    // the graphical form, which has no rows
    std::vector<Index> argmax_row;
};

EnergyProfile energy(const MatrixHypergraph& G, std::span<const double> x);
// Same total as energy(G, x) without building the profile.
double energy_total(const MatrixHypergraph& G, std::span<const double> x);
EnergyProfile energy_graphical(const GraphicalHypergraph& G, std::span<const double> x);

// Hyperedge F of weight v becomes the |F|(|F|-1)/2 pairwise difference rows
// 1_p - 1_q (p < q), one group of weight v.
MatrixHypergraph clique_expand(const GraphicalHypergraph& G);
// Hyperedge F becomes the |F|-1 rows 1_a - 1_center for a in F \ {center}.
// Default centers: lowest-index vertex of each hyperedge.
MatrixHypergraph star_expand(const GraphicalHypergraph& G);
MatrixHypergraph star_expand(const GraphicalHypergraph& G, std::span<const Index> centers);

// Scales rows of group i by sqrt(v_i) and clears the weights; zero-weight
// groups are removed together with their rows.
MatrixHypergraph unitize(const MatrixHypergraph& G);

// Offset inside a group of the clique row for the sorted vertex pair at
// positions (p, q), p < q, of a hyperedge of size s.
inline Index clique_pair_offset(Index s, Index p, Index q) {
    return p * (2 * s - p - 1) / 2 + (q - p - 1);
}

}  // namespace hgsparse
