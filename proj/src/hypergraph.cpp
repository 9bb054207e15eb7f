#include "hgsparse/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hgsparse {

Index GraphicalHypergraph::rank() const {
    Index r = 0;
    for (const auto& e : edges) r = std::max(r, static_cast<Index>(e.vertices.size()));
    return r;
}

void GraphicalHypergraph::validate() const {
    if (vertex_count <= 0) throw std::invalid_argument("hypergraph needs a positive vertex count");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        const std::string tag = "hyperedge " + std::to_string(i);
        if (e.vertices.size() < 2) throw std::invalid_argument(tag + " has fewer than 2 vertices");
        if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
            throw std::invalid_argument(tag + " has a negative or non-finite weight");
        for (std::size_t j = 0; j < e.vertices.size(); ++j) {
            if (e.vertices[j] < 0 || e.vertices[j] >= vertex_count)
                throw std::invalid_argument(tag + " has a vertex out of range");
            if (j > 0 && e.vertices[j] <= e.vertices[j - 1])
                throw std::invalid_argument(tag + " vertices must be sorted and distinct");
        }
    }
}

RowGroups RowGroups::contiguous(std::span<const Index> sizes) {
    RowGroups g;
    g.ptr.reserve(sizes.size() + 1);
    Index total = 0;
    for (Index s : sizes) {
        total += s;
        g.ptr.push_back(total);
    }
    g.rows.resize(static_cast<std::size_t>(total));
    for (Index r = 0; r < total; ++r) g.rows[static_cast<std::size_t>(r)] = r;
    return g;
}

RowGroups RowGroups::from_ids(std::span<const Index> group_of_row, Index k) {
    const Index m = static_cast<Index>(group_of_row.size());
    std::vector<Index> count(static_cast<std::size_t>(k), 0);
    for (Index id : group_of_row) {
        if (id < 0 || id >= k) throw std::invalid_argument("group id out of range");
        ++count[static_cast<std::size_t>(id)];
    }
    RowGroups g;
    g.ptr.assign(static_cast<std::size_t>(k) + 1, 0);
    for (Index i = 0; i < k; ++i) g.ptr[static_cast<std::size_t>(i) + 1] = g.ptr[static_cast<std::size_t>(i)] + count[static_cast<std::size_t>(i)];
    g.rows.resize(static_cast<std::size_t>(m));
    std::vector<Index> cursor(g.ptr.begin(), g.ptr.end() - 1);
    for (Index r = 0; r < m; ++r) g.rows[static_cast<std::size_t>(cursor[static_cast<std::size_t>(group_of_row[static_cast<std::size_t>(r)])]++)] = r;
    return g;
}

Index MatrixHypergraph::rank() const {
    Index r = 0;
    for (Index i = 0; i < groups.group_count(); ++i) r = std::max(r, groups.group_size(i));
    return r;
}

void MatrixHypergraph::validate() const {
    const Index m = matrix.rows();
    if (groups.row_count() != m) throw std::invalid_argument("group structure does not cover the matrix rows");
    std::vector<char> seen(static_cast<std::size_t>(m), 0);
    for (Index i = 0; i < groups.group_count(); ++i) {
        if (groups.group_size(i) <= 0) throw std::invalid_argument("group " + std::to_string(i) + " is empty");
        for (Index r : groups.group(i)) {
            if (r < 0 || r >= m) throw std::invalid_argument("group row index out of range");
            if (seen[static_cast<std::size_t>(r)]) throw std::invalid_argument("row " + std::to_string(r) + " appears in two groups");
            seen[static_cast<std::size_t>(r)] = 1;
        }
    }
    for (Index r = 0; r < m; ++r) {
        if (!seen[static_cast<std::size_t>(r)]) throw std::invalid_argument("row " + std::to_string(r) + " belongs to no group");
        if (matrix.row_max_abs(r) == 0.0) throw std::invalid_argument("row " + std::to_string(r) + " is all-zero");
    }
    if (!matrix.all_finite()) throw std::invalid_argument("matrix has non-finite entries");
    if (group_weights) {
        if (static_cast<Index>(group_weights->size()) != groups.group_count())
            throw std::invalid_argument("group weight count does not match group count");
        for (double v : *group_weights)
            if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("group weights must be finite and nonnegative");
    }
}

EnergyProfile energy(const MatrixHypergraph& G, std::span<const double> x) {
    if (static_cast<Index>(x.size()) != G.column_count())
        throw std::invalid_argument("direction length does not match column count");
    const Index k = G.group_count();
    EnergyProfile out;
    out.per_group.resize(static_cast<std::size_t>(k));
    out.argmax_row.assign(static_cast<std::size_t>(k), -1);
    for (Index i = 0; i < k; ++i) {
        double best = 0.0;
        Index arg = -1;
        for (Index r : G.groups.group(i)) {
            const double d = G.matrix.row_dot(r, x.data());
            const double sq = d * d;
            if (arg < 0 || sq > best) {
                best = sq;
                arg = r;
            }
        }
        const double v = G.group_weights ? (*G.group_weights)[static_cast<std::size_t>(i)] : 1.0;
        out.per_group[static_cast<std::size_t>(i)] = v * best;
        out.argmax_row[static_cast<std::size_t>(i)] = arg;
    }
    for (double g : out.per_group) out.total += g;
    return out;
}

double energy_total(const MatrixHypergraph& G, std::span<const double> x) {
    if (static_cast<Index>(x.size()) != G.column_count())
        throw std::invalid_argument("direction length does not match column count");
    const Index k = G.group_count();
    double total = 0.0;
    for (Index i = 0; i < k; ++i) {
        double best = 0.0;
        bool first = true;
        for (Index r : G.groups.group(i)) {
            const double d = G.matrix.row_dot(r, x.data());
            const double sq = d * d;
            if (first || sq > best) {
                best = sq;
                first = false;
            }
        }
        const double v = G.group_weights ? (*G.group_weights)[static_cast<std::size_t>(i)] : 1.0;
        total += v * best;
    }
    return total;
}

EnergyProfile energy_graphical(const GraphicalHypergraph& G, std::span<const double> x) {
    if (static_cast<Index>(x.size()) != G.vertex_count)
        throw std::invalid_argument("direction length does not match vertex count");
    EnergyProfile out;
    out.per_group.resize(G.edges.size());
    out.argmax_row.assign(G.edges.size(), -1);
    for (std::size_t i = 0; i < G.edges.size(); ++i) {
        const auto& e = G.edges[i];
        double lo = x[static_cast<std::size_t>(e.vertices[0])];
        double hi = lo;
        for (std::size_t j = 1; j < e.vertices.size(); ++j) {
            const double v = x[static_cast<std::size_t>(e.vertices[j])];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const double d = hi - lo;
        out.per_group[i] = e.weight * d * d;
    }
    for (double g : out.per_group) out.total += g;
    return out;
}

MatrixHypergraph clique_expand(const GraphicalHypergraph& G) {
    G.validate();
    Index m = 0;
    std::vector<Index> sizes;
    sizes.reserve(G.edges.size());
    for (const auto& e : G.edges) {
        const Index s = static_cast<Index>(e.vertices.size());
        sizes.push_back(s * (s - 1) / 2);
        m += sizes.back();
    }
    CsrMatrix::Builder b(m, G.vertex_count);
    Index row = 0;
    std::vector<double> weights;
    weights.reserve(G.edges.size());
    for (const auto& e : G.edges) {
        const Index s = static_cast<Index>(e.vertices.size());
        for (Index p = 0; p < s; ++p)
            for (Index q = p + 1; q < s; ++q) {
                b.add(row, e.vertices[static_cast<std::size_t>(p)], 1.0);
                b.add(row, e.vertices[static_cast<std::size_t>(q)], -1.0);
                ++row;
            }
        weights.push_back(e.weight);
    }
    MatrixHypergraph out;
    out.matrix = std::move(b).finish();
    out.groups = RowGroups::contiguous(sizes);
    out.group_weights = std::move(weights);
    return out;
}

MatrixHypergraph star_expand(const GraphicalHypergraph& G) {
    std::vector<Index> centers;
    centers.reserve(G.edges.size());
    for (const auto& e : G.edges) centers.push_back(e.vertices.empty() ? -1 : e.vertices.front());
    return star_expand(G, centers);
}

MatrixHypergraph star_expand(const GraphicalHypergraph& G, std::span<const Index> centers) {
    G.validate();
    if (centers.size() != G.edges.size()) throw std::invalid_argument("one center per hyperedge required");
    Index m = 0;
    std::vector<Index> sizes;
    sizes.reserve(G.edges.size());
    for (const auto& e : G.edges) {
        sizes.push_back(static_cast<Index>(e.vertices.size()) - 1);
        m += sizes.back();
    }
    CsrMatrix::Builder b(m, G.vertex_count);
    Index row = 0;
    std::vector<double> weights;
    weights.reserve(G.edges.size());
    for (std::size_t i = 0; i < G.edges.size(); ++i) {
        const auto& e = G.edges[i];
        const Index c = centers[i];
        if (!std::binary_search(e.vertices.begin(), e.vertices.end(), c))
            throw std::invalid_argument("center of hyperedge " + std::to_string(i) + " is not one of its vertices");
        for (Index a : e.vertices) {
            if (a == c) continue;
            // row 1_a - 1_c with columns emitted in ascending order
            if (a < c) {
                b.add(row, a, 1.0);
                b.add(row, c, -1.0);
            } else {
                b.add(row, c, -1.0);
                b.add(row, a, 1.0);
            }
            ++row;
        }
        weights.push_back(e.weight);
    }
    MatrixHypergraph out;
    out.matrix = std::move(b).finish();
    out.groups = RowGroups::contiguous(sizes);
    out.group_weights = std::move(weights);
    return out;
}

MatrixHypergraph unitize(const MatrixHypergraph& G) {
    if (!G.group_weights) throw std::invalid_argument("unitize requires group weights");
    const Index k = G.group_count();
    std::vector<Index> kept_rows;
    std::vector<Index> kept_sizes;
    std::vector<double> row_scale;
    for (Index i = 0; i < k; ++i) {
        const double v = (*G.group_weights)[static_cast<std::size_t>(i)];
        if (v == 0.0) continue;
        const double s = std::sqrt(v);
        kept_sizes.push_back(G.groups.group_size(i));
        for (Index r : G.groups.group(i)) {
            kept_rows.push_back(r);
            row_scale.push_back(s);
        }
    }
    MatrixHypergraph out;
    out.matrix = G.matrix.select_rows(kept_rows).scaled_rows(row_scale);
    out.groups = RowGroups::contiguous(kept_sizes);
    return out;
}

}  // namespace hgsparse
