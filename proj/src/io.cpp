#include "hgsparse/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <unistd.h>
#include <vector>

namespace hgsparse {

namespace {

std::string fmt(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string fmt(Index v) { return std::to_string(v); }

struct LineReader {
    std::istream& in;
    std::string name;
    Index line_no = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(name + ":" + std::to_string(line_no) + ": " + msg);
    }

    // next non-comment line; comments only when skip_comments is set
    bool next(std::string& out, bool skip_comments) {
        while (std::getline(in, out)) {
            ++line_no;
            if (!out.empty() && out.back() == '\r') out.pop_back();
            if (skip_comments) {
                const auto first = out.find_first_not_of(" \t");
                if (first != std::string::npos && out[first] == '#') continue;
            }
            return true;
        }
        return false;
    }

    // returns a reference valid until the next call; tokens() views into it
    const std::string& need(bool skip_comments, const std::string& what) {
        if (!next(buf, skip_comments)) {
            ++line_no;
            fail("unexpected end of file, expected " + what);
        }
        return buf;
    }

    std::string buf;
};

std::vector<std::string_view> tokens(const std::string& line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) out.emplace_back(line.data() + i, j - i);
        i = j;
    }
    return out;
}

Index parse_index(const LineReader& r, std::string_view tok, const std::string& what) {
    Index v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) r.fail("cannot parse " + what + " from '" + std::string(tok) + "'");
    return v;
}

double parse_double(const LineReader& r, std::string_view tok, const std::string& what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) r.fail("cannot parse " + what + " from '" + std::string(tok) + "'");
    if (!std::isfinite(v)) r.fail(what + " must be finite");
    return v;
}

}  // namespace

GraphicalHypergraph read_hgr(std::istream& in, const std::string& name) {
    LineReader r{in, name};
    const auto magic = r.need(true, "the HGR header");
    if (magic != "HGR 1") r.fail("expected 'HGR 1'");
    const auto head = tokens(r.need(true, "vertex and hyperedge counts"));
    if (head.size() != 2) r.fail("expected '<n> <k>'");
    const Index n = parse_index(r, head[0], "vertex count");
    const Index k = parse_index(r, head[1], "hyperedge count");
    if (n < 1) r.fail("vertex count must be positive");
    if (k < 0) r.fail("hyperedge count cannot be negative");

    GraphicalHypergraph g;
    g.vertex_count = n;
    g.edges.reserve(static_cast<std::size_t>(k));
    for (Index e = 0; e < k; ++e) {
        const auto toks = tokens(r.need(true, "a hyperedge line"));
        if (toks.size() < 2) r.fail("expected '<weight> <size> <vertices...>'");
        Hyperedge edge;
        edge.weight = parse_double(r, toks[0], "hyperedge weight");
        if (edge.weight < 0.0) r.fail("hyperedge weight cannot be negative");
        const Index size = parse_index(r, toks[1], "hyperedge size");
        if (size < 2) r.fail("hyperedges need at least 2 vertices");
        if (static_cast<Index>(toks.size()) != 2 + size)
            r.fail("expected " + std::to_string(size) + " vertices, got " +
                   std::to_string(toks.size() - 2));
        edge.vertices.reserve(static_cast<std::size_t>(size));
        for (Index i = 0; i < size; ++i) {
            const Index v = parse_index(r, toks[static_cast<std::size_t>(2 + i)], "vertex index");
            if (v < 0 || v >= n) r.fail("vertex " + std::to_string(v) + " out of range [0, " + std::to_string(n) + ")");
            edge.vertices.push_back(v);
        }
        std::sort(edge.vertices.begin(), edge.vertices.end());
        if (std::adjacent_find(edge.vertices.begin(), edge.vertices.end()) != edge.vertices.end())
            r.fail("duplicate vertex inside a hyperedge");
        g.edges.push_back(std::move(edge));
    }
    std::string rest;
    if (r.next(rest, true) && !tokens(rest).empty()) r.fail("trailing content after the last hyperedge");
    return g;
}

std::string write_hgr(const GraphicalHypergraph& g) {
    g.validate();
    std::string out = "HGR 1\n" + fmt(g.vertex_count) + " " + fmt(static_cast<Index>(g.edges.size())) + "\n";
    for (const auto& e : g.edges) {
        out += fmt(e.weight);
        out += " " + fmt(static_cast<Index>(e.vertices.size()));
        for (Index v : e.vertices) out += " " + fmt(v);
        out += "\n";
    }
    return out;
}

MatrixHypergraph read_mhg(std::istream& in, const std::string& name) {
    LineReader r{in, name};
    const auto magic = r.need(false, "the MHG header");
    if (magic != "MHG 1") r.fail("expected 'MHG 1'");
    const auto head = tokens(r.need(false, "matrix dimensions"));
    if (head.size() != 4) r.fail("expected '<m> <n> <k> <nnz>'");
    const Index m = parse_index(r, head[0], "row count");
    const Index n = parse_index(r, head[1], "column count");
    const Index k = parse_index(r, head[2], "group count");
    const Index nnz = parse_index(r, head[3], "nonzero count");
    if (m < 0 || n < 1 || k < 0 || nnz < 0) r.fail("dimensions out of range");

    MatrixHypergraph g;
    const auto wline = r.need(false, "group weights or 'unit'");
    const auto wtoks = tokens(wline);
    if (wtoks.size() == 1 && wtoks[0] == "unit") {
        g.group_weights.reset();
    } else {
        if (static_cast<Index>(wtoks.size()) != k) r.fail("expected " + std::to_string(k) + " group weights or 'unit'");
        std::vector<double> w;
        w.reserve(static_cast<std::size_t>(k));
        for (const auto& t : wtoks) {
            const double v = parse_double(r, t, "group weight");
            if (v < 0.0) r.fail("group weights cannot be negative");
            w.push_back(v);
        }
        g.group_weights = std::move(w);
    }

    std::vector<Index> group_of_row(static_cast<std::size_t>(m));
    for (Index row = 0; row < m; ++row) {
        const auto toks = tokens(r.need(false, "a group id"));
        if (toks.size() != 1) r.fail("expected a single group id");
        const Index id = parse_index(r, toks[0], "group id");
        if (id < 0 || id >= k) r.fail("group id " + std::to_string(id) + " out of range [0, " + std::to_string(k) + ")");
        group_of_row[static_cast<std::size_t>(row)] = id;
    }

    CsrMatrix::Builder b(m, n);
    for (Index e = 0; e < nnz; ++e) {
        const auto toks = tokens(r.need(false, "a matrix entry"));
        if (toks.size() != 3) r.fail("expected '<row> <col> <value>'");
        const Index row = parse_index(r, toks[0], "entry row");
        const Index col = parse_index(r, toks[1], "entry column");
        const double val = parse_double(r, toks[2], "entry value");
        if (row < 0 || row >= m) r.fail("entry row out of range");
        if (col < 0 || col >= n) r.fail("entry column out of range");
        try {
            b.add(row, col, val);
        } catch (const std::invalid_argument&) {
            r.fail("entries must arrive in strictly increasing (row, col) order");
        }
    }
    std::string rest;
    if (r.next(rest, false) && !tokens(rest).empty()) r.fail("trailing content after the last entry");

    g.matrix = std::move(b).finish();
    g.groups = RowGroups::from_ids(group_of_row, k);
    try {
        g.validate();
    } catch (const std::invalid_argument& ex) {
        throw ParseError(name + ": " + ex.what());
    }
    return g;
}

std::string write_mhg(const MatrixHypergraph& g) {
    g.validate();
    const Index m = g.row_count();
    const Index k = g.group_count();
    std::string out = "MHG 1\n" + fmt(m) + " " + fmt(g.column_count()) + " " + fmt(k) + " " +
                      fmt(g.matrix.nnz()) + "\n";
    if (g.group_weights) {
        for (Index i = 0; i < k; ++i) out += (i ? " " : "") + fmt((*g.group_weights)[static_cast<std::size_t>(i)]);
        out += "\n";
    } else {
        out += "unit\n";
    }
    std::vector<Index> group_of_row(static_cast<std::size_t>(m));
    for (Index i = 0; i < k; ++i)
        for (Index r : g.groups.group(i)) group_of_row[static_cast<std::size_t>(r)] = i;
    for (Index r = 0; r < m; ++r) out += fmt(group_of_row[static_cast<std::size_t>(r)]) + "\n";
    for (Index r = 0; r < m; ++r) {
        const auto cols = g.matrix.row_cols(r);
        const auto vals = g.matrix.row_vals(r);
        for (std::size_t p = 0; p < cols.size(); ++p)
            out += fmt(r) + " " + fmt(static_cast<Index>(cols[p])) + " " + fmt(vals[p]) + "\n";
    }
    return out;
}

GroupOverestimates read_tau(std::istream& in, const std::string& name) {
    LineReader r{in, name};
    const auto magic = r.need(false, "the TAU header");
    if (magic != "TAU 1") r.fail("expected 'TAU 1'");
    const auto head = tokens(r.need(false, "tau dimensions"));
    if (head.size() != 4) r.fail("expected '<k> <m> <nu> <T>'");
    const Index k = parse_index(r, head[0], "group count");
    const Index m = parse_index(r, head[1], "row count");
    const double nu = parse_double(r, head[2], "nu");
    const Index T = parse_index(r, head[3], "iteration count");
    if (k < 0 || m < 0 || T < 0) r.fail("dimensions out of range");

    GroupOverestimates o;
    o.nu = nu;
    o.iterations = T;
    o.tau.reserve(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i) {
        const auto toks = tokens(r.need(false, "a tau entry"));
        if (toks.size() != 1) r.fail("expected a single tau value");
        const double t = parse_double(r, toks[0], "tau");
        if (!(t > 0.0)) r.fail("tau entries must be positive");
        o.tau.push_back(t);
    }
    o.witness_weights.reserve(static_cast<std::size_t>(m));
    for (Index j = 0; j < m; ++j) {
        const auto toks = tokens(r.need(false, "a witness weight"));
        if (toks.size() != 1) r.fail("expected a single witness weight");
        const double w = parse_double(r, toks[0], "witness weight");
        if (w < 0.0) r.fail("witness weights cannot be negative");
        o.witness_weights.push_back(w);
    }
    std::string rest;
    if (r.next(rest, false) && !tokens(rest).empty()) r.fail("trailing content after the witness weights");
    return o;
}

std::string write_tau(const GroupOverestimates& o) {
    std::string out = "TAU 1\n" + fmt(static_cast<Index>(o.tau.size())) + " " +
                      fmt(static_cast<Index>(o.witness_weights.size())) + " " + fmt(o.nu) + " " +
                      fmt(o.iterations) + "\n";
    for (double t : o.tau) out += fmt(t) + "\n";
    for (double w : o.witness_weights) out += fmt(w) + "\n";
    return out;
}

namespace {
template <typename F>
auto read_file(const std::string& path, F reader) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    return reader(in, path);
}
}  // namespace

GraphicalHypergraph read_hgr_file(const std::string& path) {
    return read_file(path, [](std::istream& in, const std::string& p) { return read_hgr(in, p); });
}
MatrixHypergraph read_mhg_file(const std::string& path) {
    return read_file(path, [](std::istream& in, const std::string& p) { return read_mhg(in, p); });
}
GroupOverestimates read_tau_file(const std::string& path) {
    return read_file(path, [](std::istream& in, const std::string& p) { return read_tau(in, p); });
}

FileKind sniff_kind(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        if (line == "HGR 1") return FileKind::hgr;
        if (line == "MHG 1") return FileKind::mhg;
        if (line == "TAU 1") return FileKind::tau;
        return FileKind::unknown;
    }
    return FileKind::unknown;
}

void atomic_write_file(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp-" + std::to_string(static_cast<long>(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

}  // namespace hgsparse
