#pragma once

#include <iosfwd>
#include <string>

#include "hgsparse/hypergraph.hpp"
#include "hgsparse/overestimates.hpp"

namespace hgsparse {

// Text formats. All floats serialize with shortest round-trip precision, so
// write-then-read reproduces every double bit for bit. Parse errors name the
// offending line.
//
//   .hgr  "HGR 1" / "n k" / k lines "weight size v_0 .. v_{size-1}",
//          '#' lines are comments
//   .mhg  "MHG 1" / "m n k nnz" / group weights or "unit" / m group ids /
//          nnz lines "row col value" in strictly increasing (row, col) order
//   .tau  "TAU 1" / "k m nu T" / k tau lines / m witness lines

GraphicalHypergraph read_hgr(std::istream& in, const std::string& name = "<stream>");
GraphicalHypergraph read_hgr_file(const std::string& path);
std::string write_hgr(const GraphicalHypergraph& g);

MatrixHypergraph read_mhg(std::istream& in, const std::string& name = "<stream>");
MatrixHypergraph read_mhg_file(const std::string& path);
std::string write_mhg(const MatrixHypergraph& g);

GroupOverestimates read_tau(std::istream& in, const std::string& name = "<stream>");
GroupOverestimates read_tau_file(const std::string& path);
std::string write_tau(const GroupOverestimates& o);

enum class FileKind { hgr, mhg, tau, unknown };
FileKind sniff_kind(const std::string& path);

// Writes via a temp file in the same directory plus rename.
void atomic_write_file(const std::string& path, const std::string& contents);

}  // namespace hgsparse
