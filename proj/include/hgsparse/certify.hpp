#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hgsparse/common.hpp"
#include "hgsparse/hypergraph.hpp"
#include "hgsparse/leverage.hpp"

namespace hgsparse {

struct CheckResult {
    std::string name;
    bool pass = false;
    double worst_slack = 0.0;  // how far past its bound the check quantity got
    std::string detail;
};

struct CertReport {
    std::vector<CheckResult> checks;

    bool overall() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void add(std::string name, bool pass, double worst_slack, std::string detail) {
        checks.push_back({std::move(name), pass, worst_slack, std::move(detail)});
    }
};

struct QualityStats {
    double max_rel_err_random = 0.0;
    // present only when the column count is within the cut enumeration cap
    std::optional<double> max_rel_err_cuts;
    Index directions_tested = 0;
    double epsilon_target = 0.0;
};

// Max |f_H(x)/f_G(x) - 1| over seeded Gaussian directions, plus exhaustive
// {0,1}^n cut indicators when n <= cut_cap. Directions with f_G below 1e-14
// are skipped.
QualityStats measure_quality(const MatrixHypergraph& G, const MatrixHypergraph& H, double epsilon,
                             Index n_directions, Index cut_cap, std::uint64_t seed);

// Checks max_{j in S_i} <a_j, x>^2 <= tau_i * f_G(x) on sampled directions.
CertReport group_contribution_check(const MatrixHypergraph& G, std::span<const double> tau,
                                    std::span<const double> wbar, Index n_directions,
                                    std::uint64_t seed);

enum class InstanceKind { uniform_hypergraph, power_law_degrees, graph };
enum class WeightLaw { constant, log_uniform };

// Seed-deterministic random instance; every vertex ends up in some hyperedge.
GraphicalHypergraph generate_random(InstanceKind kind, Index n, Index k, Index r,
                                    WeightLaw weight_law, std::uint64_t seed);

// max_{j in S_i} a_j^T (A^T W A)^+ a_j per group, by dense pseudoinverse.
// This is the oracle behind certify_overestimates and the acceptance suite.
std::vector<double> brute_force_group_leverage(const MatrixHypergraph& G, const RowWeights& w);

}  // namespace hgsparse
