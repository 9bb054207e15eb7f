#include "hgsparse/cli.hpp"

#include <chrono>
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hgsparse/certify.hpp"
#include "hgsparse/io.hpp"
#include "hgsparse/report.hpp"
#include "hgsparse/rng.hpp"
#include "hgsparse/sampler.hpp"

namespace hgsparse {

namespace {

struct CliConfig {
    std::string input;
    std::string output;
    std::string tau_path;
    std::string report_path;
    std::string sparsifier;
    double epsilon = 0.5;
    std::string schedule = "chaining";
    double constant = 1.0;
    std::uint64_t seed = 0;
    std::string solver = "exact";
    double delta = 0.25;
    Index sketch_rows = 0;
    double cg_tolerance = 1e-10;
    Index cg_max_iter = 2000;
    std::string iterations = "auto";
    Index cut_cap = 14;
    Index directions = 50;
    bool no_certify = false;
    Index certify_cap = 2000;
    int threads = 0;

    // generate / bench shape
    std::string kind = "uniform";
    std::string weight_law = "constant";
    Index n = 32;
    Index k = 64;
    Index r = 4;
    std::vector<Index> r_list{2, 4, 8};
    std::vector<double> epsilon_list{0.5};
    std::vector<double> constant_list{1.0};
    int seeds = 3;
};

Schedule parse_schedule(const std::string& s) {
    if (s == "chaining") return Schedule::chaining;
    if (s == "dudley") return Schedule::dudley;
    if (s == "explicit") return Schedule::explicit_rho;
    throw CLI::ValidationError("--schedule", "must be chaining, dudley or explicit");
}

InstanceKind parse_kind(const std::string& s) {
    if (s == "uniform") return InstanceKind::uniform_hypergraph;
    if (s == "power-law") return InstanceKind::power_law_degrees;
    if (s == "graph") return InstanceKind::graph;
    throw CLI::ValidationError("--kind", "must be uniform, power-law or graph");
}

WeightLaw parse_weight_law(const std::string& s) {
    if (s == "constant") return WeightLaw::constant;
    if (s == "log-uniform") return WeightLaw::log_uniform;
    throw CLI::ValidationError("--weight-law", "must be constant or log-uniform");
}

PipelineConfig pipeline_config(const CliConfig& c) {
    PipelineConfig cfg;
    cfg.solver.mode = c.solver == "sketched" ? SolverMode::sketched : SolverMode::exact;
    if (c.solver != "exact" && c.solver != "sketched")
        throw CLI::ValidationError("--solver", "must be exact or sketched");
    cfg.solver.delta = c.delta;
    cfg.solver.sketch_rows = c.sketch_rows;
    cfg.solver.cg_tolerance = c.cg_tolerance;
    cfg.solver.cg_max_iter = c.cg_max_iter;
    cfg.schedule = parse_schedule(c.schedule);
    cfg.constant = c.constant;
    cfg.seed = c.seed;
    if (c.iterations != "auto") cfg.iterations = std::stoll(c.iterations);
    cfg.certify = !c.no_certify;
    cfg.certification_cap = c.certify_cap;
    cfg.quality_directions = c.directions;
    cfg.cut_cap = c.cut_cap;
    return cfg;
}

void add_solver_flags(CLI::App* cmd, CliConfig& c) {
    cmd->add_option("--solver", c.solver, "leverage backend: exact or sketched");
    cmd->add_option("--delta", c.delta, "sketch accuracy in (0,1)");
    cmd->add_option("--sketch-rows", c.sketch_rows, "projection rows (0 = auto)");
    cmd->add_option("--cg-tolerance", c.cg_tolerance, "iterative solve tolerance");
    cmd->add_option("--cg-max-iter", c.cg_max_iter, "iterative solve iteration cap");
    cmd->add_option("--iterations", c.iterations, "reweighting rounds: auto or a positive integer");
    cmd->add_option("--threads", c.threads, "worker threads (0 = hardware)");
}

struct LoadedInput {
    MatrixHypergraph unit;       // the sampled object
    bool graphical = false;
    GraphicalHypergraph graphical_input;
};

LoadedInput load_input(const std::string& path) {
    LoadedInput in;
    const FileKind kind = sniff_kind(path);
    if (kind == FileKind::hgr) {
        in.graphical = true;
        in.graphical_input = read_hgr_file(path);
        GraphicalHypergraph filtered;
        filtered.vertex_count = in.graphical_input.vertex_count;
        for (const auto& e : in.graphical_input.edges)
            if (e.weight > 0.0) filtered.edges.push_back(e);
        in.unit = unitize(clique_expand(filtered));
    } else if (kind == FileKind::mhg) {
        MatrixHypergraph g = read_mhg_file(path);
        in.unit = g.unit() ? std::move(g) : unitize(g);
    } else {
        throw ParseError(path + ": not a HGR or MHG file");
    }
    return in;
}

int run_sparsify(const CliConfig& c) {
    const auto cfg = pipeline_config(c);
    const FileKind kind = sniff_kind(c.input);
    PipelineResult result;
    if (kind == FileKind::hgr) {
        result = sparsify(read_hgr_file(c.input), c.epsilon, cfg);
    } else if (kind == FileKind::mhg) {
        result = sparsify(read_mhg_file(c.input), c.epsilon, cfg);
    } else {
        throw ParseError(c.input + ": not a HGR or MHG file");
    }

    if (!c.output.empty()) atomic_write_file(c.output, write_mhg(compact(result.output)));
    if (!c.tau_path.empty()) atomic_write_file(c.tau_path, write_tau(result.overestimates));
    if (!c.report_path.empty()) {
        SizeInfo sizes{result.output.hypergraph.column_count(), result.output.hypergraph.row_count(),
                       result.output.hypergraph.group_count(),
                       static_cast<Index>(result.output.kept_groups.size()),
                       result.output.expected_kept};
        atomic_write_file(c.report_path,
                          report_json(result.report, result.quality, &result.output.plan, sizes));
    }
    if (cfg.certify && !result.report.overall()) {
        std::cerr << "certification failed; see the report checks\n";
        return 2;
    }
    return 0;
}

int run_verify(const CliConfig& c) {
    const LoadedInput in = load_input(c.input);
    const GroupOverestimates over = read_tau_file(c.tau_path);

    CertReport report = certify_overestimates(in.unit, over);
    const CertReport contribution = group_contribution_check(
        in.unit, over.tau, over.witness_weights, c.directions,
        SplitMix64::substream_seed(c.seed, kQualityStream));
    for (const auto& chk : contribution.checks) report.checks.push_back(chk);

    std::optional<QualityStats> quality;
    SizeInfo sizes{in.unit.column_count(), in.unit.row_count(), in.unit.group_count(), 0, 0.0};
    if (!c.sparsifier.empty()) {
        const MatrixHypergraph H = read_mhg_file(c.sparsifier);
        quality = measure_quality(in.unit, H, c.epsilon, c.directions, c.cut_cap,
                                  SplitMix64::substream_seed(c.seed, kQualityStream + 1));
        sizes.kept = H.group_count();
        const bool within = !quality->max_rel_err_cuts ||
                            *quality->max_rel_err_cuts <= c.epsilon * (1.0 + 1e-9);
        report.add("cut-error-within-epsilon", within,
                   quality->max_rel_err_cuts ? std::max(0.0, *quality->max_rel_err_cuts - c.epsilon) : 0.0,
                   quality->max_rel_err_cuts
                       ? "max cut relative error " + std::to_string(*quality->max_rel_err_cuts)
                       : "cut enumeration skipped (n above cut cap)");
    }
    if (!c.report_path.empty())
        atomic_write_file(c.report_path, report_json(report, quality, nullptr, sizes));

    if (!report.overall()) {
        for (const auto& chk : report.checks)
            if (!chk.pass) std::cerr << "check failed: " << chk.name << " (" << chk.detail << ")\n";
        return 2;
    }
    return 0;
}

int run_bench(const CliConfig& c) {
    std::string csv = "epsilon,r,constant,seed,n,m,k,kept,expected_kept,max_err_random,max_err_cuts,ms\n";
    const auto kind = parse_kind(c.kind);
    const auto law = parse_weight_law(c.weight_law);
    for (Index r : c.r_list) {
        for (int s = 0; s < c.seeds; ++s) {
            const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(s);
            const auto instance =
                generate_random(kind, c.n, c.k, r, law, SplitMix64::substream_seed(seed, static_cast<std::uint64_t>(r)));
            for (double constant : c.constant_list) {
                for (double epsilon : c.epsilon_list) {
                    auto cfg = pipeline_config(c);
                    cfg.constant = constant;
                    cfg.seed = seed;
                    const auto t0 = std::chrono::steady_clock::now();
                    const auto result = sparsify(instance, epsilon, cfg);
                    const auto t1 = std::chrono::steady_clock::now();
                    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
                    csv += std::to_string(epsilon) + "," + std::to_string(r) + "," +
                           std::to_string(constant) + "," + std::to_string(seed) + "," +
                           std::to_string(result.output.hypergraph.column_count()) + "," +
                           std::to_string(result.output.hypergraph.row_count()) + "," +
                           std::to_string(result.output.hypergraph.group_count()) + "," +
                           std::to_string(result.output.kept_groups.size()) + "," +
                           std::to_string(result.output.expected_kept) + ",";
                    csv += result.quality ? std::to_string(result.quality->max_rel_err_random) : "";
                    csv += ",";
                    csv += result.quality && result.quality->max_rel_err_cuts
                               ? std::to_string(*result.quality->max_rel_err_cuts)
                               : "";
                    csv += "," + std::to_string(ms) + "\n";
                }
            }
        }
    }
    atomic_write_file(c.output.empty() ? "bench.csv" : c.output, csv);
    return 0;
}

int run_generate(const CliConfig& c) {
    const auto g = generate_random(parse_kind(c.kind), c.n, c.k, c.r, parse_weight_law(c.weight_law), c.seed);
    atomic_write_file(c.output.empty() ? "generated.hgr" : c.output, write_hgr(g));
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"spectral hypergraph sparsification via group leverage overestimates"};
    app.require_subcommand(1);
    CliConfig c;

    auto* sp = app.add_subcommand("sparsify", "subsample a hypergraph into a spectral sparsifier");
    sp->add_option("--input", c.input, "input .hgr or .mhg file")->required();
    sp->add_option("--output", c.output, "compacted sparsifier (.mhg)");
    sp->add_option("--tau", c.tau_path, "overestimates output (.tau)");
    sp->add_option("--report", c.report_path, "JSON report path");
    sp->add_option("--epsilon", c.epsilon, "target accuracy in (0,1)")->required();
    sp->add_option("--schedule", c.schedule, "rho schedule: chaining, dudley or explicit");
    sp->add_option("--constant", c.constant, "multiplier C in the rho formulas");
    sp->add_option("--seed", c.seed, "64-bit seed; the only entropy source");
    sp->add_option("--cut-cap", c.cut_cap, "cut enumeration cap on n");
    sp->add_option("--directions", c.directions, "quality test directions");
    sp->add_flag("--no-certify", c.no_certify, "skip certification and quality measurement");
    sp->add_option("--certify-cap", c.certify_cap, "max rows for pseudoinverse certification");
    add_solver_flags(sp, c);

    auto* vf = app.add_subcommand("verify", "check overestimates and sparsifier quality");
    vf->add_option("--input", c.input, "input .hgr or .mhg file")->required();
    vf->add_option("--tau", c.tau_path, "overestimates file (.tau)")->required();
    vf->add_option("--sparsifier", c.sparsifier, "sparsifier to score (.mhg)");
    vf->add_option("--report", c.report_path, "JSON report path");
    vf->add_option("--epsilon", c.epsilon, "accuracy target used in the quality check");
    vf->add_option("--seed", c.seed, "seed for test directions");
    vf->add_option("--directions", c.directions, "test directions");
    vf->add_option("--cut-cap", c.cut_cap, "cut enumeration cap on n");

    auto* bn = app.add_subcommand("bench", "sweep epsilon / r / constant and emit CSV");
    bn->add_option("--output", c.output, "CSV output path (default bench.csv)");
    bn->add_option("--n", c.n, "vertices per generated instance");
    bn->add_option("--k", c.k, "hyperedges per generated instance");
    bn->add_option("--r-list", c.r_list, "ranks to sweep")->delimiter(',');
    bn->add_option("--epsilon-list", c.epsilon_list, "epsilons to sweep")->delimiter(',');
    bn->add_option("--constant-list", c.constant_list, "constants to sweep")->delimiter(',');
    bn->add_option("--seeds", c.seeds, "seeds per configuration");
    bn->add_option("--seed", c.seed, "base seed");
    bn->add_option("--kind", c.kind, "instance kind: uniform, power-law or graph");
    bn->add_option("--weight-law", c.weight_law, "weight law: constant or log-uniform");
    bn->add_option("--schedule", c.schedule, "rho schedule");
    bn->add_option("--directions", c.directions, "quality test directions");
    bn->add_option("--cut-cap", c.cut_cap, "cut enumeration cap on n");
    bn->add_flag("--no-certify", c.no_certify, "skip certification and quality measurement");
    bn->add_option("--certify-cap", c.certify_cap, "max rows for pseudoinverse certification");
    add_solver_flags(bn, c);

    auto* gn = app.add_subcommand("generate", "emit a random hypergraph (.hgr)");
    gn->add_option("--output", c.output, "output path (default generated.hgr)");
    gn->add_option("--kind", c.kind, "instance kind: uniform, power-law or graph");
    gn->add_option("--n", c.n, "vertex count")->required();
    gn->add_option("--k", c.k, "hyperedge count")->required();
    gn->add_option("--r", c.r, "max hyperedge size");
    gn->add_option("--weight-law", c.weight_law, "weight law: constant or log-uniform");
    gn->add_option("--seed", c.seed, "seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    try {
        if (c.threads != 0) set_thread_count(c.threads);
        if (sp->parsed()) {
            if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) {
                std::cerr << "--epsilon must lie in (0,1)\n";
                return 1;
            }
            return run_sparsify(c);
        }
        if (vf->parsed()) return run_verify(c);
        if (bn->parsed()) return run_bench(c);
        if (gn->parsed()) return run_generate(c);
        return 1;
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const SolverFailure& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace hgsparse
