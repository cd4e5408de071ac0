#include "qnet/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <ostream>

#include "qnet/auth.hpp"
#include "qnet/opgraph.hpp"
#include "qnet/ptm.hpp"
#include "qnet/swap_verify.hpp"
#include "qnet/textio.hpp"

namespace qnet {

namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file " + (dir / name).string());
    return out;
}

TopologyParams topo_params(const RunConfig& config, std::uint32_t n, std::uint64_t seed) {
    TopologyParams params;
    params.node_count = n;
    params.ring_degree = config.ring_degree;
    params.rewire_probability = config.beta;
    params.seed = seed;
    return params;
}

// Per-N means of a record field, keyed by ascending N.
template <typename Record, typename Getter>
std::map<std::uint32_t, double> per_n_mean(const std::vector<Record>& records, Getter get) {
    std::map<std::uint32_t, std::pair<double, std::size_t>> acc;
    for (const auto& rec : records) {
        auto& [sum, count] = acc[rec.node_count];
        sum += get(rec);
        ++count;
    }
    std::map<std::uint32_t, double> means;
    for (const auto& [n, sc] : acc) means[n] = sc.first / static_cast<double>(sc.second);
    return means;
}

int run_topo(const RunConfig& config, std::ostream& out) {
    const NetworkGraph graph =
        NetworkGraph::generate_small_world(topo_params(config, config.topo_n, config.seed));
    auto file = open_output(config.out_dir, "topology.edgelist");
    graph.serialize(file);
    const double mean_distance = average_path_length(graph, config.sample_pairs);
    out << "topology: N=" << graph.node_count() << " edges=" << graph.edge_count()
        << " mean_degree=" << fmt_real(graph.mean_degree())
        << " mean_distance=" << fmt_real(mean_distance) << "\n";
    out << "wrote " << (fs::path(config.out_dir) / "topology.edgelist").string() << "\n";
    return 0;
}

struct ScalingOutput {
    std::vector<ScalingRecord> records;
    LinearFit fit;
};

ScalingOutput run_scaling(const RunConfig& config, std::ostream& out) {
    ScalingOutput result;
    result.records =
        scaling_experiment(config.n_list, config.ring_degree, config.beta, config.c0,
                           config.lambda_max, config.seeds_per_n, config.seed, config.jobs);
    result.fit = fit_power_law(result.records);

    auto csv = open_output(config.out_dir, "scaling.csv");
    write_scaling_csv(csv, result.records);

    const auto means = per_n_mean(result.records, [](const ScalingRecord& r) {
        return static_cast<double>(r.usable_pairs);
    });
    auto dat = open_output(config.out_dir, "scaling_fit.dat");
    dat << "# N mean_usable_pairs\n";
    for (const auto& [n, mean] : means) dat << n << " " << fmt_real(mean) << "\n";
    auto gp = open_output(config.out_dir, "scaling.gp");
    gp << "set logscale xy\n"
       << "set xlabel 'N (nodes)'\n"
       << "set ylabel 'usable Bell pairs'\n"
       << "a = " << fmt_real(std::exp(result.fit.intercept)) << "\n"
       << "b = " << fmt_real(result.fit.slope) << "\n"
       << "plot 'scaling_fit.dat' using 1:2 with points pt 7 title 'mean over seeds', \\\n"
       << "     a*x**b with lines title sprintf('fit slope %.3f', b)\n";

    out << "scaling: L_max=" << result.records.front().max_depth
        << " fit slope=" << fmt_real(result.fit.slope)
        << " intercept=" << fmt_real(result.fit.intercept)
        << " r2=" << fmt_real(result.fit.r_squared) << "\n";
    out << "wrote " << (fs::path(config.out_dir) / "scaling.csv").string() << "\n";
    return result;
}

ComplexityResult run_auth_mode(const RunConfig& config, ProbeAccounting accounting,
                               const std::string& csv_name, std::ostream& out) {
    AuthParams params = config.auth_params();
    params.accounting = accounting;
    const ComplexityResult result =
        complexity_experiment(config.n_list, config.ring_degree, config.beta, config.c0,
                              config.lambda_max, params, config.seeds_per_n, config.seed,
                              config.jobs);
    auto csv = open_output(config.out_dir, csv_name);
    write_auth_csv(csv, result.records);

    const auto probe_means = per_n_mean(result.records, [](const AuthRecord& r) {
        return static_cast<double>(r.total_probes) / r.node_count;
    });
    const std::string stem = csv_name.substr(0, csv_name.find('.'));
    auto dat = open_output(config.out_dir, stem + "_fit.dat");
    dat << "# log2(N) mean_probes_per_node\n";
    for (const auto& [n, mean] : probe_means)
        dat << fmt_real(std::log2(static_cast<double>(n))) << " " << fmt_real(mean) << "\n";
    auto gp = open_output(config.out_dir, stem + ".gp");
    gp << "set xlabel 'log2 N'\n"
       << "set ylabel 'probes per node'\n"
       << "plot '" << stem << "_fit.dat' using 1:2 with linespoints title '"
       << to_string(accounting) << "', \\\n"
       << "     " << fmt_real(result.fit.slope) << "*x + " << fmt_real(result.fit.intercept)
       << " with lines title 'fit'\n";

    out << "auth[" << to_string(accounting) << "]: fit slope=" << fmt_real(result.fit.slope)
        << " intercept=" << fmt_real(result.fit.intercept)
        << " r2=" << fmt_real(result.fit.r_squared)
        << " max_adjacent_corr=" << fmt_real(result.max_adjacent_correlation) << "\n";
    if (result.mixing_assumption_flagged)
        out << "warning: adjacent-success correlation above 0.1; the independence "
               "assumption looks violated on this instance\n";
    out << "wrote " << (fs::path(config.out_dir) / csv_name).string() << "\n";
    return result;
}

struct VerifyOutput {
    std::vector<VerificationRow> rows;
    SeparabilitySweepResult separability;
};

VerifyOutput run_verify(const RunConfig& config, std::ostream& out) {
    std::vector<double> visibilities;
    for (int i = 0; i <= 20; ++i) visibilities.push_back(static_cast<double>(i) / 20.0);
    VerifyOutput result;
    result.rows = werner_verification_sweep(visibilities, config.jobs);
    result.separability = separability_sweep(config.sep_samples, config.seed);

    auto csv = open_output(config.out_dir, "verify.csv");
    write_verification_csv(csv, result.rows);
    auto report = open_output(config.out_dir, "discrepancy_report.txt");
    write_discrepancy_report(report, result.rows);
    report << "\nseparability sweep (" << config.sep_samples << " product states, "
           << config.sep_samples << " mixtures): max F_product = "
           << fmt_real(result.separability.max_fidelity_product)
           << ", max F_mixture = " << fmt_real(result.separability.max_fidelity_mixture) << "\n";

    double max_residual = 0.0;
    for (const auto& row : result.rows)
        max_residual = std::max(max_residual, row.report.max_residual);
    out << "verify: max |circuit - formula(oracle)| = " << fmt_real(max_residual)
        << ", separability max F = " << fmt_real(result.separability.max_fidelity) << "\n";
    out << "wrote " << (fs::path(config.out_dir) / "verify.csv").string() << " and "
        << (fs::path(config.out_dir) / "discrepancy_report.txt").string() << "\n";

    if (config.verify_shots > 0) {
        const auto& mid = result.rows[result.rows.size() / 2];
        const auto sampled =
            sample_joint_probabilities(mid.outcome, config.verify_shots, config.seed);
        out << "finite-statistics demo (w=" << fmt_real(mid.w) << ", " << config.verify_shots
            << " shots): P00 exact=" << fmt_real(mid.outcome.joint_probs[0][0])
            << " sampled=" << fmt_real(sampled[0][0]) << "\n";
    }
    return result;
}

int run_all(const RunConfig& config, std::ostream& out) {
    int failures = 0;
    auto check = [&](bool ok, const std::string& what) {
        out << (ok ? "[ok]   " : "[FAIL] ") << what << "\n";
        if (!ok) ++failures;
    };

    run_topo(config, out);

    const ScalingOutput scaling = run_scaling(config, out);
    check(scaling.fit.slope >= 0.95 && scaling.fit.slope <= 1.05,
          "usable pairs scale linearly (slope in [0.95, 1.05], got " +
              fmt_real(scaling.fit.slope) + ")");
    check(scaling.fit.r_squared >= 0.99,
          "log-log fit quality (r2 >= 0.99, got " + fmt_real(scaling.fit.r_squared) + ")");

    const ComplexityResult fixed =
        run_auth_mode(config, ProbeAccounting::fixed_budget, "auth_fixed.csv", out);
    bool budget_exact = true;
    for (const auto& rec : fixed.records) {
        const std::uint64_t expected =
            static_cast<std::uint64_t>(rec.node_count) *
            probes_per_node(rec.node_count, config.exploration_constant);
        if (rec.total_probes != expected) budget_exact = false;
    }
    check(budget_exact, "fixed-budget probes equal N*ceil(c*log2 N) on every record");

    const ComplexityResult early =
        run_auth_mode(config, ProbeAccounting::early_stop, "auth_earlystop.csv", out);
    const auto success = per_n_mean(early.records,
                                    [](const AuthRecord& r) { return r.success_fraction; });
    double success_mean = 0.0;
    for (const auto& [n, s] : success) success_mean += s;
    success_mean /= static_cast<double>(success.size());
    bool flat = true;
    for (const auto& [n, s] : success)
        if (std::abs(s - success_mean) > 0.05) flat = false;
    check(flat, "early-stop success fraction flat within +-0.05 across N");
    const auto probes = per_n_mean(early.records, [](const AuthRecord& r) {
        return static_cast<double>(r.total_probes) / r.node_count;
    });
    double min_probes = 1e300, max_probes = 0.0;
    for (const auto& [n, p] : probes) {
        min_probes = std::min(min_probes, p);
        max_probes = std::max(max_probes, p);
    }
    check(max_probes <= 1.25 * min_probes + 0.25,
          "early-stop probes per node bounded across the sweep (max " + fmt_real(max_probes) +
              ", min " + fmt_real(min_probes) + ")");

    const VerifyOutput verify = run_verify(config, out);
    double max_residual = 0.0, max_prob_sum_err = 0.0;
    for (const auto& row : verify.rows) {
        max_residual = std::max(max_residual, row.report.max_residual);
        double sum = 0.0;
        for (const auto& r : row.outcome.joint_probs)
            for (double p : r) sum += p;
        max_prob_sum_err = std::max(max_prob_sum_err, std::abs(sum - 1.0));
    }
    check(max_residual <= 1e-10, "circuit matches the oracle-fed parity formula (<= 1e-10)");
    check(max_prob_sum_err <= 1e-12, "joint probabilities sum to 1 (<= 1e-12)");
    check(verify.separability.max_fidelity <= 0.5 + 1e-12,
          "separable-state Bell fidelity bounded by 1/2");

    out << (failures == 0 ? "all checks passed\n"
                          : "FAILED: " + std::to_string(failures) + " check(s)\n");
    return failures == 0 ? 0 : 2;
}

}  // namespace

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        switch (config.subcommand) {
            case Subcommand::topo:
                return run_topo(config, out);
            case Subcommand::scaling:
                run_scaling(config, out);
                return 0;
            case Subcommand::auth:
                run_auth_mode(config, config.auth_mode,
                              config.auth_mode == ProbeAccounting::fixed_budget
                                  ? "auth.csv"
                                  : "auth_earlystop.csv",
                              out);
                return 0;
            case Subcommand::verify:
                run_verify(config, out);
                return 0;
            case Subcommand::all:
                return run_all(config, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (!args.empty() && (args[0] == "--help" || args[0] == "-h")) {
        std::cout << usage_text();
        return 0;
    }
    RunConfig config;
    try {
        config = parse_config(args);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n" << usage_text();
        return 1;
    }
    return dispatch(config, std::cout, std::cerr);
}

}  // namespace qnet
