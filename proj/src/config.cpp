#include "qnet/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qnet {

namespace {

std::uint64_t parse_u64(const std::string& value, const std::string& key,
                        const std::string& context) {
    std::size_t pos = 0;
    std::uint64_t out = 0;
    try {
        out = std::stoull(value, &pos);
    } catch (const std::exception&) {
        throw ParseError(context + ": " + key + ": malformed unsigned integer '" + value + "'");
    }
    if (pos != value.size() || value[0] == '-')
        throw ParseError(context + ": " + key + ": malformed unsigned integer '" + value + "'");
    return out;
}

double parse_double(const std::string& value, const std::string& key, const std::string& context) {
    std::size_t pos = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ParseError(context + ": " + key + ": malformed number '" + value + "'");
    }
    if (pos != value.size())
        throw ParseError(context + ": " + key + ": malformed number '" + value + "'");
    return out;
}

std::vector<std::uint32_t> parse_u32_list(const std::string& value, const std::string& key,
                                          const std::string& context) {
    std::vector<std::uint32_t> out;
    std::stringstream stream(value);
    std::string item;
    while (std::getline(stream, item, ','))
        out.push_back(static_cast<std::uint32_t>(parse_u64(item, key, context)));
    if (out.empty()) throw ParseError(context + ": " + key + ": empty list");
    return out;
}

[[noreturn]] void out_of_range(const std::string& key, const std::string& context,
                               const std::string& expectation) {
    throw ParseError(context + ": " + key + ": value out of range (expected " + expectation + ")");
}

}  // namespace

AuthParams RunConfig::auth_params() const {
    AuthParams params;
    params.exploration_constant = exploration_constant;
    params.seed = seed;
    params.policy = policy;
    params.accounting = auth_mode;
    params.exploration_radius = exploration_radius;
    return params;
}

void apply_key_value(RunConfig& config, const std::string& key, const std::string& value,
                     const std::string& context) {
    if (key == "N") {
        config.topo_n = static_cast<std::uint32_t>(parse_u64(value, key, context));
        if (config.topo_n < 8) out_of_range(key, context, "N >= 8");
    } else if (key == "k") {
        config.ring_degree = static_cast<std::uint32_t>(parse_u64(value, key, context));
        if (config.ring_degree < 2 || config.ring_degree % 2 != 0)
            out_of_range(key, context, "even k >= 2");
    } else if (key == "beta") {
        config.beta = parse_double(value, key, context);
        if (!(config.beta >= 0.0 && config.beta <= 1.0)) out_of_range(key, context, "0 <= beta <= 1");
    } else if (key == "C0") {
        config.c0 = parse_double(value, key, context);
        if (!(config.c0 > 0.0 && config.c0 <= 1.0)) out_of_range(key, context, "0 < C0 <= 1");
    } else if (key == "lambda_max") {
        config.lambda_max = parse_double(value, key, context);
        if (!(config.lambda_max > 0.0 && config.lambda_max < 1.0))
            out_of_range(key, context, "0 < lambda_max < 1");
    } else if (key == "N_list") {
        config.n_list = parse_u32_list(value, key, context);
        for (std::size_t i = 0; i < config.n_list.size(); ++i) {
            if (config.n_list[i] < 8) out_of_range(key, context, "every N >= 8");
            if (i > 0 && config.n_list[i] <= config.n_list[i - 1])
                out_of_range(key, context, "strictly ascending N values");
        }
    } else if (key == "seeds_per_N") {
        config.seeds_per_n = static_cast<unsigned>(parse_u64(value, key, context));
        if (config.seeds_per_n == 0) out_of_range(key, context, "seeds_per_N >= 1");
    } else if (key == "c") {
        config.exploration_constant = parse_double(value, key, context);
        if (!(config.exploration_constant > 0.0)) out_of_range(key, context, "c > 0");
    } else if (key == "policy") {
        if (value == "uniform_ball")
            config.policy = ProbePolicy::uniform_ball;
        else if (value == "uniform_global")
            config.policy = ProbePolicy::uniform_global;
        else
            out_of_range(key, context, "uniform_ball or uniform_global");
    } else if (key == "auth_mode") {
        if (value == "fixed")
            config.auth_mode = ProbeAccounting::fixed_budget;
        else if (value == "early_stop")
            config.auth_mode = ProbeAccounting::early_stop;
        else
            out_of_range(key, context, "fixed or early_stop");
    } else if (key == "exploration_radius") {
        config.exploration_radius = static_cast<std::int64_t>(parse_u64(value, key, context));
    } else if (key == "sep_samples") {
        config.sep_samples = parse_u64(value, key, context);
        if (config.sep_samples == 0) out_of_range(key, context, "sep_samples >= 1");
    } else if (key == "verify_shots") {
        config.verify_shots = parse_u64(value, key, context);
    } else if (key == "seed") {
        config.seed = parse_u64(value, key, context);
    } else if (key == "out") {
        config.out_dir = value;
    } else if (key == "jobs") {
        config.jobs = static_cast<int>(parse_u64(value, key, context));
        if (config.jobs < 1) out_of_range(key, context, "jobs >= 1");
    } else if (key == "sample_pairs") {
        config.sample_pairs = parse_u64(value, key, context);
        if (config.sample_pairs == 0) out_of_range(key, context, "sample_pairs >= 1");
    } else {
        throw ParseError(context + ": unknown key '" + key + "'");
    }
}

namespace {

void apply_config_file(RunConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path + "'");
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        const std::string context = path + ":" + std::to_string(line_number);
        if (eq == std::string::npos) throw ParseError(context + ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        const auto key_end = key.find_last_not_of(" \t");
        key = key_end == std::string::npos ? "" : key.substr(0, key_end + 1);
        const auto value_begin = value.find_first_not_of(" \t");
        value = value_begin == std::string::npos ? "" : value.substr(value_begin);
        if (key.empty()) throw ParseError(context + ": missing key before '='");
        apply_key_value(config, key, value, context);
    }
}

void validate_cross_fields(const RunConfig& config) {
    if (config.ring_degree >= config.topo_n)
        throw ParseError("k: ring degree must be smaller than N");
    const std::uint32_t min_n = *std::min_element(config.n_list.begin(), config.n_list.end());
    if (config.ring_degree >= min_n)
        throw ParseError("k: ring degree must be smaller than every N in N_list");
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
    if (args.empty()) throw ParseError("missing subcommand (topo|scaling|auth|verify|all)");
    RunConfig config;
    const std::string& sub = args[0];
    if (sub == "topo")
        config.subcommand = Subcommand::topo;
    else if (sub == "scaling")
        config.subcommand = Subcommand::scaling;
    else if (sub == "auth")
        config.subcommand = Subcommand::auth;
    else if (sub == "verify")
        config.subcommand = Subcommand::verify;
    else if (sub == "all")
        config.subcommand = Subcommand::all;
    else
        throw ParseError("unknown subcommand '" + sub + "'");

    if (const char* env_seed = std::getenv("QNET_SEED"))
        config.seed = parse_u64(env_seed, "QNET_SEED", "environment");

    // First pass: the config file loads before any --set or direct flag.
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw ParseError("--config: missing file argument");
            apply_config_file(config, args[++i]);
        }
    }

    for (std::size_t i = 1; i < args.size(); ++i) {
        const std::string& arg = args[i];
        auto next = [&](const char* flag) -> const std::string& {
            if (i + 1 >= args.size())
                throw ParseError(std::string(flag) + ": missing argument");
            return args[++i];
        };
        if (arg == "--config") {
            ++i;  // handled above
        } else if (arg == "--set") {
            const std::string& assignment = next("--set");
            const auto eq = assignment.find('=');
            if (eq == std::string::npos)
                throw ParseError("--set: expected key=value, got '" + assignment + "'");
            apply_key_value(config, assignment.substr(0, eq), assignment.substr(eq + 1), "--set");
        } else if (arg == "--out") {
            config.out_dir = next("--out");
        } else if (arg == "--seed") {
            config.seed = parse_u64(next("--seed"), "seed", "--seed");
        } else if (arg == "--jobs") {
            config.jobs = static_cast<int>(parse_u64(next("--jobs"), "jobs", "--jobs"));
            if (config.jobs < 1) throw ParseError("--jobs: value out of range (expected jobs >= 1)");
        } else {
            throw ParseError("unknown flag '" + arg + "'");
        }
    }

    validate_cross_fields(config);
    return config;
}

std::string usage_text() {
    return "usage: qnet-entgraph <topo|scaling|auth|verify|all> [--config FILE]\n"
           "                     [--set key=value ...] [--out DIR] [--seed U64] [--jobs INT]\n"
           "\n"
           "subcommands:\n"
           "  topo     generate the physical small-world graph, write the edge list,\n"
           "           print mean degree and mean shortest-path distance\n"
           "  scaling  usable-Bell-pair counts over the N sweep plus a log-log fit\n"
           "  auth     authentication probe-complexity sweep plus a probes/N fit\n"
           "  verify   distributed SWAP-test sweep, CSV and discrepancy report\n"
           "  all      every stage plus the built-in consistency checks\n"
           "\n"
           "keys for --set / config file (key=value, '#' comments):\n"
           "  N, k, beta, C0, lambda_max, N_list, seeds_per_N, c, policy, auth_mode,\n"
           "  exploration_radius, sep_samples, verify_shots, seed, out, jobs, sample_pairs\n"
           "\n"
           "The QNET_SEED environment variable seeds the run when no file or flag\n"
           "sets one. Exit codes: 0 success, 1 usage error, 2 property failure.\n";
}

}  // namespace qnet
