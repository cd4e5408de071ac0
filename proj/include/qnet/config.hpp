#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnet/auth.hpp"

namespace qnet {

enum class Subcommand { topo, scaling, auth, verify, all };

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    Subcommand subcommand = Subcommand::all;

    // topology
    std::uint32_t topo_n = 1024;  // key: N
    std::uint32_t ring_degree = 6;
    double beta = 0.1;

    // transport
    double c0 = 0.95;
    double lambda_max = 0.9;

    // sweeps
    std::vector<std::uint32_t> n_list = {512, 1024, 2048, 4096};
    unsigned seeds_per_n = 10;

    // authentication
    double exploration_constant = 1.0;  // key: c
    ProbePolicy policy = ProbePolicy::uniform_ball;
    ProbeAccounting auth_mode = ProbeAccounting::fixed_budget;
    std::int64_t exploration_radius = 0;  // 0 = auto

    // verification
    std::size_t sep_samples = 10000;
    std::size_t verify_shots = 0;  // > 0 adds a finite-statistics demonstration

    // run control
    std::uint64_t seed = 42;
    std::string out_dir = "out";
    int jobs = 1;
    std::size_t sample_pairs = 200000;

    AuthParams auth_params() const;
};

// Parses "<subcommand> [--config FILE] [--set key=value ...] [--out DIR]
// [--seed U64] [--jobs INT]". Precedence, lowest first: defaults, QNET_SEED,
// config file, --set, direct flags. Unknown keys, malformed values and
// out-of-range values raise ParseError naming the offending key and source.
RunConfig parse_config(const std::vector<std::string>& args);

// Applies one key=value assignment; `context` identifies the source for
// error messages (e.g. "config.txt:3" or "--set").
void apply_key_value(RunConfig& config, const std::string& key, const std::string& value,
                     const std::string& context);

std::string usage_text();

}  // namespace qnet
