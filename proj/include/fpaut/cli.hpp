#ifndef FPAUT_CLI_HPP
#define FPAUT_CLI_HPP

#include <string>

#include "fpaut/serialize.hpp"

namespace fpaut::cli {

/// Exit conventions: 0 success, 1 verification failure, 2 usage/config error.
constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kUsageError = 2;

struct Options {
    int max_probe_len = 2;
    std::size_t probe_generator_cap = 0;
    Sampling sampling;  // free-letter exponents for relation enumeration
};

struct Config {
    GroupSpec group;
    SubgroupSpec subgroup = SubgroupSpec::uniform(1);
    Options options;
};

/// Throws std::invalid_argument on malformed or inconsistent configs.
Config parse_config(const json& j);
Config load_config_file(const std::string& path);

struct CmdResult {
    int exit_code = kOk;
    json output;
    std::string dot;      // cover subcommand only
    std::string message;  // human-readable error, exit_code != 0
};

/// level: "exact" (relations of Aut(G)), "inn" (adds the Out(G) relation
/// (0) with its predicted witness), "innN" (adds the corrected-lift
/// splitting modulo Inn(N)).
CmdResult cmd_relations(const Config& cfg, const std::string& level);
CmdResult cmd_cover(const Config& cfg, bool emit_dot);
CmdResult cmd_embed(const Config& cfg);
CmdResult cmd_wn(int n);
CmdResult cmd_w3f4(int max_len);

}  // namespace fpaut::cli

#endif
