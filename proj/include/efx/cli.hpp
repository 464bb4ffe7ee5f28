#pragma once

#include "efx/oracle.hpp"
#include "efx/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace efx {

// The command implementations live in the library so tests can drive them in-process;
// the binary is a thin argument-parsing wrapper. All report text is canonical JSON
// (fixed key order, two-space indent, trailing newline, rationals as "p/q" strings,
// no timestamps), so identical inputs produce byte-identical reports.

struct GenerateOptions {
    std::string kind; // "lower-bound" | "random" | "large-market"
    int n = 2;
    int m = 4;
    std::optional<Rational> eps; // required by lower-bound and large-market
    int max_value = 20;          // random only
    std::uint64_t rng_seed = 1;  // random and large-market
    std::string out;             // required: where the instance file goes
};

// Writes the generated instance file and returns its digest (the line to print).
std::string cmd_generate(const GenerateOptions& opt);

struct SolveOptions {
    std::string algorithm = "alg1";     // "alg1" | "alg2"
    std::string seed_method = "oracle"; // "oracle" | "local-search" | "file"
    std::string seed_file;              // required when seed_method == "file"
    std::optional<Rational> delta;      // alg2 only; default 1/(2n+1)
    bool trace = false;                 // embed the per-round trace in the report
    std::uint64_t oracle_cap = kDefaultOracleCap;
    std::string out; // report file path; empty = caller prints the report
};

struct SolveResult {
    std::string report;     // canonical report text (also written to opt.out when set)
    std::string trace_text; // human-readable trace, 1-based ids (empty unless opt.trace)
};

SolveResult cmd_solve(const std::string& instance_path, const SolveOptions& opt);

struct VerifyOptions {
    std::vector<std::string> checks; // subset of ef, ef1, efx, pareto, large-market, ratio
    std::optional<Rational> eps;     // required by large-market
    std::uint64_t oracle_cap = kDefaultOracleCap;
    std::string out; // report file path; empty = caller prints the report
};

struct VerifyResult {
    std::string report;
    bool all_passed = false;
};

VerifyResult cmd_verify(const std::string& instance_path, const std::string& allocation_path,
                        const VerifyOptions& opt);

} // namespace efx
