// Command-line front end: generate instances, run the solve pipelines, verify
// allocations. All substance lives in the library; this file only parses arguments,
// routes streams (reports to --out or stdout, human trace to stderr), and maps error
// classes to stable exit codes:
//   0 success (verify: all requested checks passed)
//   1 verify ran fine but some check failed
//   2 bad input (CLI usage, file parsing, invalid parameters)
//   3 resource cap exceeded (oracle enumeration, generator attempts)
//   4 internal invariant violation (a bug, never expected)

#include "efx/cli.hpp"
#include "efx/errors.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

std::optional<efx::Rational> parse_optional_rational(const std::string& text, const char* flag) {
    if (text.empty()) return std::nullopt;
    try {
        return efx::parse_rational(text);
    } catch (const efx::input_error& e) {
        throw efx::input_error(std::string(flag) + ": " + e.what());
    }
}

std::uint64_t default_oracle_cap() {
    const char* env = std::getenv("EFX_ORACLE_CAP");
    if (!env) return efx::kDefaultOracleCap;
    std::uint64_t cap = 0;
    std::string text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
    if (ec != std::errc{} || ptr != text.data() + text.size() || cap == 0)
        throw efx::input_error("EFX_ORACLE_CAP must be a positive integer, got '" + text + "'");
    return cap;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"EFX partial allocations of indivisible goods: exact solvers, "
                 "donation/improvement pipelines, and checkers"};
    app.require_subcommand(1);

    efx::GenerateOptions gen_opt;
    std::string gen_eps;
    CLI::App* gen = app.add_subcommand("generate", "Generate an instance file");
    gen->add_option("kind", gen_opt.kind, "lower-bound | random | large-market")->required();
    gen->add_option("--n", gen_opt.n, "number of agents");
    gen->add_option("--m", gen_opt.m, "number of items (random, large-market)");
    gen->add_option("--eps", gen_eps, "rational parameter (lower-bound, large-market)");
    gen->add_option("--max-value", gen_opt.max_value, "largest drawn value (random)");
    gen->add_option("--rng-seed", gen_opt.rng_seed, "PRNG seed");
    gen->add_option("--out", gen_opt.out, "instance file path")->required();

    std::string solve_instance;
    efx::SolveOptions solve_opt;
    std::string solve_delta;
    CLI::App* solve = app.add_subcommand("solve", "Run a seeding + algorithm pipeline");
    solve->add_option("instance", solve_instance, "instance file")->required();
    solve->add_option("--algorithm", solve_opt.algorithm, "alg1 (donation loop) | alg2 (improvement driver)");
    solve->add_option("--seed-method", solve_opt.seed_method, "oracle | local-search | file");
    solve->add_option("--seed-file", solve_opt.seed_file, "allocation file (seed-method file)");
    solve->add_option("--delta", solve_delta, "per-step welfare gain parameter (alg2)");
    solve->add_flag("--trace", solve_opt.trace, "embed the round trace; print a readable one to stderr");
    solve->add_option("--oracle-cap", solve_opt.oracle_cap, "enumeration ceiling for oracle calls");
    solve->add_option("--out", solve_opt.out, "report file path (default: stdout)");

    std::string verify_instance, verify_allocation;
    efx::VerifyOptions verify_opt;
    std::string verify_eps;
    CLI::App* verify = app.add_subcommand("verify", "Run checkers against an allocation");
    verify->add_option("instance", verify_instance, "instance file")->required();
    verify->add_option("allocation", verify_allocation, "allocation file")->required();
    verify->add_option("checks", verify_opt.checks,
                       "any of: ef ef1 efx pareto large-market ratio (default: efx)");
    verify->add_option("--eps", verify_eps, "parameter for the large-market check");
    verify->add_option("--oracle-cap", verify_opt.oracle_cap, "enumeration ceiling for oracle calls");
    verify->add_option("--out", verify_opt.out, "report file path (default: stdout)");

    try {
        solve_opt.oracle_cap = default_oracle_cap();
        verify_opt.oracle_cap = solve_opt.oracle_cap;
        try {
            app.parse(argc, argv);
        } catch (const CLI::Success& e) {
            return app.exit(e); // --help and friends
        } catch (const CLI::ParseError& e) {
            app.exit(e);
            return 2;
        }

        if (gen->parsed()) {
            gen_opt.eps = parse_optional_rational(gen_eps, "--eps");
            std::cout << efx::cmd_generate(gen_opt);
            return 0;
        }
        if (solve->parsed()) {
            solve_opt.delta = parse_optional_rational(solve_delta, "--delta");
            efx::SolveResult result = efx::cmd_solve(solve_instance, solve_opt);
            std::cerr << result.trace_text;
            if (solve_opt.out.empty()) std::cout << result.report;
            return 0;
        }
        verify_opt.eps = parse_optional_rational(verify_eps, "--eps");
        efx::VerifyResult result = efx::cmd_verify(verify_instance, verify_allocation, verify_opt);
        if (verify_opt.out.empty()) std::cout << result.report;
        return result.all_passed ? 0 : 1;
    } catch (const efx::resource_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const efx::input_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const efx::internal_error& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    }
}
