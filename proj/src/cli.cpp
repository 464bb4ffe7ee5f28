#include "efx/cli.hpp"

#include "efx/alg2.hpp"
#include "efx/errors.hpp"
#include "efx/instances.hpp"
#include "efx/io.hpp"
#include "efx/seeding.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <utility>

namespace efx {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kIndexConvention =
    "ids are 0-based in this report; human-readable trace text is 1-based";

ordered_json allocation_json(const Allocation& a) {
    ordered_json j;
    ordered_json rows = ordered_json::array();
    for (const Bundle& b : a.bundles) rows.push_back(b);
    j["bundles"] = std::move(rows);
    j["donated"] = a.donated;
    return j;
}

ordered_json verdict_json(const FairnessVerdict& v) {
    ordered_json j;
    j["holds"] = v.holds;
    if (!v.holds) {
        j["envier"] = v.envier;
        j["envied"] = v.envied;
        if (v.item) j["item"] = *v.item;
    }
    return j;
}

ordered_json trace_json(const RunTrace& trace) {
    ordered_json rounds = ordered_json::array();
    for (const RoundRecord& r : trace.rounds) {
        ordered_json jr;
        jr["round"] = r.round;
        jr["edges"] = r.edge_count;
        jr["touched_slots"] = r.touched_slots;
        ordered_json pairs = ordered_json::array();
        for (auto [a, s] : r.matching) pairs.push_back(ordered_json::array({a, s}));
        jr["matching"] = std::move(pairs);
        if (!r.swaps.empty()) {
            ordered_json swaps = ordered_json::array();
            for (const SwapRecord& s : r.swaps)
                swaps.push_back(ordered_json::array({s.out_agent, s.in_agent, s.slot}));
            jr["swaps"] = std::move(swaps);
        }
        if (r.removed) {
            ordered_json rem;
            rem["agent"] = r.removing_agent;
            rem["slot"] = r.from_slot;
            rem["item"] = r.removed_item;
            jr["removed"] = std::move(rem);
        }
        rounds.push_back(std::move(jr));
    }
    return rounds;
}

// Human-readable rendering of one execution's rounds; every id printed 1-based.
void append_trace_text(std::ostringstream& out, const RunTrace& trace) {
    for (const RoundRecord& r : trace.rounds) {
        out << "round " << r.round << ": " << r.edge_count << " edges; touched slots:";
        if (r.touched_slots.empty()) out << " none";
        for (int s : r.touched_slots) out << ' ' << (s + 1);
        out << "; matching:";
        if (r.matching.empty()) out << " empty";
        for (auto [a, s] : r.matching) out << " agent " << (a + 1) << "->slot " << (s + 1);
        out << '\n';
        for (const SwapRecord& s : r.swaps)
            out << "  swap: agent " << (s.in_agent + 1) << " takes slot " << (s.slot + 1)
                << " from agent " << (s.out_agent + 1) << '\n';
        if (r.removed)
            out << "  agent " << (r.removing_agent + 1) << " removes item " << (r.removed_item + 1)
                << " from slot " << (r.from_slot + 1) << '\n';
    }
}

void write_report(const std::string& out_path, const std::string& text) {
    if (!out_path.empty()) write_file(out_path, text);
}

} // namespace

std::string cmd_generate(const GenerateOptions& opt) {
    if (opt.out.empty()) throw input_error("generate needs --out for the instance file");
    Instance inst;
    if (opt.kind == "lower-bound") {
        if (!opt.eps) throw input_error("lower-bound generation needs --eps");
        inst = lower_bound_instance(opt.n, *opt.eps);
    } else if (opt.kind == "random") {
        inst = random_instance(opt.n, opt.m, opt.max_value, opt.rng_seed);
    } else if (opt.kind == "large-market") {
        if (!opt.eps) throw input_error("large-market generation needs --eps");
        inst = random_large_market_instance(opt.n, opt.m, *opt.eps, opt.rng_seed);
    } else {
        throw input_error("unknown generator kind: " + opt.kind +
                          " (expected lower-bound, random, or large-market)");
    }
    save_instance(inst, opt.out);
    return instance_digest(inst) + "\n";
}

SolveResult cmd_solve(const std::string& instance_path, const SolveOptions& opt) {
    if (opt.algorithm != "alg1" && opt.algorithm != "alg2")
        throw input_error("unknown algorithm: " + opt.algorithm + " (expected alg1 or alg2)");

    Instance inst = load_instance(instance_path);
    Bundle all_items(inst.m);
    for (int g = 0; g < inst.m; ++g) all_items[g] = g;

    // Seed allocation.
    SeedReport seed;
    std::optional<Rational> oracle_pow;
    if (opt.seed_method == "oracle") {
        OracleResult best = opt_bruteforce(inst, all_items, opt.oracle_cap);
        seed.allocation = best.argmax;
        seed.pow_n = best.best_pow_n;
        seed.method = "oracle";
        oracle_pow = best.best_pow_n;
    } else if (opt.seed_method == "local-search") {
        seed = local_search_seed(inst, round_robin_seed(inst).allocation);
    } else if (opt.seed_method == "file") {
        if (opt.seed_file.empty()) throw input_error("seed-method file needs --seed-file");
        Allocation x = load_allocation(inst, opt.seed_file);
        if (!x.complete()) throw input_error("seed allocation must allocate every item");
        seed.allocation = std::move(x);
        seed.pow_n = nw_pow_n(inst, seed.allocation);
        seed.method = "file";
    } else {
        throw input_error("unknown seed method: " + opt.seed_method +
                          " (expected oracle, local-search, or file)");
    }

    // Oracle optimum for the efficiency section, when the instance is small enough.
    if (!oracle_pow) {
        try {
            oracle_pow = opt_bruteforce(inst, all_items, opt.oracle_cap).best_pow_n;
        } catch (const resource_error&) {
            // Too large; the report simply omits oracle-relative fields.
        }
    }
    bool seed_certified_optimal = oracle_pow && *oracle_pow == seed.pow_n;

    ordered_json j;
    j["report"] = "solve";
    j["index_convention"] = kIndexConvention;
    j["instance_digest"] = instance_digest(inst);
    j["algorithm"] = opt.algorithm;
    j["pipeline"] = opt.seed_method + "-seed+" +
                    (opt.algorithm == "alg1" ? std::string("donation-loop")
                                             : std::string("improvement-driver"));
    {
        ordered_json js;
        js["method"] = seed.method;
        js["moves"] = seed.moves;
        js["pow_n"] = rational_str(seed.pow_n);
        js["allocation"] = allocation_json(seed.allocation);
        j["seed"] = std::move(js);
    }

    Allocation output;
    std::ostringstream trace_text;
    int rounds = 0;
    int restarts = 0;
    std::vector<RunTrace> traces;
    bool final_identity = false;
    DeltaSchedule sched{0, 0};

    if (opt.algorithm == "alg1") {
        Alg1Result r = run_alg1(inst, seed.allocation, seed.method == "oracle", opt.oracle_cap);
        output = std::move(r.output);
        rounds = r.rounds;
        final_identity = r.final_matching_identity;
        traces.push_back(std::move(r.trace));
    } else {
        sched = opt.delta ? DeltaSchedule::from_delta(*opt.delta)
                          : DeltaSchedule::default_for(inst.n);
        Alg2DriverResult r = alg2_driver(inst, seed.allocation, sched.delta);
        output = std::move(r.output);
        restarts = r.restarts;
        for (const RunTrace& t : r.traces) rounds += static_cast<int>(t.rounds.size());
        final_identity = true; // by the matched-bundle construction of the last execution
        traces = std::move(r.traces);
        j["delta"] = rational_str(sched.delta);
        j["delta1"] = rational_str(sched.delta1);
    }

    Rational out_pow = nw_pow_n(inst, output);
    bool subset_of_seed = true;
    for (int i = 0; i < inst.n; ++i)
        subset_of_seed =
            subset_of_seed && bundle_minus(output.bundles[i], seed.allocation.bundles[i]).empty();

    j["output"] = allocation_json(output);
    {
        ordered_json jp;
        jp["seed"] = rational_str(seed.pow_n);
        jp["output"] = rational_str(out_pow);
        if (oracle_pow) jp["oracle"] = rational_str(*oracle_pow);
        j["nw_pow_n"] = std::move(jp);
    }
    {
        ordered_json je;
        if (out_pow != 0) je["ratio_pow_n_vs_seed"] = rational_str(seed.pow_n / out_pow);
        if (oracle_pow && out_pow != 0)
            je["ratio_pow_n_vs_oracle"] = rational_str(alpha_pow_n(inst, output, *oracle_pow));
        if (opt.algorithm == "alg1") {
            Rational bound = rational_pow(Rational(2), inst.n - 1);
            je["bound_pow_n"] = rational_str(bound);
            if (oracle_pow) je["bound_satisfied"] = bound * out_pow >= *oracle_pow;
            je["note"] = seed_certified_optimal
                             ? "efficiency bound guaranteed: seed is an exact welfare optimum"
                             : "efficiency bound not guaranteed: seed not certified optimal";
        } else {
            Rational tolerance_power = rational_pow(2 + sched.delta1, inst.n - 1);
            if (oracle_pow && seed.pow_n != 0) {
                Rational rho_pow = *oracle_pow / seed.pow_n;
                je["rho_pow_n"] = rational_str(rho_pow);
                Rational bound = tolerance_power * rho_pow;
                je["bound_pow_n"] = rational_str(bound);
                je["bound_satisfied"] = bound * out_pow >= *oracle_pow;
            }
            je["note"] = "efficiency bound guaranteed relative to the seed: "
                         "(2+delta1)^(n-1) * output power >= seed power";
        }
        j["efficiency"] = std::move(je);
    }
    {
        ordered_json jf;
        jf["efx"] = verdict_json(check_efx(inst, output));
        jf["ef1"] = verdict_json(check_ef1(inst, output));
        jf["ef"] = verdict_json(check_ef(inst, output));
        j["fairness"] = std::move(jf);
    }
    j["subset_of_seed"] = subset_of_seed;
    j["final_matching_identity"] = final_identity;
    j["rounds"] = rounds;
    if (opt.algorithm == "alg2") j["restarts"] = restarts;

    if (opt.trace) {
        ordered_json steps = ordered_json::array();
        for (std::size_t s = 0; s < traces.size(); ++s) {
            if (traces.size() > 1) trace_text << "execution " << (s + 1) << ":\n";
            append_trace_text(trace_text, traces[s]);
            steps.push_back(trace_json(traces[s]));
        }
        trace_text << "EFX reached; donated items:";
        if (output.donated.empty()) trace_text << " none";
        for (int g : output.donated) trace_text << ' ' << (g + 1);
        trace_text << '\n';
        j["trace"] = std::move(steps);
    }

    SolveResult result;
    result.report = j.dump(2) + "\n";
    result.trace_text = trace_text.str();
    write_report(opt.out, result.report);
    return result;
}

VerifyResult cmd_verify(const std::string& instance_path, const std::string& allocation_path,
                        const VerifyOptions& opt) {
    Instance inst = load_instance(instance_path);
    Allocation a = load_allocation(inst, allocation_path);
    std::vector<std::string> checks = opt.checks;
    if (checks.empty()) checks.push_back("efx");

    ordered_json j;
    j["report"] = "verify";
    j["index_convention"] = kIndexConvention;
    j["instance_digest"] = instance_digest(inst);
    j["allocation"] = allocation_json(a);

    bool all_passed = true;
    ordered_json results = ordered_json::array();
    for (const std::string& name : checks) {
        ordered_json jc;
        jc["check"] = name;
        bool passed = false;
        if (name == "ef" || name == "ef1" || name == "efx") {
            FairnessVerdict v = name == "ef"    ? check_ef(inst, a)
                                : name == "ef1" ? check_ef1(inst, a)
                                                : check_efx(inst, a);
            passed = v.holds;
            jc["verdict"] = verdict_json(v);
        } else if (name == "pareto") {
            ParetoCertificate cert = pareto_optimal_bruteforce(inst, a, opt.oracle_cap);
            passed = cert.optimal;
            if (cert.dominator) jc["dominator"] = allocation_json(*cert.dominator);
        } else if (name == "large-market") {
            if (!opt.eps) throw input_error("the large-market check needs --eps");
            LargeMarketCheck c = check_large_market(inst, *opt.eps);
            passed = c.holds;
            jc["eps"] = rational_str(*opt.eps);
            jc["tightest_eps"] = rational_str(c.tightest_eps);
            if (c.witness_agent >= 0)
                jc["witness"] = ordered_json::array({c.witness_agent, c.witness_item});
            if (a.complete()) {
                LargeMarketCheck w = check_large_market_wrt(inst, a, *opt.eps);
                ordered_json jw;
                jw["holds"] = w.holds;
                jw["tightest_eps"] = rational_str(w.tightest_eps);
                if (w.witness_agent >= 0)
                    jw["witness"] = ordered_json::array({w.witness_agent, w.witness_item});
                if (w.flagged) jw["note"] = "empty bundles excluded from the evaluation";
                jc["bundle_relative"] = std::move(jw);
            }
        } else if (name == "ratio") {
            Bundle all_items(inst.m);
            for (int g = 0; g < inst.m; ++g) all_items[g] = g;
            Rational opt_pow = opt_bruteforce(inst, all_items, opt.oracle_cap).best_pow_n;
            Rational bound = rational_pow(Rational(2), inst.n - 1);
            jc["bound_pow_n"] = rational_str(bound);
            jc["oracle_pow_n"] = rational_str(opt_pow);
            if (nw_pow_n(inst, a) == 0) {
                passed = opt_pow == 0;
                jc["note"] = "allocation has zero welfare power";
            } else {
                Rational ratio = alpha_pow_n(inst, a, opt_pow);
                jc["ratio_pow_n"] = rational_str(ratio);
                passed = ratio <= bound;
            }
        } else {
            throw input_error("unknown check: " + name +
                              " (expected ef, ef1, efx, pareto, large-market, or ratio)");
        }
        jc["passed"] = passed;
        all_passed = all_passed && passed;
        results.push_back(std::move(jc));
    }
    j["checks"] = std::move(results);
    j["all_passed"] = all_passed;

    VerifyResult result;
    result.report = j.dump(2) + "\n";
    result.all_passed = all_passed;
    write_report(opt.out, result.report);
    return result;
}

} // namespace efx
