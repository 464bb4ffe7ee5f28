#include "efx/alg1.hpp"

#include "alg_internal.hpp"
#include "efx/errors.hpp"

#include <utility>

namespace efx {

namespace internal {

std::vector<int> touched_list(const std::vector<char>& touched) {
    std::vector<int> out;
    for (int j = 0; j < static_cast<int>(touched.size()); ++j)
        if (touched[j]) out.push_back(j);
    return out;
}

// Edge-persistence checks applied when round t+1's graph is built after round t removed an item
// from `removed_slot`: every old edge not incident to that slot must survive, and the remover
// must now have an edge to the slot it shrank.
void assert_edge_persistence(const FeasibilityGraph& before, const FeasibilityGraph& after,
                             int removing_agent, int removed_slot) {
    for (int i = 0; i < before.n; ++i)
        for (int j = 0; j < before.n; ++j)
            if (j != removed_slot && before.has_edge(i, j) && !after.has_edge(i, j))
                throw internal_error("edge (" + std::to_string(i) + "," + std::to_string(j) +
                                     ") vanished although its slot lost no item");
    if (!after.has_edge(removing_agent, removed_slot))
        throw internal_error("removing agent " + std::to_string(removing_agent) +
                             " has no edge to its shrunk robust-demand slot " +
                             std::to_string(removed_slot));
}

Allocation matched_allocation(const Instance& inst, const WorkingBundles& z, const Matching& m) {
    if (m.size() != inst.n) throw internal_error("matched_allocation needs a perfect matching");
    std::vector<Bundle> bundles(inst.n);
    for (int i = 0; i < inst.n; ++i) bundles[i] = z.bundles[m.agent_to_slot[i]];
    return Allocation::of_bundles(inst, std::move(bundles));
}

void assert_untouched_slot(const WorkingBundles& z) {
    for (char t : z.touched)
        if (!t) return;
    throw internal_error("every bundle was touched; one untouched bundle is guaranteed");
}

} // namespace internal

Alg1Result run_alg1(const Instance& inst, const Allocation& x, bool assert_optimal,
                    std::uint64_t oracle_cap) {
    inst.validate();
    x.validate(inst);
    if (!x.complete()) throw input_error("the donation loop needs a complete input allocation");

    Rational input_pow = nw_pow_n(inst, x);
    if (assert_optimal) {
        Bundle all(inst.m);
        for (int g = 0; g < inst.m; ++g) all[g] = g;
        OracleResult opt = opt_bruteforce(inst, all, oracle_cap);
        if (opt.best_pow_n != input_pow)
            throw input_error("input allocation is not Nash-welfare optimal: its welfare power is " +
                              rational_str(input_pow) + ", the optimum is " +
                              rational_str(opt.best_pow_n));
    }

    Alg1Result result;
    WorkingBundles z = WorkingBundles::start_from(inst, x);
    Matching final_matching(inst.n);
    FeasibilityGraph prev_graph;
    int prev_agent = -1, prev_slot = -1;

    for (int round = 1;; ++round) {
        if (round > inst.m + 1)
            throw internal_error("donation loop exceeded m+1 rounds; it must terminate by then");

        FeasibilityGraph g = build_graph(inst, z);
        if (round > 1)
            internal::assert_edge_persistence(prev_graph, g, prev_agent, prev_slot);

        Matching m;
        try {
            m = priority_matching(g, z.touched);
        } catch (const touched_coverage_error& e) {
            throw internal_error(std::string("matching existence guarantee failed in round ") +
                                 std::to_string(round) + ": " + e.what());
        }

        RoundRecord rec;
        rec.round = round;
        rec.edge_count = g.edge_count;
        rec.touched_slots = internal::touched_list(z.touched);
        rec.matching = m.pairs();

        if (m.size() == inst.n) {
            result.trace.rounds.push_back(std::move(rec));
            result.rounds = round;
            final_matching = m;
            break;
        }

        int demander = 0;
        while (m.agent_to_slot[demander] >= 0) ++demander; // lowest-index unmatched agent
        auto [slot, item] = robust_demand(inst, z, demander);
        z.remove_item(slot, item);

        rec.removed = true;
        rec.removing_agent = demander;
        rec.from_slot = slot;
        rec.removed_item = item;
        result.trace.rounds.push_back(std::move(rec));

        prev_graph = std::move(g);
        prev_agent = demander;
        prev_slot = slot;
    }

    internal::assert_untouched_slot(z);
    result.output = internal::matched_allocation(inst, z, final_matching);
    if (!check_efx(inst, result.output).holds)
        throw internal_error("donation loop returned a non-EFX allocation");

    result.final_matching_identity = final_matching.is_identity(inst.n);
    result.subset_of_input = true;
    result.half_value_per_agent = true;
    result.some_agent_not_worse = false;
    for (int i = 0; i < inst.n; ++i) {
        if (!bundle_minus(result.output.bundles[i], x.bundles[i]).empty())
            result.subset_of_input = false;
        Rational out_value = bundle_value(inst, i, result.output.bundles[i]);
        Rational in_value = bundle_value(inst, i, x.bundles[i]);
        if (2 * out_value < in_value) result.half_value_per_agent = false;
        if (out_value >= in_value) result.some_agent_not_worse = true;
    }

    // These are theorems for Nash-optimal inputs with a positive optimum (guaranteed once
    // m >= n). With fewer items than agents every allocation has welfare power 0, so
    // "optimal" carries no structure and e.g. the half-value bound genuinely fails.
    if (assert_optimal && input_pow > 0) {
        if (!result.final_matching_identity)
            throw internal_error("final matching is not the identity on an optimal input");
        if (!result.subset_of_input)
            throw internal_error("output bundle escapes its input bundle on an optimal input");
        if (!result.half_value_per_agent)
            throw internal_error("an agent kept less than half her input value on an optimal input");
        if (!result.some_agent_not_worse)
            throw internal_error("every agent lost value on an optimal input");
    }
    return result;
}

} // namespace efx
