#pragma once

#include "efx/efx_graph.hpp"
#include "efx/oracle.hpp"

namespace efx {

// One matching swap performed inside a round (only the improvement algorithm does these).
struct SwapRecord {
    int out_agent; // lost the slot
    int in_agent;  // gained the slot
    int slot;
};

// Per-round record: the graph size, the matching as computed (before any swaps), which slots
// were touched entering the round, any swaps, and the removal that ended the round (the final
// round has none).
struct RoundRecord {
    int round = 0; // 1-based
    int edge_count = 0;
    std::vector<int> touched_slots;
    std::vector<std::pair<int, int>> matching; // sorted (agent, slot)
    std::vector<SwapRecord> swaps;
    bool removed = false;
    int removing_agent = -1;
    int from_slot = -1;
    int removed_item = -1;
};

struct RunTrace {
    std::vector<RoundRecord> rounds;
};

struct Alg1Result {
    Allocation output; // Y_i = Z_{M(i)} plus the explicit donated set
    RunTrace trace;
    int rounds = 0;
    bool final_matching_identity = false;
    bool subset_of_input = false;     // Y_i ⊆ X_i for every agent
    bool half_value_per_agent = false;    // 2·v_i(Y_i) >= v_i(X_i) for every agent
    bool some_agent_not_worse = false;    // v_i(Y_i) >= v_i(X_i) for at least one agent
};

// Donation loop: starting from a complete allocation x, repeatedly compute the EFX feasibility
// graph and a priority matching; while the matching is not perfect, the lowest-index unmatched
// agent's robust-demand bundle loses that agent's least-valued item. Returns the matched bundles
// as an EFX allocation.
//
// The guarantees conditional on x maximizing Nash welfare (identity final matching, per-agent
// half-value bound, one agent not worse off) are recorded as flags; with assert_optimal set,
// optimality is first certified via opt_bruteforce (within oracle_cap) and those flags are then
// enforced as hard errors. Structural guarantees (EFX output, touched slots always coverable,
// edge persistence across removals, an untouched bundle at the end, at most m+1 rounds) hold for
// any complete input and are always enforced.
Alg1Result run_alg1(const Instance& inst, const Allocation& x, bool assert_optimal = false,
                    std::uint64_t oracle_cap = kDefaultOracleCap);

} // namespace efx
