#pragma once

#include "efx/core.hpp"

#include <stdexcept>
#include <utility>

namespace efx {

// Thrown by priority_matching when no matching covers every touched slot. In algorithm context
// this can only mean a broken invariant upstream (the matching-existence guarantee fails), so
// the algorithms convert it into an internal_error carrying the round trace.
struct touched_coverage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The evolving bundle list Z. Slot i starts as a copy of the input bundle X_i and only ever
// shrinks; a slot that lost at least one item is "touched".
struct WorkingBundles {
    std::vector<Bundle> bundles;        // Z_0..Z_{n-1}, indexed by slot
    std::vector<char> touched;          // touched[slot]
    Allocation origin;                  // the input allocation X
    std::vector<std::vector<int>> removed; // per-slot removed item ids, in removal order

    static WorkingBundles start_from(const Instance& inst, const Allocation& x);

    // Removes one item from a slot, updating touched/removed. Throws input_error when absent.
    void remove_item(int slot, int item);

    int total_items() const;

    // Checks Z_i ⊆ X_i, touched[i] ⇔ removed[i] nonempty ⇔ Z_i ⊊ X_i, removed ∩ bundles = ∅.
    void validate(const Instance& inst) const;
};

// Bipartite agents × bundle-slots graph. An edge (i, j) means slot j's bundle passes agent i's
// EFX threshold and, off the diagonal, strictly beats agent i's own slot.
struct FeasibilityGraph {
    int n = 0;
    std::vector<std::vector<char>> adj; // adj[agent][slot]
    int edge_count = 0;

    bool has_edge(int agent, int slot) const { return adj[agent][slot] != 0; }
};

// Partial injective agent→slot assignment with both directions materialized.
struct Matching {
    std::vector<int> agent_to_slot; // -1 when unmatched
    std::vector<int> slot_to_agent; // -1 when unmatched

    explicit Matching(int n = 0) : agent_to_slot(n, -1), slot_to_agent(n, -1) {}

    int size() const;
    void add(int agent, int slot);
    void drop(int agent);
    bool is_identity(int n) const;

    // Sorted (agent, slot) pair list; the canonical form used for reports and tie-break tests.
    std::vector<std::pair<int, int>> pairs() const;
};

// True iff v_i(Z_j) >= max_k max_{g in Z_k} v_i(Z_k \ {g}); empty bundles contribute 0.
bool efx_feasible(const Instance& inst, const WorkingBundles& z, int agent, int slot);

// The full edge set: (i,j) present iff efx_feasible(i,j) and (i = j or v_i(Z_j) > v_i(Z_i)).
FeasibilityGraph build_graph(const Instance& inst, const WorkingBundles& z);

// The slot maximizing max_{c in Z_j} v_i(Z_j \ {c}) (ties: lowest slot), paired with agent i's
// least-valued item in it (ties: lowest item id). Throws input_error when every bundle is empty.
std::pair<int, int> robust_demand(const Instance& inst, const WorkingBundles& z, int agent);

// Maximum-weight matching under w(i,j) = 1 + n^2*[i=j] + n^4*[j touched]; among weight ties the
// lexicographically smallest sorted pair list. The weight scheme realizes the priority order
// (cover touched slots) ≻ (maximize identity pairs) ≻ (maximize size), since n^4 > n*n^2 + n.
// Throws touched_coverage_error when no matching covers all touched slots.
Matching priority_matching(const FeasibilityGraph& g, const std::vector<char>& touched);

} // namespace efx
