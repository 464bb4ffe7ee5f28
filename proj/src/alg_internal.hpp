#pragma once

// Helpers shared by the two donation algorithms; internal to the library.

#include "efx/alg1.hpp"

namespace efx::internal {

std::vector<int> touched_list(const std::vector<char>& touched);

void assert_edge_persistence(const FeasibilityGraph& before, const FeasibilityGraph& after,
                             int removing_agent, int removed_slot);

// Y_i = Z_{M(i)} with the donated complement made explicit; requires a perfect matching.
Allocation matched_allocation(const Instance& inst, const WorkingBundles& z, const Matching& m);

void assert_untouched_slot(const WorkingBundles& z);

} // namespace efx::internal
