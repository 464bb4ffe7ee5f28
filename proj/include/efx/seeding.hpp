#pragma once

#include "efx/core.hpp"
#include "efx/rational.hpp"

#include <string>

namespace efx {

// A complete input allocation for the donation/improvement pipelines, together with
// its welfare power and a tag saying how it was produced.
struct SeedReport {
    Allocation allocation;
    Rational pow_n;      // nw_pow_n(allocation)
    std::string method;  // "oracle" | "round-robin" | "local-search"
    long long moves = 0; // accepted improvement steps (local search only)
};

// Draft seed: agents 0..n-1 take turns (cycling) picking their most-valued remaining
// item; ties go to the lowest item id.
SeedReport round_robin_seed(const Instance& inst);

// First-improvement hill-climb from `start` (must be complete) over two neighborhoods:
// move one item to another agent, or swap two items between agents. Any strict increase
// of nw_pow_n is accepted and the scan restarts; both scans run in lexicographic order,
// so the result is deterministic. Terminates because the objective strictly increases
// over a finite space.
SeedReport local_search_seed(const Instance& inst, const Allocation& start);

} // namespace efx
