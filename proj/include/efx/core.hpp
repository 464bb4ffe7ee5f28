#pragma once

#include "efx/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace efx {

// Agents and items are dense 0-based ids. A bundle is a strictly increasing list of item ids.
using Bundle = std::vector<int>;

// n agents, m items, strictly positive exact-rational valuations. Valuations are additive:
// an agent's value for a bundle is the sum of her item values.
struct Instance {
    int n = 0;
    int m = 0;
    std::vector<std::vector<Rational>> values; // values[i][g] = agent i's value for item g

    const Rational& value(int agent, int item) const { return values[agent][item]; }

    // Throws input_error when the shape or positivity invariants are broken.
    void validate() const;
};

// Partial allocation: one bundle per agent, pairwise disjoint; `donated` is the complement of
// their union within [0, m), kept explicit so nothing downstream re-derives it.
struct Allocation {
    std::vector<Bundle> bundles;
    Bundle donated;

    // Builds an allocation from bundles alone, computing the donated complement.
    static Allocation of_bundles(const Instance& inst, std::vector<Bundle> bundles);

    bool complete() const { return donated.empty(); }
    Bundle allocated_items() const;
    void validate(const Instance& inst) const;

    bool operator==(const Allocation& other) const = default;
};

// Result of a fairness check. When `holds` is false, (envier, envied, item) is the
// lexicographically first witness of a violated defining inequality; `item` is absent for EF.
struct FairnessVerdict {
    bool holds = true;
    int envier = -1;
    int envied = -1;
    std::optional<int> item;
};

// ---- bundle helpers (sorted-int-vector algebra used across all modules) ----

bool bundle_contains(const Bundle& b, int item);
Bundle bundle_union(const Bundle& a, const Bundle& b);
Bundle bundle_minus(const Bundle& a, const Bundle& b);
Bundle bundle_without(const Bundle& b, int item);

// Sum of agent's values over the bundle; empty bundle -> 0.
Rational bundle_value(const Instance& inst, int agent, const Bundle& b);

// Product of every agent's own-bundle value: the n-th power of the Nash welfare. All welfare
// comparisons in this project happen on this power, so no roots are ever taken.
Rational nw_pow_n(const Instance& inst, const Allocation& a);

FairnessVerdict check_ef(const Instance& inst, const Allocation& a);
FairnessVerdict check_ef1(const Instance& inst, const Allocation& a);
FairnessVerdict check_efx(const Instance& inst, const Allocation& a);

// Value-vector dominance: every agent at least as well off under `a` as under `b` and at least
// one strictly better. The two allocations may cover different item sets (the efficiency
// arguments compare an allocation against its own donated variant).
bool pareto_dominates(const Instance& inst, const Allocation& a, const Allocation& b);

// Exact ratio opt_pow_n / nw_pow_n(a). The allocation is alpha-efficient iff the returned
// ratio is <= alpha^n, so callers compare against candidate alpha^n without taking roots.
// Throws input_error when nw_pow_n(a) is zero.
Rational alpha_pow_n(const Instance& inst, const Allocation& a, const Rational& opt_pow_n);

} // namespace efx
