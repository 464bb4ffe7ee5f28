#pragma once

#include "efx/core.hpp"
#include "efx/rational.hpp"

#include <cstdint>

namespace efx {

// Result of evaluating a large-market condition: whether it holds at the requested
// parameter, the smallest parameter at which it would hold, and the (agent, item)
// pair attaining that tightest value. `flagged` is set when empty bundles had to be
// excluded from the bundle-relative variant.
struct LargeMarketCheck {
    bool holds = false;
    Rational tightest_eps;
    int witness_agent = -1;
    int witness_item = -1;
    bool flagged = false;
};

// Adversarial family showing the cost of exact fairness: m = 2n-1 items where the
// first n-1 are unit-valued by everyone, agent i (1-based) values item 2n-i at 1-eps,
// and everything else at eps/(2n). Requires n >= 2 and 0 < eps < 1.
Instance lower_bound_instance(int n, const Rational& eps);

// Market-wide condition: every v_i(g) <= (eps/n) * v_i(all items).
// tightest_eps = n * max over (i,g) of v_i(g) / v_i(all items).
LargeMarketCheck check_large_market(const Instance& inst, const Rational& eps);

// Bundle-relative condition w.r.t. a complete allocation x: every v_i(g) <= eps * v_i(X_i)
// for g in X_i. tightest_eps = max_i max_{g in X_i} v_i(g) / v_i(X_i). Agents with empty
// bundles contribute nothing and set `flagged`.
LargeMarketCheck check_large_market_wrt(const Instance& inst, const Allocation& x,
                                        const Rational& eps);

// Parameter translation from the market-wide to the bundle-relative condition:
// eps' = eps / (1 - ((n-1)/n) * eps). Requires 0 < eps <= 1 and n >= 1.
Rational eps_convert(const Rational& eps, int n);

// SplitMix64: the standard 64-bit mixer (Steele, Lea & Flood), chosen because it is a
// tiny, well-known, portable algorithm. state starts at the seed; each call adds the
// golden-gamma constant and mixes. Bounded draws use rejection sampling so they are
// exactly uniform.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform draw from {0, ..., k-1}: rejects r >= k * floor((2^64 - 1) / k), then
    // reduces mod k. Unbiased and overflow-free.
    std::uint64_t below(std::uint64_t k);
};

// Integer valuations drawn uniformly from {1..max_value}, row-major (agents outer,
// items inner), from SplitMix64 keyed by `seed`. Deterministic across platforms.
Instance random_instance(int n, int m, int max_value, std::uint64_t seed);

// Like random_instance (values 1..20) but each agent's row is redrawn until it meets
// the market-wide condition at `eps`. eps below n/m is unsatisfiable (the largest value
// always reaches the row average) and rejected up front; a satisfiable but improbable
// eps exhausts a bounded attempt budget instead of looping forever.
Instance random_large_market_instance(int n, int m, const Rational& eps, std::uint64_t seed);

// Completes a fair partial allocation by reallocating its donated items: repeatedly
// eliminate envy cycles by rotating bundles along the cycle, then hand the lowest-id
// remaining item to the lowest-index agent nobody envies. The result allocates every
// item and passes check_ef1.
Allocation ef1_complete(const Instance& inst, const Allocation& y);

} // namespace efx
