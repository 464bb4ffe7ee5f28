#pragma once

#include "efx/core.hpp"

#include <cstdint>
#include <optional>

namespace efx {

// Default ceiling on the number of assignments an oracle call may enumerate. The CLI overrides
// it via --oracle-cap or the EFX_ORACLE_CAP environment variable.
inline constexpr std::uint64_t kDefaultOracleCap = 100'000'000;

struct OracleResult {
    Rational best_pow_n = -1; // -1 = no candidate examined (only possible for empty ranges)
    Allocation argmax;
    std::uint64_t enumerated = 0;
};

// Exact maximum of nw_pow_n over all n^|S| complete assignments of the items of S (items outside
// S are donated). Ties are broken by the lexicographically smallest assignment vector, where the
// vector lists the receiving agent of each item of S in ascending item order and the counter's
// last digit moves fastest. Throws resource_error (naming the required count) when n^|S| > cap.
OracleResult opt_bruteforce(const Instance& inst, const Bundle& S,
                            std::uint64_t cap = kDefaultOracleCap);

// Range form of the same enumeration, covering assignment-counter indices [begin, end). Disjoint
// ranges may be evaluated independently and combined by (best_pow_n, assignment vector)
// lexicographic order; the combination equals the sequential result. Used by opt_bruteforce with
// the full range and by tests exercising the partitionability contract.
OracleResult opt_bruteforce_range(const Instance& inst, const Bundle& S, std::uint64_t begin,
                                  std::uint64_t end, std::uint64_t cap = kDefaultOracleCap);

// Exact maximum of nw_pow_n over all (n+1)^m partial assignments (each item to an agent or
// donated, digit n = donated) that pass check_efx. Same tie-break and cap conventions.
OracleResult best_efx_bruteforce(const Instance& inst, std::uint64_t cap = kDefaultOracleCap);

struct ParetoCertificate {
    bool optimal = true;
    std::optional<Allocation> dominator; // first dominator in enumeration order when not optimal
};

// True iff no allocation of the same allocated set value-dominates `a`; otherwise returns the
// first dominating allocation found. Throws resource_error when n^|allocated| > cap.
ParetoCertificate pareto_optimal_bruteforce(const Instance& inst, const Allocation& a,
                                            std::uint64_t cap = kDefaultOracleCap);

} // namespace efx
