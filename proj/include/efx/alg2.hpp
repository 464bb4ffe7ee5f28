#pragma once

#include "efx/alg1.hpp"

#include <optional>

namespace efx {

// Alternating path in M ∪ M0 (M0 = identity pairs) from an unmatched slot to an unmatched
// agent: slot j1 -(M0)- agent j1 -(M)- slot j2 -(M0)- agent j2 - ... - agent jk.
struct AugPath {
    std::vector<int> agents;                  // j1..jk
    std::vector<int> slots;                   // j1..jk (slot indices of Z_{j1}..Z_{jk})
    std::vector<std::pair<int, int>> m_edges; // {(j1, slot j2), ..., (j_{k-1}, slot jk)}

    int endpoint() const { return agents.back(); }
    int length() const { return static_cast<int>(agents.size()); }
};

// δ and the derived δ1 = 2δ/(1−δ), which satisfy (2+2δ1)/(2+δ1) = 1+δ exactly. 1+δ is the
// welfare-power factor an improvement step must gain; 2+δ1 is the per-agent loss tolerance.
struct DeltaSchedule {
    Rational delta;
    Rational delta1;

    static DeltaSchedule from_delta(const Rational& delta); // requires 0 < δ < 1
    static DeltaSchedule default_for(int n);                // δ = 1/(2n+1), so δ1 = 1/n
};

struct Alg2Outcome {
    bool improved = false; // false: `output` is an EFX partial allocation Y
    Allocation output;     // Y, or the strictly better complete allocation X̂ when improved
    RunTrace trace;
    int rounds = 0;
    bool final_matching_identity = false;    // EFX branch only
    std::optional<AugPath> certifying_path;  // Improved branch only
    int certifying_slot = -1;                // the drained slot j* (Improved branch only)
};

// The unique alternating walk described above. Throws input_error if start_slot is matched.
AugPath augmenting_path(const Matching& m, int start_slot);

// One execution on a complete allocation x: either returns an EFX allocation Y satisfying
// (2+δ1)·v_i(Y_i) >= v_i(x_i) for every agent (hence (2+δ1)^{n-1}·nw_pow_n(Y) >= nw_pow_n(x)),
// or detects that some slot dropped below that tolerance and returns a complete allocation X̂
// with nw_pow_n(X̂) >= (1+δ)·nw_pow_n(x), built by shifting bundles along the augmenting path.
// Both inequalities are asserted exactly before returning.
Alg2Outcome alg2_step(const Instance& inst, const Allocation& x, const DeltaSchedule& sched);

struct Alg2DriverResult {
    Allocation output; // EFX
    int restarts = 0;
    std::vector<RunTrace> traces;        // one per execution
    std::vector<Rational> pow_n_history; // nw_pow_n of x0, every improved x, then of Y last
};

// Repeats alg2_step, feeding each improved allocation back in, until an EFX outcome. The cap is
// a tripwire against non-termination bugs; every improvement multiplies the welfare power by at
// least (1+δ), so the default generous cap is never reached by a correct run. The seed must have
// positive welfare power — the gain factor (and the termination argument) is vacuous at zero.
Alg2DriverResult alg2_driver(const Instance& inst, const Allocation& x0,
                             std::optional<Rational> delta = std::nullopt,
                             int max_restarts = -1);

} // namespace efx
