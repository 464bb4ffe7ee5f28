#include "efx/alg2.hpp"

#include "alg_internal.hpp"
#include "efx/errors.hpp"

#include <utility>

namespace efx {

DeltaSchedule DeltaSchedule::from_delta(const Rational& delta) {
    if (delta <= 0 || delta >= 1) throw input_error("delta must lie strictly between 0 and 1");
    DeltaSchedule s{delta, 2 * delta / (1 - delta)};
    if ((2 + 2 * s.delta1) / (2 + s.delta1) != 1 + delta)
        throw internal_error("delta1 derivation broke the (2+2d1)/(2+d1) = 1+d identity");
    return s;
}

DeltaSchedule DeltaSchedule::default_for(int n) {
    if (n < 1) throw input_error("agent count must be positive");
    return from_delta(Rational(1, 2 * n + 1));
}

AugPath augmenting_path(const Matching& m, int start_slot) {
    int n = static_cast<int>(m.slot_to_agent.size());
    if (start_slot < 0 || start_slot >= n) throw input_error("start slot out of range");
    if (m.slot_to_agent[start_slot] >= 0)
        throw input_error("augmenting path must start at an unmatched slot");
    AugPath p;
    int slot = start_slot;
    for (int guard = 0;; ++guard) {
        if (guard > n) throw internal_error("alternating walk failed to terminate within n hops");
        p.slots.push_back(slot);
        p.agents.push_back(slot); // the M0 edge pairs slot j with agent j
        int next = m.agent_to_slot[slot];
        if (next < 0) break; // reached an unmatched agent
        p.m_edges.emplace_back(slot, next);
        slot = next;
    }
    return p;
}

namespace {

// X̂: along the path every agent passes her current slot bundle down and receives the next one;
// the path start keeps its own bundle and gains, the drained slot j* loses its working bundle.
// Updates are sequential set operations so the one legal collision (j* equal to the path start)
// composes instead of overwriting.
Allocation build_improved(const Instance& inst, const Allocation& x, const WorkingBundles& z,
                          const AugPath& p, int jstar) {
    std::vector<Bundle> nb = x.bundles;
    int k = p.length();
    int j1 = p.agents.front();
    if (k == 1) {
        if (jstar == j1)
            throw internal_error("degenerate path demanded its own start bundle; impossible");
        nb[j1] = bundle_union(nb[j1], z.bundles[jstar]);
    } else {
        nb[j1] = bundle_union(nb[j1], z.bundles[p.slots[1]]);
        for (int t = 1; t + 1 < k; ++t) {
            int ji = p.agents[t];
            nb[ji] = bundle_union(bundle_minus(nb[ji], z.bundles[p.slots[t]]),
                                  z.bundles[p.slots[t + 1]]);
        }
        int jk = p.agents.back();
        nb[jk] = bundle_union(bundle_minus(nb[jk], z.bundles[p.slots[k - 1]]), z.bundles[jstar]);
    }
    nb[jstar] = bundle_minus(nb[jstar], z.bundles[jstar]);
    return Allocation::of_bundles(inst, std::move(nb));
}

} // namespace

Alg2Outcome alg2_step(const Instance& inst, const Allocation& x, const DeltaSchedule& sched) {
    inst.validate();
    x.validate(inst);
    if (!x.complete()) throw input_error("improvement step needs a complete input allocation");

    const Rational tolerance = 2 + sched.delta1;
    WorkingBundles z = WorkingBundles::start_from(inst, x);
    Alg2Outcome out;
    Matching final_matching(inst.n);
    FeasibilityGraph prev_graph;
    int prev_agent = -1, prev_slot = -1;

    for (int round = 1;; ++round) {
        if (round > inst.m + 1)
            throw internal_error("improvement step exceeded m+1 rounds; it must terminate by then");

        FeasibilityGraph g = build_graph(inst, z);
        if (round > 1) internal::assert_edge_persistence(prev_graph, g, prev_agent, prev_slot);

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
        rec.matching = m.pairs(); // as computed, before any swaps

        if (m.size() == inst.n) {
            out.trace.rounds.push_back(std::move(rec));
            out.rounds = round;
            final_matching = m;
            break;
        }

        for (int j = 0; j < inst.n; ++j)
            if (m.slot_to_agent[j] < 0 && z.touched[j])
                throw internal_error("unmatched slot " + std::to_string(j) +
                                     " is touched; touched slots are always matched");

        int j1 = 0;
        while (m.slot_to_agent[j1] >= 0) ++j1; // lowest-index unmatched slot

        int last_len = -1;
        for (int iter = 0;; ++iter) {
            if (iter > inst.n)
                throw internal_error("swap loop failed to terminate within n iterations");

            AugPath p = augmenting_path(m, j1);
            if (last_len >= 0 && p.length() >= last_len)
                throw internal_error("matching swap did not shorten the alternating path");
            last_len = p.length();

            int jk = p.endpoint();
            auto [jstar, cheapest] = robust_demand(inst, z, jk);

            int on_path_at = -1; // position of slot j* among the M-covered path slots
            for (std::size_t t = 1; t < p.slots.size(); ++t)
                if (p.slots[t] == jstar) {
                    on_path_at = static_cast<int>(t);
                    break;
                }

            if (on_path_at >= 0) {
                if (!g.has_edge(jk, jstar))
                    throw internal_error("swapped-in pair is not an edge of the feasibility graph");
                int jo = p.agents[on_path_at - 1]; // the M-edge (j°, Z_{j*}) being replaced
                m.drop(jo);
                m.add(jk, jstar);
                rec.swaps.push_back({jo, jk, jstar});
                continue;
            }

            z.remove_item(jstar, cheapest);
            rec.removed = true;
            rec.removing_agent = jk;
            rec.from_slot = jstar;
            rec.removed_item = cheapest;

            Rational kept = bundle_value(inst, jstar, z.bundles[jstar]);
            if (tolerance * kept < bundle_value(inst, jstar, x.bundles[jstar])) {
                out.improved = true;
                out.certifying_path = p;
                out.certifying_slot = jstar;
                out.output = build_improved(inst, x, z, p, jstar);
                out.trace.rounds.push_back(std::move(rec));
                out.rounds = round;
                if (!out.output.complete())
                    throw internal_error("improved allocation must allocate every item");
                if (nw_pow_n(inst, out.output) < (1 + sched.delta) * nw_pow_n(inst, x))
                    throw internal_error("improved allocation misses the (1+delta) welfare gain");
                return out;
            }
            break;
        }

        prev_graph = std::move(g);
        prev_agent = rec.removing_agent;
        prev_slot = rec.from_slot;
        out.trace.rounds.push_back(std::move(rec));
    }

    internal::assert_untouched_slot(z);
    out.output = internal::matched_allocation(inst, z, final_matching);
    out.final_matching_identity = final_matching.is_identity(inst.n);
    if (!check_efx(inst, out.output).holds)
        throw internal_error("improvement step returned a non-EFX allocation");
    for (int i = 0; i < inst.n; ++i)
        if (tolerance * bundle_value(inst, i, out.output.bundles[i]) <
            bundle_value(inst, i, x.bundles[i]))
            throw internal_error("agent " + std::to_string(i) +
                                 " fell below the (2+delta1) tolerance in the EFX outcome");
    if (rational_pow(tolerance, inst.n - 1) * nw_pow_n(inst, out.output) < nw_pow_n(inst, x))
        throw internal_error("EFX outcome misses the (2+delta1)^(n-1) welfare-power bound");
    return out;
}

Alg2DriverResult alg2_driver(const Instance& inst, const Allocation& x0,
                             std::optional<Rational> delta, int max_restarts) {
    inst.validate();
    x0.validate(inst);
    if (!x0.complete()) throw input_error("the driver needs a complete input allocation");

    DeltaSchedule sched =
        delta ? DeltaSchedule::from_delta(*delta) : DeltaSchedule::default_for(inst.n);
    int cap = max_restarts >= 0 ? max_restarts : 1000 + 100 * inst.n * inst.n;

    Alg2DriverResult result;
    Allocation x = x0;
    Rational xpow = nw_pow_n(inst, x);
    if (xpow == 0)
        throw input_error("the improvement driver needs a seed with positive welfare power; "
                          "each restart must gain a (1+delta) factor, which is vacuous at zero");
    result.pow_n_history.push_back(xpow);

    for (;;) {
        Alg2Outcome step = alg2_step(inst, x, sched);
        result.traces.push_back(std::move(step.trace));
        if (!step.improved) {
            Rational ypow = nw_pow_n(inst, step.output);
            if (rational_pow(2 + sched.delta1, inst.n - 1) * ypow < xpow)
                throw internal_error("driver output misses the welfare-power bound vs final input");
            if (xpow < result.pow_n_history.front())
                throw internal_error("welfare power decreased across restarts");
            result.output = std::move(step.output);
            result.pow_n_history.push_back(std::move(ypow));
            return result;
        }
        ++result.restarts;
        if (result.restarts > cap)
            throw internal_error("restart cap of " + std::to_string(cap) +
                                 " exceeded; improvement steps must terminate");
        Rational newpow = nw_pow_n(inst, step.output);
        if (newpow < (1 + sched.delta) * xpow)
            throw internal_error("restart did not gain the (1+delta) welfare factor");
        x = std::move(step.output);
        xpow = std::move(newpow);
        result.pow_n_history.push_back(xpow);
    }
}

} // namespace efx
