#include "efx/seeding.hpp"

#include "efx/errors.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace efx {

SeedReport round_robin_seed(const Instance& inst) {
    inst.validate();
    std::vector<Bundle> bundles(inst.n);
    std::vector<char> taken(inst.m, 0);
    for (int turn = 0; turn < inst.m; ++turn) {
        int agent = turn % inst.n;
        int pick = -1;
        for (int g = 0; g < inst.m; ++g) {
            if (taken[g]) continue;
            if (pick < 0 || inst.value(agent, g) > inst.value(agent, pick)) pick = g;
        }
        taken[pick] = 1;
        Bundle& b = bundles[agent];
        b.insert(std::lower_bound(b.begin(), b.end(), pick), pick);
    }
    SeedReport report;
    report.allocation = Allocation::of_bundles(inst, std::move(bundles));
    report.pow_n = nw_pow_n(inst, report.allocation);
    report.method = "round-robin";
    return report;
}

namespace {

Rational product_of(const std::vector<Rational>& vals) {
    Rational p = 1;
    for (const Rational& v : vals) p *= v;
    return p;
}

} // namespace

SeedReport local_search_seed(const Instance& inst, const Allocation& start) {
    inst.validate();
    start.validate(inst);
    if (!start.complete()) throw input_error("local search needs a complete start allocation");

    std::vector<int> owner(inst.m, -1);
    for (int i = 0; i < inst.n; ++i)
        for (int g : start.bundles[i]) owner[g] = i;
    std::vector<Rational> vals(inst.n);
    for (int i = 0; i < inst.n; ++i) vals[i] = bundle_value(inst, i, start.bundles[i]);

    Rational best = product_of(vals);
    long long moves = 0;

    bool improved = true;
    while (improved) {
        improved = false;
        // Neighborhood 1: move item g to agent a.
        for (int g = 0; g < inst.m && !improved; ++g) {
            int from = owner[g];
            for (int a = 0; a < inst.n && !improved; ++a) {
                if (a == from) continue;
                std::vector<Rational> cand = vals;
                cand[from] -= inst.value(from, g);
                cand[a] += inst.value(a, g);
                Rational p = product_of(cand);
                if (p > best) {
                    owner[g] = a;
                    vals = std::move(cand);
                    best = std::move(p);
                    ++moves;
                    improved = true;
                }
            }
        }
        // Neighborhood 2: swap items g1 and g2 between their (distinct) holders.
        for (int g1 = 0; g1 < inst.m && !improved; ++g1) {
            for (int g2 = g1 + 1; g2 < inst.m && !improved; ++g2) {
                int i1 = owner[g1], i2 = owner[g2];
                if (i1 == i2) continue;
                std::vector<Rational> cand = vals;
                cand[i1] += inst.value(i1, g2) - inst.value(i1, g1);
                cand[i2] += inst.value(i2, g1) - inst.value(i2, g2);
                Rational p = product_of(cand);
                if (p > best) {
                    owner[g1] = i2;
                    owner[g2] = i1;
                    vals = std::move(cand);
                    best = std::move(p);
                    ++moves;
                    improved = true;
                }
            }
        }
    }

    std::vector<Bundle> bundles(inst.n);
    for (int g = 0; g < inst.m; ++g) bundles[owner[g]].push_back(g); // ascending by construction
    SeedReport report;
    report.allocation = Allocation::of_bundles(inst, std::move(bundles));
    report.pow_n = std::move(best);
    report.method = "local-search";
    report.moves = moves;
    return report;
}

} // namespace efx
