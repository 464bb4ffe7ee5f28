#include "efx/core.hpp"

#include "efx/errors.hpp"

#include <algorithm>
#include <iterator>

namespace efx {

void Instance::validate() const {
    if (n < 1) throw input_error("instance needs at least one agent");
    if (m < 0) throw input_error("negative item count");
    if (static_cast<int>(values.size()) != n)
        throw input_error("valuation matrix must have exactly n rows");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(values[i].size()) != m)
            throw input_error("valuation row " + std::to_string(i) + " must have exactly m entries");
        for (int g = 0; g < m; ++g)
            if (values[i][g] <= 0)
                throw input_error("valuations[" + std::to_string(i) + "][" + std::to_string(g) +
                                  "]: value must be strictly positive");
    }
}

namespace {

void validate_bundle(const Instance& inst, const Bundle& b) {
    for (std::size_t k = 0; k < b.size(); ++k) {
        if (b[k] < 0 || b[k] >= inst.m)
            throw input_error("item id " + std::to_string(b[k]) + " out of range [0, " +
                              std::to_string(inst.m) + ")");
        if (k > 0 && b[k - 1] >= b[k])
            throw input_error("bundle items must be strictly increasing");
    }
}

} // namespace

Allocation Allocation::of_bundles(const Instance& inst, std::vector<Bundle> bundles) {
    Allocation a;
    a.bundles = std::move(bundles);
    std::vector<char> held(inst.m, 0);
    for (const Bundle& b : a.bundles) {
        validate_bundle(inst, b);
        for (int g : b) {
            if (held[g]) throw input_error("item " + std::to_string(g) + " appears in two bundles");
            held[g] = 1;
        }
    }
    if (static_cast<int>(a.bundles.size()) != inst.n)
        throw input_error("allocation must have exactly one bundle per agent");
    for (int g = 0; g < inst.m; ++g)
        if (!held[g]) a.donated.push_back(g);
    return a;
}

Bundle Allocation::allocated_items() const {
    Bundle all;
    for (const Bundle& b : bundles) all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    return all;
}

void Allocation::validate(const Instance& inst) const {
    Allocation rebuilt = of_bundles(inst, bundles);
    validate_bundle(inst, donated);
    if (rebuilt.donated != donated)
        throw input_error("donated set is not the complement of the allocated items");
}

bool bundle_contains(const Bundle& b, int item) {
    return std::binary_search(b.begin(), b.end(), item);
}

Bundle bundle_union(const Bundle& a, const Bundle& b) {
    Bundle out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Bundle bundle_minus(const Bundle& a, const Bundle& b) {
    Bundle out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Bundle bundle_without(const Bundle& b, int item) {
    Bundle out;
    out.reserve(b.size());
    for (int g : b)
        if (g != item) out.push_back(g);
    return out;
}

Rational bundle_value(const Instance& inst, int agent, const Bundle& b) {
    if (agent < 0 || agent >= inst.n) throw input_error("agent id out of range");
    validate_bundle(inst, b);
    Rational sum = 0;
    for (int g : b) sum += inst.value(agent, g);
    return sum;
}

Rational nw_pow_n(const Instance& inst, const Allocation& a) {
    Rational product = 1;
    for (int i = 0; i < inst.n; ++i) product *= bundle_value(inst, i, a.bundles[i]);
    return product;
}

namespace {

// max over g in `envied` of v_i(envied \ {g}); 0 when the bundle is empty. Equals
// v_i(envied) minus i's cheapest item in it.
Rational efx_threshold(const Instance& inst, int agent, const Bundle& envied) {
    if (envied.empty()) return 0;
    Rational total = bundle_value(inst, agent, envied);
    Rational cheapest = inst.value(agent, envied[0]);
    for (int g : envied) cheapest = std::min(cheapest, inst.value(agent, g));
    return total - cheapest;
}

// min over g in `envied` of v_i(envied \ {g}); 0 when empty. Equals total minus i's
// most valuable item in it.
Rational ef1_threshold(const Instance& inst, int agent, const Bundle& envied) {
    if (envied.empty()) return 0;
    Rational total = bundle_value(inst, agent, envied);
    Rational dearest = inst.value(agent, envied[0]);
    for (int g : envied) dearest = std::max(dearest, inst.value(agent, g));
    return total - dearest;
}

} // namespace

FairnessVerdict check_ef(const Instance& inst, const Allocation& a) {
    for (int i = 0; i < inst.n; ++i) {
        Rational own = bundle_value(inst, i, a.bundles[i]);
        for (int j = 0; j < inst.n; ++j) {
            if (i == j) continue;
            if (own < bundle_value(inst, i, a.bundles[j])) return {false, i, j, std::nullopt};
        }
    }
    return {};
}

FairnessVerdict check_ef1(const Instance& inst, const Allocation& a) {
    for (int i = 0; i < inst.n; ++i) {
        Rational own = bundle_value(inst, i, a.bundles[i]);
        for (int j = 0; j < inst.n; ++j) {
            if (i == j) continue;
            if (own < ef1_threshold(inst, i, a.bundles[j])) {
                // When EF1 fails, removing *any* single item leaves envy; the lexicographically
                // first witness item is simply the lowest id in the envied bundle.
                return {false, i, j, a.bundles[j].front()};
            }
        }
    }
    return {};
}

FairnessVerdict check_efx(const Instance& inst, const Allocation& a) {
    for (int i = 0; i < inst.n; ++i) {
        Rational own = bundle_value(inst, i, a.bundles[i]);
        for (int j = 0; j < inst.n; ++j) {
            if (i == j) continue;
            const Bundle& other = a.bundles[j];
            if (own >= efx_threshold(inst, i, other)) continue;
            Rational total = bundle_value(inst, i, other);
            for (int g : other)
                if (own < total - inst.value(i, g)) return {false, i, j, g};
        }
    }
    return {};
}

bool pareto_dominates(const Instance& inst, const Allocation& a, const Allocation& b) {
    a.validate(inst);
    b.validate(inst);
    bool strict = false;
    for (int i = 0; i < inst.n; ++i) {
        Rational va = bundle_value(inst, i, a.bundles[i]);
        Rational vb = bundle_value(inst, i, b.bundles[i]);
        if (va < vb) return false;
        if (va > vb) strict = true;
    }
    return strict;
}

Rational alpha_pow_n(const Instance& inst, const Allocation& a, const Rational& opt_pow_n) {
    Rational nw = nw_pow_n(inst, a);
    if (nw == 0) throw input_error("alpha_pow_n is undefined for an allocation of zero Nash welfare");
    return opt_pow_n / nw;
}

} // namespace efx
