#include "efx/instances.hpp"

#include "efx/errors.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace efx {

Instance lower_bound_instance(int n, const Rational& eps) {
    if (n < 2) throw input_error("the adversarial family needs at least two agents");
    if (eps <= 0 || eps >= 1) throw input_error("eps must lie strictly between 0 and 1");
    Instance inst;
    inst.n = n;
    inst.m = 2 * n - 1;
    inst.values.assign(n, std::vector<Rational>(inst.m));
    Rational filler = eps / (2 * n);
    for (int i = 1; i <= n; ++i) {
        for (int g = 1; g <= inst.m; ++g) {
            Rational v = filler;
            if (g <= n - 1) v = 1;
            else if (g == 2 * n - i) v = 1 - eps;
            inst.values[i - 1][g - 1] = v;
        }
    }
    return inst;
}

LargeMarketCheck check_large_market(const Instance& inst, const Rational& eps) {
    inst.validate();
    LargeMarketCheck check;
    check.tightest_eps = 0;
    for (int i = 0; i < inst.n; ++i) {
        Rational total = 0;
        for (int g = 0; g < inst.m; ++g) total += inst.value(i, g);
        for (int g = 0; g < inst.m; ++g) {
            Rational ratio = inst.n * inst.value(i, g) / total;
            if (ratio > check.tightest_eps) {
                check.tightest_eps = ratio;
                check.witness_agent = i;
                check.witness_item = g;
            }
        }
    }
    check.holds = eps >= check.tightest_eps;
    return check;
}

LargeMarketCheck check_large_market_wrt(const Instance& inst, const Allocation& x,
                                        const Rational& eps) {
    inst.validate();
    x.validate(inst);
    if (!x.complete()) throw input_error("the bundle-relative condition needs a complete allocation");
    LargeMarketCheck check;
    check.tightest_eps = 0;
    for (int i = 0; i < inst.n; ++i) {
        const Bundle& b = x.bundles[i];
        if (b.empty()) {
            check.flagged = true; // nothing to bound for this agent; excluded from the evaluation
            continue;
        }
        Rational total = bundle_value(inst, i, b);
        for (int g : b) {
            Rational ratio = inst.value(i, g) / total;
            if (ratio > check.tightest_eps) {
                check.tightest_eps = ratio;
                check.witness_agent = i;
                check.witness_item = g;
            }
        }
    }
    check.holds = eps >= check.tightest_eps;
    return check;
}

Rational eps_convert(const Rational& eps, int n) {
    if (n < 1) throw input_error("agent count must be positive");
    if (eps <= 0 || eps > 1) throw input_error("eps must lie in (0, 1]");
    Rational denom = 1 - Rational(n - 1, n) * eps;
    if (denom <= 0) throw input_error("parameter translation has a non-positive denominator");
    return eps / denom;
}

std::uint64_t SplitMix64::below(std::uint64_t k) {
    if (k == 0) throw input_error("cannot draw from an empty range");
    std::uint64_t limit = (~std::uint64_t{0} / k) * k;
    for (;;) {
        std::uint64_t r = next();
        if (r < limit) return r % k;
    }
}

Instance random_instance(int n, int m, int max_value, std::uint64_t seed) {
    if (n < 1 || m < 1) throw input_error("need at least one agent and one item");
    if (max_value < 1) throw input_error("max_value must be at least 1");
    SplitMix64 rng(seed);
    Instance inst;
    inst.n = n;
    inst.m = m;
    inst.values.assign(n, std::vector<Rational>(m));
    for (int i = 0; i < n; ++i)
        for (int g = 0; g < m; ++g)
            inst.values[i][g] = 1 + static_cast<long long>(rng.below(max_value));
    return inst;
}

namespace {

constexpr int kRowMaxValue = 20;
constexpr int kMaxRowAttempts = 100000;

bool row_within(const std::vector<Rational>& row, int n, const Rational& eps) {
    Rational sum = 0, largest = 0;
    for (const Rational& v : row) {
        sum += v;
        largest = std::max(largest, v);
    }
    return n * largest <= eps * sum;
}

} // namespace

Instance random_large_market_instance(int n, int m, const Rational& eps, std::uint64_t seed) {
    if (n < 1 || m < 1) throw input_error("need at least one agent and one item");
    if (eps <= 0) throw input_error("eps must be positive");
    if (eps * m < n)
        throw input_error("eps below n/m is unsatisfiable: the largest value in a row never "
                          "drops below the row average");
    SplitMix64 rng(seed);
    Instance inst;
    inst.n = n;
    inst.m = m;
    inst.values.assign(n, std::vector<Rational>(m));
    for (int i = 0; i < n; ++i) {
        int attempts = 0;
        for (;;) {
            if (++attempts > kMaxRowAttempts)
                throw resource_error("gave up generating row " + std::to_string(i) + " after " +
                                     std::to_string(kMaxRowAttempts) +
                                     " attempts; eps is too tight for uniform draws");
            for (int g = 0; g < m; ++g)
                inst.values[i][g] = 1 + static_cast<long long>(rng.below(kRowMaxValue));
            if (row_within(inst.values[i], n, eps)) break;
        }
    }
    return inst;
}

namespace {

// Directed envy: i -> j iff i strictly prefers j's bundle to its own.
std::vector<std::vector<char>> envy_edges(const Instance& inst, const std::vector<Bundle>& bundles) {
    std::vector<std::vector<char>> adj(inst.n, std::vector<char>(inst.n, 0));
    std::vector<Rational> own(inst.n);
    for (int i = 0; i < inst.n; ++i) own[i] = bundle_value(inst, i, bundles[i]);
    for (int i = 0; i < inst.n; ++i)
        for (int j = 0; j < inst.n; ++j)
            if (i != j && bundle_value(inst, i, bundles[j]) > own[i]) adj[i][j] = 1;
    return adj;
}

// First envy cycle found by depth-first search from the lowest agent, successors in
// ascending order; empty when the graph is acyclic.
std::vector<int> find_cycle(const std::vector<std::vector<char>>& adj) {
    int n = static_cast<int>(adj.size());
    std::vector<int> color(n, 0); // 0 unseen, 1 on stack, 2 done
    std::vector<int> stack;
    std::vector<int> cycle;

    auto dfs = [&](auto&& self, int u) -> bool {
        color[u] = 1;
        stack.push_back(u);
        for (int v = 0; v < n; ++v) {
            if (!adj[u][v]) continue;
            if (color[v] == 1) {
                auto it = std::find(stack.begin(), stack.end(), v);
                cycle.assign(it, stack.end());
                return true;
            }
            if (color[v] == 0 && self(self, v)) return true;
        }
        color[u] = 2;
        stack.pop_back();
        return false;
    };

    for (int s = 0; s < n; ++s)
        if (color[s] == 0 && dfs(dfs, s)) return cycle;
    return {};
}

} // namespace

Allocation ef1_complete(const Instance& inst, const Allocation& y) {
    inst.validate();
    y.validate(inst);
    if (!check_ef1(inst, y).holds)
        throw input_error("completion expects an input allocation that already passes the "
                          "remove-one-item fairness check");

    std::vector<Bundle> bundles = y.bundles;
    Bundle pending = y.donated; // ascending; placed lowest id first

    auto eliminate_cycles = [&]() {
        for (;;) {
            auto adj = envy_edges(inst, bundles);
            std::vector<int> cycle = find_cycle(adj);
            if (cycle.empty()) return adj;
            // Rotate: every agent on the cycle takes the bundle of the agent it envies.
            std::vector<Bundle> old = bundles;
            int k = static_cast<int>(cycle.size());
            for (int t = 0; t < k; ++t) bundles[cycle[t]] = old[cycle[(t + 1) % k]];
        }
    };

    for (int item : pending) {
        auto adj = eliminate_cycles();
        int source = -1;
        for (int j = 0; j < inst.n && source < 0; ++j) {
            bool envied = false;
            for (int i = 0; i < inst.n; ++i) envied = envied || adj[i][j];
            if (!envied) source = j;
        }
        if (source < 0) throw internal_error("no envy-free-of-incoming agent after cycle removal");
        Bundle& b = bundles[source];
        b.insert(std::lower_bound(b.begin(), b.end(), item), item);
    }

    Allocation done = Allocation::of_bundles(inst, std::move(bundles));
    if (!done.complete()) throw internal_error("completion left items unallocated");
    if (!check_ef1(inst, done).holds)
        throw internal_error("completed allocation fails the remove-one-item fairness check");
    return done;
}

} // namespace efx
