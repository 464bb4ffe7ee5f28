#include "efx/efx_graph.hpp"

#include "efx/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace efx {

WorkingBundles WorkingBundles::start_from(const Instance& inst, const Allocation& x) {
    x.validate(inst);
    WorkingBundles z;
    z.bundles = x.bundles;
    z.touched.assign(inst.n, 0);
    z.origin = x;
    z.removed.assign(inst.n, {});
    return z;
}

void WorkingBundles::remove_item(int slot, int item) {
    if (slot < 0 || slot >= static_cast<int>(bundles.size()))
        throw input_error("slot out of range");
    Bundle& b = bundles[slot];
    auto it = std::lower_bound(b.begin(), b.end(), item);
    if (it == b.end() || *it != item)
        throw input_error("item " + std::to_string(item) + " not present in slot " +
                          std::to_string(slot));
    b.erase(it);
    touched[slot] = 1;
    removed[slot].push_back(item);
}

int WorkingBundles::total_items() const {
    int count = 0;
    for (const Bundle& b : bundles) count += static_cast<int>(b.size());
    return count;
}

void WorkingBundles::validate(const Instance& inst) const {
    origin.validate(inst);
    if (static_cast<int>(bundles.size()) != inst.n || static_cast<int>(touched.size()) != inst.n ||
        static_cast<int>(removed.size()) != inst.n)
        throw input_error("working bundles must have one slot per agent");
    for (int i = 0; i < inst.n; ++i) {
        Bundle gone = removed[i];
        std::sort(gone.begin(), gone.end());
        if (bundle_union(bundles[i], gone) != origin.bundles[i] ||
            !bundle_minus(bundles[i], origin.bundles[i]).empty())
            throw input_error("slot " + std::to_string(i) +
                              " is not origin bundle minus its removed items");
        bool is_touched = !removed[i].empty();
        if (static_cast<bool>(touched[i]) != is_touched)
            throw input_error("touched flag inconsistent on slot " + std::to_string(i));
    }
}

int Matching::size() const {
    int count = 0;
    for (int s : agent_to_slot)
        if (s >= 0) ++count;
    return count;
}

void Matching::add(int agent, int slot) {
    if (agent_to_slot[agent] >= 0 || slot_to_agent[slot] >= 0)
        throw input_error("matching endpoint already used");
    agent_to_slot[agent] = slot;
    slot_to_agent[slot] = agent;
}

void Matching::drop(int agent) {
    int slot = agent_to_slot[agent];
    if (slot < 0) throw input_error("agent not matched");
    agent_to_slot[agent] = -1;
    slot_to_agent[slot] = -1;
}

bool Matching::is_identity(int n) const {
    for (int i = 0; i < n; ++i)
        if (agent_to_slot[i] != i) return false;
    return true;
}

std::vector<std::pair<int, int>> Matching::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < static_cast<int>(agent_to_slot.size()); ++i)
        if (agent_to_slot[i] >= 0) out.emplace_back(i, agent_to_slot[i]);
    return out;
}

namespace {

// max_{g in b} v_i(b \ {g}), i.e. the bundle value minus the agent's cheapest item; 0 if empty.
Rational drop_cheapest_value(const Instance& inst, int agent, const Bundle& b) {
    if (b.empty()) return 0;
    Rational total = 0;
    Rational cheapest = inst.value(agent, b[0]);
    for (int g : b) {
        total += inst.value(agent, g);
        cheapest = std::min(cheapest, inst.value(agent, g));
    }
    return total - cheapest;
}

// The EFX threshold of an agent: the largest drop_cheapest_value over all current bundles.
Rational agent_threshold(const Instance& inst, const WorkingBundles& z, int agent) {
    Rational best = 0;
    for (const Bundle& b : z.bundles) best = std::max(best, drop_cheapest_value(inst, agent, b));
    return best;
}

} // namespace

bool efx_feasible(const Instance& inst, const WorkingBundles& z, int agent, int slot) {
    if (agent < 0 || agent >= inst.n || slot < 0 || slot >= inst.n)
        throw input_error("agent or slot id out of range");
    return bundle_value(inst, agent, z.bundles[slot]) >= agent_threshold(inst, z, agent);
}

FeasibilityGraph build_graph(const Instance& inst, const WorkingBundles& z) {
    FeasibilityGraph g;
    g.n = inst.n;
    g.adj.assign(inst.n, std::vector<char>(inst.n, 0));
    for (int i = 0; i < inst.n; ++i) {
        Rational threshold = agent_threshold(inst, z, i);
        Rational own = bundle_value(inst, i, z.bundles[i]);
        for (int j = 0; j < inst.n; ++j) {
            Rational vj = (i == j) ? own : bundle_value(inst, i, z.bundles[j]);
            if (vj < threshold) continue;
            if (i != j && vj <= own) continue;
            g.adj[i][j] = 1;
            ++g.edge_count;
        }
    }
    return g;
}

std::pair<int, int> robust_demand(const Instance& inst, const WorkingBundles& z, int agent) {
    int best_slot = -1;
    Rational best_score;
    for (int j = 0; j < inst.n; ++j) {
        if (z.bundles[j].empty()) continue;
        Rational score = drop_cheapest_value(inst, agent, z.bundles[j]);
        if (best_slot < 0 || score > best_score) {
            best_slot = j;
            best_score = score;
        }
    }
    if (best_slot < 0) throw input_error("robust demand undefined: every bundle is empty");
    const Bundle& b = z.bundles[best_slot];
    int cheapest = b[0];
    for (int g : b)
        if (inst.value(agent, g) < inst.value(agent, cheapest)) cheapest = g;
    return {best_slot, cheapest};
}

namespace {

// Maximum-weight perfect assignment on a k×k matrix (Hungarian algorithm with potentials,
// run on negated weights). The zero-padded matrix always admits a perfect assignment, with
// zero-weight cells meaning "leave unmatched".
std::int64_t assignment_max(const std::vector<std::vector<std::int64_t>>& w) {
    int k = static_cast<int>(w.size());
    if (k == 0) return 0;
    const std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> u(k + 1, 0), v(k + 1, 0);
    std::vector<int> match_of_col(k + 1, 0), way(k + 1, 0);
    for (int i = 1; i <= k; ++i) {
        match_of_col[0] = i;
        int j0 = 0;
        std::vector<std::int64_t> minv(k + 1, kInf);
        std::vector<char> used(k + 1, 0);
        do {
            used[j0] = 1;
            int i0 = match_of_col[j0], j1 = 0;
            std::int64_t delta = kInf;
            for (int j = 1; j <= k; ++j) {
                if (used[j]) continue;
                std::int64_t cur = -w[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= k; ++j) {
                if (used[j]) {
                    u[match_of_col[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match_of_col[j0] != 0);
        do {
            int j1 = way[j0];
            match_of_col[j0] = match_of_col[j1];
            j0 = j1;
        } while (j0);
    }
    std::int64_t total = 0;
    for (int j = 1; j <= k; ++j) total += w[match_of_col[j] - 1][j - 1];
    return total;
}

} // namespace

Matching priority_matching(const FeasibilityGraph& g, const std::vector<char>& touched) {
    int n = g.n;
    Matching m(n);
    if (n == 0) return m;
    if (static_cast<int>(touched.size()) != n)
        throw input_error("touched flags must cover every slot");
    if (n > 4000) throw input_error("priority matching weight encoding needs n <= 4000");

    // Padded weights: 0 for a non-edge means "leave this agent/slot effectively unmatched".
    std::int64_t n2 = static_cast<std::int64_t>(n) * n;
    std::int64_t n4 = n2 * n2;
    std::vector<std::vector<std::int64_t>> weight(n, std::vector<std::int64_t>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (g.has_edge(i, j)) weight[i][j] = 1 + (i == j ? n2 : 0) + (touched[j] ? n4 : 0);

    // Max assignment weight with the rows/cols used by forced pairs deleted.
    std::vector<char> agent_used(n, 0), slot_used(n, 0);
    auto residual_max = [&]() {
        std::vector<int> rows, cols;
        for (int i = 0; i < n; ++i)
            if (!agent_used[i]) rows.push_back(i);
        for (int j = 0; j < n; ++j)
            if (!slot_used[j]) cols.push_back(j);
        std::vector<std::vector<std::int64_t>> sub(rows.size(),
                                                   std::vector<std::int64_t>(cols.size()));
        for (std::size_t a = 0; a < rows.size(); ++a)
            for (std::size_t b = 0; b < cols.size(); ++b) sub[a][b] = weight[rows[a]][cols[b]];
        return assignment_max(sub);
    };

    std::int64_t best = residual_max();
    std::int64_t forced_weight = 0;
    // Greedy lexicographic forcing: commit each edge (in (agent, slot) order) that still allows
    // total weight `best`; the committed set is the unique weight-optimal, lex-smallest matching.
    for (int i = 0; i < n; ++i) {
        if (agent_used[i]) continue;
        for (int j = 0; j < n; ++j) {
            if (slot_used[j] || weight[i][j] == 0) continue;
            agent_used[i] = 1;
            slot_used[j] = 1;
            if (forced_weight + weight[i][j] + residual_max() == best) {
                forced_weight += weight[i][j];
                m.add(i, j);
                break;
            }
            agent_used[i] = 0;
            slot_used[j] = 0;
        }
    }

    for (int j = 0; j < n; ++j)
        if (touched[j] && m.slot_to_agent[j] < 0)
            throw touched_coverage_error("no matching covers touched slot " + std::to_string(j));
    return m;
}

} // namespace efx
