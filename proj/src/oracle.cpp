#include "efx/oracle.hpp"

#include "efx/errors.hpp"

#include <utility>

namespace efx {

namespace {

// Search-space size as a big integer so the resource error can name the exact count.
Int space_size(int radix, std::size_t positions) {
    Int total = 1;
    for (std::size_t k = 0; k < positions; ++k) total *= radix;
    return total;
}

std::uint64_t checked_total(const std::string& what, int radix, std::size_t positions,
                            std::uint64_t cap) {
    Int total = space_size(radix, positions);
    if (total > cap)
        throw resource_error(what + " needs " + total.str() + " assignments; cap is " +
                             std::to_string(cap));
    return total.convert_to<std::uint64_t>();
}

// Depth-first walk over assignment vectors digit[0..positions) in [0, radix), restricted to
// counter indices [begin, end) (digit 0 is the most significant counter position, so DFS order
// equals counter order equals lexicographic vector order). enter/leave maintain incremental
// state; leaf sees the counter index of the completed vector.
struct RangeWalk {
    int radix;
    std::size_t positions;
    std::uint64_t begin, end;
    std::vector<std::uint64_t> span; // span[d] = radix^(positions - d)

    RangeWalk(int radix, std::size_t positions, std::uint64_t begin, std::uint64_t end)
        : radix(radix), positions(positions), begin(begin), end(end), span(positions + 1, 1) {
        for (std::size_t d = positions; d-- > 0;) span[d] = span[d + 1] * radix;
    }

    template <class Enter, class Leave, class Leaf>
    void run(std::size_t depth, std::uint64_t base, Enter&& enter, Leave&& leave, Leaf&& leaf) {
        if (depth == positions) {
            leaf(base);
            return;
        }
        for (int digit = 0; digit < radix; ++digit) {
            std::uint64_t child = base + digit * span[depth + 1];
            if (child >= end || child + span[depth + 1] <= begin) continue;
            enter(depth, digit);
            run(depth + 1, child, enter, leave, leaf);
            leave(depth, digit);
        }
    }
};

void check_item_set(const Instance& inst, const Bundle& S) {
    for (std::size_t k = 0; k < S.size(); ++k) {
        if (S[k] < 0 || S[k] >= inst.m) throw input_error("item id out of range in oracle item set");
        if (k > 0 && S[k - 1] >= S[k]) throw input_error("oracle item set must be strictly increasing");
    }
}

Allocation digits_to_allocation(const Instance& inst, const Bundle& S,
                                const std::vector<int>& digit) {
    std::vector<Bundle> bundles(inst.n);
    for (std::size_t k = 0; k < S.size(); ++k)
        if (digit[k] < inst.n) bundles[digit[k]].push_back(S[k]);
    return Allocation::of_bundles(inst, std::move(bundles));
}

Rational product_of(const std::vector<Rational>& sums) {
    Rational p = 1;
    for (const Rational& s : sums) p *= s;
    return p;
}

} // namespace

OracleResult opt_bruteforce_range(const Instance& inst, const Bundle& S, std::uint64_t begin,
                                  std::uint64_t end, std::uint64_t cap) {
    inst.validate();
    check_item_set(inst, S);
    std::uint64_t total = checked_total("NW oracle", inst.n, S.size(), cap);
    if (begin > end || end > total) throw input_error("oracle range outside the assignment space");

    OracleResult result;
    result.argmax = digits_to_allocation(inst, S, std::vector<int>(S.size(), inst.n)); // all donated
    std::vector<Rational> sums(inst.n, Rational(0));
    std::vector<int> digit(S.size(), 0);
    bool have = false;

    RangeWalk walk(inst.n, S.size(), begin, end);
    walk.run(
        0, 0,
        [&](std::size_t d, int a) {
            digit[d] = a;
            sums[a] += inst.value(a, S[d]);
        },
        [&](std::size_t d, int a) { sums[a] -= inst.value(a, S[d]); },
        [&](std::uint64_t) {
            ++result.enumerated;
            Rational p = product_of(sums);
            if (!have || p > result.best_pow_n) {
                have = true;
                result.best_pow_n = p;
                result.argmax = digits_to_allocation(inst, S, digit);
            }
        });
    return result;
}

OracleResult opt_bruteforce(const Instance& inst, const Bundle& S, std::uint64_t cap) {
    std::uint64_t total = checked_total("NW oracle", inst.n, S.size(), cap);
    return opt_bruteforce_range(inst, S, 0, total, cap);
}

OracleResult best_efx_bruteforce(const Instance& inst, std::uint64_t cap) {
    inst.validate();
    std::uint64_t total = checked_total("EFX oracle", inst.n + 1, inst.m, cap);

    OracleResult result;
    result.argmax = Allocation::of_bundles(inst, std::vector<Bundle>(inst.n));
    std::vector<Rational> sums(inst.n, Rational(0));
    std::vector<int> digit(inst.m, 0);
    Bundle all_items(inst.m);
    for (int g = 0; g < inst.m; ++g) all_items[g] = g;
    bool have = false;

    RangeWalk walk(inst.n + 1, inst.m, 0, total);
    walk.run(
        0, 0,
        [&](std::size_t d, int a) {
            digit[d] = a;
            if (a < inst.n) sums[a] += inst.value(a, d);
        },
        [&](std::size_t d, int a) {
            if (a < inst.n) sums[a] -= inst.value(a, d);
        },
        [&](std::uint64_t) {
            ++result.enumerated;
            Rational p = product_of(sums);
            if (have && p <= result.best_pow_n) return; // cannot improve; skip the EFX check
            Allocation cand = digits_to_allocation(inst, all_items, digit);
            if (!check_efx(inst, cand).holds) return;
            have = true;
            result.best_pow_n = p;
            result.argmax = std::move(cand);
        });
    if (!have)
        throw internal_error("EFX oracle found no EFX assignment (the all-donated one always is)");
    return result;
}

ParetoCertificate pareto_optimal_bruteforce(const Instance& inst, const Allocation& a,
                                            std::uint64_t cap) {
    inst.validate();
    a.validate(inst);
    Bundle S = a.allocated_items();
    std::uint64_t total = checked_total("Pareto oracle", inst.n, S.size(), cap);

    std::vector<Rational> own(inst.n);
    for (int i = 0; i < inst.n; ++i) own[i] = bundle_value(inst, i, a.bundles[i]);

    ParetoCertificate cert;
    std::vector<Rational> sums(inst.n, Rational(0));
    std::vector<int> digit(S.size(), 0);

    RangeWalk walk(inst.n, S.size(), 0, total);
    walk.run(
        0, 0,
        [&](std::size_t d, int agent) {
            digit[d] = agent;
            sums[agent] += inst.value(agent, S[d]);
        },
        [&](std::size_t d, int agent) { sums[agent] -= inst.value(agent, S[d]); },
        [&](std::uint64_t) {
            if (!cert.optimal) return;
            bool strict = false;
            for (int i = 0; i < inst.n; ++i) {
                if (sums[i] < own[i]) return;
                if (sums[i] > own[i]) strict = true;
            }
            if (strict) {
                cert.optimal = false;
                cert.dominator = digits_to_allocation(inst, S, digit);
            }
        });
    return cert;
}

} // namespace efx
