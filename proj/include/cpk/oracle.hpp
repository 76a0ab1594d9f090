#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <climits>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "cpk/check.hpp"
#include "cpk/instances.hpp"
#include "cpk/tree.hpp"

namespace cpk {

struct ExactResult {
    long long optimum = 0;
    std::vector<int> order;                    // witness ordering (tournament, betweenness)
    RootedBinaryTree tree;                     // witness tree (triplets)
    std::vector<std::array<int, 2>> reversed;  // arcs (u, v) whose u -> v gets reversed
    std::vector<std::array<int, 3>> edits;     // triples rewritten by the witness
};

namespace detail {

inline std::vector<std::array<int, 3>> triples_by_index(int n) {
    std::vector<std::array<int, 3>> out(static_cast<std::size_t>(triples_of(n)));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) out[triple_index(a, b, c)] = {a, b, c};
    return out;
}

inline std::vector<std::uint8_t> triple_profile(const DenseTripletSet& r) {
    int n = r.size();
    std::vector<std::uint8_t> prof(static_cast<std::size_t>(triples_of(n)));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                int w = r.chosen(a, b, c);
                prof[triple_index(a, b, c)] = static_cast<std::uint8_t>(w == a ? 0 : (w == b ? 1 : 2));
            }
    return prof;
}

inline std::vector<std::uint8_t> triple_profile(const BetweennessSet& b) {
    int n = b.size();
    std::vector<std::uint8_t> prof(static_cast<std::size_t>(triples_of(n)));
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            for (int z = y + 1; z < n; ++z) {
                int w = b.middle(x, y, z);
                prof[triple_index(x, y, z)] = static_cast<std::uint8_t>(w == x ? 0 : (w == y ? 1 : 2));
            }
    return prof;
}

// Rebuild a tree from its insertion code: code[i] is the node the leaf i+1
// was hung above, or -1 for a new root.
inline RootedBinaryTree tree_from_code(int n, const std::vector<std::int8_t>& code) {
    RootedBinaryTree t;
    t.set_root(t.add_leaf(0));
    for (int next = 1; next < n; ++next) {
        int c = code[static_cast<std::size_t>(next) - 1];
        int leaf = t.add_leaf(next);
        if (c < 0)
            t.insert_leaf_above_root(leaf);
        else
            t.insert_leaf_on_edge(leaf, c);
    }
    return t;
}

}  // namespace detail

// Every rooted binary tree over leaves 0..n-1, as an isolated-leaf profile per
// 3-subset plus the insertion code that rebuilds the tree.
struct TreeTable {
    int n = 0;
    std::vector<std::array<int, 3>> triples;        // triple index -> (a, b, c)
    std::vector<std::vector<std::uint8_t>> profile;  // per tree
    std::vector<std::vector<std::int8_t>> code;      // per tree
};

namespace detail {

inline void tree_table_rec(const RootedBinaryTree& t, int next, int n, std::vector<std::int8_t>& code,
                           TreeTable& out) {
    if (next == n) {
        std::vector<std::uint8_t> prof(static_cast<std::size_t>(triples_of(n)));
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c) {
                    int w = t.isolated_label(a, b, c);
                    prof[triple_index(a, b, c)] =
                        static_cast<std::uint8_t>(w == a ? 0 : (w == b ? 1 : 2));
                }
        out.profile.push_back(std::move(prof));
        out.code.push_back(code);
        return;
    }
    int m = t.node_count();
    for (int v = -1; v < m; ++v) {
        if (v == t.root()) continue;
        RootedBinaryTree s = t;
        int leaf = s.add_leaf(next);
        if (v < 0)
            s.insert_leaf_above_root(leaf);
        else
            s.insert_leaf_on_edge(leaf, v);
        code.push_back(static_cast<std::int8_t>(v));
        tree_table_rec(s, next + 1, n, code, out);
        code.pop_back();
    }
}

}  // namespace detail

inline const TreeTable& tree_table(int n) {
    CPK_CHECK(3 <= n && n <= 8);
    static std::mutex mu;
    static std::map<int, TreeTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        TreeTable tab;
        tab.n = n;
        tab.triples = detail::triples_by_index(n);
        RootedBinaryTree t;
        t.set_root(t.add_leaf(0));
        std::vector<std::int8_t> code;
        detail::tree_table_rec(t, 1, n, code, tab);
        it = cache.emplace(n, std::move(tab)).first;
    }
    return it->second;
}

// Every ordering of 0..n-1 up to reversal (first element before last), as a
// middle profile per 3-subset.
struct OrderTable {
    int n = 0;
    std::vector<std::array<int, 3>> triples;
    std::vector<std::vector<int>> orders;
    std::vector<std::vector<std::uint8_t>> profile;
};

inline const OrderTable& order_table(int n) {
    CPK_CHECK(3 <= n && n <= 8);
    static std::mutex mu;
    static std::map<int, OrderTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        OrderTable tab;
        tab.n = n;
        tab.triples = detail::triples_by_index(n);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<int> pos(n);
        do {
            if (perm.front() > perm.back()) continue;
            for (int i = 0; i < n; ++i) pos[perm[i]] = i;
            std::vector<std::uint8_t> prof(static_cast<std::size_t>(triples_of(n)));
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    for (int c = b + 1; c < n; ++c) {
                        int w = b;  // middle of {a,b,c} under perm
                        if ((pos[a] < pos[b]) == (pos[b] < pos[c]))
                            w = b;
                        else if ((pos[b] < pos[a]) == (pos[a] < pos[c]))
                            w = a;
                        else
                            w = c;
                        prof[detail::triple_index(a, b, c)] =
                            static_cast<std::uint8_t>(w == a ? 0 : (w == b ? 1 : 2));
                    }
            tab.orders.push_back(perm);
            tab.profile.push_back(std::move(prof));
        } while (std::next_permutation(perm.begin(), perm.end()));
        it = cache.emplace(n, std::move(tab)).first;
    }
    return it->second;
}

// Minimum number of arc reversals making the tournament transitive, by subset
// DP over orderings: dp[S] = best cost of placing S first, appending v last
// costs the arcs from v back into S.
inline ExactResult exact_fast_dp(const Tournament& t) {
    int n = t.size();
    if (n > 20) throw std::invalid_argument("exact_fast_dp: n > 20");
    ExactResult res;
    if (n == 0) return res;
    std::vector<std::uint32_t> out_mask(n, 0);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && t.arc(u, v)) out_mask[u] |= std::uint32_t{1} << v;
    std::uint32_t full = (std::uint32_t{1} << n) - 1;
    std::vector<int> dp(static_cast<std::size_t>(full) + 1, 0), last(static_cast<std::size_t>(full) + 1, -1);
    for (std::uint32_t s = 1; s <= full; ++s) {
        int best = INT_MAX, bestv = -1;
        for (int v = 0; v < n; ++v) {
            if (!(s >> v & 1)) continue;
            std::uint32_t rest = s & ~(std::uint32_t{1} << v);
            int cost = dp[rest] + std::popcount(out_mask[v] & rest);
            if (cost < best) {
                best = cost;
                bestv = v;
            }
        }
        dp[s] = best;
        last[s] = bestv;
    }
    res.optimum = dp[full];
    for (std::uint32_t s = full; s;) {
        int v = last[s];
        res.order.push_back(v);
        s &= ~(std::uint32_t{1} << v);
    }
    std::reverse(res.order.begin(), res.order.end());
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[res.order[i]] = i;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && t.arc(u, v) && pos[v] < pos[u]) res.reversed.push_back({u, v});
    std::sort(res.reversed.begin(), res.reversed.end());
    CPK_CHECK(static_cast<long long>(res.reversed.size()) == res.optimum);
    return res;
}

// Same objective by trying every permutation; the independent cross-check.
inline ExactResult exact_fast_bruteforce(const Tournament& t) {
    int n = t.size();
    if (n > 8) throw std::invalid_argument("exact_fast_bruteforce: n > 8");
    ExactResult res;
    res.optimum = LLONG_MAX;
    std::vector<int> perm(n), pos(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        for (int i = 0; i < n; ++i) pos[perm[i]] = i;
        long long cost = 0;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                bool fwd = t.arc(u, v);
                int tail = fwd ? u : v, head = fwd ? v : u;
                if (pos[head] < pos[tail]) ++cost;
            }
        if (cost < res.optimum) {
            res.optimum = cost;
            res.order = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (n == 0) res.optimum = 0;
    std::vector<int> wpos(n);
    for (int i = 0; i < n; ++i) wpos[res.order[i]] = i;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && t.arc(u, v) && wpos[v] < wpos[u]) res.reversed.push_back({u, v});
    std::sort(res.reversed.begin(), res.reversed.end());
    CPK_CHECK(static_cast<long long>(res.reversed.size()) == res.optimum);
    return res;
}

// Minimum number of triplet rewrites to a tree-consistent set, over all
// (2n-3)!! leaf-labeled binary trees.
inline ExactResult exact_rti_enumerate(const DenseTripletSet& r) {
    int n = r.size();
    if (n > 8) throw std::invalid_argument("exact_rti_enumerate: n > 8");
    ExactResult res;
    if (n < 3) {
        if (n >= 1) {
            std::vector<int> labels(n);
            std::iota(labels.begin(), labels.end(), 0);
            res.tree = left_comb(labels);
        }
        return res;
    }
    const TreeTable& tab = tree_table(n);
    auto prof = detail::triple_profile(r);
    long long best = LLONG_MAX;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < tab.profile.size(); ++i) {
        long long d = 0;
        const auto& row = tab.profile[i];
        for (std::size_t j = 0; j < prof.size(); ++j) d += row[j] != prof[j];
        if (d < best) {
            best = d;
            best_idx = i;
        }
    }
    res.optimum = best;
    res.tree = detail::tree_from_code(n, tab.code[best_idx]);
    CPK_CHECK(detail::triple_profile(DenseTripletSet::from_tree(res.tree)) == tab.profile[best_idx]);
    for (std::size_t j = 0; j < prof.size(); ++j)
        if (tab.profile[best_idx][j] != prof[j]) res.edits.push_back(tab.triples[j]);
    std::sort(res.edits.begin(), res.edits.end());
    return res;
}

// Minimum number of middle rewrites to an ordering-consistent set, over all
// n!/2 orderings.
inline ExactResult exact_btw_enumerate(const BetweennessSet& b) {
    int n = b.size();
    if (n > 8) throw std::invalid_argument("exact_btw_enumerate: n > 8");
    ExactResult res;
    if (n < 3) {
        res.order.resize(n);
        std::iota(res.order.begin(), res.order.end(), 0);
        return res;
    }
    const OrderTable& tab = order_table(n);
    auto prof = detail::triple_profile(b);
    long long best = LLONG_MAX;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < tab.profile.size(); ++i) {
        long long d = 0;
        const auto& row = tab.profile[i];
        for (std::size_t j = 0; j < prof.size(); ++j) d += row[j] != prof[j];
        if (d < best) {
            best = d;
            best_idx = i;
        }
    }
    res.optimum = best;
    res.order = tab.orders[best_idx];
    for (std::size_t j = 0; j < prof.size(); ++j)
        if (tab.profile[best_idx][j] != prof[j]) res.edits.push_back(tab.triples[j]);
    std::sort(res.edits.begin(), res.edits.end());
    return res;
}

}  // namespace cpk
