#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "cpk/check.hpp"

namespace cpk {

struct BipartiteGraph {
    int left = 0, right = 0;
    std::vector<std::vector<int>> adj;  // per left vertex, ascending right ids

    BipartiteGraph() = default;
    BipartiteGraph(int l, int r) : left(l), right(r), adj(l) {}

    void add_edge(int l, int r) {
        CPK_CHECK(0 <= l && l < left && 0 <= r && r < right);
        adj[l].push_back(r);
    }

    void finish() {
        for (auto& v : adj) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
    }

    bool has_edge(int l, int r) const {
        return std::binary_search(adj[l].begin(), adj[l].end(), r);
    }
};

struct CoverAndMatching {
    std::vector<std::pair<int, int>> matching;  // (left, right)
    std::vector<int> d1;                        // cover vertices on the left
    std::vector<int> d2;                        // cover vertices on the right
    std::size_t cover_size() const { return d1.size() + d2.size(); }
};

namespace detail {

inline bool kuhn_augment(const BipartiteGraph& g, int l, std::vector<int>& match_r,
                         std::vector<char>& used) {
    for (int r : g.adj[l]) {
        if (used[r]) continue;
        used[r] = 1;
        if (match_r[r] < 0 || kuhn_augment(g, match_r[r], match_r, used)) {
            match_r[r] = l;
            return true;
        }
    }
    return false;
}

}  // namespace detail

// Maximum-cardinality matching via augmenting paths, deterministic in
// ascending vertex order.
inline std::vector<std::pair<int, int>> maximum_matching(const BipartiteGraph& g) {
    std::vector<int> match_r(g.right, -1);
    for (int l = 0; l < g.left; ++l) {
        std::vector<char> used(g.right, 0);
        detail::kuhn_augment(g, l, match_r, used);
    }
    std::vector<std::pair<int, int>> m;
    for (int r = 0; r < g.right; ++r)
        if (match_r[r] >= 0) m.emplace_back(match_r[r], r);
    std::sort(m.begin(), m.end());
    return m;
}

// Minimum vertex cover from a maximum matching: alternating-path reachability
// from the unmatched left vertices; cover = (L minus reached) + (R reached).
inline CoverAndMatching minimum_vertex_cover(const BipartiteGraph& g,
                                             const std::vector<std::pair<int, int>>& matching) {
    std::vector<int> match_l(g.left, -1), match_r(g.right, -1);
    for (auto [l, r] : matching) {
        CPK_CHECK(match_l[l] < 0 && match_r[r] < 0);
        match_l[l] = r;
        match_r[r] = l;
    }
    std::vector<char> vis_l(g.left, 0), vis_r(g.right, 0);
    std::vector<int> stack;
    for (int l = 0; l < g.left; ++l)
        if (match_l[l] < 0) {
            vis_l[l] = 1;
            stack.push_back(l);
        }
    while (!stack.empty()) {
        int l = stack.back();
        stack.pop_back();
        for (int r : g.adj[l]) {
            if (vis_r[r]) continue;
            vis_r[r] = 1;
            int l2 = match_r[r];
            if (l2 >= 0 && !vis_l[l2]) {
                vis_l[l2] = 1;
                stack.push_back(l2);
            }
        }
    }
    CoverAndMatching out;
    out.matching = matching;
    for (int l = 0; l < g.left; ++l)
        if (!vis_l[l]) out.d1.push_back(l);
    for (int r = 0; r < g.right; ++r)
        if (vis_r[r]) out.d2.push_back(r);
    CPK_CHECK_MSG(out.cover_size() == matching.size(), "cover size != matching size");
    for (int l = 0; l < g.left; ++l)
        for (int r : g.adj[l])
            CPK_CHECK_MSG(!vis_l[l] || vis_r[r], "uncovered edge");
    return out;
}

struct MatchIntoResult {
    bool ok = false;
    std::vector<std::pair<int, int>> map;  // (left, right), one per requested vertex
    std::vector<int> violator;             // Hall witness when !ok
};

// Try to match every vertex of iPrime into the right side of g. On failure,
// return a subset I'' of iPrime with |N(I'')| < |I''|.
inline MatchIntoResult match_into(const BipartiteGraph& g, const std::vector<int>& iPrime) {
    std::vector<int> match_r(g.right, -1);
    for (int l : iPrime) {
        CPK_CHECK(0 <= l && l < g.left);
        std::vector<char> used(g.right, 0);
        if (!detail::kuhn_augment(g, l, match_r, used)) {
            // alternating reachability from the stuck vertex gives the witness
            std::vector<char> vis_r(g.right, 0), in_violator(g.left, 0);
            std::vector<int> stack{l};
            in_violator[l] = 1;
            MatchIntoResult res;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                res.violator.push_back(u);
                for (int r : g.adj[u]) {
                    if (vis_r[r]) continue;
                    vis_r[r] = 1;
                    int u2 = match_r[r];
                    CPK_CHECK(u2 >= 0);  // otherwise the augmenting path existed
                    if (!in_violator[u2]) {
                        in_violator[u2] = 1;
                        stack.push_back(u2);
                    }
                }
            }
            std::sort(res.violator.begin(), res.violator.end());
            std::size_t nbhd = 0;
            for (int r = 0; r < g.right; ++r) nbhd += vis_r[r] ? 1 : 0;
            CPK_CHECK_MSG(nbhd < res.violator.size(), "violator does not violate Hall");
            return res;
        }
    }
    MatchIntoResult res;
    res.ok = true;
    for (int r = 0; r < g.right; ++r)
        if (match_r[r] >= 0) res.map.emplace_back(match_r[r], r);
    std::sort(res.map.begin(), res.map.end());
    return res;
}

}  // namespace cpk
