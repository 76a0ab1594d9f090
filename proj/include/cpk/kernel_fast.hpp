#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cpk/bipartite.hpp"
#include "cpk/check.hpp"
#include "cpk/instances.hpp"

namespace cpk {

struct OrderedTournament {
    Tournament t;
    std::vector<int> sigma;  // position -> vertex
    std::vector<int> pos;    // vertex -> position

    bool backward(int tail, int head) const { return t.arc(tail, head) && pos[head] < pos[tail]; }
};

struct TrianglePacking {
    std::vector<std::array<int, 3>> triangles;  // sorted triples, each inducing a cycle
    std::vector<int> covered;                   // sorted union of the triples
    std::vector<char> in_covered;               // indicator over vertex ids
};

struct SafePartitionFast {
    std::vector<std::pair<int, int>> parts;          // [begin, end) position ranges
    std::vector<int> part_of;                        // position -> part id
    std::vector<std::array<int, 2>> outer_backward;  // F: arcs (tail, head) crossing parts
    std::vector<std::array<int, 3>> certificates;    // per arc of F, its matched triangle
};

namespace detail {

inline bool cyclic_triple(const Tournament& t, int a, int b, int c) {
    bool x = t.arc(a, b), y = t.arc(b, c), z = t.arc(c, a);
    return x == y && y == z;
}

inline std::string join_ids(const std::vector<int>& ids) {
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(ids[i]);
    }
    return s;
}

inline std::string join_arcs(const std::vector<std::array<int, 2>>& arcs) {
    std::string s;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(arcs[i][0]) + "->" + std::to_string(arcs[i][1]);
    }
    return s;
}

inline std::string join_triples(const std::vector<std::array<int, 3>>& ts) {
    std::string s;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(ts[i][0]) + " " + std::to_string(ts[i][1]) + " " + std::to_string(ts[i][2]);
    }
    return s;
}

}  // namespace detail

struct TransitiveCheck {
    bool transitive = true;
    std::array<int, 3> triangle{-1, -1, -1};
};

inline TransitiveCheck is_transitive(const Tournament& t) {
    int n = t.size();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                if (detail::cyclic_triple(t, a, b, c)) return {false, {a, b, c}};
    return {};
}

struct IrrelevantResult {
    Tournament reduced;
    std::vector<int> removed;  // ids in the input labeling, ascending
    std::vector<int> kept;     // ids in the input labeling, ascending
};

// Drop every vertex lying in no directed triangle; a vertex of a surviving
// triangle keeps that triangle, so one sweep suffices, but we iterate anyway.
inline IrrelevantResult rule_irrelevant_vertex(const Tournament& t) {
    int n = t.size();
    std::vector<char> keep(n, 1);
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<char> hit(n, 0);
        for (int a = 0; a < n; ++a) {
            if (!keep[a]) continue;
            for (int b = a + 1; b < n; ++b) {
                if (!keep[b]) continue;
                for (int c = b + 1; c < n; ++c)
                    if (keep[c] && detail::cyclic_triple(t, a, b, c)) hit[a] = hit[b] = hit[c] = 1;
            }
        }
        for (int v = 0; v < n; ++v)
            if (keep[v] && !hit[v]) {
                keep[v] = 0;
                changed = true;
            }
    }
    IrrelevantResult res;
    for (int v = 0; v < n; ++v) (keep[v] ? res.kept : res.removed).push_back(v);
    res.reduced = t.restrict(res.kept);
    return res;
}

// Lexicographic greedy maximal packing of arc-disjoint directed triangles.
inline TrianglePacking greedy_triangle_packing(const Tournament& t) {
    int n = t.size();
    TrianglePacking p;
    p.in_covered.assign(n, 0);
    std::vector<char> used(static_cast<std::size_t>(pairs_of(n)), 0);
    auto pair_used = [&](int u, int v) -> std::vector<char>::reference {
        return used[detail::pair_index(n, std::min(u, v), std::max(u, v))];
    };
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                if (!detail::cyclic_triple(t, a, b, c)) continue;
                if (pair_used(a, b) || pair_used(b, c) || pair_used(a, c)) continue;
                pair_used(a, b) = pair_used(b, c) = pair_used(a, c) = 1;
                p.triangles.push_back({a, b, c});
                p.in_covered[a] = p.in_covered[b] = p.in_covered[c] = 1;
            }
    for (int v = 0; v < n; ++v)
        if (p.in_covered[v]) p.covered.push_back(v);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                if (detail::cyclic_triple(t, a, b, c))
                    CPK_CHECK_MSG(pair_used(a, b) || pair_used(b, c) || pair_used(a, c),
                                  "packing not maximal");
    return p;
}

// Order the uncovered vertices transitively and slot every covered vertex at
// the unique position keeping the uncovered part conflict-free; all backward
// arcs then run between covered vertices.
inline OrderedTournament nice_ordering(const Tournament& t, const TrianglePacking& p) {
    int n = t.size();
    std::vector<int> goods;
    for (int v = 0; v < n; ++v)
        if (!p.in_covered[v]) goods.push_back(v);
    int g = static_cast<int>(goods.size());
    std::vector<int> wins(g, 0);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
            if (i != j && t.arc(goods[i], goods[j])) ++wins[i];
    std::vector<int> idx(g);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int i, int j) {
        return wins[i] != wins[j] ? wins[i] > wins[j] : goods[i] < goods[j];
    });
    std::vector<int> sg(g);  // transitive order of the uncovered part
    for (int i = 0; i < g; ++i) sg[i] = goods[idx[i]];
    for (int i = 0; i < g; ++i)
        for (int j = i + 1; j < g; ++j)
            CPK_CHECK_MSG(t.arc(sg[i], sg[j]), "uncovered part not transitive");
    std::vector<std::vector<int>> slot(static_cast<std::size_t>(g) + 1);
    for (int v : p.covered) {
        int loc = 0;
        for (int w : sg) loc += t.arc(w, v) ? 1 : 0;
        for (int i = 0; i < g; ++i)
            CPK_CHECK_MSG(t.arc(sg[i], v) == (i < loc), "covered vertex has no single locus");
        slot[loc].push_back(v);
    }
    OrderedTournament ot;
    ot.t = t;
    for (int s = 0; s <= g; ++s) {
        for (int v : slot[s]) ot.sigma.push_back(v);
        if (s < g) ot.sigma.push_back(sg[s]);
    }
    ot.pos.assign(n, -1);
    for (int i = 0; i < n; ++i) ot.pos[ot.sigma[i]] = i;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (ot.t.arc(ot.sigma[j], ot.sigma[i]))
                CPK_CHECK_MSG(p.in_covered[ot.sigma[i]] && p.in_covered[ot.sigma[j]],
                              "backward arc leaves the covered set");
    return ot;
}

struct CertificateGraph {
    BipartiteGraph graph;                   // left: backward arcs, right: uncovered vertices
    std::vector<std::array<int, 2>> arcs;   // left index -> (tail, head)
    std::vector<int> goods;                 // right index -> vertex id
    std::vector<int> good_index;            // vertex id -> right index or -1
};

inline CertificateGraph certificate_graph(const OrderedTournament& ot, const TrianglePacking& p) {
    int n = ot.t.size();
    CertificateGraph cg;
    cg.good_index.assign(n, -1);
    for (int v = 0; v < n; ++v)
        if (!p.in_covered[v]) {
            cg.good_index[v] = static_cast<int>(cg.goods.size());
            cg.goods.push_back(v);
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int u = ot.sigma[i], v = ot.sigma[j];
            if (ot.t.arc(v, u)) cg.arcs.push_back({v, u});
        }
    cg.graph = BipartiteGraph(static_cast<int>(cg.arcs.size()), static_cast<int>(cg.goods.size()));
    for (std::size_t e = 0; e < cg.arcs.size(); ++e) {
        auto [v, u] = cg.arcs[e];
        for (int w : cg.goods)
            if (ot.pos[u] < ot.pos[w] && ot.pos[w] < ot.pos[v]) {
                CPK_CHECK(detail::cyclic_triple(ot.t, u, v, w));
                cg.graph.add_edge(static_cast<int>(e), cg.good_index[w]);
            }
    }
    cg.graph.finish();
    return cg;
}

// Cover the certificate graph, free the uncovered goods as singleton parts and
// certify every crossing backward arc by a matched good. Returns nothing when
// the vertex count is already within four times the budget, or when no good
// escapes the cover (then the packing and matching witness a negative
// instance).
inline std::optional<SafePartitionFast> find_safe_partition(const OrderedTournament& ot,
                                                            const TrianglePacking& p, long long k) {
    int n = ot.t.size();
    if (n <= 4 * k) return std::nullopt;
    CertificateGraph cg = certificate_graph(ot, p);
    auto matching = maximum_matching(cg.graph);
    CoverAndMatching cover = minimum_vertex_cover(cg.graph, matching);
    std::vector<char> in_d2(cg.goods.size(), 0);
    for (int r : cover.d2) in_d2[r] = 1;
    std::vector<char> good_free(n, 0);  // by vertex id
    bool any_free = false;
    for (std::size_t r = 0; r < cg.goods.size(); ++r)
        if (!in_d2[r]) {
            good_free[cg.goods[r]] = 1;
            any_free = true;
        }
    if (!any_free) return std::nullopt;

    SafePartitionFast sp;
    sp.part_of.assign(n, -1);
    for (int i = 0; i < n;) {
        if (good_free[ot.sigma[i]]) {
            sp.part_of[i] = static_cast<int>(sp.parts.size());
            sp.parts.emplace_back(i, i + 1);
            ++i;
        } else {
            int j = i;
            while (j < n && !good_free[ot.sigma[j]]) sp.part_of[j] = static_cast<int>(sp.parts.size()), ++j;
            sp.parts.emplace_back(i, j);
            i = j;
        }
    }

    std::vector<int> f_left;  // certificate-graph left ids of the crossing arcs
    for (std::size_t e = 0; e < cg.arcs.size(); ++e) {
        auto [v, u] = cg.arcs[e];
        if (sp.part_of[ot.pos[u]] != sp.part_of[ot.pos[v]]) {
            sp.outer_backward.push_back(cg.arcs[e]);
            f_left.push_back(static_cast<int>(e));
        }
    }
    CPK_CHECK_MSG(!sp.outer_backward.empty(), "safe partition without crossing backward arc");

    std::vector<char> in_d1(cg.arcs.size(), 0);
    for (int l : cover.d1) in_d1[l] = 1;
    for (int l : f_left) CPK_CHECK_MSG(in_d1[l], "crossing arc escaped the cover");

    // restrict the right side to the freed goods and match the crossing arcs
    BipartiteGraph rest(cg.graph.left, cg.graph.right);
    for (int l = 0; l < cg.graph.left; ++l)
        for (int r : cg.graph.adj[l])
            if (!in_d2[r]) rest.add_edge(l, r);
    MatchIntoResult mi = match_into(rest, f_left);
    CPK_CHECK_MSG(mi.ok, "crossing arcs not matchable into freed goods");
    std::vector<int> match_of(cg.arcs.size(), -1);
    for (auto [l, r] : mi.map) match_of[l] = r;
    for (std::size_t i = 0; i < f_left.size(); ++i) {
        auto [v, u] = cg.arcs[f_left[i]];
        int w = cg.goods[match_of[f_left[i]]];
        CPK_CHECK(ot.pos[u] < ot.pos[w] && ot.pos[w] < ot.pos[v]);
        CPK_CHECK(detail::cyclic_triple(ot.t, u, v, w));
        int pu = sp.part_of[ot.pos[u]], pv = sp.part_of[ot.pos[v]], pw = sp.part_of[ot.pos[w]];
        CPK_CHECK_MSG(pu != pv && pu != pw && pv != pw, "certificate not fully crossing");
        std::array<int, 3> c{u, v, w};
        std::sort(c.begin(), c.end());
        sp.certificates.push_back(c);
    }
    return sp;
}

struct AppliedPartition {
    Tournament t;
    long long k = 0;
};

inline AppliedPartition apply_safe_partition(const OrderedTournament& ot, const SafePartitionFast& sp,
                                             long long k) {
    AppliedPartition out;
    out.t = ot.t;
    for (auto [tail, head] : sp.outer_backward) {
        CPK_CHECK(out.t.arc(tail, head));
        out.t.flip(tail, head);
    }
    out.k = k - static_cast<long long>(sp.outer_backward.size());
    return out;
}

// observer invoked on every crossing-arc reversal: (before, k_before, F, after, k_after)
using FastRuleObserver = std::function<void(const Tournament&, long long,
                                            const std::vector<std::array<int, 2>>&, const Tournament&,
                                            long long)>;

inline KernelReport kernelize_fast(const ParamInstance& inst, const FastRuleObserver& on_rule2 = {}) {
    CPK_CHECK(inst.kind() == ProblemKind::Fast);
    Tournament t = inst.fast();
    long long k = inst.k;
    KernelReport rep;
    while (true) {
        IrrelevantResult ir = rule_irrelevant_vertex(t);
        if (!ir.removed.empty()) {
            rep.rule_trace.push_back({"RULE1", detail::join_ids(ir.removed), 0});
            t = ir.reduced;
        }
        if (t.size() <= 4 * k) {
            rep.reduced = ParamInstance{t, k};
            rep.verdict = Verdict::Reduced;
            return rep;
        }
        TrianglePacking p = greedy_triangle_packing(t);
        OrderedTournament ot = nice_ordering(t, p);
        std::optional<SafePartitionFast> sp = find_safe_partition(ot, p, k);
        if (!sp) {
            rep.rule_trace.push_back({"TRIVIALNO", "", k});
            rep.reduced = trivial_no_instance(ProblemKind::Fast);
            rep.verdict = Verdict::TrivialNo;
            return rep;
        }
        AppliedPartition ap = apply_safe_partition(ot, *sp, k);
        rep.rule_trace.push_back({"RULE2", detail::join_arcs(sp->outer_backward),
                                  static_cast<long long>(sp->outer_backward.size())});
        if (on_rule2) on_rule2(t, k, sp->outer_backward, ap.t, ap.k);
        t = ap.t;
        k = ap.k;
        if (k < 0) {
            rep.rule_trace.push_back({"TRIVIALNO", "", k});
            rep.reduced = trivial_no_instance(ProblemKind::Fast);
            rep.verdict = Verdict::TrivialNo;
            return rep;
        }
    }
}

}  // namespace cpk
