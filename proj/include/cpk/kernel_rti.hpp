#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cpk/bipartite.hpp"
#include "cpk/check.hpp"
#include "cpk/instances.hpp"
#include "cpk/kernel_fast.hpp"
#include "cpk/tree.hpp"

namespace cpk {

struct EmbeddedInstance {
    DenseTripletSet r;
    RootedBinaryTree tree;  // over the same leaves
};

struct RtiPacking {
    std::vector<std::array<int, 4>> conflicts;
    std::vector<int> covered;  // sorted
    std::vector<char> in_covered;
};

namespace detail {

// consistency of a dense triplet set on four leaves, indexed by the four
// choice codes in base 3 (triples in order 012, 013, 023, 123)
inline const std::array<bool, 81>& consistent4_table() {
    static const std::array<bool, 81> table = [] {
        std::array<bool, 81> t{};
        const std::array<std::array<int, 3>, 4> triples{{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
        enumerate_binary_trees(4, [&](const RootedBinaryTree& tr) {
            int idx = 0;
            for (auto [a, b, c] : triples) {
                int w = tr.isolated_label(a, b, c);
                idx = idx * 3 + (w == a ? 0 : (w == b ? 1 : 2));
            }
            t[idx] = true;
        });
        return t;
    }();
    return table;
}

inline int choice_code(const DenseTripletSet& r, int a, int b, int c) {
    int w = r.chosen(a, b, c);
    sort3(a, b, c);
    return w == a ? 0 : (w == b ? 1 : 2);
}

// conflict test with one triple of the quadruple forced to a given code
inline bool conflict4_with(const DenseTripletSet& r, std::array<int, 4> q, int skip, int forced) {
    std::sort(q.begin(), q.end());
    const std::array<std::array<int, 3>, 4> sub{{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
    int idx = 0;
    for (int i = 0; i < 4; ++i) {
        int code = (i == skip) ? forced
                               : choice_code(r, q[sub[i][0]], q[sub[i][1]], q[sub[i][2]]);
        idx = idx * 3 + code;
    }
    return !consistent4_table()[idx];
}

}  // namespace detail

inline bool is_conflict4(const DenseTripletSet& r, std::array<int, 4> q) {
    return detail::conflict4_with(r, q, -1, 0);
}

inline std::optional<std::array<int, 4>> find_conflict4(const DenseTripletSet& r) {
    int n = r.size();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d)
                    if (is_conflict4(r, {a, b, c, d})) return std::array<int, 4>{a, b, c, d};
    return std::nullopt;
}

struct BuildResult {
    std::optional<RootedBinaryTree> tree;
    std::vector<int> conflict;  // a 4-leaf conflict when no tree exists
};

namespace detail {

// Split a label set by the sibling graph: a,b adjacent iff some third leaf is
// chosen against them. Dense sets split into exactly one or two components;
// one component means the set is locally inconsistent.
inline std::optional<int> build_rec(const DenseTripletSet& r, const std::vector<int>& s,
                                    RootedBinaryTree& t, std::vector<int>& conflict) {
    int m = static_cast<int>(s.size());
    if (m == 1) return t.add_leaf(s[0]);
    std::vector<int> comp(m);
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int l = 0; l < m; ++l) {
                if (l == i || l == j) continue;
                if (r.chosen(s[i], s[j], s[l]) == s[l]) {
                    comp[find(i)] = find(j);
                    break;
                }
            }
    std::vector<int> side_a, side_b;
    int root_a = find(0);
    for (int i = 0; i < m; ++i) (find(i) == root_a ? side_a : side_b).push_back(s[i]);
    if (side_b.empty()) {
        CPK_CHECK_MSG(m >= 4, "one-sided split on fewer than four leaves");
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                for (int l = j + 1; l < m; ++l)
                    for (int h = l + 1; h < m; ++h)
                        if (is_conflict4(r, {s[i], s[j], s[l], s[h]})) {
                            conflict = {s[i], s[j], s[l], s[h]};
                            return std::nullopt;
                        }
        throw internal_error("inconsistent split without a four-leaf conflict");
    }
    int root_b = -1;
    for (int i = 0; i < m; ++i) {
        if (find(i) == root_a) continue;
        if (root_b < 0) root_b = find(i);
        CPK_CHECK_MSG(find(i) == root_b, "dense split has more than two sides");
    }
    auto left = build_rec(r, side_a, t, conflict);
    if (!left) return std::nullopt;
    auto right = build_rec(r, side_b, t, conflict);
    if (!right) return std::nullopt;
    return t.add_internal(*left, *right);
}

}  // namespace detail

// the unique consistent tree over the given labels, or a four-leaf conflict
inline BuildResult build_tree_on(const DenseTripletSet& r, const std::vector<int>& labels) {
    BuildResult res;
    if (labels.empty()) {
        res.tree = RootedBinaryTree{};
        return res;
    }
    RootedBinaryTree t;
    auto top = detail::build_rec(r, labels, t, res.conflict);
    if (!top) return res;
    t.set_root(*top);
    t.validate();
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            for (std::size_t l = j + 1; l < labels.size(); ++l)
                CPK_CHECK_MSG(r.consistent_with(t, labels[i], labels[j], labels[l]),
                              "built tree violates a triplet");
    res.tree = std::move(t);
    return res;
}

inline BuildResult build_tree(const DenseTripletSet& r) {
    std::vector<int> labels(r.size());
    std::iota(labels.begin(), labels.end(), 0);
    return build_tree_on(r, labels);
}

struct IrrelevantLeafResult {
    DenseTripletSet reduced;
    std::vector<int> removed;
    std::vector<int> kept;
};

inline IrrelevantLeafResult rule_irrelevant_leaf(const DenseTripletSet& r) {
    int n = r.size();
    std::vector<char> keep(n, 1);
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<char> hit(n, 0);
        for (int a = 0; a < n; ++a) {
            if (!keep[a]) continue;
            for (int b = a + 1; b < n; ++b) {
                if (!keep[b]) continue;
                for (int c = b + 1; c < n; ++c) {
                    if (!keep[c]) continue;
                    for (int d = c + 1; d < n; ++d)
                        if (keep[d] && is_conflict4(r, {a, b, c, d}))
                            hit[a] = hit[b] = hit[c] = hit[d] = 1;
                }
            }
        }
        for (int v = 0; v < n; ++v)
            if (keep[v] && !hit[v]) {
                keep[v] = 0;
                changed = true;
            }
    }
    IrrelevantLeafResult res;
    for (int v = 0; v < n; ++v) (keep[v] ? res.kept : res.removed).push_back(v);
    res.reduced = r.restrict(res.kept);
    return res;
}

// a is a seed of the conflict c when every re-choice of the triplet on
// c minus {a} leaves c a conflict
inline bool is_seed(const DenseTripletSet& r, std::array<int, 4> c, int a) {
    std::sort(c.begin(), c.end());
    CPK_CHECK_MSG(is_conflict4(r, c), "seed test on a non-conflict");
    int skip = -1;
    for (int i = 0; i < 4; ++i)
        if (c[i] == a) skip = i;
    CPK_CHECK_MSG(skip >= 0, "seed leaf outside the set");
    // triple index (within the quadruple) avoiding position `skip`
    int tri = 3 - skip;
    for (int code = 0; code < 3; ++code)
        if (!detail::conflict4_with(r, c, tri, code)) return false;
    return true;
}

// Greedy maximal sequence: accept a conflict when it brings at least two new
// leaves, or exactly one new leaf that seeds it.
inline RtiPacking conflict_packing_rti(const DenseTripletSet& r) {
    int n = r.size();
    RtiPacking p;
    p.in_covered.assign(n, 0);
    auto eligible = [&](const std::array<int, 4>& q) {
        int fresh = -1, fresh_cnt = 0;
        for (int v : q)
            if (!p.in_covered[v]) {
                fresh = v;
                ++fresh_cnt;
            }
        if (fresh_cnt >= 2) return is_conflict4(r, q);
        if (fresh_cnt == 1) return is_conflict4(r, q) && is_seed(r, q, fresh);
        return false;
    };
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d) {
                    std::array<int, 4> q{a, b, c, d};
                    if (!eligible(q)) continue;
                    p.conflicts.push_back(q);
                    for (int v : q) p.in_covered[v] = 1;
                }
    for (int v = 0; v < n; ++v)
        if (p.in_covered[v]) p.covered.push_back(v);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d)
                    CPK_CHECK_MSG(!eligible({a, b, c, d}), "packing not maximal");
    return p;
}

namespace detail {

// Attachment probe for one covered leaf: per candidate node z of the good
// tree (virtual root = -1), predict the isolated leaf of {a,x,y} after
// hanging a above z, and compare against the instance.
struct LocusTables {
    std::vector<int> goods;                     // ascending labels
    std::vector<int> good_slot;                 // label -> index in goods, or -1
    std::vector<std::vector<char>> below;       // node -> indicator over goods
    std::vector<std::vector<int>> lca_depth;    // node -> depth of lca(node, good leaf)
};

inline LocusTables locus_tables(const RootedBinaryTree& t, const std::vector<int>& goods, int n) {
    LocusTables lt;
    lt.goods = goods;
    lt.good_slot.assign(n, -1);
    for (std::size_t i = 0; i < goods.size(); ++i) lt.good_slot[goods[i]] = static_cast<int>(i);
    int m = t.node_count();
    lt.below.assign(m, std::vector<char>(goods.size(), 0));
    lt.lca_depth.assign(m, std::vector<int>(goods.size(), 0));
    for (std::size_t i = 0; i < goods.size(); ++i) {
        int leaf = t.node_of_label(goods[i]);
        // mark the root path of this leaf with depths, then every node's lca
        // with the leaf is its deepest marked ancestor
        std::vector<int> on_path(m, -1);
        for (int u = leaf; u != RootedBinaryTree::npos; u = t.parent(u)) on_path[u] = t.depth(u);
        for (int z = 0; z < m; ++z) {
            int u = z;
            while (on_path[u] < 0) u = t.parent(u);
            lt.lca_depth[z][i] = on_path[u];
        }
        // leaf membership below each node: walk up marking ancestors
        for (int u = leaf; u != RootedBinaryTree::npos; u = t.parent(u)) lt.below[u][i] = 1;
    }
    return lt;
}

inline int predicted_isolated(const LocusTables& lt, int z, int a, int x, int y, int xi, int yi) {
    if (z < 0) return a;  // above the root every good pair stays together
    bool bx = lt.below[z][xi], by = lt.below[z][yi];
    if (bx && by) return a;
    if (bx) return y;
    if (by) return x;
    int dx = lt.lca_depth[z][xi], dy = lt.lca_depth[z][yi];
    if (dx > dy) return y;
    if (dy > dx) return x;
    return a;
}

}  // namespace detail

// Embed the instance: the unique tree of the uncovered leaves, with every
// covered leaf grafted at its locus edge; same-locus leaves are layered by
// the order their good witnesses induce. All inconsistent triplets then live
// inside the covered set.
inline EmbeddedInstance nice_tree(const DenseTripletSet& r, const RtiPacking& p) {
    int n = r.size();
    std::vector<int> goods;
    for (int v = 0; v < n; ++v)
        if (!p.in_covered[v]) goods.push_back(v);

    if (goods.empty()) {
        std::vector<int> all(n);
        std::iota(all.begin(), all.end(), 0);
        EmbeddedInstance ei{r, left_comb(all)};
        ei.tree.validate();
        return ei;
    }

    BuildResult br = build_tree_on(r, goods);
    CPK_CHECK_MSG(br.tree.has_value(), "uncovered leaves are not consistent");
    RootedBinaryTree t = std::move(*br.tree);

    detail::LocusTables lt = detail::locus_tables(t, goods, n);
    int g = static_cast<int>(goods.size());

    std::map<int, std::vector<int>> bucket;  // locus node (-1 = above root) -> covered leaves
    for (int a : p.covered) {
        int found = -2;
        for (int z = -1; z < t.node_count(); ++z) {
            if (z == t.root()) continue;
            bool ok = true;
            for (int xi = 0; xi < g && ok; ++xi)
                for (int yi = xi + 1; yi < g && ok; ++yi) {
                    int x = goods[xi], y = goods[yi];
                    if (r.chosen(a, x, y) != detail::predicted_isolated(lt, z, a, x, y, xi, yi))
                        ok = false;
                }
            if (ok) {
                CPK_CHECK_MSG(found == -2, "covered leaf admits two loci");
                found = z;
            }
        }
        CPK_CHECK_MSG(found != -2, "covered leaf admits no locus");
        bucket[found].push_back(a);
    }

    for (auto& [z, members] : bucket) {
        std::sort(members.begin(), members.end());
        int m = static_cast<int>(members.size());
        // a before b when some good witness pairs with a against b
        std::vector<std::vector<char>> less(m, std::vector<char>(m, 0));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                if (i == j) continue;
                for (int c : goods)
                    if (r.chosen(members[i], c, members[j]) == members[j]) {
                        less[i][j] = 1;
                        break;
                    }
            }
        auto sim = [&](int i, int j) { return !less[i][j] && !less[j][i]; };
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                if (i == j) continue;
                CPK_CHECK_MSG(!(less[i][j] && less[j][i]), "locus order not asymmetric");
                for (int l = 0; l < m; ++l) {
                    if (l == i || l == j) continue;
                    if (less[i][j] && less[j][l]) CPK_CHECK_MSG(less[i][l], "locus order not transitive");
                    if (sim(i, j) && sim(j, l)) CPK_CHECK_MSG(sim(i, l), "locus classes not transitive");
                }
            }
        std::vector<int> cls(m, -1);
        std::vector<std::vector<int>> classes;
        for (int i = 0; i < m; ++i) {
            if (cls[i] >= 0) continue;
            cls[i] = static_cast<int>(classes.size());
            classes.push_back({members[i]});
            for (int j = i + 1; j < m; ++j)
                if (cls[j] < 0 && sim(i, j)) {
                    cls[j] = cls[i];
                    classes.back().push_back(members[j]);
                }
        }
        std::vector<int> order(classes.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int ci, int cj) {
            if (ci == cj) return false;
            int i = -1, j = -1;
            for (int v = 0; v < m; ++v) {
                if (cls[v] == ci && i < 0) i = v;
                if (cls[v] == cj && j < 0) j = v;
            }
            return static_cast<bool>(less[i][j]);
        });
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (cls[i] != cls[j]) {
                    auto pi = std::find(order.begin(), order.end(), cls[i]);
                    auto pj = std::find(order.begin(), order.end(), cls[j]);
                    CPK_CHECK_MSG((pi < pj) == static_cast<bool>(less[i][j]),
                                  "locus classes not totally ordered");
                }

        int cur = z;
        for (int ci : order) {
            std::vector<int>& leaves = classes[ci];
            std::sort(leaves.begin(), leaves.end());
            int sub = t.add_leaf(leaves[0]);
            for (std::size_t i = 1; i < leaves.size(); ++i)
                sub = t.add_internal(sub, t.add_leaf(leaves[i]));
            cur = (z < 0) ? t.insert_node_above_root(sub) : t.insert_node_on_edge(sub, cur);
        }
    }

    t.validate();
    CPK_CHECK(t.leaf_count() == n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                if (!p.in_covered[a] || !p.in_covered[b] || !p.in_covered[c])
                    CPK_CHECK_MSG(r.consistent_with(t, a, b, c),
                                  "inconsistent triplet leaves the covered set");
    return EmbeddedInstance{r, std::move(t)};
}

// leaves under the least common ancestor of the triplet
inline std::vector<int> span_rti(const EmbeddedInstance& ei, int a, int b, int c) {
    const RootedBinaryTree& t = ei.tree;
    int u = t.lca(t.lca(t.node_of_label(a), t.node_of_label(b)), t.node_of_label(c));
    return t.leaves_below(u);
}

struct TreePartition {
    std::vector<int> roots;               // subtree roots in the embedded tree
    std::vector<std::vector<int>> parts;  // leaf label sets per root
    std::vector<int> part_of;             // leaf label -> part index
};

// Singleton parts for the freed leaves; the rest fall into the maximal
// subtrees hanging off the union of their root paths.
inline TreePartition tree_partition_from_cover(const EmbeddedInstance& ei,
                                               const std::vector<int>& good_free) {
    const RootedBinaryTree& t = ei.tree;
    CPK_CHECK(!good_free.empty());
    int m = t.node_count();
    std::vector<char> marked(m, 0);
    marked[t.root()] = 1;
    for (int lab : good_free)
        for (int u = t.node_of_label(lab); u != RootedBinaryTree::npos; u = t.parent(u)) marked[u] = 1;
    TreePartition tp;
    tp.part_of.assign(static_cast<std::size_t>(t.leaf_count()), -1);
    auto add_part = [&](int node, std::vector<int> leaves) {
        for (int lab : leaves) {
            CPK_CHECK_MSG(tp.part_of[lab] < 0, "leaf covered twice by the partition");
            tp.part_of[lab] = static_cast<int>(tp.roots.size());
        }
        tp.roots.push_back(node);
        tp.parts.push_back(std::move(leaves));
    };
    for (int lab : good_free) add_part(t.node_of_label(lab), {lab});
    for (int v = 0; v < m; ++v) {
        if (!marked[v] || t.is_leaf(v)) continue;
        for (int c : {t.left(v), t.right(v)})
            if (!marked[c]) add_part(c, t.leaves_below(c));
    }
    for (int lab : t.leaf_labels()) CPK_CHECK_MSG(tp.part_of[lab] >= 0, "leaf missed by the partition");
    return tp;
}

struct SafePartitionRti {
    TreePartition partition;
    std::vector<std::array<int, 3>> outer_inconsistent;  // F, lexicographic
    std::vector<int> witnesses;                          // matched freed leaf per triplet of F
};

// Certificate graph: inconsistent triplets against the uncovered leaves lying
// in their span. Freed leaves outside the cover yield the partition; crossing
// inconsistent triplets get matched witnesses.
inline std::optional<SafePartitionRti> find_safe_partition_rti(const EmbeddedInstance& ei,
                                                               const RtiPacking& p, long long k) {
    int n = ei.r.size();
    if (n <= 5 * k) return std::nullopt;
    std::vector<int> goods;
    for (int v = 0; v < n; ++v)
        if (!p.in_covered[v]) goods.push_back(v);
    std::vector<int> good_index(n, -1);
    for (std::size_t i = 0; i < goods.size(); ++i) good_index[goods[i]] = static_cast<int>(i);

    std::vector<std::array<int, 3>> bad;  // inconsistent triplets, lexicographic
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                if (!ei.r.consistent_with(ei.tree, a, b, c)) {
                    CPK_CHECK(p.in_covered[a] && p.in_covered[b] && p.in_covered[c]);
                    bad.push_back({a, b, c});
                }

    BipartiteGraph g(static_cast<int>(bad.size()), static_cast<int>(goods.size()));
    for (std::size_t i = 0; i < bad.size(); ++i)
        for (int w : span_rti(ei, bad[i][0], bad[i][1], bad[i][2]))
            if (good_index[w] >= 0) g.add_edge(static_cast<int>(i), good_index[w]);
    g.finish();
    auto matching = maximum_matching(g);
    CoverAndMatching cover = minimum_vertex_cover(g, matching);
    std::vector<char> in_d2(goods.size(), 0);
    for (int r : cover.d2) in_d2[r] = 1;
    std::vector<int> good_free;
    for (std::size_t i = 0; i < goods.size(); ++i)
        if (!in_d2[i]) good_free.push_back(goods[i]);
    if (good_free.empty()) return std::nullopt;

    SafePartitionRti sp;
    sp.partition = tree_partition_from_cover(ei, good_free);
    std::vector<int> f_left;
    for (std::size_t i = 0; i < bad.size(); ++i) {
        auto [a, b, c] = bad[i];
        int pa = sp.partition.part_of[a];
        if (pa != sp.partition.part_of[b] || pa != sp.partition.part_of[c]) {
            sp.outer_inconsistent.push_back(bad[i]);
            f_left.push_back(static_cast<int>(i));
        }
    }
    CPK_CHECK_MSG(!sp.outer_inconsistent.empty(), "safe partition without crossing triplet");
    std::vector<char> in_d1(bad.size(), 0);
    for (int l : cover.d1) in_d1[l] = 1;
    for (int l : f_left) CPK_CHECK_MSG(in_d1[l], "crossing triplet escaped the cover");

    BipartiteGraph rest(g.left, g.right);
    for (int l = 0; l < g.left; ++l)
        for (int r : g.adj[l])
            if (!in_d2[r]) rest.add_edge(l, r);
    MatchIntoResult mi = match_into(rest, f_left);
    CPK_CHECK_MSG(mi.ok, "crossing triplets not matchable into freed leaves");
    std::vector<int> match_of(bad.size(), -1);
    for (auto [l, r] : mi.map) match_of[l] = r;
    for (int l : f_left) {
        int w = goods[match_of[l]];
        auto [a, b, c] = bad[l];
        auto span = span_rti(ei, a, b, c);
        CPK_CHECK(std::binary_search(span.begin(), span.end(), w));
        CPK_CHECK(sp.partition.parts[sp.partition.part_of[w]].size() == 1);
        sp.witnesses.push_back(w);
    }
    return sp;
}

struct AppliedPartitionRti {
    DenseTripletSet r;
    long long k = 0;
};

inline AppliedPartitionRti apply_safe_partition_rti(const EmbeddedInstance& ei,
                                                    const SafePartitionRti& sp, long long k) {
    AppliedPartitionRti out;
    out.r = ei.r;
    for (auto [a, b, c] : sp.outer_inconsistent) {
        CPK_CHECK(!out.r.consistent_with(ei.tree, a, b, c));
        out.r.set_chosen(a, b, c, ei.tree.isolated_label(a, b, c));
    }
    out.k = k - static_cast<long long>(sp.outer_inconsistent.size());
    return out;
}

// observer invoked per crossing-triplet edit: (before, k_before, F, after, k_after)
using RtiRuleObserver = std::function<void(const DenseTripletSet&, long long,
                                           const std::vector<std::array<int, 3>>&,
                                           const DenseTripletSet&, long long)>;

inline KernelReport kernelize_rti(const ParamInstance& inst, const RtiRuleObserver& on_rule4 = {}) {
    CPK_CHECK(inst.kind() == ProblemKind::Rti);
    DenseTripletSet r = inst.rti();
    long long k = inst.k;
    KernelReport rep;
    while (true) {
        IrrelevantLeafResult ir = rule_irrelevant_leaf(r);
        if (!ir.removed.empty()) {
            rep.rule_trace.push_back({"RULE3", detail::join_ids(ir.removed), 0});
            r = ir.reduced;
        }
        if (r.size() <= 5 * k) {
            rep.reduced = ParamInstance{r, k};
            rep.verdict = Verdict::Reduced;
            return rep;
        }
        RtiPacking p = conflict_packing_rti(r);
        EmbeddedInstance ei = nice_tree(r, p);
        std::optional<SafePartitionRti> sp = find_safe_partition_rti(ei, p, k);
        if (!sp) {
            rep.rule_trace.push_back({"TRIVIALNO", "", k});
            rep.reduced = trivial_no_instance(ProblemKind::Rti);
            rep.verdict = Verdict::TrivialNo;
            return rep;
        }
        AppliedPartitionRti ap = apply_safe_partition_rti(ei, *sp, k);
        rep.rule_trace.push_back({"RULE4", detail::join_triples(sp->outer_inconsistent),
                                  static_cast<long long>(sp->outer_inconsistent.size())});
        if (on_rule4) on_rule4(r, k, sp->outer_inconsistent, ap.r, ap.k);
        r = ap.r;
        k = ap.k;
        if (k < 0) {
            rep.rule_trace.push_back({"TRIVIALNO", "", k});
            rep.reduced = trivial_no_instance(ProblemKind::Rti);
            rep.verdict = Verdict::TrivialNo;
            return rep;
        }
    }
}

}  // namespace cpk
