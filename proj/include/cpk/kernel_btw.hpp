#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cpk/check.hpp"
#include "cpk/instances.hpp"
#include "cpk/kernel_fast.hpp"

namespace cpk {

struct BtwPacking {
    std::vector<std::array<int, 4>> conflicts;
    std::vector<int> covered;  // sorted
    std::vector<char> in_covered;
};

struct OrderedBetweenness {
    BetweennessSet b;
    std::vector<int> sigma;
    std::vector<int> pos;
};

namespace detail {

// realizability of betweenness constraints on four vertices, indexed by the
// four middle codes in base 3 (triples in order 012, 013, 023, 123)
inline const std::array<bool, 81>& realizable4_table() {
    static const std::array<bool, 81> table = [] {
        std::array<bool, 81> t{};
        const std::array<std::array<int, 3>, 4> triples{{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
        std::array<int, 4> perm{0, 1, 2, 3};
        do {
            std::array<int, 4> pos{};
            for (int i = 0; i < 4; ++i) pos[perm[i]] = i;
            auto between = [&](int x, int y, int z) {
                return (pos[y] < pos[x]) != (pos[z] < pos[x]);
            };
            int idx = 0;
            for (auto [a, b, c] : triples) {
                int m = between(a, b, c) ? a : (between(b, a, c) ? b : c);
                idx = idx * 3 + (m == a ? 0 : (m == b ? 1 : 2));
            }
            t[idx] = true;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return t;
    }();
    return table;
}

inline int middle_code(const BetweennessSet& b, int x, int y, int z) {
    int m = b.middle(x, y, z);
    sort3(x, y, z);
    return m == x ? 0 : (m == y ? 1 : 2);
}

inline bool btw_conflict4_with(const BetweennessSet& b, std::array<int, 4> q, int skip, int forced) {
    std::sort(q.begin(), q.end());
    const std::array<std::array<int, 3>, 4> sub{{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
    int idx = 0;
    for (int i = 0; i < 4; ++i) {
        int code = (i == skip) ? forced
                               : middle_code(b, q[sub[i][0]], q[sub[i][1]], q[sub[i][2]]);
        idx = idx * 3 + code;
    }
    return !realizable4_table()[idx];
}

}  // namespace detail

inline bool is_conflict4_btw(const BetweennessSet& b, std::array<int, 4> q) {
    return detail::btw_conflict4_with(b, q, -1, 0);
}

inline std::optional<std::array<int, 4>> find_conflict4_btw(const BetweennessSet& b) {
    int n = b.size();
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            for (int z = y + 1; z < n; ++z)
                for (int w = z + 1; w < n; ++w)
                    if (is_conflict4_btw(b, {x, y, z, w})) return std::array<int, 4>{x, y, z, w};
    return std::nullopt;
}

struct BtwOrderingResult {
    std::optional<std::vector<int>> order;
    std::array<int, 4> conflict{};  // valid when no order exists
};

// Build a realizing order by inserting vertices one at a time; each insertion
// point is unique once two vertices are placed. Failure pins a four-vertex
// conflict containing the vertex that does not fit.
inline BtwOrderingResult consistent_ordering_btw(const BetweennessSet& b) {
    int n = b.size();
    BtwOrderingResult res;
    std::vector<int> sigma;
    for (int d = 0; d < n; ++d) {
        int s = static_cast<int>(sigma.size());
        if (s < 2) {
            sigma.push_back(d);
            continue;
        }
        std::vector<int> fits;
        for (int p = 0; p <= s; ++p) {
            std::vector<int> trial = sigma;
            trial.insert(trial.begin() + p, d);
            std::vector<int> pos(n, -1);
            for (int i = 0; i <= s; ++i) pos[trial[i]] = i;
            bool ok = true;
            for (int i = 0; i < s && ok; ++i)
                for (int j = i + 1; j < s && ok; ++j)
                    ok = b.consistent_with(pos, sigma[i], sigma[j], d);
            if (ok) fits.push_back(p);
        }
        CPK_CHECK_MSG(fits.size() <= 1, "two insertion points for one vertex");
        if (fits.empty()) {
            for (int x = 0; x < d; ++x)
                for (int y = x + 1; y < d; ++y)
                    for (int z = y + 1; z < d; ++z)
                        if (is_conflict4_btw(b, {x, y, z, d})) {
                            res.conflict = {x, y, z, d};
                            return res;
                        }
            throw internal_error("unorderable vertex without a four-vertex conflict");
        }
        sigma.insert(sigma.begin() + fits[0], d);
    }
    if (n >= 2 && sigma.front() > sigma.back()) std::reverse(sigma.begin(), sigma.end());
    res.order = std::move(sigma);
    return res;
}

inline bool btw_seed(const BetweennessSet& b, std::array<int, 4> c, int a) {
    std::sort(c.begin(), c.end());
    CPK_CHECK_MSG(is_conflict4_btw(b, c), "seed test on a non-conflict");
    int skip = -1;
    for (int i = 0; i < 4; ++i)
        if (c[i] == a) skip = i;
    CPK_CHECK_MSG(skip >= 0, "seed vertex outside the set");
    int tri = 3 - skip;
    for (int code = 0; code < 3; ++code)
        if (!detail::btw_conflict4_with(b, c, tri, code)) return false;
    return true;
}

inline BtwPacking conflict_packing_btw(const BetweennessSet& b) {
    int n = b.size();
    BtwPacking p;
    p.in_covered.assign(n, 0);
    auto eligible = [&](const std::array<int, 4>& q) {
        int fresh = -1, fresh_cnt = 0;
        for (int v : q)
            if (!p.in_covered[v]) {
                fresh = v;
                ++fresh_cnt;
            }
        if (fresh_cnt >= 2) return is_conflict4_btw(b, q);
        if (fresh_cnt == 1) return is_conflict4_btw(b, q) && btw_seed(b, q, fresh);
        return false;
    };
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            for (int z = y + 1; z < n; ++z)
                for (int w = z + 1; w < n; ++w) {
                    std::array<int, 4> q{x, y, z, w};
                    if (!eligible(q)) continue;
                    p.conflicts.push_back(q);
                    for (int v : q) p.in_covered[v] = 1;
                }
    for (int v = 0; v < n; ++v)
        if (p.in_covered[v]) p.covered.push_back(v);
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            for (int z = y + 1; z < n; ++z)
                for (int w = z + 1; w < n; ++w)
                    CPK_CHECK_MSG(!eligible({x, y, z, w}), "packing not maximal");
    return p;
}

// Realize the uncovered vertices, then drop each covered vertex into its
// unique gap; vertices sharing a gap are ordered by the adjacent anchors.
// Violated triples end up confined to the covered set.
inline OrderedBetweenness nice_ordering_btw(const BetweennessSet& b, const BtwPacking& p) {
    int n = b.size();
    std::vector<int> goods;
    for (int v = 0; v < n; ++v)
        if (!p.in_covered[v]) goods.push_back(v);
    int g = static_cast<int>(goods.size());

    OrderedBetweenness ob;
    ob.b = b;
    if (p.covered.empty()) {
        BtwOrderingResult r = consistent_ordering_btw(b);
        CPK_CHECK_MSG(r.order.has_value(), "conflict among uncovered vertices");
        ob.sigma = *r.order;
    } else {
        CPK_CHECK_MSG(g >= 2, "not enough uncovered vertices to anchor");
        BtwOrderingResult r = consistent_ordering_btw(b.restrict(goods));
        CPK_CHECK_MSG(r.order.has_value(), "conflict among uncovered vertices");
        std::vector<int> sg;  // goods in realized order, original labels
        for (int i : *r.order) sg.push_back(goods[i]);
        int front = sg.front(), back = sg.back();

        // slot of a = number of goods a lands after, checked to be a prefix
        std::vector<std::vector<int>> slots(g + 1);
        for (int a : p.covered) {
            int slot = 0;
            std::vector<char> after(g, 0);
            for (int i = 0; i < g; ++i) {
                int w = sg[i];
                bool aft = (w == back) ? b.middle(front, back, a) == back
                                       : b.middle(w, a, back) != w;
                after[i] = aft;
                if (aft) ++slot;
            }
            for (int i = 0; i < g; ++i)
                CPK_CHECK_MSG(after[i] == (i < slot), "vertex lands after a non-prefix");
            slots[slot].push_back(a);
        }

        for (int s = 0; s <= g; ++s) {
            std::vector<int>& members = slots[s];
            std::sort(members.begin(), members.end());
            int m = static_cast<int>(members.size());
            // before(a, b) read off the nearest anchor
            auto before = [&](int a, int c) {
                if (s < g) {
                    int w = sg[s];
                    int mid = b.middle(a, c, w);
                    CPK_CHECK_MSG(mid != w, "gap order undefined");
                    return mid == c;
                }
                int u = sg[g - 1];
                int mid = b.middle(u, a, c);
                CPK_CHECK_MSG(mid != u, "gap order undefined");
                return mid == a;
            };
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j)
                    CPK_CHECK_MSG(before(members[i], members[j]) != before(members[j], members[i]),
                                  "gap order not total");
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    for (int l = 0; l < m; ++l) {
                        if (i == j || j == l || i == l) continue;
                        if (before(members[i], members[j]) && before(members[j], members[l]))
                            CPK_CHECK_MSG(before(members[i], members[l]), "gap order not transitive");
                    }
            std::sort(members.begin(), members.end(), before);
            for (int a : members) ob.sigma.push_back(a);
            if (s < g) ob.sigma.push_back(sg[s]);
        }
    }

    ob.pos.assign(n, -1);
    for (int i = 0; i < n; ++i) ob.pos[ob.sigma[i]] = i;
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            for (int z = y + 1; z < n; ++z)
                if (!p.in_covered[x] || !p.in_covered[y] || !p.in_covered[z])
                    CPK_CHECK_MSG(b.consistent_with(ob.pos, x, y, z),
                                  "violated triple leaves the covered set");
    return ob;
}

inline std::vector<std::array<int, 3>> inconsistent_triples_btw(const OrderedBetweenness& ob) {
    int n = ob.b.size();
    std::vector<std::array<int, 3>> out;
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            for (int z = y + 1; z < n; ++z)
                if (!ob.b.consistent_with(ob.pos, x, y, z)) out.push_back({x, y, z});
    return out;
}

struct SimpleSunflower {
    std::array<int, 3> centre;
    std::vector<int> petals;  // vertices in no violated triple
};

// The lexicographically first violated triple extends to a conflict with
// every quiet vertex; more than k petals force the centre into any edition.
inline std::optional<SimpleSunflower> find_simple_sunflower(const OrderedBetweenness& ob,
                                                            long long k) {
    auto bad = inconsistent_triples_btw(ob);
    if (bad.empty()) return std::nullopt;
    int n = ob.b.size();
    std::vector<char> loud(n, 0);
    for (auto [x, y, z] : bad) loud[x] = loud[y] = loud[z] = 1;
    SimpleSunflower sf;
    sf.centre = bad.front();
    for (int v = 0; v < n && static_cast<long long>(sf.petals.size()) < k + 1; ++v) {
        if (loud[v]) continue;
        std::array<int, 4> q{sf.centre[0], sf.centre[1], sf.centre[2], v};
        CPK_CHECK_MSG(is_conflict4_btw(ob.b, q), "quiet vertex fails to extend the centre");
        sf.petals.push_back(v);
    }
    CPK_CHECK_MSG(static_cast<long long>(sf.petals.size()) == k + 1, "not enough petal vertices");
    return sf;
}

struct SmallKResult {
    bool yes = false;
    std::vector<std::array<int, 3>> edition;  // lexicographic
    std::vector<int> order;                   // realizing order after the edits
};

// For budgets below a fifth of the vertex count the instance is decided
// outright: every violated triple of the nice ordering must be edited.
inline SmallKResult solve_small_k(const BetweennessSet& b, long long k) {
    int n = b.size();
    CPK_CHECK_MSG(k >= 0 && 5 * k < n, "budget not small");
    SmallKResult res;
    BtwPacking p = conflict_packing_btw(b);
    if (static_cast<long long>(p.conflicts.size()) > k) return res;
    OrderedBetweenness ob = nice_ordering_btw(b, p);
    auto bad = inconsistent_triples_btw(ob);
    std::vector<char> loud(n, 0);
    for (auto [x, y, z] : bad) loud[x] = loud[y] = loud[z] = 1;
    for (auto [x, y, z] : bad) {
        long long petals = 0;
        for (int v = 0; v < n && petals <= k; ++v)
            if (!loud[v]) {
                CPK_CHECK_MSG(is_conflict4_btw(ob.b, {x, y, z, v}),
                              "quiet vertex fails to extend a violated triple");
                ++petals;
            }
        CPK_CHECK_MSG(petals > k, "sunflower too small to force an edit");
    }
    if (static_cast<long long>(bad.size()) > k) return res;
    res.yes = true;
    res.edition = bad;
    BetweennessSet fixed = b;
    for (auto [x, y, z] : bad) {
        int mid = ob.pos[x] < ob.pos[y] ? (ob.pos[y] < ob.pos[z] ? y : (ob.pos[x] < ob.pos[z] ? z : x))
                                        : (ob.pos[z] < ob.pos[y] ? y : (ob.pos[z] < ob.pos[x] ? z : x));
        fixed.set_middle(x, y, z, mid);
    }
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            for (int z = y + 1; z < n; ++z)
                CPK_CHECK_MSG(fixed.consistent_with(ob.pos, x, y, z), "edition does not realize");
    res.order = ob.sigma;
    return res;
}

// observer invoked per forced edit: (before, k_before, triple, after, k_after)
using BtwRuleObserver = std::function<void(const BetweennessSet&, long long,
                                           const std::array<int, 3>&,
                                           const BetweennessSet&, long long)>;

inline KernelReport kernelize_btw(const ParamInstance& inst, const BtwRuleObserver& on_rule5 = {}) {
    CPK_CHECK(inst.kind() == ProblemKind::Btw);
    BetweennessSet b = inst.btw();
    long long k = inst.k;
    KernelReport rep;
    int n = b.size();
    if (k < 0) {
        rep.rule_trace.push_back({"TRIVIALNO", "", k});
        rep.reduced = trivial_no_instance(ProblemKind::Btw);
        rep.verdict = Verdict::TrivialNo;
        return rep;
    }
    if (n <= 5 * k) {
        rep.reduced = ParamInstance{b, k};
        rep.verdict = Verdict::Reduced;
        return rep;
    }
    SmallKResult sr = solve_small_k(b, k);
    if (!sr.yes) {
        rep.rule_trace.push_back({"SOLVE", "no", k});
        rep.reduced = trivial_no_instance(ProblemKind::Btw);
        rep.verdict = Verdict::TrivialNo;
        return rep;
    }
    long long kk = k;
    std::vector<int> pos(n, -1);
    for (int i = 0; i < n; ++i) pos[sr.order[i]] = i;
    for (auto [x, y, z] : sr.edition) {
        BetweennessSet before = b;
        int mid = pos[x] < pos[y] ? (pos[y] < pos[z] ? y : (pos[x] < pos[z] ? z : x))
                                  : (pos[z] < pos[y] ? y : (pos[z] < pos[x] ? z : x));
        b.set_middle(x, y, z, mid);
        rep.rule_trace.push_back(
            {"RULE5", std::to_string(x) + " " + std::to_string(y) + " " + std::to_string(z), 1});
        if (on_rule5) on_rule5(before, kk, {x, y, z}, b, kk - 1);
        --kk;
    }
    std::string objects = "edition=" + detail::join_triples(sr.edition);
    rep.rule_trace.push_back({"SOLVE", objects, 0});
    rep.reduced = ParamInstance{BetweennessSet(0), kk};
    rep.verdict = Verdict::Reduced;
    return rep;
}

}  // namespace cpk
