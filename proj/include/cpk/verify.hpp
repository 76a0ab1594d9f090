#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cpk/bipartite.hpp"
#include "cpk/check.hpp"
#include "cpk/instances.hpp"
#include "cpk/kernel_btw.hpp"
#include "cpk/kernel_fast.hpp"
#include "cpk/kernel_rti.hpp"
#include "cpk/oracle.hpp"
#include "cpk/rng.hpp"

namespace cpk {

struct PropertyCount {
    std::string name;
    long long checked = 0;
    long long failures = 0;
};

namespace detail {

inline void tally(PropertyCount& pc, bool ok) {
    ++pc.checked;
    if (!ok) ++pc.failures;
}

inline void append(std::vector<PropertyCount>& dst, std::vector<PropertyCount> src) {
    for (auto& pc : src) dst.push_back(std::move(pc));
}

inline bool is_canonical_trivial(const ParamInstance& inst, ProblemKind kind) {
    return write_instance(inst) == write_instance(trivial_no_instance(kind));
}

}  // namespace detail

// ---------- feedback arcs ----------

// decision preserved through the kernel, optimum split across each reversal,
// packing below the optimum; oracle-sized instances only
inline std::vector<PropertyCount> verify_fast_soundness(std::uint64_t seed, long long trials) {
    PropertyCount sound{"fast_soundness"}, split{"fast_rule_split"}, pack{"fast_packing_bound"};
    for (long long i = 0; i < trials; ++i) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        Rng rng(s);
        int n = 4 + static_cast<int>(rng.below(6));
        long long k = static_cast<long long>(rng.below(6));
        Tournament t = (i % 2 == 0) ? generate_planted(ProblemKind::Fast, n, k, s).fast()
                                    : random_tournament(n, rng);
        long long opt = exact_fast_dp(t).optimum;
        detail::tally(pack,
                      static_cast<long long>(greedy_triangle_packing(t).triangles.size()) <= opt);
        FastRuleObserver obs = [&](const Tournament& tb, long long, const auto& f,
                                   const Tournament& ta, long long) {
            detail::tally(split, exact_fast_dp(tb).optimum ==
                                     static_cast<long long>(f.size()) + exact_fast_dp(ta).optimum);
        };
        KernelReport rep = kernelize_fast(ParamInstance{t, k}, obs);
        bool got = rep.verdict == Verdict::Reduced &&
                   exact_fast_dp(rep.reduced.fast()).optimum <= rep.reduced.k;
        detail::tally(sound, got == (opt <= k));
    }
    return {sound, split, pack};
}

inline std::vector<PropertyCount> verify_fast_size(std::uint64_t seed, long long trials) {
    PropertyCount size{"fast_kernel_size"}, trace{"fast_trace_sum"}, triv{"fast_trivial_canonical"};
    for (long long i = 0; i < trials; ++i) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        Rng rng(s);
        int n = 10 + static_cast<int>(rng.below(31));
        long long k = static_cast<long long>(rng.below(9));
        Tournament t = (i % 2 == 0) ? generate_planted(ProblemKind::Fast, n, k, s).fast()
                                    : random_tournament(n, rng);
        KernelReport rep = kernelize_fast(ParamInstance{t, k});
        detail::tally(trace, rep.delta_sum() == k - rep.reduced.k);
        if (rep.verdict == Verdict::Reduced)
            detail::tally(size, rep.reduced.size() <= 4 * rep.reduced.k);
        else
            detail::tally(triv, detail::is_canonical_trivial(rep.reduced, ProblemKind::Fast));
    }
    return {size, trace, triv};
}

inline std::vector<PropertyCount> verify_fast_confinement(std::uint64_t seed, long long trials) {
    PropertyCount conf{"fast_confinement"};
    for (long long i = 0; i < trials; ++i) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        Rng rng(s);
        int n = 10 + static_cast<int>(rng.below(21));
        long long k = static_cast<long long>(rng.below(6));
        Tournament t = generate_planted(ProblemKind::Fast, n, k, s).fast();
        TrianglePacking p = greedy_triangle_packing(t);
        OrderedTournament ot = nice_ordering(t, p);
        bool ok = true;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (a != b && ot.backward(a, b) && !(p.in_covered[a] && p.in_covered[b])) ok = false;
        detail::tally(conf, ok);
    }
    return {conf};
}

// ---------- rooted triplets ----------

inline std::vector<PropertyCount> verify_rti_soundness(std::uint64_t seed, long long trials) {
    PropertyCount sound{"rti_soundness"}, split{"rti_rule_split"}, pack{"rti_packing_bound"};
    for (long long i = 0; i < trials; ++i) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        Rng rng(s);
        int n = 4 + static_cast<int>(rng.below(4));
        long long k = static_cast<long long>(rng.below(4));
        DenseTripletSet r = (i % 2 == 0) ? generate_planted(ProblemKind::Rti, n, k, s).rti()
                                         : random_triplets(n, rng);
        long long opt = exact_rti_enumerate(r).optimum;
        detail::tally(pack,
                      static_cast<long long>(conflict_packing_rti(r).conflicts.size()) <= opt);
        RtiRuleObserver obs = [&](const DenseTripletSet& rb, long long, const auto& f,
                                  const DenseTripletSet& ra, long long) {
            detail::tally(split, exact_rti_enumerate(rb).optimum ==
                                     static_cast<long long>(f.size()) +
                                         exact_rti_enumerate(ra).optimum);
        };
        KernelReport rep = kernelize_rti(ParamInstance{r, k}, obs);
        bool got = rep.verdict == Verdict::Reduced &&
                   exact_rti_enumerate(rep.reduced.rti()).optimum <= rep.reduced.k;
        detail::tally(sound, got == (opt <= k));
    }
    return {sound, split, pack};
}

inline std::vector<PropertyCount> verify_rti_size(std::uint64_t seed, long long trials) {
    PropertyCount size{"rti_kernel_size"}, trace{"rti_trace_sum"}, triv{"rti_trivial_canonical"};
    for (long long i = 0; i < trials; ++i) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        Rng rng(s);
        int n = 8 + static_cast<int>(rng.below(23));
        long long k = static_cast<long long>(rng.below(6));
        DenseTripletSet r = (i % 2 == 0) ? generate_planted(ProblemKind::Rti, n, k, s).rti()
                                         : random_triplets(n, rng);
        KernelReport rep = kernelize_rti(ParamInstance{r, k});
        detail::tally(trace, rep.delta_sum() == k - rep.reduced.k);
        if (rep.verdict == Verdict::Reduced)
            detail::tally(size, rep.reduced.size() <= 5 * rep.reduced.k);
        else
            detail::tally(triv, detail::is_canonical_trivial(rep.reduced, ProblemKind::Rti));
    }
    return {size, trace, triv};
}

inline std::vector<PropertyCount> verify_rti_confinement(std::uint64_t seed, long long trials) {
    PropertyCount conf{"rti_confinement"};
    for (long long i = 0; i < trials; ++i) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        Rng rng(s);
        int n = 10 + static_cast<int>(rng.below(15));
        long long k = static_cast<long long>(rng.below(6));
        DenseTripletSet r = generate_planted(ProblemKind::Rti, n, k, s).rti();
        RtiPacking p = conflict_packing_rti(r);
        EmbeddedInstance ei = nice_tree(r, p);
        bool ok = true;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c)
                    if (!r.consistent_with(ei.tree, a, b, c) &&
                        !(p.in_covered[a] && p.in_covered[b] && p.in_covered[c]))
                        ok = false;
        detail::tally(conf, ok);
    }
    return {conf};
}

// ---------- betweenness ----------

inline std::vector<PropertyCount> verify_btw_small_k(std::uint64_t seed, long long trials) {
    PropertyCount answer{"btw_small_k_answer"}, edition{"btw_small_k_edition"},
        gate{"btw_kernel_answer"}, pack{"btw_packing_bound"};
    for (long long i = 0; i < trials; ++i) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        Rng rng(s);
        int n = 5 + static_cast<int>(rng.below(4));
        long long k = static_cast<long long>(rng.below(n >= 6 ? 2 : 1));
        BetweennessSet b = (i % 2 == 0) ? generate_planted(ProblemKind::Btw, n, k, s).btw()
                                        : random_betweenness(n, rng);
        long long opt = exact_btw_enumerate(b).optimum;
        detail::tally(pack,
                      static_cast<long long>(conflict_packing_btw(b).conflicts.size()) <= opt);
        SmallKResult res = solve_small_k(b, k);
        detail::tally(answer, res.yes == (opt <= k));
        if (res.yes) {
            BetweennessSet fixed = b;
            std::vector<int> pos(n, -1);
            for (int j = 0; j < n; ++j) pos[res.order[j]] = j;
            for (auto [x, y, z] : res.edition) {
                int mid = pos[x] < pos[y]
                              ? (pos[y] < pos[z] ? y : (pos[x] < pos[z] ? z : x))
                              : (pos[z] < pos[y] ? y : (pos[z] < pos[x] ? z : x));
                fixed.set_middle(x, y, z, mid);
            }
            bool consistent = consistent_ordering_btw(fixed).order.has_value();
            detail::tally(edition, static_cast<long long>(res.edition.size()) <= k &&
                                       static_cast<long long>(res.edition.size()) == opt &&
                                       consistent);
        }
        KernelReport rep = kernelize_btw(ParamInstance{b, k});
        detail::tally(gate, (rep.verdict == Verdict::Reduced) == (opt <= k));
    }
    return {answer, edition, gate, pack};
}

inline std::vector<PropertyCount> verify_btw_kernel(std::uint64_t seed, long long trials) {
    PropertyCount size{"btw_kernel_size"}, trace{"btw_trace_sum"}, triv{"btw_trivial_canonical"};
    for (long long i = 0; i < trials; ++i) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        Rng rng(s);
        int n = 6 + static_cast<int>(rng.below(35));
        long long k = static_cast<long long>(rng.below(9));
        BetweennessSet b = (i % 2 == 0) ? generate_planted(ProblemKind::Btw, n, k, s).btw()
                                        : random_betweenness(n, rng);
        KernelReport rep = kernelize_btw(ParamInstance{b, k});
        detail::tally(trace, rep.delta_sum() == k - rep.reduced.k);
        if (rep.verdict == Verdict::Reduced)
            detail::tally(size, rep.reduced.size() <= 5 * rep.reduced.k);
        else
            detail::tally(triv, detail::is_canonical_trivial(rep.reduced, ProblemKind::Btw));
    }
    return {size, trace, triv};
}

inline std::vector<PropertyCount> verify_btw_confinement(std::uint64_t seed, long long trials) {
    PropertyCount conf{"btw_confinement"};
    for (long long i = 0; i < trials; ++i) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        Rng rng(s);
        int n = 10 + static_cast<int>(rng.below(21));
        long long k = static_cast<long long>(rng.below(6));
        BetweennessSet b = generate_planted(ProblemKind::Btw, n, k, s).btw();
        BtwPacking p = conflict_packing_btw(b);
        if (!p.covered.empty() && static_cast<int>(p.covered.size()) > n - 2) {
            detail::tally(conf, true);  // no anchors to place the rest against
            continue;
        }
        OrderedBetweenness ob = nice_ordering_btw(b, p);
        bool ok = true;
        for (auto [x, y, z] : inconsistent_triples_btw(ob))
            if (!(p.in_covered[x] && p.in_covered[y] && p.in_covered[z])) ok = false;
        detail::tally(conf, ok);
    }
    return {conf};
}

// ---------- bipartite machinery ----------

namespace detail {

inline int brute_min_cover(const BipartiteGraph& g) {
    int total = g.left + g.right;
    int best = total;
    for (int mask = 0; mask < (1 << total); ++mask) {
        bool covers = true;
        for (int l = 0; l < g.left && covers; ++l)
            for (int r : g.adj[l])
                if (!(mask >> l & 1) && !(mask >> (g.left + r) & 1)) {
                    covers = false;
                    break;
                }
        if (covers) best = std::min(best, __builtin_popcount(static_cast<unsigned>(mask)));
    }
    return best;
}

inline void check_konig(const BipartiteGraph& g, PropertyCount& konig) {
    auto matching = maximum_matching(g);
    CoverAndMatching cm = minimum_vertex_cover(g, matching);
    int brute = brute_min_cover(g);
    tally(konig, static_cast<int>(matching.size()) == brute &&
                     static_cast<int>(cm.cover_size()) == brute);
}

inline void check_hall(const BipartiteGraph& g, Rng& rng, PropertyCount& hall) {
    std::vector<int> iprime;
    for (int l = 0; l < g.left; ++l)
        if (rng.coin()) iprime.push_back(l);
    MatchIntoResult res = match_into(g, iprime);
    bool hall_holds = true;
    int m = static_cast<int>(iprime.size());
    for (int mask = 1; mask < (1 << m); ++mask) {
        std::vector<char> nb(static_cast<std::size_t>(g.right), 0);
        int cnt = 0, nbcnt = 0;
        for (int i = 0; i < m; ++i)
            if (mask >> i & 1) {
                ++cnt;
                for (int r : g.adj[iprime[i]])
                    if (!nb[r]) {
                        nb[r] = 1;
                        ++nbcnt;
                    }
            }
        if (nbcnt < cnt) hall_holds = false;
    }
    bool ok = res.ok == hall_holds;
    if (res.ok) {
        std::vector<char> used(static_cast<std::size_t>(g.right), 0);
        ok = ok && res.map.size() == iprime.size();
        for (auto [l, r] : res.map) {
            if (!g.has_edge(l, r) || used[r]) ok = false;
            used[r] = 1;
        }
    } else {
        std::vector<char> nb(static_cast<std::size_t>(g.right), 0);
        int nbcnt = 0;
        for (int l : res.violator) {
            if (!std::binary_search(iprime.begin(), iprime.end(), l)) ok = false;
            for (int r : g.adj[l])
                if (!nb[r]) {
                    nb[r] = 1;
                    ++nbcnt;
                }
        }
        ok = ok && nbcnt < static_cast<int>(res.violator.size());
    }
    tally(hall, ok);
}

}  // namespace detail

// exhaustive small shapes plus random graphs, against subset-enumerated covers
inline std::vector<PropertyCount> verify_bipartite(std::uint64_t seed, long long trials) {
    PropertyCount konig{"konig_equality"}, hall{"hall_matching"};
    const std::vector<std::pair<int, int>> shapes{{1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 2},
                                                  {2, 3}, {3, 2}, {1, 4}, {4, 1}, {2, 4}, {4, 2},
                                                  {3, 3}, {1, 5}, {5, 1}, {3, 4}, {4, 3}, {2, 5},
                                                  {5, 2}, {4, 4}, {2, 6}, {6, 2}, {1, 8}, {8, 1}};
    for (auto [l, r] : shapes) {
        int edges = l * r;
        for (int mask = 0; mask < (1 << edges); ++mask) {
            BipartiteGraph g(l, r);
            for (int e = 0; e < edges; ++e)
                if (mask >> e & 1) g.add_edge(e / r, e % r);
            g.finish();
            detail::check_konig(g, konig);
        }
    }
    for (long long i = 0; i < trials; ++i) {
        Rng rng(seed + static_cast<std::uint64_t>(i));
        int l = 1 + static_cast<int>(rng.below(6));
        int r = 1 + static_cast<int>(rng.below(6));
        BipartiteGraph g(l, r);
        for (int a = 0; a < l; ++a)
            for (int b = 0; b < r; ++b)
                if (rng.coin()) g.add_edge(a, b);
        g.finish();
        detail::check_konig(g, konig);
        detail::check_hall(g, rng, hall);
    }
    return {konig, hall};
}

// ---------- exhaustive characterizations on 4 and 5 elements ----------

// four-leaf sufficiency: a dense triplet set embeds in a tree exactly when
// every 4-subset does
inline PropertyCount verify_rti_characterization() {
    PropertyCount pc{"rti_four_leaf_characterization"};
    for (int n = 4; n <= 5; ++n) {
        const TreeTable& tt = tree_table(n);
        std::vector<std::vector<std::uint8_t>> realizable = tt.profile;
        std::sort(realizable.begin(), realizable.end());
        int tcount = static_cast<int>(tt.triples.size());
        std::vector<std::uint8_t> digits(static_cast<std::size_t>(tcount), 0);
        while (true) {
            DenseTripletSet r(n);
            for (int ti = 0; ti < tcount; ++ti) {
                auto [a, b, c] = tt.triples[ti];
                r.set_chosen(a, b, c, digits[ti] == 0 ? a : (digits[ti] == 1 ? b : c));
            }
            bool tree_exists = std::binary_search(realizable.begin(), realizable.end(),
                                                  detail::triple_profile(r));
            bool conflict_free = !find_conflict4(r).has_value();
            detail::tally(pc, tree_exists == conflict_free);
            int d = 0;
            while (d < tcount && digits[d] == 2) digits[d++] = 0;
            if (d == tcount) break;
            ++digits[d];
        }
    }
    return pc;
}

// four-vertex sufficiency: betweenness constraints are realizable exactly
// when every 4-subset is
inline PropertyCount verify_btw_characterization() {
    PropertyCount pc{"btw_four_vertex_characterization"};
    for (int n = 4; n <= 5; ++n) {
        const OrderTable& ot = order_table(n);
        std::vector<std::vector<std::uint8_t>> realizable = ot.profile;
        std::sort(realizable.begin(), realizable.end());
        int tcount = static_cast<int>(ot.triples.size());
        std::vector<std::uint8_t> digits(static_cast<std::size_t>(tcount), 0);
        while (true) {
            BetweennessSet b(n);
            for (int ti = 0; ti < tcount; ++ti) {
                auto [x, y, z] = ot.triples[ti];
                b.set_middle(x, y, z, digits[ti] == 0 ? x : (digits[ti] == 1 ? y : z));
            }
            bool order_exists = std::binary_search(realizable.begin(), realizable.end(),
                                                   detail::triple_profile(b));
            bool conflict_free = !find_conflict4_btw(b).has_value();
            detail::tally(pc, order_exists == conflict_free);
            int d = 0;
            while (d < tcount && digits[d] == 2) digits[d++] = 0;
            if (d == tcount) break;
            ++digits[d];
        }
    }
    return pc;
}

// span condition: with a single edited triplet, a fourth leaf completes a
// conflict exactly when it sits under the triplet's root
inline PropertyCount verify_span_condition() {
    PropertyCount pc{"rti_span_condition"};
    for (int n = 4; n <= 5; ++n) {
        for (const RootedBinaryTree& t : all_binary_trees(n)) {
            DenseTripletSet base = DenseTripletSet::from_tree(t);
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    for (int c = b + 1; c < n; ++c) {
                        int iso = t.isolated_label(a, b, c);
                        std::vector<int> span = t.leaves_below(
                            t.lca(t.lca(t.node_of_label(a), t.node_of_label(b)),
                                  t.node_of_label(c)));
                        for (int wrong : {a, b, c}) {
                            if (wrong == iso) continue;
                            DenseTripletSet r = base;
                            r.set_chosen(a, b, c, wrong);
                            for (int d = 0; d < n; ++d) {
                                if (d == a || d == b || d == c) continue;
                                std::array<int, 4> q{a, b, c, d};
                                std::sort(q.begin(), q.end());
                                bool in_span = std::binary_search(span.begin(), span.end(), d);
                                detail::tally(pc, is_conflict4(r, q) == in_span);
                            }
                        }
                    }
        }
    }
    return pc;
}

// quiet extension: with a single edited middle, every fourth vertex
// completes a conflict, no locality condition needed
inline PropertyCount verify_quiet_extension() {
    PropertyCount pc{"btw_quiet_extension"};
    for (int n = 4; n <= 5; ++n) {
        const OrderTable& ot = order_table(n);
        for (const std::vector<int>& order : ot.orders) {
            BetweennessSet base = BetweennessSet::from_order(order);
            for (int x = 0; x < n; ++x)
                for (int y = x + 1; y < n; ++y)
                    for (int z = y + 1; z < n; ++z) {
                        int mid = base.middle(x, y, z);
                        for (int wrong : {x, y, z}) {
                            if (wrong == mid) continue;
                            BetweennessSet b = base;
                            b.set_middle(x, y, z, wrong);
                            for (int d = 0; d < n; ++d) {
                                if (d == x || d == y || d == z) continue;
                                std::array<int, 4> q{x, y, z, d};
                                std::sort(q.begin(), q.end());
                                detail::tally(pc, is_conflict4_btw(b, q));
                            }
                        }
                    }
        }
    }
    return pc;
}

inline std::vector<PropertyCount> verify_characterizations() {
    return {verify_rti_characterization(), verify_btw_characterization(), verify_span_condition(),
            verify_quiet_extension()};
}

// ---------- per-problem bundles for the command line ----------

inline std::vector<PropertyCount> verify_problem(ProblemKind kind, std::uint64_t seed,
                                                 long long trials) {
    std::vector<PropertyCount> out;
    switch (kind) {
        case ProblemKind::Fast:
            detail::append(out, verify_fast_soundness(seed, trials));
            detail::append(out, verify_fast_size(seed + 1000000, trials));
            detail::append(out, verify_fast_confinement(seed + 2000000, trials));
            break;
        case ProblemKind::Rti:
            detail::append(out, verify_rti_soundness(seed, trials));
            detail::append(out, verify_rti_size(seed + 1000000, trials));
            detail::append(out, verify_rti_confinement(seed + 2000000, trials));
            break;
        case ProblemKind::Btw:
            detail::append(out, verify_btw_small_k(seed, trials));
            detail::append(out, verify_btw_kernel(seed + 1000000, trials));
            detail::append(out, verify_btw_confinement(seed + 2000000, trials));
            break;
    }
    return out;
}

}  // namespace cpk
