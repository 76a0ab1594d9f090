#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cpk/check.hpp"
#include "cpk/rng.hpp"
#include "cpk/tree.hpp"

namespace cpk {

enum class ProblemKind { Fast, Rti, Btw };

inline const char* kind_name(ProblemKind k) {
    switch (k) {
        case ProblemKind::Fast: return "FAST";
        case ProblemKind::Rti: return "RTI";
        case ProblemKind::Btw: return "BTW";
    }
    throw internal_error("bad kind");
}

inline long long pairs_of(int n) { return static_cast<long long>(n) * (n - 1) / 2; }
inline long long triples_of(int n) {
    return static_cast<long long>(n) * (n - 1) * (n - 2) / 6;
}

namespace detail {
// index of pair (u,v), u < v, in lexicographic pair order
inline std::size_t pair_index(int n, int u, int v) {
    CPK_CHECK(0 <= u && u < v && v < n);
    std::size_t off = static_cast<std::size_t>(u) * (n - 1) - static_cast<std::size_t>(u) * (u - 1) / 2;
    return off + static_cast<std::size_t>(v - u - 1);
}

// colex index of triple a < b < c; runs over 0..C(n,3)-1
inline std::size_t triple_index(int a, int b, int c) {
    CPK_CHECK(0 <= a && a < b && b < c);
    return static_cast<std::size_t>(a) + static_cast<std::size_t>(b) * (b - 1) / 2 +
           static_cast<std::size_t>(c) * (c - 1) * (c - 2) / 6;
}

inline void sort3(int& a, int& b, int& c) {
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
}
}  // namespace detail

// Complete directed graph: exactly one arc per vertex pair.
class Tournament {
public:
    Tournament() = default;

    // all arcs oriented low id -> high id (transitive)
    explicit Tournament(int n) : n_(n), up_(static_cast<std::size_t>(pairs_of(n)), 1) {
        CPK_CHECK(n >= 0);
    }

    // order[i] beats order[j] for i < j
    static Tournament from_order(const std::vector<int>& order) {
        Tournament t(static_cast<int>(order.size()));
        for (std::size_t i = 0; i < order.size(); ++i)
            for (std::size_t j = i + 1; j < order.size(); ++j) t.orient(order[i], order[j]);
        return t;
    }

    int size() const { return n_; }

    bool arc(int u, int v) const {
        CPK_CHECK(u != v);
        if (u < v) return up_[detail::pair_index(n_, u, v)] != 0;
        return up_[detail::pair_index(n_, v, u)] == 0;
    }

    void orient(int u, int v) {  // make the arc point u -> v
        CPK_CHECK(u != v);
        if (u < v)
            up_[detail::pair_index(n_, u, v)] = 1;
        else
            up_[detail::pair_index(n_, v, u)] = 0;
    }

    void flip(int u, int v) {
        if (arc(u, v))
            orient(v, u);
        else
            orient(u, v);
    }

    // subtournament on `keep` (ascending), relabeled to 0..keep.size()-1
    Tournament restrict(const std::vector<int>& keep) const {
        Tournament t(static_cast<int>(keep.size()));
        for (std::size_t i = 0; i < keep.size(); ++i)
            for (std::size_t j = i + 1; j < keep.size(); ++j)
                if (!arc(keep[i], keep[j])) t.orient(static_cast<int>(j), static_cast<int>(i));
        return t;
    }

    bool operator==(const Tournament&) const = default;

private:
    int n_ = 0;
    std::vector<std::uint8_t> up_;
};

// Dense set of rooted triplets: one choice ab|c per 3-subset, stored as the
// position of the chosen (isolated) element within the sorted triple.
class DenseTripletSet {
public:
    DenseTripletSet() = default;

    // defaults to the set displayed by the ascending left comb: xy|z for x<y<z
    explicit DenseTripletSet(int n)
        : n_(n), choice_(static_cast<std::size_t>(triples_of(n)), 2) {
        CPK_CHECK(n >= 0);
    }

    static DenseTripletSet from_tree(const RootedBinaryTree& t) {
        int n = t.leaf_count();
        DenseTripletSet r(n);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c) r.set_chosen(a, b, c, t.isolated_label(a, b, c));
        return r;
    }

    int size() const { return n_; }

    // the leaf the triplet on {a,b,c} isolates ("chooses")
    int chosen(int a, int b, int c) const {
        detail::sort3(a, b, c);
        int p = choice_[detail::triple_index(a, b, c)];
        return p == 0 ? a : (p == 1 ? b : c);
    }

    void set_chosen(int a, int b, int c, int w) {
        detail::sort3(a, b, c);
        CPK_CHECK(w == a || w == b || w == c);
        choice_[detail::triple_index(a, b, c)] = static_cast<std::uint8_t>(w == a ? 0 : (w == b ? 1 : 2));
    }

    bool consistent_with(const RootedBinaryTree& t, int a, int b, int c) const {
        return t.isolated_label(a, b, c) == chosen(a, b, c);
    }

    DenseTripletSet restrict(const std::vector<int>& keep) const {
        int m = static_cast<int>(keep.size());
        DenseTripletSet r(m);
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                for (int c = b + 1; c < m; ++c) {
                    int w = chosen(keep[a], keep[b], keep[c]);
                    r.set_chosen(a, b, c, w == keep[a] ? a : (w == keep[b] ? b : c));
                }
        return r;
    }

    bool operator==(const DenseTripletSet&) const = default;

private:
    int n_ = 0;
    std::vector<std::uint8_t> choice_;
};

// Dense betweenness constraints: one middle per 3-subset.
class BetweennessSet {
public:
    BetweennessSet() = default;

    // defaults to the middles of the identity ordering: y for x<y<z
    explicit BetweennessSet(int n)
        : n_(n), mid_(static_cast<std::size_t>(triples_of(n)), 1) {
        CPK_CHECK(n >= 0);
    }

    static BetweennessSet from_order(const std::vector<int>& order) {
        int n = static_cast<int>(order.size());
        std::vector<int> pos(n);
        for (int i = 0; i < n; ++i) pos[order[i]] = i;
        BetweennessSet b(n);
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                for (int z = y + 1; z < n; ++z) {
                    int m = y;
                    if ((pos[x] < pos[y]) == (pos[y] < pos[z]))
                        m = y;
                    else if ((pos[y] < pos[x]) == (pos[x] < pos[z]))
                        m = x;
                    else
                        m = z;
                    b.set_middle(x, y, z, m);
                }
        return b;
    }

    int size() const { return n_; }

    int middle(int a, int b, int c) const {
        detail::sort3(a, b, c);
        int p = mid_[detail::triple_index(a, b, c)];
        return p == 0 ? a : (p == 1 ? b : c);
    }

    void set_middle(int a, int b, int c, int w) {
        detail::sort3(a, b, c);
        CPK_CHECK(w == a || w == b || w == c);
        mid_[detail::triple_index(a, b, c)] = static_cast<std::uint8_t>(w == a ? 0 : (w == b ? 1 : 2));
    }

    // pos: vertex -> position in an ordering
    bool consistent_with(const std::vector<int>& pos, int a, int b, int c) const {
        int m = middle(a, b, c), x = a == m ? b : a, z = c == m ? b : c;
        return (pos[x] < pos[m]) != (pos[z] < pos[m]);
    }

    BetweennessSet restrict(const std::vector<int>& keep) const {
        int m = static_cast<int>(keep.size());
        BetweennessSet r(m);
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                for (int c = b + 1; c < m; ++c) {
                    int w = middle(keep[a], keep[b], keep[c]);
                    r.set_middle(a, b, c, w == keep[a] ? a : (w == keep[b] ? b : c));
                }
        return r;
    }

    bool operator==(const BetweennessSet&) const = default;

private:
    int n_ = 0;
    std::vector<std::uint8_t> mid_;
};

struct ParamInstance {
    std::variant<Tournament, DenseTripletSet, BetweennessSet> payload;
    long long k = 0;

    ProblemKind kind() const { return static_cast<ProblemKind>(payload.index()); }

    int size() const {
        return std::visit([](const auto& p) { return p.size(); }, payload);
    }

    const Tournament& fast() const { return std::get<Tournament>(payload); }
    const DenseTripletSet& rti() const { return std::get<DenseTripletSet>(payload); }
    const BetweennessSet& btw() const { return std::get<BetweennessSet>(payload); }
};

enum class Verdict { Reduced, TrivialNo };

struct TraceEntry {
    std::string rule;     // RULE1..RULE5, SOLVE, TRIVIALNO
    std::string objects;  // preformatted object list
    long long dk = 0;

    std::string line() const {
        if (rule == "RULE1" || rule == "RULE3") return rule + " removed=" + objects;
        if (rule == "RULE2") return rule + " reversed=" + objects + " dk=" + std::to_string(dk);
        if (rule == "RULE4") return rule + " edited=" + objects + " dk=" + std::to_string(dk);
        if (rule == "RULE5") return rule + " edited=" + objects;
        if (rule == "SOLVE") return rule + " " + objects;
        if (rule == "TRIVIALNO") return rule + " dk=" + std::to_string(dk);
        throw internal_error("unknown trace rule " + rule);
    }
};

struct KernelReport {
    ParamInstance reduced;
    std::vector<TraceEntry> rule_trace;
    Verdict verdict = Verdict::Reduced;

    long long delta_sum() const {
        long long s = 0;
        for (const auto& e : rule_trace) s += e.dk;
        return s;
    }
};

// ---------- text format ----------

namespace detail {

// line-oriented reader so parse errors can say where they happened
struct LineReader {
    std::istream& in;
    long long line_no = 0;

    bool next(std::string& out) {
        while (std::getline(in, out)) {
            ++line_no;
            if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    }

    [[noreturn]] void fail(long long at, const std::string& msg) const {
        throw parse_error("line " + std::to_string(at) + ": " + msg);
    }
};

inline std::vector<long long> split_ints(const std::string& s, LineReader& lr) {
    std::istringstream ls(s);
    std::vector<long long> vals;
    long long v;
    while (ls >> v) vals.push_back(v);
    ls.clear();
    std::string junk;
    if (ls >> junk) lr.fail(lr.line_no, "non-numeric token '" + junk + "'");
    return vals;
}

}  // namespace detail

inline ParamInstance parse_instance(std::istream& in) {
    detail::LineReader lr{in};
    std::string line;
    if (!lr.next(line)) lr.fail(1, "empty input");
    long long header_at = lr.line_no;
    std::istringstream hs(line);
    std::string tag;
    hs >> tag;
    long long n_raw, k;
    if (!(hs >> n_raw >> k)) lr.fail(header_at, "malformed header: missing size/budget");
    std::string junk;
    if (hs >> junk) lr.fail(header_at, "malformed header: trailing token '" + junk + "'");
    if (tag != "FAST" && tag != "RTI" && tag != "BTW")
        lr.fail(header_at, "malformed header: unknown tag '" + tag + "'");
    if (n_raw < 0) lr.fail(header_at, "malformed header: negative size");
    if (n_raw > 100000) lr.fail(header_at, "malformed header: size too large");
    if (k < 0) lr.fail(header_at, "malformed header: k < 0");
    int n = static_cast<int>(n_raw);
    std::size_t width = tag == "FAST" ? 2 : 3;
    auto read_ids = [&](const char* missing_msg) {
        if (!lr.next(line)) lr.fail(lr.line_no + 1, missing_msg);
        std::vector<long long> vals = detail::split_ints(line, lr);
        if (vals.size() != width)
            lr.fail(lr.line_no, "expected " + std::to_string(width) + " ids, got " +
                                    std::to_string(vals.size()));
        for (long long v : vals)
            if (v < 0 || v >= n) lr.fail(lr.line_no, "id out of range");
        return vals;
    };
    auto expect_eof = [&] {
        if (lr.next(line)) lr.fail(lr.line_no, "trailing content after instance");
    };

    if (tag == "FAST") {
        Tournament t(n);
        std::vector<std::uint8_t> seen(static_cast<std::size_t>(pairs_of(n)), 0);
        for (long long i = 0; i < pairs_of(n); ++i) {
            std::vector<long long> ids = read_ids("missing pair");
            int u = static_cast<int>(ids[0]), v = static_cast<int>(ids[1]);
            if (u == v) lr.fail(lr.line_no, "self-loop arc");
            auto idx = detail::pair_index(n, std::min(u, v), std::max(u, v));
            if (seen[idx]) lr.fail(lr.line_no, "duplicate pair");
            seen[idx] = 1;
            t.orient(u, v);
        }
        expect_eof();
        return ParamInstance{t, k};
    }
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(triples_of(n)), 0);
    DenseTripletSet r;
    BetweennessSet b;
    if (tag == "RTI")
        r = DenseTripletSet(n);
    else
        b = BetweennessSet(n);
    for (long long i = 0; i < triples_of(n); ++i) {
        std::vector<long long> ids = read_ids("missing triple");
        int x = static_cast<int>(ids[0]), y = static_cast<int>(ids[1]), z = static_cast<int>(ids[2]);
        if (x == y || y == z || x == z) lr.fail(lr.line_no, "triple members not distinct");
        int a = x, bb = y, c = z;
        detail::sort3(a, bb, c);
        auto idx = detail::triple_index(a, bb, c);
        if (seen[idx]) lr.fail(lr.line_no, "duplicate triple");
        seen[idx] = 1;
        if (tag == "RTI")
            r.set_chosen(x, y, z, z);  // line "x y z" reads as xy|z
        else
            b.set_middle(x, y, z, y);  // line "x y z" reads as middle y
    }
    expect_eof();
    if (tag == "RTI") return ParamInstance{r, k};
    return ParamInstance{b, k};
}

inline ParamInstance parse_instance(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_instance(in);
}

inline void write_instance(std::ostream& out, const ParamInstance& inst) {
    int n = inst.size();
    out << kind_name(inst.kind()) << ' ' << n << ' ' << inst.k << '\n';
    switch (inst.kind()) {
        case ProblemKind::Fast: {
            const auto& t = inst.fast();
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) {
                    if (t.arc(u, v))
                        out << u << ' ' << v << '\n';
                    else
                        out << v << ' ' << u << '\n';
                }
            break;
        }
        case ProblemKind::Rti: {
            const auto& r = inst.rti();
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    for (int c = b + 1; c < n; ++c) {
                        int w = r.chosen(a, b, c);
                        int p = a == w ? b : a, q = c == w ? b : c;
                        out << p << ' ' << q << ' ' << w << '\n';
                    }
            break;
        }
        case ProblemKind::Btw: {
            const auto& b = inst.btw();
            for (int x = 0; x < n; ++x)
                for (int y = x + 1; y < n; ++y)
                    for (int z = y + 1; z < n; ++z) {
                        int m = b.middle(x, y, z);
                        int p = x == m ? y : x, q = z == m ? y : z;
                        out << p << ' ' << m << ' ' << q << '\n';
                    }
            break;
        }
    }
}

inline std::string write_instance(const ParamInstance& inst) {
    std::ostringstream out;
    write_instance(out, inst);
    return out.str();
}

// ---------- canonical trivial No-instances ----------

inline ParamInstance trivial_no_instance(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::Fast: {
            Tournament t(3);  // directed triangle 0 -> 1 -> 2 -> 0
            t.orient(2, 0);
            return ParamInstance{t, 0};
        }
        case ProblemKind::Rti: {
            // {01|2, 03|1, 02|3, 23|1}: a conflict for every re-choice on {1,2,3}
            DenseTripletSet r(4);
            r.set_chosen(0, 1, 2, 2);
            r.set_chosen(0, 1, 3, 1);
            r.set_chosen(0, 2, 3, 3);
            r.set_chosen(1, 2, 3, 1);
            return ParamInstance{r, 0};
        }
        case ProblemKind::Btw: {
            // middles of ordering 0<1<2<3 with the middle of {0,1,2} flipped to 0
            BetweennessSet b(4);
            b.set_middle(0, 1, 2, 0);
            return ParamInstance{b, 0};
        }
    }
    throw internal_error("bad kind");
}

// ---------- planted generator ----------

struct PlantedInstance {
    ParamInstance inst;
    std::string truth;  // sidecar text: ground truth + planted perturbations
};

inline PlantedInstance generate_planted_with_truth(ProblemKind kind, int n, long long k,
                                                   std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("generator needs n >= 3");
    if (k < 0) throw std::invalid_argument("negative budget");
    long long objects = kind == ProblemKind::Fast ? pairs_of(n) : triples_of(n);
    if (k > objects) throw std::invalid_argument("budget exceeds object count");

    Rng rng(seed);
    std::ostringstream truth;
    ParamInstance inst;

    switch (kind) {
        case ProblemKind::Fast: {
            auto order = rng.permutation(n);
            Tournament t = Tournament::from_order(order);
            truth << "order";
            for (int v : order) truth << ' ' << v;
            truth << '\n';
            for (auto idx : rng.sample(static_cast<std::uint64_t>(objects),
                                       static_cast<std::uint64_t>(k))) {
                // decode lexicographic pair index
                int u = 0;
                auto rest = static_cast<long long>(idx);
                while (rest >= n - 1 - u) rest -= n - 1 - u, ++u;
                int v = u + 1 + static_cast<int>(rest);
                t.flip(u, v);
                truth << "reversed " << u << ' ' << v << '\n';
            }
            inst = ParamInstance{t, k};
            break;
        }
        case ProblemKind::Rti:
        case ProblemKind::Btw: {
            // decode colex triple indices via direct enumeration
            std::vector<std::array<int, 3>> triples;
            triples.reserve(static_cast<std::size_t>(objects));
            for (int c = 2; c < n; ++c)
                for (int b = 1; b < c; ++b)
                    for (int a = 0; a < b; ++a) triples.push_back({a, b, c});
            auto picks = rng.sample(static_cast<std::uint64_t>(objects),
                                    static_cast<std::uint64_t>(k));
            if (kind == ProblemKind::Rti) {
                RootedBinaryTree t;
                t.set_root(t.add_leaf(0));
                for (int lab = 1; lab < n; ++lab) {
                    int leaf = t.add_leaf(lab);
                    auto pos = rng.below(static_cast<std::uint64_t>(2 * lab - 1));
                    if (pos == 0) {
                        t.insert_leaf_above_root(leaf);
                    } else {
                        // skip over the root and the fresh leaf itself
                        int target = -1;
                        std::uint64_t seen = 0;
                        for (int v = 0; v < t.node_count(); ++v) {
                            if (v == t.root() || v == leaf) continue;
                            if (++seen == pos) {
                                target = v;
                                break;
                            }
                        }
                        t.insert_leaf_on_edge(leaf, target);
                    }
                }
                DenseTripletSet r = DenseTripletSet::from_tree(t);
                truth << "tree " << t.newick() << '\n';
                for (auto idx : picks) {
                    auto [a, b, c] = triples[static_cast<std::size_t>(idx)];
                    int cur = r.chosen(a, b, c);
                    std::array<int, 3> others;
                    int m = 0;
                    for (int w : {a, b, c})
                        if (w != cur) others[m++] = w;
                    int nw = others[rng.below(2)];
                    r.set_chosen(a, b, c, nw);
                    int p = a == nw ? b : a, q = c == nw ? b : c;
                    truth << "edited " << p << ' ' << q << ' ' << nw << '\n';
                }
                inst = ParamInstance{r, k};
            } else {
                auto order = rng.permutation(n);
                BetweennessSet bset = BetweennessSet::from_order(order);
                truth << "order";
                for (int v : order) truth << ' ' << v;
                truth << '\n';
                for (auto idx : picks) {
                    auto [a, b, c] = triples[static_cast<std::size_t>(idx)];
                    int cur = bset.middle(a, b, c);
                    std::array<int, 3> others;
                    int m = 0;
                    for (int w : {a, b, c})
                        if (w != cur) others[m++] = w;
                    int nw = others[rng.below(2)];
                    bset.set_middle(a, b, c, nw);
                    int p = a == nw ? b : a, q = c == nw ? b : c;
                    truth << "edited " << p << ' ' << nw << ' ' << q << '\n';
                }
                inst = ParamInstance{bset, k};
            }
            break;
        }
    }
    return PlantedInstance{std::move(inst), truth.str()};
}

inline ParamInstance generate_planted(ProblemKind kind, int n, long long k, std::uint64_t seed) {
    return generate_planted_with_truth(kind, n, k, seed).inst;
}

// uniform random instances for the verification harness
inline Tournament random_tournament(int n, Rng& rng) {
    Tournament t(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.coin()) t.orient(v, u);
    return t;
}

inline DenseTripletSet random_triplets(int n, Rng& rng) {
    DenseTripletSet r(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                int pick = static_cast<int>(rng.below(3));
                r.set_chosen(a, b, c, pick == 0 ? a : (pick == 1 ? b : c));
            }
    return r;
}

inline BetweennessSet random_betweenness(int n, Rng& rng) {
    BetweennessSet b(n);
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            for (int z = y + 1; z < n; ++z) {
                int pick = static_cast<int>(rng.below(3));
                b.set_middle(x, y, z, pick == 0 ? x : (pick == 1 ? y : z));
            }
    return b;
}

}  // namespace cpk
