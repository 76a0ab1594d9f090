#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "cpk/kernel_btw.hpp"
#include "cpk/oracle.hpp"
#include "cpk/verify.hpp"

using namespace cpk;

namespace {

// identity order on n vertices with the middle of {0,1,2} rewritten to 0
BetweennessSet flipped_identity(int n) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    BetweennessSet b = BetweennessSet::from_order(order);
    b.set_middle(0, 1, 2, 0);
    return b;
}

// the three triples through vertex 3 admit no order, whatever {0,1,2} does
BetweennessSet anchored_conflict() {
    BetweennessSet b(4);
    b.set_middle(0, 1, 3, 3);
    b.set_middle(0, 2, 3, 0);
    b.set_middle(1, 2, 3, 1);
    return b;
}

}  // namespace

TEST_CASE("four vertex conflicts match order realizability") {
    for (const std::vector<int>& ord :
         {std::vector<int>{0, 1, 2, 3}, std::vector<int>{2, 0, 3, 1}}) {
        BetweennessSet b = BetweennessSet::from_order(ord);
        REQUIRE(!is_conflict4_btw(b, {0, 1, 2, 3}));
        REQUIRE(!find_conflict4_btw(b).has_value());
    }
    REQUIRE(is_conflict4_btw(flipped_identity(4), {0, 1, 2, 3}));
    REQUIRE(is_conflict4_btw(anchored_conflict(), {0, 1, 2, 3}));
    REQUIRE(find_conflict4_btw(flipped_identity(5)) == std::array<int, 4>{0, 1, 2, 3});
}

TEST_CASE("consistent ordering recovers orders up to reversal") {
    BetweennessSet b = BetweennessSet::from_order({4, 2, 0, 3, 1});
    BtwOrderingResult res = consistent_ordering_btw(b);
    REQUIRE(res.order.has_value());
    REQUIRE(*res.order == std::vector<int>{1, 3, 0, 2, 4});  // front < back orientation

    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> ord(7);
        std::iota(ord.begin(), ord.end(), 0);
        for (int i = 6; i > 0; --i) std::swap(ord[i], ord[rng.below(i + 1)]);
        BtwOrderingResult r = consistent_ordering_btw(BetweennessSet::from_order(ord));
        REQUIRE(r.order.has_value());
        std::vector<int> rev(ord.rbegin(), ord.rend());
        REQUIRE((*r.order == ord || *r.order == rev));
    }
}

TEST_CASE("ordering failure pins a four vertex conflict") {
    BtwOrderingResult res = consistent_ordering_btw(flipped_identity(6));
    REQUIRE(!res.order.has_value());
    REQUIRE(is_conflict4_btw(flipped_identity(6), res.conflict));
}

TEST_CASE("seed vertices keep the conflict under any rechoice of the far triple") {
    REQUIRE(btw_seed(anchored_conflict(), {0, 1, 2, 3}, 3));
    // rechoosing {0,1,2} back to the identity middle dissolves this conflict
    REQUIRE(!btw_seed(flipped_identity(4), {0, 1, 2, 3}, 3));
}

TEST_CASE("packing covers a single planted conflict") {
    BtwPacking p = conflict_packing_btw(flipped_identity(8));
    REQUIRE(p.conflicts.size() == 1);
    REQUIRE(p.covered == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("nice ordering confines violated triples to covered vertices") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        BetweennessSet b = generate_planted(ProblemKind::Btw, 18, 2, seed).btw();
        BtwPacking p = conflict_packing_btw(b);
        OrderedBetweenness ob = nice_ordering_btw(b, p);
        REQUIRE(static_cast<int>(ob.sigma.size()) == b.size());
        for (auto [x, y, z] : inconsistent_triples_btw(ob)) {
            REQUIRE((p.in_covered[x] && p.in_covered[y] && p.in_covered[z]));
        }
    }
}

TEST_CASE("the sunflower gathers quiet petals around the first violated triple") {
    BetweennessSet b = flipped_identity(10);
    BtwPacking p = conflict_packing_btw(b);
    OrderedBetweenness ob = nice_ordering_btw(b, p);
    auto sf = find_simple_sunflower(ob, 2);
    REQUIRE(sf.has_value());
    REQUIRE(sf->centre == std::array<int, 3>{0, 1, 2});
    REQUIRE(sf->petals == std::vector<int>{3, 4, 5});
    for (int v : sf->petals) REQUIRE(is_conflict4_btw(b, {0, 1, 2, v}));
}

TEST_CASE("small budget solving accepts planted instances and its edition realizes") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        BetweennessSet b = generate_planted(ProblemKind::Btw, 20, 3, seed).btw();
        SmallKResult res = solve_small_k(b, 3);
        REQUIRE(res.yes);
        REQUIRE(res.edition.size() <= 3);
        std::vector<int> pos(b.size());
        for (int i = 0; i < b.size(); ++i) pos[res.order[i]] = i;
        BetweennessSet edited = b;
        for (auto [x, y, z] : res.edition) {
            int m = x, lo = std::min({pos[x], pos[y], pos[z]}), hi = std::max({pos[x], pos[y], pos[z]});
            for (int v : {x, y, z})
                if (pos[v] != lo && pos[v] != hi) m = v;
            edited.set_middle(x, y, z, m);
        }
        REQUIRE(consistent_ordering_btw(edited).order.has_value());
    }
}

TEST_CASE("small budget solving rejects three disjoint forced edits on budget two") {
    BetweennessSet b = flipped_identity(12);
    b.set_middle(3, 4, 5, 3);
    b.set_middle(6, 7, 8, 6);
    REQUIRE(!solve_small_k(b, 2).yes);
}

TEST_CASE("small budget solving demands a small budget") {
    REQUIRE_THROWS_AS(solve_small_k(flipped_identity(10), 2), internal_error);
}

TEST_CASE("kernelize leaves instances at the size bound untouched") {
    BetweennessSet b = flipped_identity(10);
    KernelReport rep = kernelize_btw(ParamInstance{b, 2});
    REQUIRE(rep.verdict == Verdict::Reduced);
    REQUIRE(rep.rule_trace.empty());
    REQUIRE(rep.reduced.k == 2);
    REQUIRE(rep.reduced.btw() == b);
}

TEST_CASE("kernelize solves larger yes instances down to nothing") {
    ParamInstance inst = generate_planted(ProblemKind::Btw, 20, 3, 2);
    KernelReport rep = kernelize_btw(inst);
    REQUIRE(rep.verdict == Verdict::Reduced);
    REQUIRE(rep.reduced.size() == 0);
    REQUIRE(rep.delta_sum() == inst.k - rep.reduced.k);
    REQUIRE(!rep.rule_trace.empty());
    REQUIRE(rep.rule_trace.back().rule == "SOLVE");
    std::size_t edits = 0;
    for (const TraceEntry& e : rep.rule_trace)
        if (e.rule == "RULE5") {
            ++edits;
            REQUIRE(e.dk == 1);
        }
    REQUIRE(edits <= 3);
}

TEST_CASE("kernelize turns no instances into the canonical trivial one") {
    BetweennessSet b = flipped_identity(12);
    b.set_middle(3, 4, 5, 3);
    b.set_middle(6, 7, 8, 6);
    KernelReport rep = kernelize_btw(ParamInstance{b, 2});
    REQUIRE(rep.verdict == Verdict::TrivialNo);
    REQUIRE(write_instance(rep.reduced) == write_instance(trivial_no_instance(ProblemKind::Btw)));
    REQUIRE(rep.delta_sum() == 2 - rep.reduced.k);
    REQUIRE(exact_btw_enumerate(trivial_no_instance(ProblemKind::Btw).btw()).optimum >= 1);
}

TEST_CASE("small budget answers and editions agree with the oracle") {
    for (const PropertyCount& pc : verify_btw_small_k(505, 40)) {
        INFO(pc.name);
        REQUIRE(pc.failures == 0);
    }
}

TEST_CASE("betweenness kernels satisfy the five k bound") {
    for (const PropertyCount& pc : verify_btw_kernel(506, 60)) {
        INFO(pc.name);
        REQUIRE(pc.failures == 0);
    }
}
