#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "cpk/oracle.hpp"

using namespace cpk;
using Catch::Matchers::ContainsSubstring;

namespace {

Tournament rotational5() {
    // every vertex beats the next two around the circle
    Tournament t(5);
    for (int v = 0; v < 5; ++v) {
        t.orient(v, (v + 1) % 5);
        t.orient(v, (v + 2) % 5);
    }
    return t;
}

long long count_backward(const Tournament& t, const std::vector<int>& order) {
    int n = t.size();
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    long long bad = 0;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && t.arc(u, v) && pos[v] < pos[u]) ++bad;
    return bad;
}

}  // namespace

TEST_CASE("transitive tournaments cost nothing") {
    Tournament t = Tournament::from_order({2, 0, 1, 3});
    ExactResult r = exact_fast_dp(t);
    REQUIRE(r.optimum == 0);
    REQUIRE(r.order == std::vector<int>{2, 0, 1, 3});
    REQUIRE(r.reversed.empty());
}

TEST_CASE("a directed triangle costs one reversal") {
    Tournament t(3);
    t.orient(0, 1);
    t.orient(1, 2);
    t.orient(2, 0);
    ExactResult r = exact_fast_dp(t);
    REQUIRE(r.optimum == 1);
    REQUIRE(r.reversed.size() == 1);
}

TEST_CASE("the rotational five tournament needs three reversals") {
    ExactResult r = exact_fast_dp(rotational5());
    REQUIRE(r.optimum == 3);
    REQUIRE(count_backward(rotational5(), r.order) == 3);
}

TEST_CASE("subset dp agrees with permutation enumeration") {
    for (int n = 3; n <= 5; ++n) {
        long long arcs = pairs_of(n);
        for (long long mask = 0; mask < (1LL << arcs); ++mask) {
            Tournament t(n);
            long long e = 0;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v, ++e)
                    if (mask >> e & 1) t.flip(u, v);
            REQUIRE(exact_fast_dp(t).optimum == exact_fast_bruteforce(t).optimum);
        }
    }
    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        Tournament t = random_tournament(8, rng);
        REQUIRE(exact_fast_dp(t).optimum == exact_fast_bruteforce(t).optimum);
    }
}

TEST_CASE("fast witnesses are optimal orderings") {
    Rng rng(10);
    for (int trial = 0; trial < 30; ++trial) {
        Tournament t = random_tournament(7, rng);
        ExactResult r = exact_fast_dp(t);
        REQUIRE(count_backward(t, r.order) == r.optimum);
        REQUIRE(static_cast<long long>(r.reversed.size()) == r.optimum);
        Tournament fixed = t;
        for (auto [u, v] : r.reversed) fixed.flip(u, v);
        REQUIRE(exact_fast_dp(fixed).optimum == 0);
    }
}

TEST_CASE("consistent triplet sets cost nothing") {
    for (const RootedBinaryTree& t : all_binary_trees(5)) {
        ExactResult r = exact_rti_enumerate(DenseTripletSet::from_tree(t));
        REQUIRE(r.optimum == 0);
        REQUIRE(r.tree.newick() == t.newick());
    }
}

TEST_CASE("a known four-leaf set needs exactly one edit") {
    // choices: 01|2, 13 pair against 0, 23 pair against 1, 23 pair against 0
    DenseTripletSet r(4);
    r.set_chosen(0, 1, 2, 2);
    r.set_chosen(1, 3, 0, 0);
    r.set_chosen(2, 3, 1, 1);
    r.set_chosen(2, 3, 0, 0);
    ExactResult res = exact_rti_enumerate(r);
    REQUIRE(res.optimum == 1);
    REQUIRE(res.tree.newick() == "((0,1),(2,3))");
    REQUIRE(res.edits == std::vector<std::array<int, 3>>{{0, 1, 3}});
}

TEST_CASE("the seeded conflict needs at least one edit") {
    DenseTripletSet r(4);
    r.set_chosen(0, 1, 2, 2);  // 01|2
    r.set_chosen(0, 2, 3, 3);  // 02|3
    r.set_chosen(0, 3, 1, 1);  // 03|1
    r.set_chosen(2, 3, 1, 1);  // 23|1
    REQUIRE(exact_rti_enumerate(r).optimum >= 1);
}

TEST_CASE("consistent betweenness sets cost nothing") {
    BetweennessSet b = BetweennessSet::from_order({4, 2, 0, 3, 1});
    ExactResult r = exact_btw_enumerate(b);
    REQUIRE(r.optimum == 0);
    std::vector<int> rev(r.order.rbegin(), r.order.rend());
    REQUIRE((r.order == std::vector<int>{4, 2, 0, 3, 1} || rev == std::vector<int>{4, 2, 0, 3, 1}));
}

TEST_CASE("one flipped middle costs at most one edit") {
    BetweennessSet b = BetweennessSet::from_order({0, 1, 2, 3, 4});
    b.set_middle(1, 2, 3, 1);
    ExactResult r = exact_btw_enumerate(b);
    REQUIRE(r.optimum == 1);
    REQUIRE(r.edits.size() == 1);
}

TEST_CASE("planted instances stay within their budget") {
    for (int trial = 0; trial < 10; ++trial) {
        auto seed = static_cast<std::uint64_t>(trial);
        REQUIRE(exact_rti_enumerate(generate_planted(ProblemKind::Rti, 6, 2, seed).rti()).optimum <=
                2);
        REQUIRE(exact_btw_enumerate(generate_planted(ProblemKind::Btw, 6, 2, seed).btw()).optimum <=
                2);
        REQUIRE(exact_fast_dp(generate_planted(ProblemKind::Fast, 8, 3, seed).fast()).optimum <= 3);
    }
}

TEST_CASE("rti and btw witnesses re-check to their optimum") {
    Rng rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        DenseTripletSet r = random_triplets(6, rng);
        ExactResult res = exact_rti_enumerate(r);
        long long violated = 0;
        for (int a = 0; a < 6; ++a)
            for (int b = a + 1; b < 6; ++b)
                for (int c = b + 1; c < 6; ++c)
                    if (!r.consistent_with(res.tree, a, b, c)) ++violated;
        REQUIRE(violated == res.optimum);
        REQUIRE(static_cast<long long>(res.edits.size()) == res.optimum);

        BetweennessSet b = random_betweenness(6, rng);
        ExactResult bres = exact_btw_enumerate(b);
        std::vector<int> pos(6);
        for (int i = 0; i < 6; ++i) pos[bres.order[i]] = i;
        violated = 0;
        for (int x = 0; x < 6; ++x)
            for (int y = x + 1; y < 6; ++y)
                for (int z = y + 1; z < 6; ++z)
                    if (!b.consistent_with(pos, x, y, z)) ++violated;
        REQUIRE(violated == bres.optimum);
    }
}

TEST_CASE("size limits raise errors") {
    REQUIRE_THROWS_WITH(exact_fast_dp(Tournament(21)), ContainsSubstring("n > 20"));
    REQUIRE_THROWS_WITH(exact_fast_bruteforce(Tournament(9)), ContainsSubstring("n > 8"));
    REQUIRE_THROWS_WITH(exact_rti_enumerate(DenseTripletSet(9)), ContainsSubstring("n > 8"));
    REQUIRE_THROWS_WITH(exact_btw_enumerate(BetweennessSet(9)), ContainsSubstring("n > 8"));
}

TEST_CASE("cached tables enumerate the right counts") {
    REQUIRE(tree_table(4).profile.size() == 15);
    REQUIRE(tree_table(5).profile.size() == 105);
    REQUIRE(tree_table(6).profile.size() == 945);
    REQUIRE(order_table(4).orders.size() == 12);
    REQUIRE(order_table(5).orders.size() == 60);
}
