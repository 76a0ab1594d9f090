#include <catch2/catch_amalgamated.hpp>

#include "cpk/bipartite.hpp"
#include "cpk/verify.hpp"

using namespace cpk;

TEST_CASE("maximum matching on a perfect matching graph") {
    BipartiteGraph g(3, 3);
    g.add_edge(0, 0);
    g.add_edge(1, 1);
    g.add_edge(2, 2);
    g.finish();
    auto m = maximum_matching(g);
    REQUIRE(m == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}, {2, 2}});
}

TEST_CASE("matching finds augmenting paths") {
    // 0 and 1 both prefer right 0; only an alternating path saturates both
    BipartiteGraph g(2, 2);
    g.add_edge(0, 0);
    g.add_edge(1, 0);
    g.add_edge(1, 1);
    g.finish();
    auto m = maximum_matching(g);
    REQUIRE(m.size() == 2);
}

TEST_CASE("cover equals matching and touches every edge") {
    BipartiteGraph g(3, 4);
    g.add_edge(0, 0);
    g.add_edge(0, 1);
    g.add_edge(1, 1);
    g.add_edge(2, 2);
    g.add_edge(2, 3);
    g.finish();
    auto m = maximum_matching(g);
    CoverAndMatching cm = minimum_vertex_cover(g, m);
    REQUIRE(cm.cover_size() == m.size());
    std::vector<char> in_d1(3, 0), in_d2(4, 0);
    for (int l : cm.d1) in_d1[l] = 1;
    for (int r : cm.d2) in_d2[r] = 1;
    for (int l = 0; l < 3; ++l)
        for (int r : g.adj[l]) REQUIRE((in_d1[l] || in_d2[r]));
}

TEST_CASE("match into succeeds exactly when expansion holds") {
    BipartiteGraph g(3, 3);
    g.add_edge(0, 0);
    g.add_edge(1, 0);
    g.add_edge(1, 1);
    g.add_edge(2, 2);
    g.finish();
    MatchIntoResult ok = match_into(g, {1, 2});
    REQUIRE(ok.ok);
    REQUIRE(ok.map.size() == 2);

    BipartiteGraph h(2, 1);
    h.add_edge(0, 0);
    h.add_edge(1, 0);
    h.finish();
    MatchIntoResult bad = match_into(h, {0, 1});
    REQUIRE(!bad.ok);
    REQUIRE(bad.violator == std::vector<int>{0, 1});
}

TEST_CASE("empty selections and graphs behave") {
    BipartiteGraph g(2, 2);
    g.finish();
    REQUIRE(maximum_matching(g).empty());
    CoverAndMatching cm = minimum_vertex_cover(g, {});
    REQUIRE(cm.cover_size() == 0);
    MatchIntoResult r = match_into(g, {});
    REQUIRE(r.ok);
    REQUIRE(r.map.empty());
}

TEST_CASE("exhaustive and random graphs satisfy the cover equality") {
    for (const PropertyCount& pc : verify_bipartite(77, 60)) {
        INFO(pc.name);
        REQUIRE(pc.checked > 0);
        REQUIRE(pc.failures == 0);
    }
}
