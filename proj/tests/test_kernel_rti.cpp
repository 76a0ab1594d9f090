#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "cpk/kernel_rti.hpp"
#include "cpk/oracle.hpp"
#include "cpk/verify.hpp"

using namespace cpk;

namespace {

// four triplets on {0,1,2,3} with no consistent tree; 0 is a seed
DenseTripletSet seeded_conflict() {
    DenseTripletSet r(4);
    r.set_chosen(0, 1, 2, 2);
    r.set_chosen(0, 2, 3, 3);
    r.set_chosen(0, 1, 3, 1);
    r.set_chosen(1, 2, 3, 1);
    return r;
}

}  // namespace

TEST_CASE("four leaf conflicts match tree realizability") {
    DenseTripletSet c = seeded_conflict();
    REQUIRE(is_conflict4(c, {0, 1, 2, 3}));
    for (const RootedBinaryTree& t : all_binary_trees(4))
        REQUIRE(!is_conflict4(DenseTripletSet::from_tree(t), {0, 1, 2, 3}));
    REQUIRE(find_conflict4(c) == std::array<int, 4>{0, 1, 2, 3});
    REQUIRE(!find_conflict4(DenseTripletSet::from_tree(left_comb({0, 1, 2, 3, 4}))).has_value());
}

TEST_CASE("seed leaves keep the conflict under any rechoice of the far triple") {
    DenseTripletSet c = seeded_conflict();
    REQUIRE(is_seed(c, {0, 1, 2, 3}, 0));
}

TEST_CASE("tree building recovers every dense consistent set") {
    for (int n = 3; n <= 6; ++n)
        for (const RootedBinaryTree& t : all_binary_trees(n)) {
            BuildResult br = build_tree(DenseTripletSet::from_tree(t));
            REQUIRE(br.tree.has_value());
            REQUIRE(br.tree->newick() == t.newick());
        }
}

TEST_CASE("tree building reports a four leaf conflict on failure") {
    BuildResult br = build_tree(seeded_conflict());
    REQUIRE(!br.tree.has_value());
    REQUIRE(br.conflict.size() == 4);
    std::array<int, 4> q{br.conflict[0], br.conflict[1], br.conflict[2], br.conflict[3]};
    REQUIRE(is_conflict4(seeded_conflict(), q));
}

TEST_CASE("irrelevant leaf removal empties consistent instances") {
    DenseTripletSet r = DenseTripletSet::from_tree(left_comb({0, 1, 2, 3, 4, 5}));
    IrrelevantLeafResult res = rule_irrelevant_leaf(r);
    REQUIRE(res.kept.empty());
    REQUIRE(res.removed.size() == 6);
    REQUIRE(res.reduced.size() == 0);

    IrrelevantLeafResult stuck = rule_irrelevant_leaf(seeded_conflict());
    REQUIRE(stuck.removed.empty());
    REQUIRE(stuck.kept == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("packing covers the seeded conflict") {
    RtiPacking p = conflict_packing_rti(seeded_conflict());
    REQUIRE(p.conflicts.size() == 1);
    REQUIRE(p.covered == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("packing conflicts are conflicts and nearly disjoint") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        DenseTripletSet r =
            generate_planted(ProblemKind::Rti, 12, 3, static_cast<std::uint64_t>(trial)).rti();
        RtiPacking p = conflict_packing_rti(r);
        std::set<int> seen;
        for (std::array<int, 4> q : p.conflicts) {
            REQUIRE(is_conflict4(r, q));
            int fresh = 0;
            for (int v : q) fresh += !seen.count(v);
            REQUIRE(fresh >= 1);  // each conflict brought at least one new leaf
            for (int v : q) seen.insert(v);
        }
        REQUIRE(std::vector<int>(seen.begin(), seen.end()) == p.covered);
    }
}

TEST_CASE("nice tree keeps every triple with an uncovered leaf consistent") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        DenseTripletSet r = generate_planted(ProblemKind::Rti, 18, 2, seed).rti();
        RtiPacking p = conflict_packing_rti(r);
        EmbeddedInstance ei = nice_tree(r, p);
        int n = r.size();
        REQUIRE(ei.tree.leaf_count() == n);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c)
                    if (!p.in_covered[a] || !p.in_covered[b] || !p.in_covered[c])
                        REQUIRE(r.consistent_with(ei.tree, a, b, c));
    }
}

TEST_CASE("kernelize reaches the five k bound on planted instances") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        ParamInstance inst = generate_planted(ProblemKind::Rti, 30, 3, seed);
        KernelReport rep = kernelize_rti(inst);
        REQUIRE(rep.verdict == Verdict::Reduced);
        REQUIRE(rep.reduced.size() <= 15);
        REQUIRE(rep.delta_sum() == inst.k - rep.reduced.k);
    }
}

TEST_CASE("a conflict with no budget is trivially no") {
    KernelReport rep = kernelize_rti(ParamInstance{seeded_conflict(), 0});
    REQUIRE(rep.verdict == Verdict::TrivialNo);
    REQUIRE(rep.rule_trace.size() == 1);
    REQUIRE(rep.rule_trace[0].line() == "TRIVIALNO dk=0");
    REQUIRE(write_instance(rep.reduced) == write_instance(trivial_no_instance(ProblemKind::Rti)));
    REQUIRE(exact_rti_enumerate(trivial_no_instance(ProblemKind::Rti).rti()).optimum >= 1);
}

TEST_CASE("crossing triplet edits split the optimum additively") {
    int fired = 0;
    for (std::uint64_t seed = 0; seed < 120 && fired < 4; ++seed) {
        ParamInstance inst = generate_planted(ProblemKind::Rti, 8, 1, seed);
        kernelize_rti(inst, [&](const DenseTripletSet& before, long long kb,
                                const std::vector<std::array<int, 3>>& f,
                                const DenseTripletSet& after, long long ka) {
            ++fired;
            REQUIRE(kb - ka == static_cast<long long>(f.size()));
            REQUIRE(exact_rti_enumerate(before).optimum ==
                    static_cast<long long>(f.size()) + exact_rti_enumerate(after).optimum);
        });
    }
    REQUIRE(fired >= 4);
}

TEST_CASE("triplet kernelize preserves the oracle decision on small instances") {
    for (const PropertyCount& pc : verify_rti_soundness(503, 40)) {
        INFO(pc.name);
        REQUIRE(pc.failures == 0);
    }
}

TEST_CASE("triplet kernels satisfy the five k bound") {
    for (const PropertyCount& pc : verify_rti_size(504, 60)) {
        INFO(pc.name);
        REQUIRE(pc.failures == 0);
    }
}
