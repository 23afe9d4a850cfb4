#include "doctest.h"

#include <numeric>
#include <set>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "trapmap/dag.hpp"
#include "trapmap/generators.hpp"
#include "trapmap/random.hpp"

using namespace trapmap;
using namespace trapmap::testing;

namespace {

HistoryDag build_in_order(std::vector<Segment> segs) {
    std::vector<int> perm(segs.size());
    std::iota(perm.begin(), perm.end(), 0);
    return *HistoryDag::build(std::move(segs), perm);
}

int parent_count(const HistoryDag& dag, NodeId target) {
    int c = 0;
    for (const DagNode& n : dag.nodes()) {
        if (n.kind == DagNode::Kind::Leaf) continue;
        c += (n.left == target) + (n.right == target);
    }
    return c;
}

}  // namespace

TEST_CASE("empty map is one leaf covering the plane") {
    HistoryDag dag({});
    DagStats st = dag.stats();
    CHECK(st.node_count == 1);
    CHECK(st.leaf_count == 1);
    CHECK(st.depth == 0);
    CHECK(st.registry_size == 1);
    LocateResult r = dag.locate({123, -7});
    CHECK(r.status == LocateStatus::Ok);
    CHECK(r.path_length == 0);
}

TEST_CASE("one segment yields the four-trapezoid map") {
    HistoryDag dag = build_in_order(one_segment());
    DagStats st = dag.stats();
    CHECK(st.leaf_count == 4);   // A, B, C, D; equals 3n+1
    CHECK(st.inner_count == 3);  // p1, q1, cv1
    CHECK(st.depth == 3);
    CHECK(live_count(dag) == 4);
    CHECK(neighbors_symmetric(dag));
    CHECK(depths_consistent(dag));

    // A has exactly two neighbors, its top-right and bottom-right.
    TrapId a = oracle_locate(dag, {-5, 0});
    const Trapezoid& ta = dag.registry()[a];
    CHECK(ta.upper_left == kNoTrap);
    CHECK(ta.lower_left == kNoTrap);
    CHECK(ta.upper_right != kNoTrap);
    CHECK(ta.lower_right != kNoTrap);
    CHECK(ta.upper_right != ta.lower_right);
}

TEST_CASE("fig2: merge creates a shared leaf reachable by two root paths") {
    HistoryDag dag = build_in_order(fig2_segments());
    CHECK(dag.stats().leaf_count == 7);  // A,B,E,F,G,I,H
    CHECK(live_count(dag) == 7);

    // H is the region below cv2 spanning both sides of q1's wall.
    TrapId h = oracle_locate(dag, {10, -5});
    REQUIRE(h != kNoTrap);
    const Trapezoid& th = dag.registry()[h];
    CHECK(th.left_wall == ExtendedPoint::finite({4, -2}));
    CHECK(th.right_wall == ExtendedPoint::finite({14, -1}));
    CHECK(parent_count(dag, th.leaf) == 2);

    // Both sides of the wall locate to the same leaf.
    LocateResult left = dag.locate({8, -5});
    LocateResult right = dag.locate({12, -5});
    CHECK(left.trap == h);
    CHECK(right.trap == h);

    SUBCASE("inserting cv2 destroys C and D, creating E,F,G,I and merged H") {
        HistoryDag step(fig2_segments());
        step.insert(0);
        std::int64_t before = step.stats().registry_size;
        step.insert(1);
        CHECK(step.stats().registry_size - before == 5);  // E,F,H,G,I
    }
}

TEST_CASE("segment fully inside one trapezoid adds three leaves") {
    std::vector<Segment> segs = one_segment();
    segs.push_back(make_segment(1, Point{3, -5}, Point{7, -5}));
    HistoryDag dag(segs);
    dag.insert(0);
    std::int64_t leaves_before = dag.stats().leaf_count;
    dag.insert(1);
    CHECK(dag.stats().leaf_count - leaves_before == 3);
}

TEST_CASE("inner nodes created per iteration equal new trapezoids minus one") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        auto segs = gen_random_disjoint(80, seed, RandomProfile::NoncrossingRejection);
        std::vector<int> perm(segs.size());
        std::iota(perm.begin(), perm.end(), 0);
        Rng rng(seed);
        rng.shuffle(perm);
        HistoryDag dag(segs);
        for (int id : perm) {
            DagStats before = dag.stats();
            dag.insert(id);
            DagStats after = dag.stats();
            std::int64_t new_traps = after.registry_size - before.registry_size;
            std::int64_t new_inner = after.inner_count - before.inner_count;
            CHECK(new_inner == new_traps - 1);
        }
    }
}

TEST_CASE("per-insertion size bounds: 3i+1 trapezoids, 6i+4 vertices") {
    auto segs = gen_random_disjoint(60, 5, RandomProfile::NoncrossingRejection);
    HistoryDag dag(segs);
    for (int i = 0; i < static_cast<int>(segs.size()); ++i) {
        dag.insert(i);
        CHECK(dag.stats().leaf_count <= 3 * (i + 1) + 1);
        CHECK(vertex_count(dag) <= 6 * (i + 1) + 4);
    }
}

TEST_CASE("locate agrees with the linear-scan oracle") {
    Rng rng(23);
    auto segs = gen_random_disjoint(50, 17, RandomProfile::NoncrossingRejection);
    HistoryDag dag = build_in_order(segs);
    CHECK(neighbors_symmetric(dag));
    CHECK(depths_consistent(dag));
    int checked = 0;
    while (checked < 200) {
        Point q{rng.range(-100, 2100), rng.range(-100, 2100)};
        LocateResult r = dag.locate(q);
        if (r.status != LocateStatus::Ok) {
            CHECK(oracle_locate(dag, q) == kNoTrap);
            continue;
        }
        CHECK(r.trap == oracle_locate(dag, q));
        ++checked;
    }
}

TEST_CASE("live trapezoids tile the plane") {
    Rng rng(31);
    auto segs = gen_random_disjoint(40, 9, RandomProfile::HorizontalLevels);
    HistoryDag dag = build_in_order(segs);
    for (int it = 0; it < 300; ++it) {
        Point q{rng.range(-50, 600), rng.range(-50, 200)};
        LocateResult r = dag.locate(q);
        CHECK(count_containing_live(dag, q) == (r.status == LocateStatus::Ok ? 1 : 0));
    }
}

TEST_CASE("boundary queries report typed errors") {
    HistoryDag dag = build_in_order(one_segment());
    CHECK(dag.locate({0, 0}).status == LocateStatus::OnVertex);
    CHECK(dag.locate({10, 0}).status == LocateStatus::OnVertex);
    CHECK(dag.locate({5, 0}).status == LocateStatus::OnSegment);
    CHECK(dag.locate({5, 1}).status == LocateStatus::Ok);
}

TEST_CASE("same permutation rebuilds an identical structure") {
    auto segs = gen_random_disjoint(70, 77, RandomProfile::NoncrossingRejection);
    std::vector<int> perm(segs.size());
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(5);
    rng.shuffle(perm);
    HistoryDag a = *HistoryDag::build(segs, perm);
    HistoryDag b = *HistoryDag::build(segs, perm);
    CHECK(a.root() == b.root());
    REQUIRE(a.nodes().size() == b.nodes().size());
    REQUIRE(a.registry().size() == b.registry().size());
    for (std::size_t i = 0; i < a.nodes().size(); ++i) CHECK(a.nodes()[i] == b.nodes()[i]);
    for (std::size_t i = 0; i < a.registry().size(); ++i) CHECK(a.registry()[i] == b.registry()[i]);
}

TEST_CASE("covertical endpoints are handled by the shear") {
    // Two segments whose left endpoints share an x-coordinate, plus one whose
    // endpoint is covertical with another's right endpoint.
    std::vector<Segment> segs = {make_segment(0, {0, 0}, {10, 0}),
                                 make_segment(1, {0, 6}, {12, 6}),
                                 make_segment(2, {10, 3}, {20, 5})};
    REQUIRE(validate_input(segs).empty());
    HistoryDag dag = build_in_order(segs);
    CHECK(neighbors_symmetric(dag));
    CHECK(depths_consistent(dag));
    CHECK(dag.stats().leaf_count <= 10);
    Rng rng(3);
    for (int it = 0; it < 300; ++it) {
        Point q{rng.range(-5, 25), rng.range(-5, 12)};
        LocateResult r = dag.locate(q);
        if (r.status == LocateStatus::Ok)
            CHECK(r.trap == oracle_locate(dag, q));
        else
            CHECK(oracle_locate(dag, q) == kNoTrap);
    }
}

TEST_CASE("shared endpoints: several segments fanning out of one point") {
    std::vector<Segment> segs = {make_segment(0, {0, 0}, {10, 4}),
                                 make_segment(1, {0, 0}, {10, 0}),
                                 make_segment(2, {0, 0}, {10, -4}),
                                 make_segment(3, {-8, 0}, {0, 0})};
    REQUIRE(validate_input(segs).empty());
    for (std::uint64_t seed : {0ull, 1ull, 2ull, 3ull}) {
        std::vector<int> perm = {0, 1, 2, 3};
        Rng rng(seed);
        rng.shuffle(perm);
        HistoryDag dag = *HistoryDag::build(segs, perm);
        CHECK(neighbors_symmetric(dag));
        CHECK(live_count(dag) <= 13);
        Rng qr(seed + 100);
        for (int it = 0; it < 200; ++it) {
            Point q{qr.range(-12, 14), qr.range(-8, 8)};
            LocateResult r = dag.locate(q);
            if (r.status == LocateStatus::Ok)
                CHECK(r.trap == oracle_locate(dag, q));
            else
                CHECK(oracle_locate(dag, q) == kNoTrap);
        }
    }
}

TEST_CASE("node count at n=1483 lands near the reported order of magnitude") {
    auto segs = gen_random_disjoint(1483, 42, RandomProfile::NoncrossingRejection);
    std::vector<int> perm(segs.size());
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(42);
    rng.shuffle(perm);
    HistoryDag dag = *HistoryDag::build(segs, perm);
    std::int64_t nodes = dag.stats().node_count;
    CHECK(nodes > 1483);
    CHECK(nodes < 30 * 1483);
}
