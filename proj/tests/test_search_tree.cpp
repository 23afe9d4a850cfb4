#include "doctest.h"

#include <cmath>
#include <numeric>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "trapmap/generators.hpp"
#include "trapmap/random.hpp"
#include "trapmap/search_tree.hpp"

using namespace trapmap;
using namespace trapmap::testing;

namespace {

std::vector<int> identity_perm(std::size_t n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

/// (kind, payload, branch-taken) triple per internal node of a path.
struct Step {
    DagNode::Kind kind;
    Point point;
    int segment;
    bool went_left;
    bool operator==(const Step&) const = default;
};

template <typename Structure>
std::vector<Step> path_steps(const Structure& s, const std::vector<NodeId>& path) {
    std::vector<Step> out;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const DagNode& n = s.nodes()[path[i]];
        out.push_back({n.kind, n.point, n.segment, n.left == path[i + 1]});
    }
    return out;
}

}  // namespace

TEST_CASE("one segment: tree and DAG are identical") {
    auto segs = one_segment();
    auto perm = identity_perm(segs.size());
    HistoryDag dag = *HistoryDag::build(segs, perm);
    SearchTree tree = SearchTree::build(segs, perm);
    REQUIRE(dag.nodes().size() == tree.nodes().size());
    for (std::size_t i = 0; i < dag.nodes().size(); ++i) CHECK(dag.nodes()[i] == tree.nodes()[i]);

    // no bouncing nodes can exist
    Rng rng(1);
    for (int it = 0; it < 100; ++it) {
        Point q{rng.range(-20, 30), rng.range(-20, 20)};
        BouncingLocateResult r = locate_with_bouncing(dag, q);
        if (r.status != LocateStatus::Ok) continue;
        for (bool b : r.bouncing) CHECK(!b);
    }
}

TEST_CASE("fig2: tree keeps the unmerged pieces, 8 leaves vs 7") {
    auto segs = fig2_segments();
    auto perm = identity_perm(segs.size());
    HistoryDag dag = *HistoryDag::build(segs, perm);
    SearchTree tree = SearchTree::build(segs, perm);
    CHECK(dag.stats().leaf_count == 7);
    CHECK(tree.stats().leaf_count == 8);

    // Query inside H_C's region: tree leaf is H_C, DAG leaf is merged H.
    Point q{8, -5};
    LocateResult td = tree.locate(q);
    LocateResult dd = dag.locate(q);
    const Trapezoid& hc = tree.registry()[td.trap];
    const Trapezoid& h = dag.registry()[dd.trap];
    CHECK(hc.right_wall == ExtendedPoint::finite({10, 0}));  // ends at q1's wall
    CHECK(h.right_wall == ExtendedPoint::finite({14, -1}));  // merged through it
    // containment of the tree region in the DAG region
    CHECK(h.left_wall <= hc.left_wall);
    CHECK(hc.right_wall <= h.right_wall);
}

TEST_CASE("every node of the tree has exactly one parent") {
    auto inst = gen_sqrt_blocks(16);
    SearchTree tree = SearchTree::build(inst.segments, inst.insertion_order);
    std::vector<int> parents(tree.nodes().size(), 0);
    for (const DagNode& n : tree.nodes()) {
        if (n.kind == DagNode::Kind::Leaf) continue;
        ++parents[static_cast<std::size_t>(n.left)];
        ++parents[static_cast<std::size_t>(n.right)];
    }
    for (std::size_t i = 0; i < parents.size(); ++i)
        CHECK(parents[i] == (static_cast<NodeId>(i) == tree.root() ? 0 : 1));
}

TEST_CASE("fig4: p3 is a bouncing node and the interval stays (p2, q1)") {
    auto segs = fig4_segments();
    auto perm = identity_perm(segs.size());
    HistoryDag dag = *HistoryDag::build(segs, perm);

    // Query in the left part of the region below cv2 (J in the figure).
    Point q{6, -5};
    BouncingLocateResult r = locate_with_bouncing(dag, q);
    REQUIRE(r.status == LocateStatus::Ok);
    bool saw_p3_bounce = false;
    for (std::size_t i = 0; i < r.path.size(); ++i) {
        const DagNode& n = dag.nodes()[r.path[i]];
        if (n.kind == DagNode::Kind::Point && n.point == Point{11, -4}) {
            CHECK(r.bouncing[i]);
            saw_p3_bounce = true;
        }
    }
    CHECK(saw_p3_bounce);
    CHECK(r.low == ExtendedPoint::finite({4, -2}));   // p2
    CHECK(r.high == ExtendedPoint::finite({10, 0}));  // q1
}

TEST_CASE("final history interval equals the tree leaf's x-range") {
    Rng rng(55);
    for (std::uint64_t seed : {1ull, 2ull, 9ull}) {
        auto segs = gen_random_disjoint(40, seed, RandomProfile::NoncrossingRejection);
        auto perm = identity_perm(segs.size());
        Rng prng(seed);
        prng.shuffle(perm);
        HistoryDag dag = *HistoryDag::build(segs, perm);
        SearchTree tree = SearchTree::build(segs, perm);
        int done = 0;
        while (done < 150) {
            Point q{rng.range(-100, 1700), rng.range(-100, 1700)};
            BouncingLocateResult r = locate_with_bouncing(dag, q);
            if (r.status != LocateStatus::Ok) continue;
            std::vector<NodeId> tpath;
            LocateResult tr = tree.locate(q, tpath);
            REQUIRE(tr.status == LocateStatus::Ok);
            const Trapezoid& leaf = tree.registry()[tr.trap];
            CHECK(r.low == leaf.left_wall);
            CHECK(r.high == leaf.right_wall);
            ++done;
        }
    }
}

TEST_CASE("bijection: DAG path minus bouncing nodes equals the tree path") {
    Rng rng(99);
    int instances = 0;
    for (std::uint64_t seed = 0; instances < 12; ++seed, ++instances) {
        int n = 10 + static_cast<int>(seed) * 7;
        auto segs = gen_random_disjoint(n, seed, seed % 2 ? RandomProfile::NoncrossingRejection
                                                          : RandomProfile::HorizontalLevels);
        auto perm = identity_perm(segs.size());
        Rng prng(seed);
        prng.shuffle(perm);
        HistoryDag dag = *HistoryDag::build(segs, perm);
        SearchTree tree = SearchTree::build(segs, perm);
        int done = 0;
        while (done < 120) {
            Point q{rng.range(-200, 41 * n), rng.range(-200, 41 * n)};
            BouncingLocateResult dr = locate_with_bouncing(dag, q);
            if (dr.status != LocateStatus::Ok) continue;
            std::vector<NodeId> tpath;
            LocateResult tr = tree.locate(q, tpath);
            REQUIRE(tr.status == LocateStatus::Ok);

            std::vector<NodeId> filtered;
            for (std::size_t i = 0; i + 1 < dr.path.size(); ++i)
                if (!dr.bouncing[i]) filtered.push_back(dr.path[i]);
            filtered.push_back(dr.path.back());

            std::vector<Step> ds = path_steps(dag, filtered);
            std::vector<Step> ts = path_steps(tree, tpath);
            // rebuild Step branch flags against the filtered successor list
            // (path_steps uses adjacency, so recompute the DAG side manually)
            ds.clear();
            NodeId prev = kNoNode;
            for (std::size_t i = 0; i < dr.path.size(); ++i) {
                if (i + 1 == dr.path.size()) break;
                if (dr.bouncing[i]) continue;
                const DagNode& nd = dag.nodes()[dr.path[i]];
                // successor on the unfiltered path
                NodeId succ = dr.path[i + 1];
                ds.push_back({nd.kind, nd.point, nd.segment, nd.left == succ});
                (void)prev;
            }
            REQUIRE(ds.size() == ts.size());
            for (std::size_t i = 0; i < ds.size(); ++i) CHECK(ds[i] == ts[i]);
            ++done;
        }
    }
}

TEST_CASE("one insertion adds at most two bouncing nodes per tracked query") {
    Rng rng(7);
    for (std::uint64_t seed : {4ull, 8ull}) {
        auto segs = gen_random_disjoint(50, seed, RandomProfile::NoncrossingRejection);
        std::vector<int> perm = identity_perm(segs.size());
        Rng prng(seed);
        prng.shuffle(perm);

        std::vector<Point> queries;
        while (queries.size() < 40)
            queries.push_back({rng.range(-100, 2100), rng.range(-100, 2100)});

        HistoryDag dag(segs);
        std::vector<int> bounces(queries.size(), 0);
        for (int id : perm) {
            dag.insert(id);
            for (std::size_t qi = 0; qi < queries.size(); ++qi) {
                BouncingLocateResult r = locate_with_bouncing(dag, queries[qi]);
                if (r.status != LocateStatus::Ok) {
                    bounces[qi] = -1000000;  // boundary query, stop tracking
                    continue;
                }
                int b = 0;
                for (bool f : r.bouncing) b += f;
                if (bounces[qi] >= 0) CHECK(b - bounces[qi] <= 2);
                bounces[qi] = b;
            }
        }
    }
}

TEST_CASE("expected tree size grows like n log n, not faster") {
    // average leaves/n over random permutations at growing n; the ratio to
    // log2(n) should stay within a fixed band rather than grow.
    std::vector<double> per_log;
    for (int n : {64, 128, 256}) {
        auto segs = gen_random_disjoint(n, 1234, RandomProfile::NoncrossingRejection);
        double total = 0;
        int reps = 30;
        for (int rep = 0; rep < reps; ++rep) {
            std::vector<int> perm = identity_perm(segs.size());
            Rng prng(static_cast<std::uint64_t>(rep) * 31 + 7);
            prng.shuffle(perm);
            SearchTree tree = SearchTree::build(segs, perm);
            total += static_cast<double>(tree.stats().leaf_count);
        }
        double mean_leaves = total / reps;
        per_log.push_back(mean_leaves / (n * std::log2(static_cast<double>(n))));
    }
    for (double v : per_log) {
        CHECK(v > 0.05);
        CHECK(v < 3.0);
    }
    // no blow-up across doublings
    CHECK(per_log.back() < 2.0 * per_log.front() + 0.5);
}
