#include "trapmap/verify_ply.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <stdexcept>

namespace trapmap {

namespace {

// True iff a runs strictly below b on their common open x-range.
// Pre: the open x-ranges overlap and the pair passed validation.
bool below_on_overlap(const Segment& a, const Segment& b) {
    if (a.left.x == b.left.x) {
        if (a.left == b.left) {
            int cr = direction_cross_sign(a, b);
            if (cr == 0) throw std::invalid_argument("overlapping collinear segments");
            return cr > 0;  // b turns counterclockwise from a, so b is above
        }
        return a.left.y < b.left.y;
    }
    if (a.left.x < b.left.x) {
        Side sd = side_of(b.left, a);
        if (sd == Side::On) throw std::invalid_argument("endpoint on segment interior");
        return sd == Side::Above;
    }
    Side sd = side_of(a.left, b);
    if (sd == Side::On) throw std::invalid_argument("endpoint on segment interior");
    return sd == Side::Below;
}

}  // namespace

RankMap compute_total_order(std::span<const Segment> segments) {
    const int n = static_cast<int>(segments.size());
    std::vector<std::vector<int>> above(static_cast<std::size_t>(n));
    std::vector<int> indegree(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Coord lo = std::max(segments[i].left.x, segments[j].left.x);
            Coord hi = std::min(segments[i].right.x, segments[j].right.x);
            if (lo >= hi) continue;  // open x-ranges do not overlap
            if (below_on_overlap(segments[i], segments[j])) {
                above[i].push_back(j);
                ++indegree[j];
            } else {
                above[j].push_back(i);
                ++indegree[i];
            }
        }
    }
    // Kahn's algorithm; among available segments the leftmost goes first.
    auto later = [&](int a, int b) {
        if (segments[a].left != segments[b].left) return segments[b].left < segments[a].left;
        return a > b;
    };
    std::priority_queue<int, std::vector<int>, decltype(later)> ready(later);
    for (int i = 0; i < n; ++i)
        if (indegree[i] == 0) ready.push(i);
    std::vector<int> rank(static_cast<std::size_t>(n), 0);
    int next_rank = 0;
    while (!ready.empty()) {
        int cur = ready.top();
        ready.pop();
        rank[cur] = ++next_rank;
        for (int j : above[cur])
            if (--indegree[j] == 0) ready.push(j);
    }
    if (next_rank != n) throw std::invalid_argument("cycle in the below-relation");
    return RankMap(std::move(rank), n);
}

std::vector<OpenRect> reduce(std::span<const Trapezoid> registry, const RankMap& ranks) {
    std::vector<OpenRect> out;
    out.reserve(registry.size());
    for (const Trapezoid& t : registry) {
        if (!(t.left_wall < t.right_wall)) continue;  // lex-empty, covers nothing
        out.push_back({t.left_wall, t.right_wall, ranks.of(t.bottom), ranks.of(t.top)});
    }
    return out;
}

// ── coverage tree ───────────────────────────────────────────────────

CoverageTree::CoverageTree(int leaf_count) {
    if (leaf_count > 0) root_ = build(0, leaf_count - 1);
}

int CoverageTree::build(int lo, int hi) {
    int idx = static_cast<int>(nodes_.size());
    nodes_.push_back({lo, hi});
    if (lo != hi) {
        int mid = lo + (hi - lo) / 2;
        int l = build(lo, mid);
        int r = build(mid + 1, hi);
        nodes_[idx].left = l;
        nodes_[idx].right = r;
    }
    return idx;
}

void CoverageTree::apply(int lo, int hi, int d) {
    if (root_ < 0 || lo > hi) return;
    apply_rec(root_, 0, 0, lo, hi, d);
}

// (t, tm) is the pending add / max-excursion inherited from the ancestors,
// already cleared there. Absorb it, then either record d at the child-facing
// counters (fully covered child) or push down and recurse (boundary path).
void CoverageTree::apply_rec(int idx, long long t, long long tm, int lo, int hi, int d) {
    Node& nd = nodes_[idx];
    if (nd.left < 0) {
        nd.c_m = std::max(nd.c_m, nd.c + tm);
        nd.c += t;
        if (lo <= nd.lo && nd.lo <= hi) {
            nd.c += d;
            nd.c_m = std::max(nd.c_m, nd.c);
        }
        return;
    }
    nd.l_m = std::max(nd.l_m, nd.l + tm);
    nd.l += t;
    nd.r_m = std::max(nd.r_m, nd.r + tm);
    nd.r += t;
    const Node& lc = nodes_[nd.left];
    const Node& rc = nodes_[nd.right];
    if (lo <= lc.hi) {  // event touches the left child
        if (lo <= lc.lo && lc.hi <= hi) {
            nd.l += d;
            nd.l_m = std::max(nd.l_m, nd.l);
        } else {
            long long pt = nd.l, ptm = nd.l_m;
            nd.l = 0;
            nd.l_m = 0;
            apply_rec(nd.left, pt, ptm, lo, hi, d);
        }
    }
    if (hi >= rc.lo) {  // event touches the right child
        Node& nd2 = nodes_[idx];  // re-read: recursion may have reallocated nothing, but keep tidy
        if (lo <= rc.lo && rc.hi <= hi) {
            nd2.r += d;
            nd2.r_m = std::max(nd2.r_m, nd2.r);
        } else {
            long long pt = nd2.r, ptm = nd2.r_m;
            nd2.r = 0;
            nd2.r_m = 0;
            apply_rec(nd2.right, pt, ptm, lo, hi, d);
        }
    }
}

long long CoverageTree::coverage(int leaf) const {
    long long t = 0;
    int idx = root_;
    while (nodes_[idx].left >= 0) {
        const Node& nd = nodes_[idx];
        if (leaf <= nodes_[nd.left].hi) {
            t += nd.l;
            idx = nd.left;
        } else {
            t += nd.r;
            idx = nd.right;
        }
    }
    return nodes_[idx].c + t;
}

long long CoverageTree::max_coverage(int leaf) const {
    long long t = 0, tm = 0;
    int idx = root_;
    while (nodes_[idx].left >= 0) {
        const Node& nd = nodes_[idx];
        if (leaf <= nodes_[nd.left].hi) {
            tm = std::max(nd.l_m, nd.l + tm);
            t += nd.l;
            idx = nd.left;
        } else {
            tm = std::max(nd.r_m, nd.r + tm);
            t += nd.r;
            idx = nd.right;
        }
    }
    return std::max(nodes_[idx].c_m, nodes_[idx].c + tm);
}

void CoverageTree::flush_rec(int idx, long long t, long long tm) {
    Node& nd = nodes_[idx];
    if (nd.left < 0) {
        nd.c_m = std::max(nd.c_m, nd.c + tm);
        nd.c += t;
        return;
    }
    flush_rec(nd.left, nd.l + t, std::max(nd.l_m, nd.l + tm));
    flush_rec(nd.right, nd.r + t, std::max(nd.r_m, nd.r + tm));
    nd.l = nd.r = nd.l_m = nd.r_m = 0;
}

long long CoverageTree::flush_and_max() {
    if (root_ < 0) return 0;
    flush_rec(root_, 0, 0);
    long long best = 0;
    for (const Node& nd : nodes_)
        if (nd.left < 0) best = std::max(best, nd.c_m);
    return best;
}

// ── sweep ───────────────────────────────────────────────────────────

long long max_ply_general(std::span<const GeneralRect> rects) {
    std::vector<ExtendedPoint> xs;
    xs.reserve(rects.size() * 2);
    for (const GeneralRect& r : rects) {
        xs.push_back(r.x_lo);
        xs.push_back(r.x_hi);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.empty()) return 0;
    const int m = static_cast<int>(xs.size());
    // Leaf 2i is the point interval [x_i, x_i], leaf 2i+1 the open gap
    // (x_i, x_{i+1}).
    const int leaf_count = 2 * m - 1;
    auto position = [&](const ExtendedPoint& p) {
        return static_cast<int>(std::lower_bound(xs.begin(), xs.end(), p) - xs.begin());
    };

    // Event groups at equal y, processed in this order:
    //   1 closing with open bottom, 2 opening with closed top,
    //   3 closing with closed bottom, 4 opening with open top.
    struct Event {
        long long y;
        int group;
        int lo, hi;  // inclusive leaf range
        int d;
    };
    std::vector<Event> events;
    events.reserve(rects.size() * 2);
    for (const GeneralRect& r : rects) {
        int lo = 2 * position(r.x_lo) + (r.left_closed ? 0 : 1);
        int hi = 2 * position(r.x_hi) - (r.right_closed ? 0 : 1);
        if (lo > hi) continue;  // empty x-extent
        if (r.y_lo > r.y_hi) continue;
        if (r.y_lo == r.y_hi && !(r.bottom_closed && r.top_closed)) continue;
        events.push_back({r.y_hi, r.top_closed ? 2 : 4, lo, hi, +1});
        events.push_back({r.y_lo, r.bottom_closed ? 3 : 1, lo, hi, -1});
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (a.y != b.y) return a.y > b.y;
        if (a.group != b.group) return a.group < b.group;
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.hi < b.hi;
    });

    CoverageTree tree(leaf_count);
    for (const Event& e : events) tree.apply(e.lo, e.hi, e.d);
    return tree.flush_and_max();
}

long long max_ply(std::span<const OpenRect> rects) {
    std::vector<GeneralRect> general;
    general.reserve(rects.size());
    for (const OpenRect& r : rects)
        general.push_back({r.x_lo, r.x_hi, r.y_lo, r.y_hi, false, false, false, false});
    return max_ply_general(general);
}

PlyVerdict verify_by_ply(const HistoryDag& dag, long long bound) {
    RankMap ranks = compute_total_order(dag.segments());
    std::vector<OpenRect> rects = reduce(dag.registry(), ranks);
    PlyVerdict v;
    v.ply = max_ply(rects);
    v.certificate = 3 * v.ply;
    v.pass = v.certificate <= bound;
    return v;
}

}  // namespace trapmap
