#include "trapmap/dag.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace trapmap {

HistoryDag::HistoryDag(std::vector<Segment> segments, bool merge_enabled)
    : segments_(std::move(segments)), merge_enabled_(merge_enabled) {
    TrapId plane = new_trapezoid(ExtendedPoint::neg_infinity(), ExtendedPoint::pos_infinity(),
                                 kFloor, kCeiling);
    traps_[plane].birth_iteration = 0;
    NodeId leaf = new_node(DagNode{DagNode::Kind::Leaf, {}, -1, kNoNode, kNoNode, plane, 0});
    traps_[plane].leaf = leaf;
    root_ = leaf;
    leaf_count_ = 1;
}

TrapId HistoryDag::new_trapezoid(ExtendedPoint lw, ExtendedPoint rw, int bottom, int top) {
    traps_.push_back(Trapezoid{lw, rw, bottom, top, kNoTrap, kNoTrap, kNoTrap, kNoTrap,
                               kNoNode, true, static_cast<int>(order_.size()) + 1});
    return static_cast<TrapId>(traps_.size() - 1);
}

NodeId HistoryDag::new_node(DagNode node) {
    nodes_.push_back(node);
    return static_cast<NodeId>(nodes_.size() - 1);
}

void HistoryDag::note_leaf_depth(int depth) { max_leaf_depth_ = std::max(max_leaf_depth_, depth); }

// Descends for the virtual query just right of s.left along s. At a point node
// equal to s.left the segment interior lies to the right of the wall; at a
// segment node through s.left the slope comparison decides the side.
TrapId HistoryDag::locate_first_trapezoid(const Segment& s) const {
    NodeId cur = root_;
    while (nodes_[cur].kind != DagNode::Kind::Leaf) {
        const DagNode& node = nodes_[cur];
        if (node.kind == DagNode::Kind::Point) {
            cur = (s.left < node.point) ? node.left : node.right;
        } else {
            const Segment& t = segments_[node.segment];
            Side sd = side_of(s.left, t);
            if (sd == Side::On) {
                int cr = direction_cross_sign(t, s);
                if (cr == 0) throw TopologyError("overlapping collinear segments");
                sd = cr > 0 ? Side::Above : Side::Below;
            }
            cur = (sd == Side::Above) ? node.left : node.right;
        }
    }
    return nodes_[cur].trap;
}

void HistoryDag::insert(int segment_id) {
    const Segment s = segments_.at(static_cast<std::size_t>(segment_id));
    const ExtendedPoint sl = ExtendedPoint::finite(s.left);
    const ExtendedPoint sr = ExtendedPoint::finite(s.right);

    // -- collect the chain of intersected trapezoids, walking right ---------
    std::vector<TrapId> chain{locate_first_trapezoid(s)};
    while (traps_[chain.back()].right_wall < sr) {
        const Trapezoid& cur = traps_[chain.back()];
        Point w = cur.right_wall.point();
        Side sd = side_of(w, s);
        if (sd == Side::On) throw TopologyError("wall point lies on the inserted segment");
        TrapId next = (sd == Side::Above) ? cur.lower_right : cur.upper_right;
        if (next == kNoTrap || !traps_[next].alive)
            throw TopologyError("neighbor walk left the map");
        chain.push_back(next);
    }
    const int k = static_cast<int>(chain.size());

    struct OldTrap {
        ExtendedPoint lw, rw;
        int bottom, top;
        TrapId ul, ll, ur, lr;
        NodeId leaf;
    };
    std::vector<OldTrap> old(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        const Trapezoid& t = traps_[chain[j]];
        old[j] = {t.left_wall, t.right_wall, t.bottom, t.top,
                  t.upper_left, t.lower_left, t.upper_right, t.lower_right, t.leaf};
    }

    const bool lcap = old.front().lw < sl;
    const bool rcap = sr < old.back().rw;

    // Side of each separating wall point with respect to s. A wall below s is
    // blocked above s, so the upper parts merge there; symmetrically below.
    std::vector<Side> wall_side(static_cast<std::size_t>(k > 0 ? k - 1 : 0));
    for (int j = 0; j + 1 < k; ++j) {
        wall_side[j] = side_of(traps_[chain[j]].right_wall.point(), s);
        if (wall_side[j] == Side::On)
            throw TopologyError("wall point lies on the inserted segment");
    }

    struct Span {
        int a, b;
        TrapId id = kNoTrap;
    };
    auto make_spans = [&](Side split_side) {
        std::vector<Span> spans;
        int a = 0;
        for (int j = 0; j < k; ++j) {
            bool cut = (j == k - 1) || !merge_enabled_ || wall_side[j] == split_side;
            if (cut) {
                spans.push_back({a, j});
                a = j + 1;
            }
        }
        return spans;
    };
    std::vector<Span> uspans = make_spans(Side::Above);
    std::vector<Span> lspans = make_spans(Side::Below);

    for (TrapId id : chain) traps_[id].alive = false;

    auto span_left_wall = [&](int a) {
        return a == 0 ? (lcap ? sl : old[0].lw) : old[a].lw;
    };
    auto span_right_wall = [&](int b) {
        return b == k - 1 ? (rcap ? sr : old[k - 1].rw) : old[b].rw;
    };

    TrapId lc = kNoTrap, rc = kNoTrap;
    if (lcap) lc = new_trapezoid(old[0].lw, sl, old[0].bottom, old[0].top);
    if (rcap) rc = new_trapezoid(sr, old[k - 1].rw, old[k - 1].bottom, old[k - 1].top);

    std::vector<TrapId> upper_of(static_cast<std::size_t>(k));
    std::vector<TrapId> lower_of(static_cast<std::size_t>(k));
    for (Span& sp : uspans) {
        sp.id = new_trapezoid(span_left_wall(sp.a), span_right_wall(sp.b), segment_id,
                              old[sp.a].top);
        for (int j = sp.a; j <= sp.b; ++j) {
            assert(old[j].top == old[sp.a].top);
            upper_of[j] = sp.id;
        }
    }
    for (Span& sp : lspans) {
        sp.id = new_trapezoid(span_left_wall(sp.a), span_right_wall(sp.b), old[sp.a].bottom,
                              segment_id);
        for (int j = sp.a; j <= sp.b; ++j) {
            assert(old[j].bottom == old[sp.a].bottom);
            lower_of[j] = sp.id;
        }
    }

    // -- neighbor links of the new pieces -----------------------------------
    // Without merging, a span boundary can sit at a wall whose adjacent old
    // trapezoids shared the relevant side; the same-side neighbor is then the
    // sibling piece, not the (destroyed) old link target.
    for (std::size_t i = 0; i < uspans.size(); ++i) {
        Trapezoid& u = traps_[uspans[i].id];
        const int a = uspans[i].a, b = uspans[i].b;
        u.upper_left = a == 0 ? (lcap ? lc : old[0].ul)
                              : (wall_side[a - 1] == Side::Below ? uspans[i - 1].id : old[a].ul);
        u.lower_left = a == 0 ? kNoTrap : uspans[i - 1].id;
        u.upper_right = b == k - 1
                            ? (rcap ? rc : old[k - 1].ur)
                            : (wall_side[b] == Side::Below ? uspans[i + 1].id : old[b].ur);
        u.lower_right = b == k - 1 ? kNoTrap : uspans[i + 1].id;
    }
    for (std::size_t i = 0; i < lspans.size(); ++i) {
        Trapezoid& l = traps_[lspans[i].id];
        const int a = lspans[i].a, b = lspans[i].b;
        l.lower_left = a == 0 ? (lcap ? lc : old[0].ll)
                              : (wall_side[a - 1] == Side::Above ? lspans[i - 1].id : old[a].ll);
        l.upper_left = a == 0 ? kNoTrap : lspans[i - 1].id;
        l.lower_right = b == k - 1
                            ? (rcap ? rc : old[k - 1].lr)
                            : (wall_side[b] == Side::Above ? lspans[i + 1].id : old[b].lr);
        l.upper_right = b == k - 1 ? kNoTrap : lspans[i + 1].id;
    }
    if (lcap) {
        Trapezoid& t = traps_[lc];
        t.upper_left = old[0].ul;
        t.lower_left = old[0].ll;
        t.upper_right = uspans.front().id;
        t.lower_right = lspans.front().id;
    }
    if (rcap) {
        Trapezoid& t = traps_[rc];
        t.upper_right = old[k - 1].ur;
        t.lower_right = old[k - 1].lr;
        t.upper_left = uspans.back().id;
        t.lower_left = lspans.back().id;
    }

    // -- re-point external neighbors at the new pieces ----------------------
    auto relink = [&](TrapId nb, TrapId was, int j, bool left_of_chain) {
        if (nb == kNoTrap || !traps_[nb].alive) return;
        Trapezoid& t = traps_[nb];
        if (left_of_chain) {
            if (t.upper_right == was) t.upper_right = (j == 0 && lcap) ? lc : upper_of[j];
            if (t.lower_right == was) t.lower_right = (j == 0 && lcap) ? lc : lower_of[j];
        } else {
            if (t.upper_left == was) t.upper_left = (j == k - 1 && rcap) ? rc : upper_of[j];
            if (t.lower_left == was) t.lower_left = (j == k - 1 && rcap) ? rc : lower_of[j];
        }
    };
    for (int j = 0; j < k; ++j) {
        relink(old[j].ul, chain[j], j, true);
        relink(old[j].ll, chain[j], j, true);
        relink(old[j].ur, chain[j], j, false);
        relink(old[j].lr, chain[j], j, false);
    }

    // -- DAG surgery: convert each destroyed leaf into a decision spine -----
    // The destroyed leaf node is overwritten in place, preserving every
    // incoming edge; fresh nodes get depth = 1 + parent depth.
    std::vector<NodeId> seg_node(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        NodeId top = old[j].leaf;
        const int d = nodes_[top].depth;
        const bool has_l = (j == 0 && lcap);
        const bool has_r = (j == k - 1 && rcap);
        if (has_l && has_r) {
            NodeId lc_leaf = new_node({DagNode::Kind::Leaf, {}, -1, kNoNode, kNoNode, lc, d + 1});
            NodeId qn = new_node({DagNode::Kind::Point, s.right, -1, kNoNode, kNoNode, kNoTrap, d + 1});
            NodeId sn = new_node({DagNode::Kind::Segment, {}, segment_id, kNoNode, kNoNode, kNoTrap, d + 2});
            NodeId rc_leaf = new_node({DagNode::Kind::Leaf, {}, -1, kNoNode, kNoNode, rc, d + 2});
            nodes_[top] = {DagNode::Kind::Point, s.left, -1, lc_leaf, qn, kNoTrap, d};
            nodes_[qn].left = sn;
            nodes_[qn].right = rc_leaf;
            traps_[lc].leaf = lc_leaf;
            traps_[rc].leaf = rc_leaf;
            note_leaf_depth(d + 1);
            note_leaf_depth(d + 2);
            seg_node[j] = sn;
        } else if (has_l) {
            NodeId lc_leaf = new_node({DagNode::Kind::Leaf, {}, -1, kNoNode, kNoNode, lc, d + 1});
            NodeId sn = new_node({DagNode::Kind::Segment, {}, segment_id, kNoNode, kNoNode, kNoTrap, d + 1});
            nodes_[top] = {DagNode::Kind::Point, s.left, -1, lc_leaf, sn, kNoTrap, d};
            traps_[lc].leaf = lc_leaf;
            note_leaf_depth(d + 1);
            seg_node[j] = sn;
        } else if (has_r) {
            NodeId sn = new_node({DagNode::Kind::Segment, {}, segment_id, kNoNode, kNoNode, kNoTrap, d + 1});
            NodeId rc_leaf = new_node({DagNode::Kind::Leaf, {}, -1, kNoNode, kNoNode, rc, d + 1});
            nodes_[top] = {DagNode::Kind::Point, s.right, -1, sn, rc_leaf, kNoTrap, d};
            traps_[rc].leaf = rc_leaf;
            note_leaf_depth(d + 1);
            seg_node[j] = sn;
        } else {
            nodes_[top] = {DagNode::Kind::Segment, {}, segment_id, kNoNode, kNoNode, kNoTrap, d};
            seg_node[j] = top;
        }
    }

    // Shared leaves: one node per merged piece, parented by every segment
    // node over its span. Depth is 1 + the deepest parent at creation.
    auto wire_leaves = [&](const std::vector<Span>& spans, bool above) {
        for (const Span& sp : spans) {
            int d = 0;
            for (int j = sp.a; j <= sp.b; ++j) d = std::max(d, nodes_[seg_node[j]].depth);
            NodeId leaf = new_node({DagNode::Kind::Leaf, {}, -1, kNoNode, kNoNode, sp.id, d + 1});
            traps_[sp.id].leaf = leaf;
            note_leaf_depth(d + 1);
            for (int j = sp.a; j <= sp.b; ++j) {
                if (above)
                    nodes_[seg_node[j]].left = leaf;
                else
                    nodes_[seg_node[j]].right = leaf;
            }
        }
    };
    wire_leaves(uspans, true);
    wire_leaves(lspans, false);

    leaf_count_ += static_cast<std::int64_t>(uspans.size() + lspans.size()) + (lcap ? 1 : 0) +
                   (rcap ? 1 : 0) - k;
    order_.push_back(segment_id);
}

std::optional<HistoryDag> HistoryDag::build(std::vector<Segment> segments,
                                            std::span<const int> permutation,
                                            std::int64_t max_nodes, bool merge_enabled) {
    HistoryDag dag(std::move(segments), merge_enabled);
    for (int id : permutation) {
        dag.insert(id);
        if (max_nodes >= 0 && static_cast<std::int64_t>(dag.nodes_.size()) > max_nodes)
            return std::nullopt;
    }
    return dag;
}

LocateResult HistoryDag::locate(Point q) const {
    NodeId cur = root_;
    int len = 0;
    while (nodes_[cur].kind != DagNode::Kind::Leaf) {
        const DagNode& node = nodes_[cur];
        ++len;
        if (node.kind == DagNode::Kind::Point) {
            auto cmp = q <=> node.point;
            if (cmp == std::strong_ordering::equal) return {LocateStatus::OnVertex, kNoTrap, kNoNode, len};
            cur = cmp < 0 ? node.left : node.right;
        } else {
            const Segment& t = segments_[node.segment];
            Side sd = side_of(q, t);
            if (sd == Side::On) {
                LocateStatus st = (q == t.left || q == t.right) ? LocateStatus::OnVertex
                                                                : LocateStatus::OnSegment;
                return {st, kNoTrap, kNoNode, len};
            }
            cur = sd == Side::Above ? node.left : node.right;
        }
    }
    return {LocateStatus::Ok, nodes_[cur].trap, cur, len};
}

LocateResult HistoryDag::locate_traced(Point q, std::vector<NodeId>& path) const {
    path.clear();
    NodeId cur = root_;
    int len = 0;
    while (nodes_[cur].kind != DagNode::Kind::Leaf) {
        const DagNode& node = nodes_[cur];
        path.push_back(cur);
        ++len;
        if (node.kind == DagNode::Kind::Point) {
            auto cmp = q <=> node.point;
            if (cmp == std::strong_ordering::equal) return {LocateStatus::OnVertex, kNoTrap, kNoNode, len};
            cur = cmp < 0 ? node.left : node.right;
        } else {
            const Segment& t = segments_[node.segment];
            Side sd = side_of(q, t);
            if (sd == Side::On) {
                LocateStatus st = (q == t.left || q == t.right) ? LocateStatus::OnVertex
                                                                : LocateStatus::OnSegment;
                return {st, kNoTrap, kNoNode, len};
            }
            cur = sd == Side::Above ? node.left : node.right;
        }
    }
    path.push_back(cur);
    return {LocateStatus::Ok, nodes_[cur].trap, cur, len};
}

DagStats HistoryDag::stats() const {
    DagStats st;
    st.n = static_cast<int>(order_.size());
    st.node_count = static_cast<std::int64_t>(nodes_.size());
    st.leaf_count = leaf_count_;
    st.inner_count = st.node_count - st.leaf_count;
    st.depth = max_leaf_depth_;
    st.registry_size = static_cast<std::int64_t>(traps_.size());
    return st;
}

}  // namespace trapmap
