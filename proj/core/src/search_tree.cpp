#include "trapmap/search_tree.hpp"

#include <cassert>

namespace trapmap {

BouncingLocateResult locate_with_bouncing(const HistoryDag& dag, Point q) {
    BouncingLocateResult res;
    std::span<const DagNode> nodes = dag.nodes();
    std::span<const Segment> segs = dag.segments();
    NodeId cur = dag.root();
    while (nodes[cur].kind != DagNode::Kind::Leaf) {
        const DagNode& node = nodes[cur];
        res.path.push_back(cur);
        res.bouncing.push_back(false);
        ++res.path_length;
        if (node.kind == DagNode::Kind::Point) {
            auto cmp = q <=> node.point;
            if (cmp == std::strong_ordering::equal) {
                res.status = LocateStatus::OnVertex;
                return res;
            }
            ExtendedPoint v = ExtendedPoint::finite(node.point);
            if (res.low < v && v < res.high) {
                if (cmp < 0)
                    res.high = v;
                else
                    res.low = v;
            } else {
                // The decision here is already forced by the history.
                res.bouncing.back() = true;
                assert(v <= res.low ? cmp > 0 : cmp < 0);
            }
            cur = cmp < 0 ? node.left : node.right;
        } else {
            const Segment& t = segs[node.segment];
            Side sd = side_of(q, t);
            if (sd == Side::On) {
                res.status = (q == t.left || q == t.right) ? LocateStatus::OnVertex
                                                           : LocateStatus::OnSegment;
                return res;
            }
            cur = sd == Side::Above ? node.left : node.right;
        }
    }
    res.path.push_back(cur);
    res.bouncing.push_back(false);
    res.leaf = cur;
    return res;
}

}  // namespace trapmap
