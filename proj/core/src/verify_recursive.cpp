#include "trapmap/verify_recursive.hpp"

#include <algorithm>
#include <vector>

namespace trapmap {

// Iterative DFS with an explicit stack: realizable paths can be Theta(n) deep
// on adversarial DAGs, so recursion depth must not bound correctness.
long long max_query_path(const HistoryDag& dag, std::optional<long long> abort_above) {
    struct Frame {
        NodeId node;
        ExtendedPoint low, high;
        long long len;
    };
    std::span<const DagNode> nodes = dag.nodes();
    std::vector<Frame> stack;
    stack.push_back({dag.root(), ExtendedPoint::neg_infinity(), ExtendedPoint::pos_infinity(), 0});
    long long best = 0;
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        const DagNode& node = nodes[f.node];
        if (node.kind == DagNode::Kind::Leaf) {
            best = std::max(best, f.len);
            if (abort_above && best > *abort_above) return best;
            continue;
        }
        if (!(f.low < f.high)) throw TopologyError("empty history interval during verification");
        long long len = f.len + 1;
        if (node.kind == DagNode::Kind::Segment) {
            stack.push_back({node.left, f.low, f.high, len});
            stack.push_back({node.right, f.low, f.high, len});
            continue;
        }
        ExtendedPoint v = ExtendedPoint::finite(node.point);
        if (f.low < v && v < f.high) {
            stack.push_back({node.left, f.low, v, len});
            stack.push_back({node.right, v, f.high, len});
        } else if (v <= f.low) {
            stack.push_back({node.right, f.low, f.high, len});  // bouncing, forced right
        } else {
            stack.push_back({node.left, f.low, f.high, len});   // bouncing, forced left
        }
    }
    return best;
}

PathBoundResult verify_path_bound(const HistoryDag& dag, long long bound) {
    long long len = max_query_path(dag, bound);
    return {len <= bound, len};
}

}  // namespace trapmap
