#pragma once

#include <optional>
#include <span>
#include <vector>

#include "trapmap/dag.hpp"

namespace trapmap {

/// The trapezoidal search tree: the same incremental construction as the
/// history DAG under the same permutation, with the merge step skipped.
/// Every node has exactly one parent; expected size is superlinear, which is
/// why it serves as an analysis and test device rather than the production
/// query structure.
class SearchTree {
  public:
    explicit SearchTree(std::vector<Segment> segments)
        : impl_(std::move(segments), /*merge_enabled=*/false) {}

    void insert(int segment_id) { impl_.insert(segment_id); }

    static SearchTree build(std::vector<Segment> segments, std::span<const int> permutation) {
        SearchTree t(std::move(segments));
        for (int id : permutation) t.insert(id);
        return t;
    }

    LocateResult locate(Point q) const { return impl_.locate(q); }
    LocateResult locate(Point q, std::vector<NodeId>& path) const {
        return impl_.locate_traced(q, path);
    }

    DagStats stats() const { return impl_.stats(); }
    std::span<const DagNode> nodes() const { return impl_.nodes(); }
    std::span<const Trapezoid> registry() const { return impl_.registry(); }
    std::span<const Segment> segments() const { return impl_.segments(); }
    NodeId root() const { return impl_.root(); }

  private:
    HistoryDag impl_;
};

struct BouncingLocateResult {
    LocateStatus status = LocateStatus::Ok;
    NodeId leaf = kNoNode;
    int path_length = 0;
    std::vector<NodeId> path;         // internal nodes then the leaf
    std::vector<bool> bouncing;       // parallel to path; true only at point nodes
    ExtendedPoint low = ExtendedPoint::neg_infinity();   // final history interval
    ExtendedPoint high = ExtendedPoint::pos_infinity();
};

/// Runs the DAG search for q while maintaining the history interval of
/// x-values still possible given the decisions taken. A point node whose
/// point falls outside the interval is flagged as bouncing; the interval is
/// updated only at non-bouncing point nodes.
BouncingLocateResult locate_with_bouncing(const HistoryDag& dag, Point q);

}  // namespace trapmap
