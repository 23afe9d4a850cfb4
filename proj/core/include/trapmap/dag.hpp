#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "trapmap/geometry.hpp"

namespace trapmap {

using NodeId = std::int32_t;
using TrapId = std::int32_t;
inline constexpr NodeId kNoNode = -1;
inline constexpr TrapId kNoTrap = -1;

/// Sentinels for the unbounded sides of a trapezoid.
inline constexpr int kFloor = -1;
inline constexpr int kCeiling = -2;

/// One trapezoid of the map: the quadruplet (left wall, right wall, bottom,
/// top) plus up to four neighbor links. upper_* links share the top boundary
/// with the neighbor, lower_* links share the bottom boundary. Destroyed
/// trapezoids stay in the registry with alive=false.
struct Trapezoid {
    ExtendedPoint left_wall;
    ExtendedPoint right_wall;
    int bottom = kFloor;
    int top = kCeiling;
    TrapId upper_left = kNoTrap;
    TrapId lower_left = kNoTrap;
    TrapId upper_right = kNoTrap;
    TrapId lower_right = kNoTrap;
    NodeId leaf = kNoNode;  // leaf node while alive
    bool alive = true;
    int birth_iteration = 0;

    friend bool operator==(const Trapezoid&, const Trapezoid&) = default;
};

/// Binary decision node. Point nodes branch left/right of a vertical line,
/// segment nodes branch above/below a curve, leaves hold a trapezoid.
/// `left` doubles as the above-child of segment nodes, `right` as below.
/// depth is the longest root-to-node path in internal nodes, fixed at
/// creation and never mutated.
struct DagNode {
    enum class Kind : std::uint8_t { Point, Segment, Leaf };
    Kind kind = Kind::Leaf;
    Point point{};
    int segment = -1;
    NodeId left = kNoNode;
    NodeId right = kNoNode;
    TrapId trap = kNoTrap;
    int depth = 0;

    friend bool operator==(const DagNode&, const DagNode&) = default;
};

struct DagStats {
    int n = 0;
    std::int64_t node_count = 0;
    std::int64_t inner_count = 0;
    std::int64_t leaf_count = 0;
    int depth = 0;
    std::int64_t registry_size = 0;
};

enum class LocateStatus { Ok, OnVertex, OnSegment };

struct LocateResult {
    LocateStatus status = LocateStatus::Ok;
    TrapId trap = kNoTrap;
    NodeId leaf = kNoNode;
    int path_length = 0;
};

/// Internal consistency failure of the incremental update (the neighbor walk
/// met a trapezoid the segment does not intersect, or an overlapping input
/// slipped past validation).
class TopologyError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// The trapezoidal map with its history DAG. Construction is strictly
/// single-threaded; once built the structure is immutable and locate/stats
/// may be called concurrently from any number of threads.
class HistoryDag {
  public:
    /// Starts with the whole plane as a single trapezoid. merge_enabled=false
    /// yields the trapezoidal search tree construction (no leaf sharing).
    explicit HistoryDag(std::vector<Segment> segments, bool merge_enabled = true);

    /// Inserts one segment of the set, splitting the intersected trapezoids
    /// and replacing their leaves with decision subtrees.
    void insert(int segment_id);

    /// Inserts all of `permutation` in order. Returns nullopt when
    /// max_nodes >= 0 and the arena exceeds it mid-build (online size abort).
    static std::optional<HistoryDag> build(std::vector<Segment> segments,
                                           std::span<const int> permutation,
                                           std::int64_t max_nodes = -1,
                                           bool merge_enabled = true);

    LocateResult locate(Point q) const;
    /// locate variant that records the visited node ids (internal + leaf).
    LocateResult locate_traced(Point q, std::vector<NodeId>& path) const;

    DagStats stats() const;

    std::span<const DagNode> nodes() const { return nodes_; }
    std::span<const Trapezoid> registry() const { return traps_; }
    std::span<const Segment> segments() const { return segments_; }
    std::span<const int> insertion_order() const { return order_; }
    NodeId root() const { return root_; }
    int inserted_count() const { return static_cast<int>(order_.size()); }
    bool merge_enabled() const { return merge_enabled_; }

    std::uint64_t rng_seed = 0;  // provenance only; set by the driver

  private:
    TrapId locate_first_trapezoid(const Segment& s) const;
    TrapId new_trapezoid(ExtendedPoint lw, ExtendedPoint rw, int bottom, int top);
    NodeId new_node(DagNode node);
    void note_leaf_depth(int depth);

    std::vector<Segment> segments_;
    std::vector<DagNode> nodes_;
    std::vector<Trapezoid> traps_;
    std::vector<int> order_;
    NodeId root_ = kNoNode;
    std::int64_t leaf_count_ = 0;
    int max_leaf_depth_ = 0;
    bool merge_enabled_ = true;
};

}  // namespace trapmap
