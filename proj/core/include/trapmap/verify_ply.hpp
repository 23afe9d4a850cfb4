#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "trapmap/dag.hpp"

namespace trapmap {

/// Total order on the segments realizing the below-relation: for segments
/// with overlapping open x-ranges the lower one gets the smaller rank;
/// incomparable pairs are ordered by left endpoint. FLOOR ranks 0 and
/// CEILING ranks n+1.
class RankMap {
  public:
    RankMap() = default;
    RankMap(std::vector<int> rank_by_id, int n) : rank_(std::move(rank_by_id)), n_(n) {}

    /// Rank of a segment id or a kFloor/kCeiling sentinel.
    int of(int segment_or_sentinel) const {
        if (segment_or_sentinel == kFloor) return 0;
        if (segment_or_sentinel == kCeiling) return n_ + 1;
        return rank_[static_cast<std::size_t>(segment_or_sentinel)];
    }
    int n() const { return n_; }

  private:
    std::vector<int> rank_;
    int n_ = 0;
};

/// Computes the total order by pairwise below-comparisons on x-overlapping
/// segments followed by a topological sort with the left-endpoint tie-break.
/// Throws std::invalid_argument on a cycle (impossible for validated input).
RankMap compute_total_order(std::span<const Segment> segments);

/// Open axis-parallel rectangle in (x, rank) space.
struct OpenRect {
    ExtendedPoint x_lo, x_hi;
    int y_lo = 0, y_hi = 0;
};

/// Maps every trapezoid of the registry to an open rectangle: x-range kept
/// as-is, bottom/top replaced by their ranks. Rectangles of lex-empty
/// x-range are dropped; geometrically zero-width (covertical-wall)
/// trapezoids are kept, since queries resolved by the shear can still land
/// in them.
std::vector<OpenRect> reduce(std::span<const Trapezoid> registry, const RankMap& ranks);

/// Rectangle with per-boundary open/closed flags, as handled by the general
/// sweep. The trapezoid pipeline only uses fully open rectangles.
struct GeneralRect {
    ExtendedPoint x_lo, x_hi;
    long long y_lo = 0, y_hi = 0;
    bool left_closed = false, right_closed = false;
    bool bottom_closed = false, top_closed = false;
};

/// Balanced tree over the ordered interval set [x1,x1], (x1,x2), [x2,x2], ...
/// Internal nodes carry lazy (l, r, l_m, r_m) counters, leaves carry
/// (c, c_m); a final flush pushes everything down before reading the answer.
class CoverageTree {
  public:
    explicit CoverageTree(int leaf_count);

    /// Adds d (+1/-1) to every leaf in [lo, hi] (inclusive leaf indices),
    /// touching only the two boundary paths.
    void apply(int lo, int hi, int d);

    /// Current coverage / max-so-far of one leaf, computed via the pending
    /// counters on its root path (read-only; used by invariant tests).
    long long coverage(int leaf) const;
    long long max_coverage(int leaf) const;

    /// Pushes all pending counters to the leaves and returns max c_m.
    long long flush_and_max();

  private:
    struct Node {
        int lo, hi, left = -1, right = -1;
        long long l = 0, r = 0, l_m = 0, r_m = 0;  // internal: pending add/max per child
        long long c = 0, c_m = 0;                  // leaf: coverage / max coverage
    };
    int build(int lo, int hi);
    void apply_rec(int idx, long long t, long long tm, int lo, int hi, int d);
    void flush_rec(int idx, long long t, long long tm);

    std::vector<Node> nodes_;
    int root_ = -1;
};

/// Maximum number of rectangles covering a common point, by a top-to-bottom
/// sweep with the four-group event order at equal y. Positions on the x-axis
/// are ExtendedPoints in lex order.
long long max_ply_general(std::span<const GeneralRect> rects);

/// Open-rectangle convenience used by the verification pipeline.
long long max_ply(std::span<const OpenRect> rects);

struct PlyVerdict {
    long long ply = 0;
    long long certificate = 0;  // 3 * ply, an upper bound on L
    bool pass = false;
};

/// Certifies L <= bound via the ply of all trapezoids ever created:
/// PASS iff 3 * max_ply(reduce(registry)) <= bound.
PlyVerdict verify_by_ply(const HistoryDag& dag, long long bound);

}  // namespace trapmap
