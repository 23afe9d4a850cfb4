#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace trapmap {

using Coord = std::int64_t;

/// Coordinates are capped so that every 3-point orientation determinant
/// fits in 128-bit integer arithmetic with room to spare.
inline constexpr Coord kCoordLimit = Coord{1} << 30;

struct Point {
    Coord x = 0;
    Coord y = 0;

    // Lexicographic (x, then y) order. This is the symbolic shear: covertical
    // points compare as if the plane were sheared infinitesimally to the right.
    friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

/// A point extended with -infinity / +infinity sentinels, totally ordered.
/// Used for trapezoid walls and history intervals.
class ExtendedPoint {
  public:
    constexpr ExtendedPoint() = default;
    static constexpr ExtendedPoint neg_infinity() { return ExtendedPoint(-1, Point{}); }
    static constexpr ExtendedPoint pos_infinity() { return ExtendedPoint(+1, Point{}); }
    static constexpr ExtendedPoint finite(Point p) { return ExtendedPoint(0, p); }

    constexpr bool is_finite() const { return tag_ == 0; }
    constexpr bool is_neg_infinity() const { return tag_ < 0; }
    constexpr bool is_pos_infinity() const { return tag_ > 0; }
    constexpr Point point() const { return pt_; }

    friend constexpr std::strong_ordering operator<=>(const ExtendedPoint& a,
                                                      const ExtendedPoint& b) {
        if (a.tag_ != b.tag_) return a.tag_ <=> b.tag_;
        if (a.tag_ != 0) return std::strong_ordering::equal;
        return a.pt_ <=> b.pt_;
    }
    friend constexpr bool operator==(const ExtendedPoint& a, const ExtendedPoint& b) {
        return (a <=> b) == std::strong_ordering::equal;
    }

  private:
    constexpr ExtendedPoint(int tag, Point p) : tag_(tag), pt_(p) {}
    std::int8_t tag_ = 0;
    Point pt_{};
};

/// An x-monotone line segment in canonical orientation (left <_lex right).
struct Segment {
    int id = -1;
    Point left{};
    Point right{};

    friend constexpr bool operator==(const Segment&, const Segment&) = default;
};

/// Builds a segment in canonical orientation regardless of endpoint order.
Segment make_segment(int id, Point a, Point b);

std::strong_ordering lex_compare(Point a, Point b);

enum class Side : int { Below = -1, On = 0, Above = +1 };

/// Exact sign of the orientation determinant of (s.left, s.right, p).
/// Above means p is to the left of the directed supporting line, i.e. above
/// the segment for left-to-right segments.
Side side_of(Point p, const Segment& s);

/// Sign of the cross product of the two direction vectors. Positive means b
/// turns counterclockwise from a, i.e. b is steeper going right.
int direction_cross_sign(const Segment& a, const Segment& b);

/// True when p lies strictly inside s (collinear and lex-between endpoints).
bool on_open_interior(Point p, const Segment& s);

enum class ViolationKind { Crossing, EndpointOnInterior, Degenerate, Duplicate };

struct Violation {
    ViolationKind kind;
    int first = -1;   // index of the offending segment
    int second = -1;  // index of the partner segment, if any
    std::string message;
};

/// Pairwise O(n^2) validation of the input model: segments must be pairwise
/// non-crossing and interior disjoint; shared endpoints are allowed. Zero
/// length and vertical segments are rejected as degenerate. Returns an empty
/// vector when the input is acceptable.
std::vector<Violation> validate_input(std::span<const Segment> segments);

}  // namespace trapmap
