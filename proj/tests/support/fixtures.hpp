#pragma once

// Hand-built instances reused across suites.

#include <vector>

#include "trapmap/geometry.hpp"

namespace trapmap::testing {

/// One horizontal segment; the map has exactly the four trapezoids A (left),
/// B (above), C (below), D (right).
inline std::vector<Segment> one_segment() {
    return {make_segment(0, Point{0, 0}, Point{10, 0})};
}

/// The classic two-segment configuration: cv2 starts below cv1, crosses the
/// downward wall of cv1's right endpoint, and ends to its right. The lower
/// parts on both sides of that wall merge into one trapezoid H.
inline std::vector<Segment> fig2_segments() {
    return {make_segment(0, Point{0, 0}, Point{10, 0}),
            make_segment(1, Point{4, -2}, Point{14, -1})};
}

/// fig2 plus a third segment strictly inside H and to the right of cv1's
/// right endpoint; the point node it creates is a bouncing node for paths
/// entering H from the left.
inline std::vector<Segment> fig4_segments() {
    auto segs = fig2_segments();
    segs.push_back(make_segment(2, Point{11, -4}, Point{13, -4}));
    return segs;
}

}  // namespace trapmap::testing
