#include "trapmap/geometry.hpp"

#include <utility>

namespace trapmap {

namespace {

using Wide = __int128;

int sign_of(Wide v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

Wide orient(Point a, Point b, Point c) {
    return Wide(b.x - a.x) * Wide(c.y - a.y) - Wide(b.y - a.y) * Wide(c.x - a.x);
}

}  // namespace

Segment make_segment(int id, Point a, Point b) {
    if (b < a) std::swap(a, b);
    return Segment{id, a, b};
}

std::strong_ordering lex_compare(Point a, Point b) { return a <=> b; }

Side side_of(Point p, const Segment& s) {
    return static_cast<Side>(sign_of(orient(s.left, s.right, p)));
}

int direction_cross_sign(const Segment& a, const Segment& b) {
    Wide cr = Wide(a.right.x - a.left.x) * Wide(b.right.y - b.left.y) -
              Wide(a.right.y - a.left.y) * Wide(b.right.x - b.left.x);
    return sign_of(cr);
}

bool on_open_interior(Point p, const Segment& s) {
    return side_of(p, s) == Side::On && s.left < p && p < s.right;
}

namespace {

bool properly_cross(const Segment& a, const Segment& b) {
    Side b1 = side_of(b.left, a);
    Side b2 = side_of(b.right, a);
    Side a1 = side_of(a.left, b);
    Side a2 = side_of(a.right, b);
    return static_cast<int>(b1) * static_cast<int>(b2) < 0 &&
           static_cast<int>(a1) * static_cast<int>(a2) < 0;
}

}  // namespace

std::vector<Violation> validate_input(std::span<const Segment> segments) {
    std::vector<Violation> out;
    const int n = static_cast<int>(segments.size());
    for (int i = 0; i < n; ++i) {
        const Segment& s = segments[i];
        if (s.left == s.right) {
            out.push_back({ViolationKind::Degenerate, i, -1, "zero-length segment"});
        } else if (s.left.x == s.right.x) {
            out.push_back({ViolationKind::Degenerate, i, -1, "vertical segment"});
        }
    }
    if (!out.empty()) return out;

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Segment& a = segments[i];
            const Segment& b = segments[j];
            if (a.left == b.left && a.right == b.right) {
                out.push_back({ViolationKind::Duplicate, i, j, "duplicate segment"});
                continue;
            }
            if (on_open_interior(b.left, a) || on_open_interior(b.right, a)) {
                out.push_back({ViolationKind::EndpointOnInterior, j, i,
                               "endpoint lies in the interior of another segment"});
                continue;
            }
            if (on_open_interior(a.left, b) || on_open_interior(a.right, b)) {
                out.push_back({ViolationKind::EndpointOnInterior, i, j,
                               "endpoint lies in the interior of another segment"});
                continue;
            }
            if (properly_cross(a, b)) {
                out.push_back({ViolationKind::Crossing, i, j, "segments cross"});
            }
        }
    }
    return out;
}

}  // namespace trapmap
