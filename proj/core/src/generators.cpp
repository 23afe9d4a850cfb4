#include "trapmap/generators.hpp"

#include <algorithm>
#include <cassert>

#include "trapmap/random.hpp"

namespace trapmap {

std::vector<Segment> gen_random_disjoint(int n, std::uint64_t seed, RandomProfile profile) {
    Rng rng(seed);
    std::vector<Segment> out;
    out.reserve(static_cast<std::size_t>(n));
    if (profile == RandomProfile::HorizontalLevels) {
        std::vector<Coord> levels(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) levels[i] = 3 * static_cast<Coord>(i);
        rng.shuffle(levels);
        const Coord span = 12 * static_cast<Coord>(n) + 12;
        for (int i = 0; i < n; ++i) {
            Coord lo = rng.range(0, span);
            Coord len = rng.range(1, std::max<Coord>(4, span / 8));
            out.push_back(make_segment(i, Point{lo, levels[i]}, Point{lo + len, levels[i]}));
        }
        return out;
    }

    // Rejection sampling of short arbitrary-slope segments in a box that
    // grows with n, so the acceptance rate stays high.
    const Coord box = 40 * static_cast<Coord>(n) + 40;
    const Coord max_len = std::max<Coord>(8, box / 24);
    long long attempts_left = 200LL * n + 1000;
    int id = 0;
    while (id < n) {
        if (--attempts_left < 0)
            throw GenerationTimeout("rejection sampling exceeded the attempt budget");
        Point a{rng.range(0, box), rng.range(0, box)};
        Point b{a.x + rng.range(1, max_len), a.y + rng.range(-max_len, max_len)};
        Segment cand = make_segment(id, a, b);
        bool ok = true;
        for (const Segment& s : out) {
            if ((s.left == cand.left && s.right == cand.right) ||
                on_open_interior(cand.left, s) || on_open_interior(cand.right, s) ||
                on_open_interior(s.left, cand) || on_open_interior(s.right, cand)) {
                ok = false;
                break;
            }
            Side b1 = side_of(cand.left, s), b2 = side_of(cand.right, s);
            Side a1 = side_of(s.left, cand), a2 = side_of(s.right, cand);
            if (static_cast<int>(b1) * static_cast<int>(b2) < 0 &&
                static_cast<int>(a1) * static_cast<int>(a2) < 0) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(cand);
        if (ok) ++id;
    }
    return out;
}

namespace {

/// Shared scaffolding for the adversarial families. Emits segments with
/// strictly descending y so the emission order is the prescribed
/// top-to-bottom insertion order.
struct Emitter {
    std::vector<Segment> segments;
    Coord next_y = 0;

    void emit(Coord x1, Coord x2) {
        int id = static_cast<int>(segments.size());
        segments.push_back(make_segment(id, Point{x1, next_y}, Point{x2, next_y}));
        next_y -= 4;
    }
};

struct Range {
    Coord lo, hi;
};

// The halving-block family. Blocks of sizes s/2, s/4, ... are laid out right
// to left; each block is a cover segment with the block's remaining segments
// recursively arranged below it, confined strictly to the right of the next
// block's territory. Every cover after the first sweeps below all walls to
// its right and ends inside the previous block's deepest trapezoid, so depth
// keeps growing while a search skips a whole block with one comparison
// against the cover's left endpoint.
long long blocks_span_rec(int s, long long need);

long long blocks_span_chain(int s, long long need) {
    if (s == 1) return need + 8;
    int s1 = (s + 1) / 2;
    int rest = s - s1;
    long long self = (s1 == 1) ? 16 : blocks_span_rec(s1 - 1, 8) + 16;
    return blocks_span_chain(rest, need) + 8 + self;
}

long long blocks_span_rec(int s, long long need) {
    if (s == 1) return need + 8;
    int s1 = (s + 1) / 2;
    int rest = s - s1;
    long long right = (s1 == 1) ? 16 : blocks_span_rec(s1 - 1, 8) + 16;
    return blocks_span_chain(rest, need) + 8 + right;
}

Range emit_blocks_rec(Emitter& em, int s, Coord lo, Coord hi, long long need);

// Chain of blocks inside (lo, hi), each cover diving into `prev` (the deep
// region of the block to its right). Returns the final deep region.
Range emit_blocks_chain(Emitter& em, int s, Coord lo, Coord hi, Range prev, long long need) {
    int s1 = (s + 1) / 2;
    int rest = s - s1;
    Coord x1 = (rest == 0) ? lo : lo + static_cast<Coord>(blocks_span_chain(rest, need)) + 8;
    assert(prev.hi - prev.lo >= 8);
    Coord q = prev.lo + 4;
    em.emit(x1 + 4, q);  // the cover: left of everything, capped in prev's deep
    Range deep;
    if (s1 == 1) {
        deep = {x1 + 4, q};
    } else {
        assert(hi - 4 - (x1 + 8) >= blocks_span_rec(s1 - 1, 8));
        deep = emit_blocks_rec(em, s1 - 1, x1 + 8, hi - 4, 8);
    }
    if (rest == 0) return deep;
    return emit_blocks_chain(em, rest, lo, x1, deep, need);
}

// Self-contained variant: the first block's cover has nothing to dive into.
Range emit_blocks_rec(Emitter& em, int s, Coord lo, Coord hi, long long need) {
    if (s == 1) {
        em.emit(lo + 4, hi - 4);
        return {lo + 4, hi - 4};
    }
    int s1 = (s + 1) / 2;
    int rest = s - s1;
    Coord x1 = lo + static_cast<Coord>(blocks_span_chain(rest, need)) + 8;
    em.emit(x1 + 4, hi - 4);  // block 1's cover, plainly nested
    Range deep;
    if (s1 == 1) {
        deep = {x1 + 4, hi - 4};
    } else {
        assert(hi - 8 - (x1 + 8) >= blocks_span_rec(s1 - 1, 8));
        deep = emit_blocks_rec(em, s1 - 1, x1 + 8, hi - 8, 8);
    }
    return emit_blocks_chain(em, rest, lo, x1, deep, need);
}

}  // namespace

GeneratedInstance gen_adversarial_blocks(int n) {
    if (n < 2) throw std::invalid_argument("adversarial blocks require n >= 2");
    Emitter em;
    long long width = blocks_span_rec(n, 8);
    emit_blocks_rec(em, n, 0, static_cast<Coord>(width), 8);
    GeneratedInstance out;
    out.segments = std::move(em.segments);
    out.insertion_order.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.insertion_order[i] = i;
    return out;
}

GeneratedInstance gen_sqrt_blocks(int n) {
    int k = 0;
    while (k * k < n) ++k;
    if (n < 4 || k * k != n) throw std::invalid_argument("sqrt blocks require a perfect square n >= 4");

    Emitter em;
    const Coord width = 8 * static_cast<Coord>(k) + 32;
    const Coord step = 8 * static_cast<Coord>(k) + 16;  // block territory width
    auto tower = [&](Range region, int count) {
        for (int i = 0; i < count; ++i) {
            em.emit(region.lo + 2, region.hi - 2);
            region = {region.lo + 2, region.hi - 2};
        }
        return region;
    };
    // Block 1: a nested tower of k segments.
    Range deep = tower({0, width}, k);
    // Blocks 2..k-1: the cover first, sweeping below everything to its right
    // into the current deepest trapezoid, then the block's tower strictly
    // left of the previous block's territory.
    std::vector<Coord> lefts{0};
    for (int b = 2; b <= k - 1; ++b) {
        Coord xc = -step * (b - 1);
        Coord qc = deep.lo + 4;
        assert(qc <= deep.hi - 2);
        em.emit(xc, qc);
        deep = tower({xc + 4, lefts.back() - 4}, k - 1);
        lefts.push_back(xc);
    }
    // The last block keeps its tower above the cover; the final cover's
    // merged lower region ends up both deep and quickly reachable.
    deep = tower(deep, k - 1);
    Coord xc = -step * (k - 1);
    Coord qc = deep.lo + 4;
    assert(qc <= deep.hi - 2);
    em.emit(xc, qc);
    GeneratedInstance out;
    out.segments = std::move(em.segments);
    out.insertion_order.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.insertion_order[i] = i;
    return out;
}

}  // namespace trapmap
