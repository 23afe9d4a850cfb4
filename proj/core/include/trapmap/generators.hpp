#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "trapmap/geometry.hpp"

namespace trapmap {

enum class RandomProfile { HorizontalLevels, NoncrossingRejection };

class GenerationTimeout : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Random interior-disjoint instances. HorizontalLevels places n horizontal
/// segments on distinct integer levels (disjoint by construction);
/// NoncrossingRejection samples arbitrary-slope segments and keeps those
/// compatible with the set so far. Deterministic in (n, seed).
std::vector<Segment> gen_random_disjoint(int n, std::uint64_t seed, RandomProfile profile);

struct GeneratedInstance {
    std::vector<Segment> segments;     // ids 0..n-1 in insertion order
    std::vector<int> insertion_order;  // identity; kept explicit for callers
};

/// Recursive halving-block family: depth grows linearly with n under the
/// prescribed top-to-bottom order while every realizable search path stays
/// logarithmic. Requires n >= 2.
GeneratedInstance gen_adversarial_blocks(int n);

/// sqrt(n) blocks of sqrt(n) segments: nested towers chained by cover
/// segments that sweep below everything inserted before, separating depth
/// from search-path length by a sqrt(n) factor. Requires n = k*k >= 4.
GeneratedInstance gen_sqrt_blocks(int n);

}  // namespace trapmap
