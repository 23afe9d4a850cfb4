#pragma once

#include <optional>

#include "trapmap/dag.hpp"

namespace trapmap {

/// Open interval of x-values (lex order) still consistent with a partial
/// search path.
struct HistoryInterval {
    ExtendedPoint low = ExtendedPoint::neg_infinity();
    ExtendedPoint high = ExtendedPoint::pos_infinity();
};

/// Exhaustive DFS over the geometrically realizable search paths of the DAG.
/// Segment nodes split the recursion with the interval unchanged; point nodes
/// inside the interval split it; point nodes outside (bouncing) force one
/// child. Returns the maximum internal-node count over realizable paths.
/// With abort_above set, returns early with a value > abort_above as soon as
/// any path exceeds it.
long long max_query_path(const HistoryDag& dag, std::optional<long long> abort_above = {});

struct PathBoundResult {
    bool pass = false;
    long long length = 0;  // exact L on PASS; some witness length > bound on FAIL
};

/// PASS iff every realizable search path has at most `bound` internal nodes.
PathBoundResult verify_path_bound(const HistoryDag& dag, long long bound);

}  // namespace trapmap
