#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "trapmap/dag.hpp"

namespace trapmap {

enum class VerifierKind { Recursive, Ply, DepthOnly };

struct BuildConfig {
    double lambda = 20.0;     // path bound is ceil(3 * lambda * ln(n+1))
    double size_rho = 3.0;    // size abort at 15 * rho * n nodes
    VerifierKind verifier = VerifierKind::Recursive;
    int max_rebuilds = 64;
    std::uint64_t rng_seed = 0;
};

struct BuildReport {
    int rebuilds = 0;
    std::uint64_t seed = 0;
    std::vector<int> permutation;   // the winning insertion order
    DagStats stats;
    long long bound = 0;            // the certified path bound
    long long certificate = 0;      // L, 3*ply, or D depending on the verifier
    VerifierKind verifier = VerifierKind::Recursive;
    bool certifying = true;         // false for DepthOnly (heuristic mode)
    double build_seconds = 0.0;
    double verify_seconds = 0.0;
};

/// Result of the guaranteed-construction loop. dag is empty when every
/// attempt up to max_rebuilds failed (report still describes the run).
struct BuildOutcome {
    std::optional<HistoryDag> dag;
    BuildReport report;
    bool ok() const { return dag.has_value(); }
};

/// ceil(3 * lambda * ln(n + 1)), the query-path threshold of the rebuild loop.
long long path_bound(double lambda, int n);

/// Builds with random insertion orders until the structure passes both the
/// online size check (node count <= 15 * rho * n) and the configured
/// verifier at the path bound, rebuilding with a fresh permutation on
/// failure. The expected number of rebuilds is a small constant.
BuildOutcome build_guaranteed(std::vector<Segment> segments, const BuildConfig& config);

}  // namespace trapmap
