#include "trapmap/driver.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <utility>

#include "trapmap/random.hpp"
#include "trapmap/verify_ply.hpp"
#include "trapmap/verify_recursive.hpp"

namespace trapmap {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

long long path_bound(double lambda, int n) {
    return static_cast<long long>(std::ceil(3.0 * lambda * std::log(static_cast<double>(n) + 1.0)));
}

BuildOutcome build_guaranteed(std::vector<Segment> segments, const BuildConfig& config) {
    const int n = static_cast<int>(segments.size());
    const long long bound = path_bound(config.lambda, n);
    const std::int64_t max_nodes =
        static_cast<std::int64_t>(std::ceil(15.0 * config.size_rho * n));

    BuildOutcome out;
    out.report.seed = config.rng_seed;
    out.report.bound = bound;
    out.report.verifier = config.verifier;
    out.report.certifying = config.verifier != VerifierKind::DepthOnly;

    Rng rng(config.rng_seed);
    std::vector<int> perm(segments.size());
    std::iota(perm.begin(), perm.end(), 0);

    for (int attempt = 0; attempt < config.max_rebuilds; ++attempt) {
        rng.shuffle(perm);
        auto t0 = std::chrono::steady_clock::now();
        std::optional<HistoryDag> dag =
            n > 0 ? HistoryDag::build(segments, perm, max_nodes)
                  : HistoryDag::build(segments, perm);
        out.report.build_seconds += seconds_since(t0);
        out.report.rebuilds = attempt;
        if (!dag) continue;  // size abort

        auto t1 = std::chrono::steady_clock::now();
        bool pass = false;
        long long certificate = 0;
        switch (config.verifier) {
            case VerifierKind::Recursive: {
                PathBoundResult r = verify_path_bound(*dag, bound);
                pass = r.pass;
                certificate = r.length;
                break;
            }
            case VerifierKind::Ply: {
                PlyVerdict v = verify_by_ply(*dag, bound);
                pass = v.pass;
                certificate = v.certificate;
                break;
            }
            case VerifierKind::DepthOnly: {
                certificate = dag->stats().depth;
                pass = certificate <= bound;
                break;
            }
        }
        out.report.verify_seconds += seconds_since(t1);
        if (pass) {
            dag->rng_seed = config.rng_seed;
            out.report.permutation = perm;
            out.report.stats = dag->stats();
            out.report.certificate = certificate;
            out.dag = std::move(dag);
            return out;
        }
    }
    out.report.rebuilds = config.max_rebuilds;
    return out;  // rebuild limit exceeded
}

}  // namespace trapmap
