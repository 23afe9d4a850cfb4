// trapmap command line: build, query, verify, stats, gen, bench.
//
// Exit codes: 0 success / verification PASS, 1 verification FAIL or rebuild
// budget exhausted, 2 input or usage errors.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "trapmap/driver.hpp"
#include "trapmap/generators.hpp"
#include "trapmap/io.hpp"
#include "trapmap/random.hpp"
#include "trapmap/search_tree.hpp"
#include "trapmap/verify_ply.hpp"
#include "trapmap/verify_recursive.hpp"

using nlohmann::json;
using namespace trapmap;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

struct LoadedInput {
    std::vector<Segment> segments;
    std::string hash;
};

// Reads and optionally validates a segment file; prints a report and returns
// nullopt on any problem (caller exits 2).
std::optional<LoadedInput> load_segments(const std::string& path, bool validate) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open " << path << "\n";
        return std::nullopt;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string data = buffer.str();
    std::istringstream stream(data);
    ParseError err;
    auto segs = parse_segments(stream, err);
    if (!segs) {
        std::cerr << "error: " << path << ":" << err.line << ": " << err.message << "\n";
        return std::nullopt;
    }
    if (validate) {
        auto violations = validate_input(*segs);
        if (!violations.empty()) {
            for (const Violation& v : violations) {
                const char* kind = v.kind == ViolationKind::Crossing ? "CROSSING"
                                   : v.kind == ViolationKind::EndpointOnInterior
                                       ? "ENDPOINT_ON_INTERIOR"
                                   : v.kind == ViolationKind::Degenerate ? "DEGENERATE"
                                                                         : "DUPLICATE";
                std::cerr << "invalid input: " << kind << " segment " << v.first;
                if (v.second >= 0) std::cerr << " vs " << v.second;
                std::cerr << " (" << v.message << ")\n";
            }
            return std::nullopt;
        }
    }
    return LoadedInput{std::move(*segs), hex64(fnv1a(data))};
}

VerifierKind parse_verifier(const std::string& name) {
    if (name == "ply") return VerifierKind::Ply;
    if (name == "depth") return VerifierKind::DepthOnly;
    return VerifierKind::Recursive;
}

const char* verifier_name(VerifierKind k) {
    switch (k) {
        case VerifierKind::Ply: return "ply";
        case VerifierKind::DepthOnly: return "depth";
        default: return "recursive";
    }
}

json stats_json(const DagStats& st) {
    return {{"n", st.n},
            {"node_count", st.node_count},
            {"inner_count", st.inner_count},
            {"leaf_count", st.leaf_count},
            {"depth", st.depth},
            {"registry_size", st.registry_size}};
}

json wall_json(const ExtendedPoint& w) {
    if (w.is_neg_infinity()) return "-inf";
    if (w.is_pos_infinity()) return "+inf";
    return json::array({w.point().x, w.point().y});
}

json boundary_json(int seg_or_sentinel) {
    if (seg_or_sentinel == kFloor) return "FLOOR";
    if (seg_or_sentinel == kCeiling) return "CEILING";
    return seg_or_sentinel;
}

std::uint64_t effective_seed(std::uint64_t flag_seed) {
    if (const char* env = std::getenv("TRAPMAP_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return flag_seed;
}

std::vector<int> make_order(std::size_t n, bool file_order, std::uint64_t seed) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    if (!file_order) {
        Rng rng(seed);
        rng.shuffle(perm);
    }
    return perm;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"trapezoidal-map point location with certified query bounds"};
    app.require_subcommand(1);

    // shared options
    std::string input_path, queries_path, out_path, method = "recursive", family = "levels",
                order = "random";
    std::uint64_t seed = 0;
    double lambda = 20.0, rho = 3.0;
    int max_rebuilds = 64, gen_n = 0, min_exp = 10, max_exp = 15;
    long long bound = -1;
    bool no_validate = false, tree_stats = false;

    auto add_common = [&](CLI::App* cmd, bool with_driver) {
        cmd->add_option("-i,--input", input_path, "segment file")->required();
        cmd->add_option("--seed", seed, "rng seed (TRAPMAP_SEED overrides)");
        cmd->add_flag("--no-validate", no_validate, "skip the O(n^2) input validation");
        if (with_driver) {
            cmd->add_option("--lambda", lambda, "path bound is ceil(3*lambda*ln(n+1))");
            cmd->add_option("--rho", rho, "size abort at 15*rho*n nodes");
            cmd->add_option("--verifier", method, "recursive | ply | depth");
            cmd->add_option("--max-rebuilds", max_rebuilds, "rebuild budget");
        }
    };

    CLI::App* cmd_build = app.add_subcommand("build", "guaranteed build; manifest on stdout");
    add_common(cmd_build, true);

    CLI::App* cmd_query = app.add_subcommand("query", "locate query points");
    add_common(cmd_query, true);
    cmd_query->add_option("-q,--queries", queries_path, "query file (x y per line)")->required();

    CLI::App* cmd_verify = app.add_subcommand("verify", "verify one build against a bound");
    add_common(cmd_verify, false);
    cmd_verify->add_option("--method", method, "recursive | ply | depth");
    cmd_verify->add_option("--bound", bound, "path bound (default ceil(3*lambda*ln(n+1)))");
    cmd_verify->add_option("--lambda", lambda, "lambda for the default bound");
    cmd_verify->add_option("--order", order, "random | file (insertion order)");

    CLI::App* cmd_stats = app.add_subcommand("stats", "structure statistics");
    add_common(cmd_stats, false);
    cmd_stats->add_option("--order", order, "random | file (insertion order)");
    cmd_stats->add_flag("--tree", tree_stats, "also build the search tree and report the ratio");

    CLI::App* cmd_gen = app.add_subcommand("gen", "write a generated instance");
    cmd_gen->add_option("--family", family, "levels | rejection | blocks | sqrt")->required();
    cmd_gen->add_option("-n,--count", gen_n, "number of segments")->required();
    cmd_gen->add_option("--seed", seed, "rng seed (random families)");
    cmd_gen->add_option("-o,--output", out_path, "output file (default stdout)");

    CLI::App* cmd_bench = app.add_subcommand("bench", "doubling experiment, CSV on stdout");
    cmd_bench->add_option("--min-exp", min_exp, "smallest n = 2^min-exp");
    cmd_bench->add_option("--max-exp", max_exp, "largest n = 2^max-exp");
    cmd_bench->add_option("--seed", seed, "rng seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    seed = effective_seed(seed);

    try {
        if (*cmd_gen) {
            GeneratedInstance inst;
            if (family == "levels")
                inst.segments = gen_random_disjoint(gen_n, seed, RandomProfile::HorizontalLevels);
            else if (family == "rejection")
                inst.segments =
                    gen_random_disjoint(gen_n, seed, RandomProfile::NoncrossingRejection);
            else if (family == "blocks")
                inst = gen_adversarial_blocks(gen_n);
            else if (family == "sqrt")
                inst = gen_sqrt_blocks(gen_n);
            else {
                std::cerr << "error: unknown family " << family << "\n";
                return 2;
            }
            std::ostringstream body;
            body << "# trapmap gen --family " << family << " -n " << gen_n << " --seed " << seed
                 << "\n";
            if (family == "blocks" || family == "sqrt")
                body << "# file order is the prescribed insertion order\n";
            write_segments(body, inst.segments);
            if (out_path.empty()) {
                std::cout << body.str();
            } else {
                std::ofstream out(out_path);
                if (!out) {
                    std::cerr << "error: cannot write " << out_path << "\n";
                    return 2;
                }
                out << body.str();
            }
            return 0;
        }

        if (*cmd_bench) {
            std::cout << "n,build_s,verify_s,depth,max_query_path,node_count\n";
            for (int e = min_exp; e <= max_exp; ++e) {
                int n = 1 << e;
                auto segs = gen_random_disjoint(n, seed + static_cast<std::uint64_t>(e),
                                                RandomProfile::HorizontalLevels);
                auto perm = make_order(segs.size(), false, seed * 31 + e);
                Timer tb;
                HistoryDag dag = *HistoryDag::build(std::move(segs), perm);
                double build_s = tb.seconds();
                Timer tv;
                long long l = max_query_path(dag);
                double verify_s = tv.seconds();
                DagStats st = dag.stats();
                std::cout << n << ',' << build_s << ',' << verify_s << ',' << st.depth << ','
                          << l << ',' << st.node_count << "\n";
            }
            return 0;
        }

        // remaining subcommands read a segment file
        auto loaded = load_segments(input_path, !no_validate);
        if (!loaded) return 2;
        const int n = static_cast<int>(loaded->segments.size());

        if (*cmd_build || *cmd_query) {
            BuildConfig cfg;
            cfg.lambda = lambda;
            cfg.size_rho = rho;
            cfg.verifier = parse_verifier(method);
            cfg.max_rebuilds = max_rebuilds;
            cfg.rng_seed = seed;
            Timer total;
            BuildOutcome out = build_guaranteed(loaded->segments, cfg);
            json manifest = {
                {"command", *cmd_build ? "build" : "query"},
                {"input", {{"path", input_path}, {"fnv1a", loaded->hash}, {"n", n}}},
                {"config",
                 {{"lambda", cfg.lambda},
                  {"rho", cfg.size_rho},
                  {"verifier", verifier_name(cfg.verifier)},
                  {"max_rebuilds", cfg.max_rebuilds},
                  {"validate", !no_validate}}},
                {"seed", seed},
            };
            json result = {{"ok", out.ok()},
                           {"rebuilds", out.report.rebuilds},
                           {"bound", out.report.bound},
                           {"certifying", out.report.certifying}};
            if (out.ok()) {
                result["certificate"] = out.report.certificate;
                result["stats"] = stats_json(out.report.stats);
            }
            manifest["result"] = result;
            manifest["timing"] = {{"build_s", out.report.build_seconds},
                                  {"verify_s", out.report.verify_seconds},
                                  {"total_s", total.seconds()}};
            if (*cmd_build) {
                std::cout << manifest.dump(2) << "\n";
                return out.ok() ? 0 : 1;
            }
            if (!out.ok()) {
                std::cout << manifest.dump(2) << "\n";
                return 1;
            }

            std::ifstream qin(queries_path);
            if (!qin) {
                std::cerr << "error: cannot open " << queries_path << "\n";
                return 2;
            }
            ParseError err;
            auto queries = parse_queries(qin, err);
            if (!queries) {
                std::cerr << "error: " << queries_path << ":" << err.line << ": " << err.message
                          << "\n";
                return 2;
            }
            const HistoryDag& dag = *out.dag;
            for (Point q : *queries) {
                LocateResult r = dag.locate(q);
                json line = {{"x", q.x}, {"y", q.y}};
                if (r.status == LocateStatus::OnVertex) {
                    line["status"] = "ON_VERTEX";
                } else if (r.status == LocateStatus::OnSegment) {
                    line["status"] = "ON_SEGMENT";
                } else {
                    const Trapezoid& t = dag.registry()[r.trap];
                    line["status"] = "ok";
                    line["top"] = boundary_json(t.top);
                    line["bottom"] = boundary_json(t.bottom);
                    line["left"] = wall_json(t.left_wall);
                    line["right"] = wall_json(t.right_wall);
                    line["path_length"] = r.path_length;
                }
                std::cout << line.dump() << "\n";
            }
            return 0;
        }

        if (*cmd_verify) {
            auto perm = make_order(loaded->segments.size(), order == "file", seed);
            HistoryDag dag = *HistoryDag::build(loaded->segments, perm);
            if (bound < 0) bound = path_bound(lambda, n);
            DagStats st = dag.stats();
            json result = {{"method", method}, {"bound", bound}, {"depth", st.depth}};
            bool pass = false;
            if (method == "ply") {
                PlyVerdict v = verify_by_ply(dag, bound);
                pass = v.pass;
                result["ply"] = v.ply;
                result["certificate"] = v.certificate;
            } else if (method == "depth") {
                pass = st.depth <= bound;
                result["certificate"] = st.depth;
                result["certifying"] = false;
            } else {
                PathBoundResult r = verify_path_bound(dag, bound);
                pass = r.pass;
                result["max_query_path"] = r.length;
                result["certificate"] = r.length;
            }
            result["pass"] = pass;
            std::cout << result.dump(2) << "\n";
            return pass ? 0 : 1;
        }

        if (*cmd_stats) {
            auto perm = make_order(loaded->segments.size(), order == "file", seed);
            HistoryDag dag = *HistoryDag::build(loaded->segments, perm);
            json out = {{"dag", stats_json(dag.stats())}, {"seed", seed}};
            if (tree_stats) {
                SearchTree tree = SearchTree::build(loaded->segments, perm);
                DagStats ts = tree.stats();
                out["tree"] = stats_json(ts);
                out["tree_dag_node_ratio"] =
                    static_cast<double>(ts.node_count) /
                    static_cast<double>(dag.stats().node_count);
            }
            std::cout << out.dump(2) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
