// iclosure - analyze, build, verify, sample, and search interaction-closed
// Markov universes.
//
// Exit codes: 0 success, 2 invalid input, 3 verification failure.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "icl/builder.hpp"
#include "icl/report.hpp"
#include "icl/sampler.hpp"
#include "icl/universe.hpp"
#include "icl/verifier.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitVerifyFailed = 3;

void emit(const json& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw icl::ParseError("cannot write '" + out_path + "'");
        out << doc.dump(2) << "\n";
    }
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw icl::ParseError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw icl::ParseError("invalid JSON in '" + path + "': " + e.what());
    }
}

int cmd_analyze(const std::string& universe_path, double tol, bool pretty,
                const std::string& out_path) {
    const icl::Universe u = icl::load_universe(universe_path);
    const json rep = icl::analysis_report(u, tol);
    if (pretty) {
        std::cout << icl::pretty_report(rep);
        if (!out_path.empty()) emit(rep, out_path);
    } else {
        emit(rep, out_path);
    }
    return kExitOk;
}

int cmd_build(const std::string& spec_path, const std::string& out_path, bool has_seed,
              std::uint64_t seed) {
    icl::BuildSpec spec = icl::BuildSpec::from_json(load_json(spec_path));
    if (has_seed) spec.seed = seed;
    const icl::Universe u = spec.require_perfect_control
                                ? icl::build_perfect_control_universe(spec)
                                : icl::build_universe(spec);
    if (out_path.empty()) {
        std::cout << icl::universe_to_json(u).dump(2) << "\n";
    } else {
        icl::save_universe(u, out_path);
        std::cerr << "wrote " << out_path << "\n";
    }
    return kExitOk;
}

int cmd_verify(const std::string& universe_path, int sweep_count, std::uint64_t seed,
               const std::string& out_path, const std::string& archive_dir) {
    json rep;
    bool all_pass = true;

    if (!universe_path.empty()) {
        const icl::Universe u = icl::load_universe(universe_path);
        json checks = json::array();
        for (const icl::VerificationReport& v : icl::run_all_verifiers(u)) {
            all_pass = all_pass && v.pass;
            checks.push_back(v.to_json());
        }
        rep["universe"] = json{{"digest", icl::universe_digest(u)}, {"reports", std::move(checks)}};
    }
    if (sweep_count > 0) {
        icl::SweepOptions opts;
        opts.count = sweep_count;
        opts.seed = seed;
        opts.archive_dir = archive_dir;
        const icl::SweepReport sr = icl::sweep(opts);
        all_pass = all_pass && sr.all_pass();
        rep["sweep"] = sr.to_json();
    }
    rep["pass"] = all_pass;
    emit(rep, out_path);
    return all_pass ? kExitOk : kExitVerifyFailed;
}

int cmd_sample(const std::string& universe_path, long T, std::uint64_t seed,
               const std::string& out_path) {
    const icl::Universe u = icl::load_universe(universe_path);
    const icl::Trajectory traj = icl::sample_trajectory(u, T, seed);

    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw icl::ParseError("cannot write '" + out_path + "'");
        for (long t = 0; t < traj.length(); ++t)
            out << traj.x[static_cast<size_t>(t)] + 1 << " " << traj.s[static_cast<size_t>(t)] + 1
                << " " << traj.m[static_cast<size_t>(t)] + 1 << "\n";
    }

    json rep{{"T", T}, {"seed", seed}, {"rng", traj.rng_name}};
    if (T >= 2) {
        json measures = json::array();
        for (const auto& cmp : icl::empirical_measures(traj, u))
            measures.push_back(json{{"name", cmp.name},
                                    {"empirical", cmp.empirical},
                                    {"exact", cmp.exact},
                                    {"gap", cmp.gap()}});
        rep["measures"] = std::move(measures);
    }
    std::cout << rep.dump(2) << "\n";
    return kExitOk;
}

int cmd_search(const std::string& spec_path, int iterations, std::uint64_t seed,
               const std::string& out_path) {
    const icl::BuildSpec spec = icl::BuildSpec::from_json(load_json(spec_path));
    const icl::SearchResult result = icl::maximize_control(spec, iterations, seed);
    if (!out_path.empty()) icl::save_universe(result.universe, out_path);

    json rep{{"best_score_bits", result.best_score},
             {"iterations", iterations},
             {"trace", result.trace}};
    if (!out_path.empty()) rep["universe_file"] = out_path;
    std::cout << rep.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interaction-closed Markov universes: exact analysis, construction, verification"};
    app.require_subcommand(1);

    std::string universe_path, spec_path, out_path, archive_dir;
    double tol = icl::kClosureTol;
    bool pretty = false;
    std::uint64_t seed = 0;
    long T = 1000;
    int sweep_count = 0;
    int iterations = 100;

    auto* analyze = app.add_subcommand("analyze", "full report for a universe file");
    analyze->add_option("universe", universe_path, "universe JSON file")->required();
    analyze->add_option("--tol", tol, "closure verdict tolerance");
    analyze->add_flag("--pretty", pretty, "human-readable table instead of JSON");
    analyze->add_option("--out", out_path, "also write the JSON report here");

    auto* build = app.add_subcommand("build", "construct a universe from a build-spec file");
    build->add_option("spec", spec_path, "build-spec JSON file")->required();
    build->add_option("--out", out_path, "output universe file (default: stdout)");
    auto* build_seed = build->add_option("--seed", seed, "override the spec's seed");

    auto* verify = app.add_subcommand("verify", "run all theorem verifiers");
    verify->add_option("universe", universe_path, "universe JSON file");
    verify->add_option("--sweep", sweep_count, "also verify N randomly built universes");
    verify->add_option("--seed", seed, "sweep seed");
    verify->add_option("--out", out_path, "write the JSON report here");
    verify->add_option("--archive", archive_dir, "directory for counterexample universes");

    auto* sample = app.add_subcommand("sample", "simulate a trajectory and estimate measures");
    sample->add_option("universe", universe_path, "universe JSON file")->required();
    sample->add_option("--T", T, "trajectory length");
    sample->add_option("--seed", seed, "rng seed");
    sample->add_option("--out", out_path, "dump the trajectory ('x s m' per line)");

    auto* search = app.add_subcommand("search", "hill-climb fills to maximize apparent control");
    search->add_option("spec", spec_path, "build-spec JSON file")->required();
    search->add_option("--iterations", iterations, "number of column-refill moves");
    search->add_option("--seed", seed, "search seed");
    search->add_option("--out", out_path, "write the best universe here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(universe_path, tol, pretty, out_path);
        if (app.got_subcommand(build)) return cmd_build(spec_path, out_path, build_seed->count() > 0, seed);
        if (app.got_subcommand(verify)) {
            if (universe_path.empty() && sweep_count == 0) {
                std::cerr << "verify needs a universe file and/or --sweep N\n";
                return kExitBadInput;
            }
            return cmd_verify(universe_path, sweep_count, seed, out_path, archive_dir);
        }
        if (app.got_subcommand(sample)) return cmd_sample(universe_path, T, seed, out_path);
        if (app.got_subcommand(search)) return cmd_search(spec_path, iterations, seed, out_path);
    } catch (const icl::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const icl::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
