// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Everything here pins the numbers and tolerances the library must meet.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "fixture.hpp"
#include "icl/builder.hpp"
#include "icl/measures.hpp"
#include "icl/rng.hpp"
#include "icl/sampler.hpp"
#include "icl/verifier.hpp"
#include "oracles.hpp"

namespace {

using icl::JointTable;
using icl::Strength;
using icl::Universe;

int failures = 0;

void report(const char* name, bool pass, const std::string& detail = {}) {
    std::printf("%s - %s%s%s\n", pass ? "PASS" : "FAIL", name, detail.empty() ? "" : ": ",
                detail.c_str());
    if (!pass) ++failures;
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

// ---- criterion: fixture transfer entropy and H(M'|M) equal 0.95669 ----
void criterion_fixture_number() {
    const double t0 = now_seconds();
    const Universe u = icl::example_universe();
    const JointTable j = u.joint();
    const double te = transfer_entropy(j, "S", "M");
    const std::vector<std::string> mp{"M'"}, m{"M"};
    const double h = conditional_entropy(j, mp, m);
    const double elapsed = now_seconds() - t0;

    const bool pass = std::abs(te - 0.95669) <= 5e-4 && std::abs(h - 0.95669) <= 5e-4 &&
                      elapsed < 1.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "TE = %.6f, H(M'|M) = %.6f, %.3fs", te, h, elapsed);
    report("fixture number 0.95669 within 5e-4, under 1s", pass, buf);
}

// ---- criterion: fixture interaction closure, strong and weak ----
void criterion_fixture_closure() {
    const JointTable j = icl::example_universe().joint();
    const double strong = conditional_mutual_information(j, {"M'"}, {"X'"}, {"S"});
    const double weak = conditional_mutual_information(j, {"M'"}, {"X"}, {"S"});
    char buf[120];
    std::snprintf(buf, sizeof buf, "I(M':X'|S) = %.3e, I(M':X|S) = %.3e", strong, weak);
    report("fixture closure at 1e-10", std::abs(strong) <= 1e-10 && std::abs(weak) <= 1e-10, buf);
}

// ---- criterion: stationary distribution against the independent oracle ----
void criterion_stationary_oracle() {
    const Universe u = icl::example_universe();
    const std::vector<double> expected{9.0 / 70, 6.0 / 70, 12.0 / 70, 18.0 / 70, 10.0 / 70, 15.0 / 70};
    const auto power = oracle::power_iteration(fixture::matrix_rows());
    double worst_vs_solve = 0.0, worst_vs_power = 0.0;
    for (int x = 0; x < 6; ++x) {
        worst_vs_solve = std::max(worst_vs_solve, std::abs(u.stationary[x] - expected[static_cast<size_t>(x)]));
        worst_vs_power = std::max(worst_vs_power, std::abs(u.stationary[x] - power[static_cast<size_t>(x)]));
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "|pi - (9,6,12,18,10,15)/70| = %.2e, |pi - power| = %.2e",
                  worst_vs_solve, worst_vs_power);
    report("stationary oracle within 1e-12 with power-iteration agreement",
           worst_vs_solve < 1e-12 && worst_vs_power < 1e-12, buf);
}

// ---- criterion: 1000-universe theorem sweep, all verifiers, under 60 s ----
void criterion_theorem_sweep() {
    const double t0 = now_seconds();
    icl::SweepOptions opts;
    opts.count = 1000;
    opts.n_min = 4;
    opts.n_max = 12;
    opts.k_min = 2;
    opts.k_max = 3;
    opts.seed = 0;
    const icl::SweepReport rep = icl::sweep(opts);
    const double elapsed = now_seconds() - t0;
    char buf[120];
    std::snprintf(buf, sizeof buf, "%d/%d passed, %.1fs", rep.passed, rep.count, elapsed);
    report("theorem sweep: 1000 universes, full pass, under 60s",
           rep.all_pass() && elapsed < 60.0, buf);
}

// ---- criterion: extremes of apparent control ----
void criterion_control_extremes() {
    bool pass = true;
    std::string detail;

    for (const std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const Universe u =
            icl::coinciding_universe(6, {{0, 1, 2}, {3, 4, 5}}, icl::FillSpec::dirichlet(1.0), seed);
        const double te = transfer_entropy(u.joint(), "S", "M");
        if (te > 1e-10) {
            pass = false;
            detail = "coinciding TE = " + std::to_string(te);
        }
    }

    for (const std::uint64_t seed : {4ULL, 5ULL, 6ULL}) {
        icl::BuildSpec spec;
        spec.n = 8;
        spec.f_m = {0, 0, 1, 1, 0, 1, 0, 1};
        spec.f_s = {0, 1, 0, 1, 1, 0, 1, 0};
        spec.fill = icl::FillSpec::dirichlet(1.0);
        spec.seed = seed;
        const Universe u = icl::build_perfect_control_universe(spec);
        const JointTable j = u.joint();
        const double te = transfer_entropy(j, "S", "M");
        const std::vector<std::string> mp{"M'"}, m{"M"};
        const double h = conditional_entropy(j, mp, m);
        const auto pc = is_perfect_apparent_control(j, "S", "M");
        const size_t expected_pairs = 4;  // k^2 (z, z') pairs
        if (std::abs(te - h) > 1e-10 || !pc.perfect || pc.witnesses.size() != expected_pairs) {
            pass = false;
            detail = "perfect-control instance: |TE - H| = " + std::to_string(std::abs(te - h)) +
                     ", witnesses = " + std::to_string(pc.witnesses.size());
        }
    }
    report("control extremes: coinciding TE = 0, perfect control TE = H(M'|M) with witnesses",
           pass, detail);
}

// ---- criterion: the two CMI evaluation routes agree on every tested joint ----
void criterion_measure_oracle() {
    std::vector<JointTable> joints;
    joints.push_back(icl::example_universe().joint());
    {
        icl::BuildSpec spec;
        spec.n = 9;
        spec.f_m = {0, 0, 0, 1, 1, 1, 2, 2, 2};
        spec.f_s = {0, 1, 2, 0, 1, 2, 0, 1, 2};
        spec.fill = icl::FillSpec::dirichlet(1.0);
        spec.seed = 31;
        joints.push_back(icl::build_universe(spec).joint());
    }
    {
        const Universe u = icl::example_universe();
        joints.push_back(empirical_joint(sample_trajectory(u, 20000, 5)));
    }

    double worst = 0.0;
    double most_negative = 0.0;
    const std::vector<std::vector<std::vector<std::string>>> combos{
        {{"M'"}, {"S"}, {"M"}},       {{"M'"}, {"X'"}, {"S"}},
        {{"M'"}, {"X"}, {"X'", "S"}}, {{"S'"}, {"X"}, {"S"}},
        {{"X'"}, {"X"}, {}},          {{"M'", "S'"}, {"X"}, {"S"}},
    };
    for (const JointTable& j : joints)
        for (const auto& combo : combos) {
            const auto a = std::span<const std::string>(combo[0]);
            const auto b = std::span<const std::string>(combo[1]);
            const auto c = std::span<const std::string>(combo[2]);
            const double direct = conditional_mutual_information(j, a, b, c);
            const double via_h = conditional_mutual_information_entropy_form(j, a, b, c);
            worst = std::max(worst, std::abs(direct - via_h));
            most_negative = std::min(most_negative, direct);
        }
    char buf[120];
    std::snprintf(buf, sizeof buf, "max route gap = %.2e, min measure = %.2e", worst, most_negative);
    report("measure oracle equivalence within 1e-12, nonnegativity within 1e-10",
           worst < 1e-12 && most_negative > -1e-10, buf);
}

// ---- criterion: Appendix-A identities on arbitrary random universes ----
void criterion_identities_on_random_universes() {
    double worst_chain = 0.0, worst_dsep = 0.0;
    icl::Rng rng(404, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + trial % 6;
        std::vector<std::vector<double>> rows(static_cast<size_t>(n),
                                              std::vector<double>(static_cast<size_t>(n), 0.0));
        for (int x = 0; x < n; ++x) {
            const auto col = rng.dirichlet(0.8, n);
            for (int xp = 0; xp < n; ++xp) rows[static_cast<size_t>(xp)][static_cast<size_t>(x)] = col[static_cast<size_t>(xp)];
        }
        const auto P = icl::StochasticMatrix::validate(rows);
        const auto pi = stationary_distribution(P);
        const int k = 2 + trial % 2;
        std::vector<int> fs(static_cast<size_t>(n)), fm(static_cast<size_t>(n));
        for (int x = 0; x < n; ++x) {
            fs[static_cast<size_t>(x)] = rng.uniform_int(0, k - 1);
            fm[static_cast<size_t>(x)] = rng.uniform_int(0, k - 1);
        }
        std::vector<icl::NamedChannel> channels;
        channels.push_back({"S", icl::Channel::from_function(fs, n, k)});
        channels.push_back({"M", icl::Channel::from_function(fm, n, k)});
        const JointTable j = two_step_joint(P, channels, pi);

        const double lhs = conditional_mutual_information(j, {"M'"}, {"X", "X'"}, {"S"});
        const double strong = conditional_mutual_information(j, {"M'"}, {"X'"}, {"S"});
        const double dsep = conditional_mutual_information(j, {"M'"}, {"X"}, {"X'", "S"});
        worst_chain = std::max(worst_chain, std::abs(lhs - (strong + dsep)));
        worst_dsep = std::max(worst_dsep, std::abs(dsep));
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "max chain-rule gap = %.2e, max d-separation = %.2e",
                  worst_chain, worst_dsep);
    report("Appendix-A identities on 50 random (non-closed) universes at 1e-10",
           worst_chain <= 1e-10 && worst_dsep <= 1e-10, buf);
}

// ---- criterion: sampler consistency over the frozen seed schedule ----
void criterion_sampler_consistency() {
    const Universe u = icl::example_universe();
    const std::vector<long> lengths{1000, 10000, 100000, 1000000};
    std::vector<std::vector<icl::MeasureComparison>> runs;
    for (size_t i = 0; i < lengths.size(); ++i)
        runs.push_back(empirical_measures(
            sample_trajectory(u, lengths[i], 0xC0FFEE + static_cast<std::uint64_t>(i)), u));

    double te_gap_final = 0.0;
    bool shrink = true;
    std::string offender;
    for (size_t m = 0; m < runs.front().size(); ++m) {
        const double gap_small = runs.front()[m].gap();
        const double gap_large = runs.back()[m].gap();
        if (runs.back()[m].name == "transfer_entropy") te_gap_final = gap_large;
        // closure measures are structurally zero in every sampled joint, so
        // their gap is exactly 0 at both lengths; that is the converged limit
        if (gap_small == 0.0 && gap_large == 0.0) continue;
        if (!(gap_large < gap_small)) {
            shrink = false;
            offender = runs.back()[m].name;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "TE gap at T=1e6: %.4f%s%s", te_gap_final,
                  offender.empty() ? "" : ", non-shrinking: ", offender.c_str());
    report("sampler consistency: TE gap <= 0.02 at T=1e6, every gap(1e6) < gap(1e3)",
           te_gap_final <= 0.02 && shrink, buf);
}

// ---- criterion: negative controls fail the matching verifier by name ----
void criterion_negative_controls() {
    bool pass = true;
    std::string detail;

    // corrupted kernel: the flipped zero breaks support conditions and eq13's
    // precondition
    {
        auto rows = fixture::matrix_rows();
        rows[3][0] = 0.01;
        for (int xp = 0; xp < 6; ++xp) rows[static_cast<size_t>(xp)][0] /= 1.01;
        std::vector<icl::NamedChannel> channels;
        channels.push_back({"S", icl::Channel::from_function(fixture::f_s(), 6, 2)});
        channels.push_back({"M", icl::Channel::from_function(fixture::f_m(), 6, 2)});
        const auto P = icl::StochasticMatrix::validate(rows);
        const Universe u{P, stationary_distribution(P), channels, {}};

        const auto rep = verify_support_conditions(u);
        bool named = false;
        for (const auto& c : rep.checks)
            if (c.name == "kernel_support_zeros" && !c.pass && c.counterexample.has_value())
                named = true;
        if (rep.pass || !named) {
            pass = false;
            detail = "support verifier did not name the flipped entry";
        }
        try {
            verify_eq13(u);
            pass = false;
            detail = "eq13 accepted a non-closed universe";
        } catch (const icl::PreconditionError&) {
        }
    }

    // midpoint channel column: extreme-set assumption and partition-theorem
    // preconditions break
    {
        const Universe ref = icl::example_universe();
        std::vector<std::vector<double>> pi_m(2, std::vector<double>(6, 0.0));
        for (int x = 0; x < 6; ++x) pi_m[static_cast<size_t>(fixture::f_m()[static_cast<size_t>(x)])][static_cast<size_t>(x)] = 1.0;
        pi_m[0][2] = 0.5;
        pi_m[1][2] = 0.5;
        std::vector<icl::NamedChannel> channels;
        channels.push_back({"S", icl::Channel::from_function(fixture::f_s(), 6, 2)});
        channels.push_back({"M", icl::Channel::validate(pi_m)});
        const Universe u{ref.P, ref.stationary, channels, {}};
        try {
            verify_extreme_set_equalities(u);
            pass = false;
            detail = "extreme-set verifier accepted a midpoint column";
        } catch (const icl::AssumptionViolatedError& e) {
            if (e.assumption != "pi_m_extreme") {
                pass = false;
                detail = "unexpected assumption: " + e.assumption;
            }
        }
        if (verify_partition_theorems(u).pass) {
            pass = false;
            detail = "partition theorems accepted a non-deterministic channel";
        }
    }

    // perturbed joint: off-graph mass must fail the hierarchy verifier (the
    // chain rule is an algebraic identity, so the break shows in d-separation)
    {
        auto joint = icl::example_universe().joint();
        std::vector<double> probs(joint.probs().begin(), joint.probs().end());
        const std::vector<int> cell{1, 3, 1, 0, 0, 0};
        probs[joint.flatten(cell)] += 0.02;
        const auto broken = JointTable::unchecked(joint.names(), joint.cards(), std::move(probs));
        const auto rep = verify_closure_hierarchy(broken);
        bool named = false;
        for (const auto& c : rep.checks)
            if (c.name == "d_separation" && !c.pass && c.counterexample.has_value()) named = true;
        if (rep.pass || !named) {
            pass = false;
            detail = "hierarchy verifier survived a perturbed joint";
        }
    }

    report("negative controls: corrupted fixtures fail their verifiers by name", pass, detail);
}

}  // namespace

int main() {
    criterion_fixture_number();
    criterion_fixture_closure();
    criterion_stationary_oracle();
    criterion_theorem_sweep();
    criterion_control_extremes();
    criterion_measure_oracle();
    criterion_identities_on_random_universes();
    criterion_sampler_consistency();
    criterion_negative_controls();

    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
