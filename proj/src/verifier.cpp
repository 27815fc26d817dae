#include "icl/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "icl/builder.hpp"
#include "icl/measures.hpp"
#include "icl/rng.hpp"

namespace icl {

namespace {

using nlohmann::json;

json states_1based(const std::vector<int>& v) {
    json arr = json::array();
    for (const int s : v) arr.push_back(s + 1);
    return arr;
}

CheckResult make_check(std::string name, bool pass, std::map<std::string, double> values,
                       double tol, std::string detail = {}) {
    return {std::move(name), pass, std::move(values), tol, std::move(detail), std::nullopt};
}

void attach_counterexample(VerificationReport& rep, const json* universe_json) {
    for (auto& check : rep.checks) {
        if (check.pass || check.counterexample) continue;
        json ce;
        if (universe_json) ce["universe"] = *universe_json;
        for (const auto& [k, v] : check.values) ce["values"][k] = v;
        check.counterexample = std::move(ce);
    }
}

// Argmax map used when strict delta recovery fails; unreachable given-states
// stay at -1.
std::vector<int> argmax_map(const JointTable& joint, const std::string& target,
                            const std::string& given) {
    const ConditionalFamily fam = conditional_family(joint, target, given);
    std::vector<int> map(static_cast<size_t>(joint.card(given)), -1);
    for (size_t i = 0; i < fam.given_states.size(); ++i) {
        const auto& vec = fam.vectors[i];
        map[static_cast<size_t>(fam.given_states[i])] =
            static_cast<int>(std::max_element(vec.begin(), vec.end()) - vec.begin());
    }
    return map;
}

}  // namespace

void VerificationReport::add(CheckResult c) {
    pass = pass && c.pass;
    checks.push_back(std::move(c));
}

json VerificationReport::to_json() const {
    json arr = json::array();
    for (const auto& c : checks) {
        json jc{{"name", c.name}, {"pass", c.pass}, {"tol", c.tol}};
        for (const auto& [k, v] : c.values) jc["values"][k] = v;
        if (!c.detail.empty()) jc["detail"] = c.detail;
        if (c.counterexample) jc["counterexample"] = *c.counterexample;
        arr.push_back(std::move(jc));
    }
    return json{{"verifier", verifier}, {"pass", pass}, {"checks", std::move(arr)}};
}

VerificationReport verify_closure_hierarchy(const JointTable& joint, const json* universe_json) {
    VerificationReport rep;
    rep.verifier = "closure_hierarchy";

    const double both = conditional_mutual_information(joint, {"M'"}, {"X", "X'"}, {"S"});
    const double strong = conditional_mutual_information(joint, {"M'"}, {"X'"}, {"S"});
    const double dsep = conditional_mutual_information(joint, {"M'"}, {"X"}, {"X'", "S"});
    const double weak = conditional_mutual_information(joint, {"M'"}, {"X"}, {"S"});

    rep.add(make_check("chain_rule", std::abs(both - (strong + dsep)) <= kAntecedentTol,
                       {{"i_joint", both}, {"i_strong", strong}, {"i_dsep", dsep},
                        {"gap", std::abs(both - (strong + dsep))}},
                       kAntecedentTol));
    rep.add(make_check("d_separation", dsep <= kAntecedentTol, {{"i_mprime_x_given_xprime_s", dsep}},
                       kAntecedentTol));
    rep.add(make_check("strong_implies_weak_interaction",
                       strong > kAntecedentTol || weak <= kConsequentTol,
                       {{"strong", strong}, {"weak", weak}}, kConsequentTol));

    for (const std::string y : {"S", "M"}) {
        if (!joint.has(y) || !joint.has(primed(y))) continue;
        const double s_ic = conditional_mutual_information(joint, {primed(y)}, {"X'"}, {y});
        const double w_ic = conditional_mutual_information(joint, {primed(y)}, {"X"}, {y});
        rep.add(make_check("strong_implies_weak_informational_" + y,
                           s_ic > kAntecedentTol || w_ic <= kConsequentTol,
                           {{"strong", s_ic}, {"weak", w_ic}}, kConsequentTol));
    }

    attach_counterexample(rep, universe_json);
    return rep;
}

VerificationReport verify_closure_hierarchy(const Universe& u) {
    const json uj = universe_to_json(u);
    return verify_closure_hierarchy(u.joint(), &uj);
}

VerificationReport verify_eq13(const Universe& u) {
    const JointTable joint = u.joint();
    const MeasureReport strong = interaction_closure(joint, "S", "M", Strength::Strong);
    if (!strong.verdict)
        throw PreconditionError("strong interaction closure does not hold: I(M':X'|S) = " +
                                std::to_string(strong.value_bits));

    const EqualityReport eq = interaction_equalities(joint, "S", "M");
    VerificationReport rep;
    rep.verifier = "eq13_equalities";
    rep.add(make_check("three_way_equality", eq.equal,
                       {{"i_mprime_s", eq.i_zprime_y},
                        {"i_mprime_x", eq.i_zprime_x},
                        {"i_mprime_xprime", eq.i_zprime_xprime}},
                       eq.tol));
    const json uj = universe_to_json(u);
    attach_counterexample(rep, &uj);
    return rep;
}

VerificationReport verify_support_conditions(const Universe& u) {
    const Channel& chS = u.channel_or_throw("S");
    const Channel& chM = u.channel_or_throw("M");
    const auto detS = is_deterministic(chS);
    const auto detM = is_deterministic(chM);
    if (!detS.deterministic || !detM.deterministic)
        throw MapRecoveryError("support conditions need deterministic S and M channels");

    const JointTable joint = u.joint();
    const json uj = universe_to_json(u);
    VerificationReport rep;
    rep.verifier = "support_conditions";

    // Recover f^M' and g; fall back to argmax maps when conditionals are not
    // deltas so the violating entries can still be located.
    std::vector<int> f_mprime, g_map;
    bool deltas_ok = true;
    std::string delta_detail;
    try {
        f_mprime = recover_step_map(joint, "M'", "X").map;
    } catch (const NotDeterministicError& e) {
        deltas_ok = false;
        delta_detail = e.what();
        f_mprime = argmax_map(joint, "M'", "X");
    }
    bool g_bijective = false;
    try {
        const RecoveredMap g = recover_step_map(joint, "M'", "S");
        g_map = g.map;
        g_bijective = g.bijective;
    } catch (const NotDeterministicError& e) {
        deltas_ok = false;
        if (!delta_detail.empty()) delta_detail += "; ";
        delta_detail += e.what();
        g_map = argmax_map(joint, "M'", "S");
    }
    rep.add(make_check("map_recovery", deltas_ok, {}, kDeltaTol, delta_detail));
    if (deltas_ok)
        rep.add(make_check("g_bijective", g_bijective, {}, 0.0));

    // Eq-19-style kernel support: p(x'|x) = 0 whenever f^M(x') != f^M'(x).
    const int n = u.P.size();
    std::vector<int> kernel_violation;
    double kernel_mass = 0.0;
    for (int x = 0; x < n && kernel_violation.empty(); ++x) {
        const int target = f_mprime[static_cast<size_t>(x)];
        if (target < 0) continue;
        for (int xp = 0; xp < n; ++xp) {
            if (detM.map[static_cast<size_t>(xp)] == target) continue;
            if (u.P(xp, x) != 0.0) {
                kernel_violation = {xp, x};
                kernel_mass = u.P(xp, x);
                break;
            }
        }
    }
    CheckResult kernel_check =
        make_check("kernel_support_zeros", kernel_violation.empty(),
                   {{"violating_mass", kernel_mass}}, 0.0,
                   kernel_violation.empty()
                       ? ""
                       : "p(x'=" + std::to_string(kernel_violation[0] + 1) + "|x=" +
                             std::to_string(kernel_violation[1] + 1) + ") = " +
                             std::to_string(kernel_mass) + " outside the allowed block");
    if (!kernel_violation.empty()) {
        kernel_check.counterexample =
            json{{"universe", uj}, {"offending", states_1based(kernel_violation)}};
    }
    rep.add(std::move(kernel_check));

    // Inverse support: pi^S-dagger(x|s) = 0 whenever f^M'(x) != g(s).
    const BayesianInverse inv = bayesian_inverse(chS, u.stationary);
    std::vector<int> inv_violation;
    double inv_mass = 0.0;
    for (int s = 0; s < chS.output_card() && inv_violation.empty(); ++s) {
        if (std::find(inv.unreachable.begin(), inv.unreachable.end(), s) != inv.unreachable.end())
            continue;
        const int target = s < static_cast<int>(g_map.size()) ? g_map[static_cast<size_t>(s)] : -1;
        if (target < 0) continue;
        for (int x = 0; x < n; ++x) {
            if (f_mprime[static_cast<size_t>(x)] == target) continue;
            if (inv.channel(x, s) != 0.0) {
                inv_violation = {x, s};
                inv_mass = inv.channel(x, s);
                break;
            }
        }
    }
    CheckResult inv_check =
        make_check("inverse_support_zeros", inv_violation.empty(), {{"violating_mass", inv_mass}},
                   0.0,
                   inv_violation.empty() ? ""
                                         : "pi'(x=" + std::to_string(inv_violation[0] + 1) + "|s=" +
                                               std::to_string(inv_violation[1] + 1) +
                                               ") = " + std::to_string(inv_mass));
    if (!inv_violation.empty())
        inv_check.counterexample = json{{"universe", uj}, {"offending", states_1based(inv_violation)}};
    rep.add(std::move(inv_check));

    if (!rep.pass) attach_counterexample(rep, &uj);
    return rep;
}

namespace {

bool same_extreme_sets(const ExtremeSet& a, const ExtremeSet& b, double tol) {
    const auto close = [tol](const std::vector<double>& u, const std::vector<double>& v) {
        if (u.size() != v.size()) return false;
        double d = 0.0;
        for (size_t i = 0; i < u.size(); ++i) d = std::max(d, std::abs(u[i] - v[i]));
        return d <= tol;
    };
    const auto contains = [&](const ExtremeSet& set, const std::vector<double>& p) {
        return std::any_of(set.begin(), set.end(), [&](const ExtremePoint& e) { return close(e.p, p); });
    };
    return std::all_of(a.begin(), a.end(), [&](const ExtremePoint& e) { return contains(b, e.p); }) &&
           std::all_of(b.begin(), b.end(), [&](const ExtremePoint& e) { return contains(a, e.p); });
}

}  // namespace

VerificationReport verify_extreme_set_equalities(const Universe& u) {
    const JointTable joint = u.joint();

    if (!u.stationary.full_support())
        throw AssumptionViolatedError("full_support", "stationary distribution lacks full support");

    const ConditionalFamily fam_m_x = conditional_family(joint, "M", "X");
    const ExtremeSet e_m_x = extreme_points(fam_m_x);
    // every pi^M(.|x) must itself be an extreme point
    for (size_t i = 0; i < fam_m_x.vectors.size(); ++i) {
        const auto& vec = fam_m_x.vectors[i];
        const bool is_extreme = std::any_of(e_m_x.begin(), e_m_x.end(), [&](const ExtremePoint& e) {
            double d = 0.0;
            for (size_t j = 0; j < vec.size(); ++j) d = std::max(d, std::abs(e.p[j] - vec[j]));
            return d <= kDeltaTol;
        });
        if (!is_extreme)
            throw AssumptionViolatedError(
                "pi_m_extreme", "p(M|x=" + std::to_string(fam_m_x.given_states[i] + 1) +
                                    ") is not an extreme point of C(M|X)");
    }
    const int k_s = u.channel_or_throw("S").output_card();
    if (static_cast<int>(e_m_x.size()) != k_s)
        throw AssumptionViolatedError("alphabet_matches_extremes",
                                      "|S| = " + std::to_string(k_s) + " but |E(M|X)| = " +
                                          std::to_string(e_m_x.size()));
    const MeasureReport strong = interaction_closure(joint, "S", "M", Strength::Strong);
    if (!strong.verdict)
        throw AssumptionViolatedError("strong_interaction_closure",
                                      "I(M':X'|S) = " + std::to_string(strong.value_bits));

    const ExtremeSet e_mp_xp = extreme_points(conditional_family(joint, "M'", "X'"));
    const ExtremeSet e_mp_x = extreme_points(conditional_family(joint, "M'", "X"));
    const ExtremeSet e_mp_s = extreme_points(conditional_family(joint, "M'", "S"));

    VerificationReport rep;
    rep.verifier = "extreme_set_equalities";
    rep.add(make_check("e_mx_equals_e_mpxp", same_extreme_sets(e_m_x, e_mp_xp, kDeltaTol),
                       {{"lhs_size", static_cast<double>(e_m_x.size())},
                        {"rhs_size", static_cast<double>(e_mp_xp.size())}},
                       kDeltaTol));
    rep.add(make_check("e_mpxp_equals_e_mpx", same_extreme_sets(e_mp_xp, e_mp_x, kDeltaTol),
                       {{"lhs_size", static_cast<double>(e_mp_xp.size())},
                        {"rhs_size", static_cast<double>(e_mp_x.size())}},
                       kDeltaTol));
    rep.add(make_check("e_mpx_equals_e_mps", same_extreme_sets(e_mp_x, e_mp_s, kDeltaTol),
                       {{"lhs_size", static_cast<double>(e_mp_x.size())},
                        {"rhs_size", static_cast<double>(e_mp_s.size())}},
                       kDeltaTol));

    // One-to-one s <-> extreme point: every conditional p(M'|s) is extreme
    // and no two s states share one.
    const ConditionalFamily fam_mp_s = conditional_family(joint, "M'", "S");
    bool one_to_one = static_cast<int>(e_mp_s.size()) == static_cast<int>(fam_mp_s.vectors.size());
    for (const auto& e : e_mp_s) one_to_one = one_to_one && e.witnesses.size() == 1;
    rep.add(make_check("one_to_one_s_extreme", one_to_one,
                       {{"s_states", static_cast<double>(fam_mp_s.vectors.size())},
                        {"extremes", static_cast<double>(e_mp_s.size())}},
                       kDeltaTol));

    if (!rep.pass) {
        const json uj = universe_to_json(u);
        attach_counterexample(rep, &uj);
    }
    return rep;
}

VerificationReport verify_partition_theorems(const Universe& u) {
    VerificationReport rep;
    rep.verifier = "partition_theorems";
    const json uj = universe_to_json(u);

    const auto detS = is_deterministic(u.channel_or_throw("S"));
    const auto detM = is_deterministic(u.channel_or_throw("M"));
    const JointTable joint = u.joint();
    const MeasureReport strong = interaction_closure(joint, "S", "M", Strength::Strong);

    rep.add(make_check("preconditions", detS.deterministic && detM.deterministic && strong.verdict,
                       {{"strong_closure", strong.value_bits},
                        {"s_deterministic", detS.deterministic ? 1.0 : 0.0},
                        {"m_deterministic", detM.deterministic ? 1.0 : 0.0}},
                       kAntecedentTol,
                       "deterministic channels and strong interaction closure"));
    if (!rep.pass) {
        attach_counterexample(rep, &uj);
        return rep;
    }

    // Appendix-B step 3: the S channel is deterministic under the assumptions.
    rep.add(make_check("s_channel_deterministic", detS.deterministic, {}, kDeltaTol));

    const Partition current = u.current_partition();
    const Partition future = u.future_partition();
    const PartitionRelation rel = partition_relation(current, future);

    const double te = transfer_entropy(joint, "S", "M");
    const std::vector<std::string> mp{"M'"}, m{"M"};
    const double h = conditional_entropy(joint, std::span<const std::string>(mp),
                                         std::span<const std::string>(m));
    const PerfectControlReport pc = is_perfect_apparent_control(joint, "S", "M");

    std::map<std::string, double> vals{{"transfer_entropy", te},
                                       {"h_mprime_given_m", h},
                                       {"relation", static_cast<double>(static_cast<int>(rel))},
                                       {"perfect_control", pc.perfect ? 1.0 : 0.0}};

    if (rel == PartitionRelation::Coinciding)
        rep.add(make_check("coinciding_implies_te_zero", te <= kConsequentTol, vals, kConsequentTol,
                           to_string(rel)));
    if (rel == PartitionRelation::Orthogonal) {
        rep.add(make_check("orthogonal_implies_te_max", std::abs(te - h) <= kConsequentTol, vals,
                           kConsequentTol, to_string(rel)));
        rep.add(make_check("orthogonal_implies_perfect_control", pc.perfect, vals, pc.tol,
                           to_string(rel)));
    }
    rep.add(make_check("perfect_control_implies_orthogonal",
                       !pc.perfect || rel == PartitionRelation::Orthogonal, vals, pc.tol,
                       to_string(rel)));
    rep.add(make_check("perfect_control_implies_te_max",
                       !pc.perfect || std::abs(te - h) <= kConsequentTol, vals, kConsequentTol));

    if (!rep.pass) attach_counterexample(rep, &uj);
    return rep;
}

std::vector<VerificationReport> run_all_verifiers(const Universe& u) {
    std::vector<VerificationReport> out;
    out.push_back(verify_closure_hierarchy(u));

    try {
        out.push_back(verify_eq13(u));
    } catch (const PreconditionError& e) {
        VerificationReport rep;
        rep.verifier = "eq13_equalities";
        rep.add(make_check("precondition_strong_closure", false, {}, kAntecedentTol, e.what()));
        out.push_back(std::move(rep));
    }

    try {
        out.push_back(verify_support_conditions(u));
    } catch (const MapRecoveryError& e) {
        VerificationReport rep;
        rep.verifier = "support_conditions";
        rep.add(make_check("map_recovery", false, {}, kDeltaTol, e.what()));
        out.push_back(std::move(rep));
    }

    try {
        out.push_back(verify_extreme_set_equalities(u));
    } catch (const AssumptionViolatedError& e) {
        VerificationReport rep;
        rep.verifier = "extreme_set_equalities";
        rep.add(make_check("assumption_" + e.assumption, false, {}, kDeltaTol, e.what()));
        out.push_back(std::move(rep));
    }

    out.push_back(verify_partition_theorems(u));
    return out;
}

namespace {

bool surjective_check(const std::vector<int>& f, int k) {
    std::vector<bool> hit(static_cast<size_t>(k), false);
    for (const int v : f) hit[static_cast<size_t>(v)] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::vector<int> random_surjective_map(Rng& rng, int n, int k) {
    for (;;) {
        std::vector<int> f(static_cast<size_t>(n));
        for (auto& v : f) v = rng.uniform_int(0, k - 1);
        if (surjective_check(f, k)) return f;
    }
}

std::vector<int> random_permutation(Rng& rng, int k) {
    std::vector<int> p(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) p[static_cast<size_t>(i)] = i;
    for (int i = k - 1; i > 0; --i) std::swap(p[static_cast<size_t>(i)], p[static_cast<size_t>(rng.uniform_int(0, i))]);
    return p;
}

}  // namespace

SweepReport sweep(const SweepOptions& opts) {
    SweepReport report;
    report.count = opts.count;

    for (int i = 0; i < opts.count; ++i) {
        Universe u = [&] {
            // Redraw structurally infeasible specs; a reducible block graph
            // cannot be fixed by refilling.
            for (int attempt = 0; attempt < 200; ++attempt) {
                Rng rng(opts.seed, static_cast<std::uint64_t>(i) * 1000 + static_cast<std::uint64_t>(attempt));
                const int n = rng.uniform_int(opts.n_min, opts.n_max);
                const int k = std::min(rng.uniform_int(opts.k_min, opts.k_max), n);
                BuildSpec spec;
                spec.n = n;
                spec.f_m = random_surjective_map(rng, n, k);
                spec.f_s = random_surjective_map(rng, n, k);
                spec.g = random_permutation(rng, k);
                spec.fill = FillSpec::dirichlet(1.0);
                spec.seed = splitmix64(opts.seed ^ (static_cast<std::uint64_t>(i) * 7919 + attempt));
                spec.max_retries = 1;
                try {
                    return build_universe(spec);
                } catch (const ReducibleAfterRetriesError&) {
                } catch (const InfeasibleStructureError&) {
                }
            }
            throw NumericalError("sweep could not draw a buildable spec in 200 attempts");
        }();

        bool ok = true;
        for (const VerificationReport& rep : run_all_verifiers(u)) {
            if (rep.pass) continue;
            ok = false;
            for (const auto& check : rep.checks) {
                if (check.pass) continue;
                report.failures.push_back({i, rep.verifier, check.name, universe_to_json(u)});
            }
            if (!opts.archive_dir.empty()) {
                std::filesystem::create_directories(opts.archive_dir);
                const std::string path = opts.archive_dir + "/counterexample_" + std::to_string(i) +
                                         "_" + rep.verifier + ".json";
                std::ofstream out(path);
                out << json{{"universe", universe_to_json(u)}, {"report", rep.to_json()}}.dump(2)
                    << "\n";
            }
        }
        if (ok) ++report.passed;
    }
    return report;
}

nlohmann::json SweepReport::to_json() const {
    json fails = json::array();
    for (const auto& f : failures)
        fails.push_back(json{{"index", f.index}, {"verifier", f.verifier}, {"check", f.check}});
    return json{{"count", count}, {"passed", passed}, {"all_pass", all_pass()}, {"failures", fails}};
}

}  // namespace icl
