// Executable checks for the closure theorems: the implication hierarchy,
// the three-way mutual-information equalities, the kernel and inverse
// support conditions, extreme-set equalities, and the partition/control
// theorems — plus randomized sweeps over built universes.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "icl/universe.hpp"

namespace icl {

struct CheckResult {
    std::string name;
    bool pass{false};
    std::map<std::string, double> values;
    double tol{0.0};
    std::string detail;
    std::optional<nlohmann::json> counterexample;  // replayable universe + offending states
};

struct VerificationReport {
    std::string verifier;
    bool pass{true};
    std::vector<CheckResult> checks;

    void add(CheckResult c);
    nlohmann::json to_json() const;
};

// Antecedents are tested at 1e-10 and consequents at 1e-9 so that proved
// implications cannot fail from tolerance stacking.
inline constexpr double kAntecedentTol = 1e-10;
inline constexpr double kConsequentTol = 1e-9;

// (a) chain rule I(M':X,X'|S) = I(M':X'|S) + I(M':X|X',S), (b) strong
// closure implies weak (interaction and informational), (c) d-separation
// I(M':X|X',S) = 0.
VerificationReport verify_closure_hierarchy(const Universe& u);
VerificationReport verify_closure_hierarchy(const JointTable& joint,
                                            const nlohmann::json* universe_json = nullptr);

// I(M':S) = I(M':X) = I(M':X') within 1e-9. Throws PreconditionError when
// strong interaction closure does not hold.
VerificationReport verify_eq13(const Universe& u);

// p(x'|x) = 0 outside (f^M)^-1(f^M'(x)) and pi^S-dagger(x|s) = 0 outside
// (f^M')^-1(g(s)), both as exact zeros. Throws MapRecoveryError when the
// channels are not deterministic.
VerificationReport verify_support_conditions(const Universe& u);

// E(M|X) = E(M'|X') = E(M'|X) = E(M'|S) as vector sets, plus the one-to-one
// s <-> extreme-point correspondence. Throws AssumptionViolatedError naming
// the violated assumption.
VerificationReport verify_extreme_set_equalities(const Universe& u);

// Coinciding partitions force TE = 0; orthogonal partitions force
// TE = H(M'|M) and perfect apparent control; perfect control forces
// orthogonality; the S-channel must be deterministic.
VerificationReport verify_partition_theorems(const Universe& u);

// All five verifiers; exceptions from preconditions/assumptions are folded
// into failed report entries.
std::vector<VerificationReport> run_all_verifiers(const Universe& u);

struct SweepOptions {
    int count{100};
    int n_min{4};
    int n_max{12};
    int k_min{2};
    int k_max{3};
    std::uint64_t seed{0};
    std::string archive_dir;  // empty = no counterexample archiving
};

struct SweepFailure {
    int index{0};
    std::string verifier;
    std::string check;
    nlohmann::json universe;
};

struct SweepReport {
    int count{0};
    int passed{0};
    std::vector<SweepFailure> failures;
    bool all_pass() const { return passed == count; }
    nlohmann::json to_json() const;
};

// Builds `count` random universes (redrawing structurally infeasible specs)
// and runs every verifier on each. Deterministic per seed.
SweepReport sweep(const SweepOptions& opts);

}  // namespace icl
