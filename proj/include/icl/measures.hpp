// Exact Shannon quantities over joint tables, in bits: entropy, conditional
// mutual information (two independent evaluation routes), the closure
// measures, one-step transfer entropy, and the perfect-control predicate.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "icl/joint.hpp"

namespace icl {

struct MeasureReport {
    std::string name;
    double value_bits{0.0};
    std::vector<std::string> roles;  // the variables entering the measure
    double tol{kClosureTol};
    bool verdict{false};  // value <= tol, for zero-tests
};

// -sum p log2 p over the marginal on vars, with 0 log 0 = 0.
double entropy(const JointTable& joint, std::span<const std::string> vars);
double entropy(const JointTable& joint, std::initializer_list<std::string> vars);

// H(A|B) = H(A,B) - H(B).
double conditional_entropy(const JointTable& joint, std::span<const std::string> a,
                           std::span<const std::string> b);

// I(A:B|C) summed directly: sum_c p(c) sum_ab p(a,b|c) log2 p(a,b|c)/(p(a|c)p(b|c)).
// C may be empty. Variable sets must be disjoint.
double conditional_mutual_information(const JointTable& joint, std::span<const std::string> a,
                                      std::span<const std::string> b,
                                      std::span<const std::string> c);
double conditional_mutual_information(const JointTable& joint, std::initializer_list<std::string> a,
                                      std::initializer_list<std::string> b,
                                      std::initializer_list<std::string> c);

// Independent route: H(A,C) + H(B,C) - H(A,B,C) - H(C). Kept separate so the
// two evaluations can cross-check each other.
double conditional_mutual_information_entropy_form(const JointTable& joint,
                                                   std::span<const std::string> a,
                                                   std::span<const std::string> b,
                                                   std::span<const std::string> c);
double conditional_mutual_information_entropy_form(const JointTable& joint,
                                                   std::initializer_list<std::string> a,
                                                   std::initializer_list<std::string> b,
                                                   std::initializer_list<std::string> c);

enum class Strength { Weak, Strong };

// Weak: I(Y':X|Y). Strong: I(Y':X'|Y).
MeasureReport informational_closure(const JointTable& joint, const std::string& y, Strength s,
                                    double tol = kClosureTol);

// From Y to Z. Weak: I(Z':X|Y). Strong: I(Z':X'|Y).
MeasureReport interaction_closure(const JointTable& joint, const std::string& from_y,
                                  const std::string& to_z, Strength s, double tol = kClosureTol);

struct EqualityReport {
    double i_zprime_y{0.0};
    double i_zprime_x{0.0};
    double i_zprime_xprime{0.0};
    double tol{1e-9};
    bool equal{false};
};

// The three mutual informations I(Z':Y), I(Z':X), I(Z':X') that coincide
// under strong interaction closure.
EqualityReport interaction_equalities(const JointTable& joint, const std::string& from_y,
                                      const std::string& to_z, double tol = 1e-9);

// One-step transfer entropy I(Z':Y|Z).
double transfer_entropy(const JointTable& joint, const std::string& from_y,
                        const std::string& to_z);

struct ControlWitness {
    int z{0};       // current state of the controlled process (0-based)
    int z_next{0};  // forced next state
    int y{0};       // steering state of the controlling process
};

struct PerfectControlReport {
    bool perfect{false};
    std::vector<ControlWitness> witnesses;            // complete (z, z') -> y table when perfect
    std::vector<std::pair<int, int>> missing;         // (z, z') pairs without a witness
    double tol{1e-9};
};

// Perfect apparent control: for every z with p(z) > 0 and every z' there is a
// y with p(z, y) > 0 and p(z'|z, y) >= 1 - tol.
PerfectControlReport is_perfect_apparent_control(const JointTable& joint, const std::string& from_y,
                                                 const std::string& to_z, double tol = 1e-9);

}  // namespace icl
