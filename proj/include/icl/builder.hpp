// Forward construction of universes with strong interaction closure from S
// to M: column x of the kernel may only put mass on the f^M-block selected
// by g(f^S(x)). Includes the perfect-control and coinciding-partition
// variants, the canonical 6-state instance, and a hill-climb over column
// fills that maximizes apparent control.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "icl/universe.hpp"

namespace icl {

struct FillSpec {
    enum class Kind { Uniform, Dirichlet, Explicit };
    Kind kind{Kind::Dirichlet};
    double alpha{1.0};                               // Dirichlet concentration
    std::vector<std::vector<double>> values;         // Explicit: full n x n, rows = x'

    static FillSpec uniform() { return {Kind::Uniform, 0.0, {}}; }
    static FillSpec dirichlet(double alpha) { return {Kind::Dirichlet, alpha, {}}; }
    static FillSpec explicit_values(std::vector<std::vector<double>> v) {
        return {Kind::Explicit, 0.0, std::move(v)};
    }
};

struct BuildSpec {
    int n{0};
    std::vector<int> f_m;  // 0-based map state -> M symbol
    std::vector<int> f_s;  // 0-based map state -> S symbol
    std::vector<int> g;    // 0-based bijection S symbol -> M symbol; empty = identity
    FillSpec fill;
    std::uint64_t seed{0};
    bool require_perfect_control{false};
    int max_retries{100};

    int k() const;  // common alphabet size
    // Surjectivity, equal cardinalities, g a bijection; perfect-control
    // intersections when requested. Throws InfeasibleStructureError.
    void validate() const;

    static BuildSpec from_json(const nlohmann::json& doc);
    nlohmann::json to_json() const;
};

// The construction recipe: validates the spec, fills columns inside their
// allowed blocks (resampling up to max_retries until irreducible), computes
// the stationary distribution, and verifies strong interaction closure
// before returning.
Universe build_universe(const BuildSpec& spec);

// Same recipe with the every-intersection-nonempty requirement enforced.
Universe build_perfect_control_universe(BuildSpec spec);

// The 6-state worked instance with exact rational entries.
Universe example_universe();

// Universe whose current and future partitions coincide (f^S = f^M over the
// given blocks; g cycles the labels so the chain can stay irreducible).
Universe coinciding_universe(int n, const std::vector<std::vector<int>>& blocks,
                             const FillSpec& fill, std::uint64_t seed);

struct SearchResult {
    Universe universe;
    std::vector<double> trace;  // best score after each iteration (nondecreasing)
    double best_score{0.0};
};

// Randomized hill-climb over single-column refills, maximizing the transfer
// entropy S -> M (equal to H(M'|M) under the recipe). Ties are rejected.
SearchResult maximize_control(const BuildSpec& spec, int iterations, std::uint64_t seed);

}  // namespace icl
