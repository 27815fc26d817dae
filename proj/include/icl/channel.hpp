// High-level process channels pi(y|x), their Bayesian inverses, induced
// partitions, and the convex geometry of conditional families: extreme
// points, level-set witnesses, and hull membership.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "icl/errors.hpp"
#include "icl/markov.hpp"

namespace icl {

inline constexpr double kDeltaTol = 1e-10;  // delta-column detection, separate from kStochasticTol

class Channel {
public:
    // entries indexed [y][x]; every column must sum to one.
    static Channel validate(const std::vector<std::vector<double>>& rows_y);

    // Delta-column channel of a total map f: {0..n-1} -> {0..k-1}.
    static Channel from_function(const std::vector<int>& f, int n, int k);

    // Internal/relaxed path: allows all-zero columns (used for Bayesian
    // inverses with unreachable outputs and for negative-control tests).
    static Channel unchecked(int input_card, int output_card, std::vector<double> entries);

    int input_card() const { return n_; }
    int output_card() const { return k_; }
    double operator()(int y, int x) const { return entries_[static_cast<size_t>(y) * n_ + x]; }

    // Set iff constructed from a map; recovered maps come from is_deterministic.
    const std::optional<std::vector<int>>& map() const { return map_; }

private:
    Channel(int n, int k, std::vector<double> entries, std::optional<std::vector<int>> map)
        : n_(n), k_(k), entries_(std::move(entries)), map_(std::move(map)) {}

    int n_{0};  // input cardinality
    int k_{0};  // output cardinality
    std::vector<double> entries_;  // row-major [y * n + x]
    std::optional<std::vector<int>> map_;
};

struct DeterminismCheck {
    bool deterministic{false};
    std::vector<int> map;  // valid when deterministic
};

// Each column must be a delta within tol; returns the recovered map.
DeterminismCheck is_deterministic(const Channel& ch, double tol = kDeltaTol);

struct BayesianInverse {
    Channel channel;                   // entries [x][y]: pi_dagger(x|y)
    std::vector<int> unreachable;      // outputs y with p(y) = 0 (flag, not failure)
    std::vector<double> output_dist;   // p(y) under the supplied input distribution
};

// pi_dagger(x|y) = pi(y|x) p(x) / p(y) where pi(y|x) > 0, and exactly 0
// where pi(y|x) = 0. Columns for unreachable outputs are all-zero.
BayesianInverse bayesian_inverse(const Channel& ch, const Distribution& px);

struct Partition {
    std::vector<std::vector<int>> blocks;  // disjoint, sorted 0-based states, covering the space
    std::vector<int> labels;               // output symbol per block

    static Partition from_blocks(std::vector<std::vector<int>> blocks, int n);
    int block_of(int state) const;
    bool same_blocks(const Partition& other) const;
};

// Blocks are the preimages f^-1(y) of reachable outputs, labeled by y.
Partition induced_partition(const Channel& ch);

enum class PartitionRelation { Coinciding, Orthogonal, Intermediate };

const char* to_string(PartitionRelation r);

// Coinciding: equal block sets. Orthogonal: every pairwise block intersection
// nonempty. Anything else is Intermediate.
PartitionRelation partition_relation(const Partition& a, const Partition& b);

struct ConditionalFamily {
    std::vector<int> given_states;             // positive-probability conditioning states
    std::vector<std::vector<double>> vectors;  // p(target | given_states[i])
};

struct ExtremePoint {
    std::vector<double> p;
    std::vector<int> witnesses;  // level set: given-states whose conditional equals p
};

using ExtremeSet = std::vector<ExtremePoint>;

// True iff `point` is a convex combination of `generators` within tol.
// Decided by a phase-1 simplex with Bland's rule.
bool convex_membership(std::span<const double> point,
                       const std::vector<std::vector<double>>& generators, double tol = 1e-9);

// Deduplicates the family (within dedup_tol, max-norm) and keeps the vectors
// that are not convex combinations of the other distinct vectors.
ExtremeSet extreme_points(const ConditionalFamily& family, double dedup_tol = kDeltaTol);

struct RecoveredMap {
    std::vector<int> map;  // given-state -> target-state; -1 for unreachable given-states
    int in_card{0};
    int out_card{0};
    bool bijective{false};  // meaningful when cardinalities match
};

}  // namespace icl
