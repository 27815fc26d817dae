// Seeded simulation of (X, S, M) trajectories and plug-in estimation of all
// measures from empirical pair counts. The sampler validates the exact
// pipeline; it is not meant to be a good estimator (no bias correction).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "icl/measures.hpp"
#include "icl/universe.hpp"

namespace icl {

struct Trajectory {
    std::vector<int> x, s, m;  // 0-based states, aligned by time step
    std::uint64_t seed{0};
    std::string rng_name;
    int n{0}, k_s{0}, k_m{0};  // cardinalities, for empirical tables

    long length() const { return static_cast<long>(x.size()); }
};

// x0 is drawn from the stationary distribution; x_{t+1} from column x_t; the
// channel outputs from pi(.|x_t). X-transitions and channel noise use split
// streams, so the X path is unchanged by adding channels.
Trajectory sample_trajectory(const Universe& u, long T, std::uint64_t seed);

// Frequency table over (X, X', S, M, S', M') from consecutive pairs.
// Throws TooShortError for T < 2.
JointTable empirical_joint(const Trajectory& traj);

struct MeasureComparison {
    std::string name;
    double empirical{0.0};
    double exact{0.0};
    double gap() const { return std::abs(empirical - exact); }
};

// Every reported measure evaluated on the empirical joint, side by side with
// the exact value from the universe's analytic joint.
std::vector<MeasureComparison> empirical_measures(const Trajectory& traj, const Universe& u);

}  // namespace icl
