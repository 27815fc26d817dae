// Seeded randomness for the builder and the trajectory sampler. Engine is
// mt19937_64; independent streams are derived by hashing (seed, stream index)
// with splitmix64. Uniform/gamma/discrete draws are built on the engine's raw
// output so results do not depend on implementation-defined std distributions.

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace icl {

inline constexpr const char* kRngName = "mt19937_64/splitmix64-streams";

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream)
        : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x9e3779b97f4a7c15ULL))) {}

    // Uniform in [0, 1) with 53 random bits.
    double uniform();

    // Standard normal (Box-Muller, no caching).
    double normal();

    // Gamma(shape, 1) via Marsaglia-Tsang, boosted for shape < 1.
    double gamma(double shape);

    // Symmetric Dirichlet(alpha) over k coordinates.
    std::vector<double> dirichlet(double alpha, int k);

    // Index sampled from an (unnormalized is fine) weight vector by CDF inversion.
    int discrete(std::span<const double> weights);

    // Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi);

private:
    std::mt19937_64 engine_;
};

}  // namespace icl
