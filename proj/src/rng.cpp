#include "icl/rng.hpp"

#include <cmath>

namespace icl {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

double Rng::gamma(double shape) {
    if (shape < 1.0) {
        // Boost: Gamma(a) = Gamma(a+1) * U^(1/a)
        const double u = uniform();
        return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

std::vector<double> Rng::dirichlet(double alpha, int k) {
    std::vector<double> w(static_cast<size_t>(k));
    double total = 0.0;
    for (auto& wi : w) {
        wi = gamma(alpha);
        total += wi;
    }
    if (total <= 0.0) {  // all-underflow corner; fall back to uniform
        for (auto& wi : w) wi = 1.0 / k;
        return w;
    }
    for (auto& wi : w) wi /= total;
    return w;
}

int Rng::discrete(std::span<const double> weights) {
    double total = 0.0;
    for (const double w : weights) total += w;
    const double u = uniform() * total;
    double acc = 0.0;
    for (size_t i = 0; i + 1 < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
}

int Rng::uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
}

}  // namespace icl
