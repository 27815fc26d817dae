// The 6-state worked instance shared across tests, plus expected values
// frozen from independent oracle runs (power iteration for the stationary
// distribution, brute-force base-2 summation for the information measures).

#pragma once

#include <vector>

#include "icl/builder.hpp"
#include "icl/universe.hpp"

namespace fixture {

inline const std::vector<std::vector<double>>& matrix_rows() {
    static const std::vector<std::vector<double>> rows{
        {1.0 / 3, 0, 0, 1.0 / 3, 0, 0},
        {1.0 / 3, 0, 0, 1.0 / 6, 0, 0},
        {1.0 / 3, 0, 0, 1.0 / 2, 0, 0},
        {0, 1.0 / 3, 1.0 / 2, 0, 1.0 / 4, 1.0 / 2},
        {0, 1.0 / 3, 1.0 / 4, 0, 1.0 / 2, 0},
        {0, 1.0 / 3, 1.0 / 4, 0, 1.0 / 4, 1.0 / 2},
    };
    return rows;
}

inline const std::vector<int>& f_m() {
    static const std::vector<int> f{0, 0, 0, 1, 1, 1};
    return f;
}

inline const std::vector<int>& f_s() {
    static const std::vector<int> f{0, 1, 1, 0, 1, 1};
    return f;
}

// (9, 6, 12, 18, 10, 15) / 70
inline const std::vector<double>& stationary() {
    static const std::vector<double> pi{9.0 / 70, 6.0 / 70, 12.0 / 70, 18.0 / 70, 10.0 / 70, 15.0 / 70};
    return pi;
}

// Frozen oracle values (bits).
inline constexpr double kTransferEntropy = 0.9566902457333096;  // = H(M'|M)
inline constexpr double kMutualInfoMPrime = 0.9619780596506257;  // I(M':S) = I(M':X) = I(M':X')
inline constexpr double kEntropyThirdTwoThirds = 0.9182958340544896;
inline constexpr double kEntropyXPrimeGivenX = 1.4005585716758246;
inline constexpr double kWeakIcS = 0.0221681918991746;  // S is not informationally closed

inline icl::Universe universe() { return icl::example_universe(); }

}  // namespace fixture
