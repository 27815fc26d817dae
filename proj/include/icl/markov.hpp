// Underlying-process core: the column-stochastic transition kernel p(x'|x),
// probability distributions over the state space, and the stationary solve.
//
// In-memory state indices are 0-based throughout the library; file formats,
// reports, and error messages use 1-based states.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "icl/errors.hpp"
#include "icl/rational.hpp"

namespace icl {

inline constexpr double kStochasticTol = 1e-9;   // column-sum tolerance
inline constexpr double kClosureTol = 1e-10;     // default zero-test tolerance

// Column-stochastic kernel. Entry (xp, x) is the probability of moving from
// state x to state xp; every column sums to one. Entries may carry an exact
// rational shadow when the source values were fractions.
class StochasticMatrix {
public:
    static StochasticMatrix validate(const std::vector<std::vector<double>>& rows_xp);
    static StochasticMatrix validate_exact(const std::vector<std::vector<Rational>>& rows_xp);

    int size() const { return n_; }
    double operator()(int xp, int x) const { return values_[static_cast<size_t>(xp) * n_ + x]; }

    bool has_exact() const { return exact_.has_value(); }
    const Rational& exact(int xp, int x) const { return (*exact_)[static_cast<size_t>(xp) * n_ + x]; }

    std::span<const double> column(int x) const = delete;  // storage is row-major

private:
    StochasticMatrix(int n, std::vector<double> values, std::optional<std::vector<Rational>> exact)
        : n_(n), values_(std::move(values)), exact_(std::move(exact)) {}

    int n_{0};
    std::vector<double> values_;  // row-major, [xp * n + x]
    std::optional<std::vector<Rational>> exact_;
};

class Distribution {
public:
    // Normalizes and checks nonnegativity; mass must be within 1e-12 of one
    // before normalization.
    static Distribution validate(std::vector<double> p);
    static Distribution validate_exact(std::vector<Rational> p);

    int size() const { return static_cast<int>(values_.size()); }
    double operator[](int i) const { return values_[static_cast<size_t>(i)]; }
    std::span<const double> values() const { return values_; }
    bool full_support() const;

    bool has_exact() const { return exact_.has_value(); }
    const std::vector<Rational>& exact() const { return *exact_; }

private:
    Distribution(std::vector<double> v, std::optional<std::vector<Rational>> e)
        : values_(std::move(v)), exact_(std::move(e)) {}

    std::vector<double> values_;
    std::optional<std::vector<Rational>> exact_;
};

// True iff the directed graph of strictly positive entries is strongly
// connected.
bool is_irreducible(const StochasticMatrix& P);

// Unique stationary distribution of P, solved directly from (P - I) pi = 0
// with a normalization row. States outside the single closed communicating
// class get exact zeros. Throws NonUniqueStationaryError when more than one
// closed class exists.
Distribution stationary_distribution(const StochasticMatrix& P);

}  // namespace icl
