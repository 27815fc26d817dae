// Dense joint distributions over named variables drawn from
// {X, X', S, S', M, M', ...} and the one-time-step factorization
// p(x, x', y1, y1', ...) = p(x) p(x'|x) * prod_i pi_i(y_i|x) pi_i(y_i'|x').

#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "icl/channel.hpp"
#include "icl/markov.hpp"

namespace icl {

class JointTable {
public:
    // Validates: nonnegative entries, total mass within 1e-10 of one.
    JointTable(std::vector<std::string> names, std::vector<int> cards, std::vector<double> probs);

    // No validation; for negative-control tests that need broken tables.
    static JointTable unchecked(std::vector<std::string> names, std::vector<int> cards,
                                std::vector<double> probs);

    const std::vector<std::string>& names() const { return names_; }
    const std::vector<int>& cards() const { return cards_; }
    size_t cell_count() const { return probs_.size(); }
    std::span<const double> probs() const { return probs_; }
    double& cell(size_t flat) { return probs_[flat]; }

    int index_of(const std::string& name) const;  // throws UnknownVariableError
    bool has(const std::string& name) const;
    int card(const std::string& name) const { return cards_[static_cast<size_t>(index_of(name))]; }

    double at(std::span<const int> idx) const { return probs_[flatten(idx)]; }
    size_t flatten(std::span<const int> idx) const;
    size_t stride(int var) const { return strides_[static_cast<size_t>(var)]; }

    double total_mass() const;

    // Sums out everything not in `keep`; kept variables stay in this table's
    // order. Mass is preserved.
    JointTable marginalize(std::span<const std::string> keep) const;
    JointTable marginalize(std::initializer_list<std::string> keep) const {
        return marginalize(std::span<const std::string>(keep.begin(), keep.size()));
    }

private:
    JointTable() = default;
    void init_strides();

    std::vector<std::string> names_;
    std::vector<int> cards_;
    std::vector<size_t> strides_;  // row-major, last variable fastest
    std::vector<double> probs_;
};

struct NamedChannel {
    std::string name;
    Channel channel;
};

// Exact two-time-step joint implied by the one-step Bayesian network. The
// resulting variables are X, X', then name, name' for each channel.
JointTable two_step_joint(const StochasticMatrix& P, const std::vector<NamedChannel>& channels,
                          const Distribution& stationary);

inline std::string primed(const std::string& name) { return name + "'"; }

// The generating family {p(target|b)} of the hull C(target|given), over
// given-states of positive probability.
ConditionalFamily conditional_family(const JointTable& joint, const std::string& target,
                                     const std::string& given);

// If every conditional p(target|b) is a delta within tol, returns the map
// (f^M' for (M'|X), g for (M'|S)); throws NotDeterministicError otherwise.
RecoveredMap recover_step_map(const JointTable& joint, const std::string& target,
                              const std::string& given, double tol = kDeltaTol);

}  // namespace icl
