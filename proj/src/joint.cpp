#include "icl/joint.hpp"

#include <algorithm>
#include <cmath>

namespace icl {

JointTable::JointTable(std::vector<std::string> names, std::vector<int> cards,
                       std::vector<double> probs) {
    names_ = std::move(names);
    cards_ = std::move(cards);
    probs_ = std::move(probs);
    if (names_.size() != cards_.size()) throw DimensionMismatchError("names/cards size mismatch");
    size_t cells = 1;
    for (const int c : cards_) {
        if (c < 1) throw DimensionMismatchError("variable cardinality must be >= 1");
        cells *= static_cast<size_t>(c);
    }
    if (probs_.size() != cells) throw DimensionMismatchError("table size does not match cardinalities");
    for (const double p : probs_)
        if (p < 0.0 || !std::isfinite(p)) throw NegativeEntryError("negative joint probability");
    init_strides();
    if (std::abs(total_mass() - 1.0) > 1e-10)
        throw InputError("joint mass " + std::to_string(total_mass()) + " is not 1");
}

JointTable JointTable::unchecked(std::vector<std::string> names, std::vector<int> cards,
                                 std::vector<double> probs) {
    JointTable t;
    t.names_ = std::move(names);
    t.cards_ = std::move(cards);
    t.probs_ = std::move(probs);
    t.init_strides();
    return t;
}

void JointTable::init_strides() {
    strides_.assign(names_.size(), 1);
    for (int i = static_cast<int>(names_.size()) - 2; i >= 0; --i)
        strides_[static_cast<size_t>(i)] =
            strides_[static_cast<size_t>(i) + 1] * static_cast<size_t>(cards_[static_cast<size_t>(i) + 1]);
}

int JointTable::index_of(const std::string& name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    throw UnknownVariableError("unknown variable '" + name + "'");
}

bool JointTable::has(const std::string& name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

size_t JointTable::flatten(std::span<const int> idx) const {
    size_t flat = 0;
    for (size_t i = 0; i < idx.size(); ++i) flat += strides_[i] * static_cast<size_t>(idx[i]);
    return flat;
}

double JointTable::total_mass() const {
    // Kahan sum; joint masses feed 1e-10 checks downstream.
    double sum = 0.0, comp = 0.0;
    for (const double p : probs_) {
        const double y = p - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

JointTable JointTable::marginalize(std::span<const std::string> keep) const {
    std::vector<bool> keep_mask(names_.size(), false);
    for (const auto& name : keep) keep_mask[static_cast<size_t>(index_of(name))] = true;

    std::vector<std::string> out_names;
    std::vector<int> out_cards;
    std::vector<int> kept_vars;
    for (size_t i = 0; i < names_.size(); ++i) {
        if (!keep_mask[i]) continue;
        out_names.push_back(names_[i]);
        out_cards.push_back(cards_[i]);
        kept_vars.push_back(static_cast<int>(i));
    }

    size_t out_cells = 1;
    for (const int c : out_cards) out_cells *= static_cast<size_t>(c);
    std::vector<double> out_probs(out_cells, 0.0);

    // Output strides aligned with kept_vars order.
    std::vector<size_t> out_strides(kept_vars.size(), 1);
    for (int i = static_cast<int>(kept_vars.size()) - 2; i >= 0; --i)
        out_strides[static_cast<size_t>(i)] =
            out_strides[static_cast<size_t>(i) + 1] *
            static_cast<size_t>(out_cards[static_cast<size_t>(i) + 1]);

    const size_t nvars = names_.size();
    std::vector<int> idx(nvars, 0);
    for (size_t flat = 0; flat < probs_.size(); ++flat) {
        size_t out_flat = 0;
        for (size_t j = 0; j < kept_vars.size(); ++j)
            out_flat += out_strides[j] * static_cast<size_t>(idx[static_cast<size_t>(kept_vars[j])]);
        out_probs[out_flat] += probs_[flat];
        for (int v = static_cast<int>(nvars) - 1; v >= 0; --v) {
            if (++idx[static_cast<size_t>(v)] < cards_[static_cast<size_t>(v)]) break;
            idx[static_cast<size_t>(v)] = 0;
        }
    }
    return unchecked(std::move(out_names), std::move(out_cards), std::move(out_probs));
}

JointTable two_step_joint(const StochasticMatrix& P, const std::vector<NamedChannel>& channels,
                          const Distribution& stationary) {
    const int n = P.size();
    if (stationary.size() != n) throw DimensionMismatchError("stationary size does not match P");
    for (const auto& [name, ch] : channels)
        if (ch.input_card() != n)
            throw DimensionMismatchError("channel " + name + " input cardinality " +
                                         std::to_string(ch.input_card()) + " != " + std::to_string(n));

    std::vector<std::string> names{"X", "X'"};
    std::vector<int> cards{n, n};
    for (const auto& [name, ch] : channels) {
        names.push_back(name);
        names.push_back(primed(name));
        cards.push_back(ch.output_card());
        cards.push_back(ch.output_card());
    }

    size_t cells = 1;
    for (const int c : cards) cells *= static_cast<size_t>(c);
    std::vector<double> probs(cells, 0.0);

    std::vector<size_t> strides(cards.size(), 1);
    for (int i = static_cast<int>(cards.size()) - 2; i >= 0; --i)
        strides[static_cast<size_t>(i)] =
            strides[static_cast<size_t>(i) + 1] * static_cast<size_t>(cards[static_cast<size_t>(i) + 1]);

    const size_t nch = channels.size();
    std::vector<int> y(nch, 0), yp(nch, 0);
    for (int x = 0; x < n; ++x) {
        if (stationary[x] == 0.0) continue;
        for (int xp = 0; xp < n; ++xp) {
            const double base = stationary[x] * P(xp, x);
            if (base == 0.0) continue;
            // enumerate channel outputs at both time steps
            std::fill(y.begin(), y.end(), 0);
            std::fill(yp.begin(), yp.end(), 0);
            for (;;) {
                double p = base;
                for (size_t c = 0; c < nch; ++c) {
                    p *= channels[c].channel(y[c], x);
                    if (p == 0.0) break;
                    p *= channels[c].channel(yp[c], xp);
                    if (p == 0.0) break;
                }
                if (p != 0.0) {
                    size_t flat = strides[0] * static_cast<size_t>(x) + strides[1] * static_cast<size_t>(xp);
                    for (size_t c = 0; c < nch; ++c) {
                        flat += strides[2 + 2 * c] * static_cast<size_t>(y[c]);
                        flat += strides[3 + 2 * c] * static_cast<size_t>(yp[c]);
                    }
                    probs[flat] = p;
                }
                // odometer over the digits y[0], yp[0], y[1], yp[1], ...
                size_t d = 0;
                for (; d < 2 * nch; ++d) {
                    int& v = d % 2 == 0 ? y[d / 2] : yp[d / 2];
                    if (++v < channels[d / 2].channel.output_card()) break;
                    v = 0;
                }
                if (d == 2 * nch) break;
            }
        }
    }

    return {std::move(names), std::move(cards), std::move(probs)};
}

ConditionalFamily conditional_family(const JointTable& joint, const std::string& target,
                                     const std::string& given) {
    if (target == given) {
        // p(Y|Y=y) is the delta at y for every realized y
        const std::vector<std::string> one{target};
        const JointTable m = joint.marginalize(std::span<const std::string>(one.data(), 1));
        ConditionalFamily fam;
        const int card = m.cards()[0];
        for (int b = 0; b < card; ++b) {
            const std::vector<int> idx{b};
            if (m.at(idx) <= 0.0) continue;
            std::vector<double> delta(static_cast<size_t>(card), 0.0);
            delta[static_cast<size_t>(b)] = 1.0;
            fam.given_states.push_back(b);
            fam.vectors.push_back(std::move(delta));
        }
        return fam;
    }

    const std::vector<std::string> pair{given, target};
    // marginalize keeps the joint's variable order, so fetch positions after.
    const JointTable m = joint.marginalize(std::span<const std::string>(pair.data(), pair.size()));
    const int gi = m.index_of(given);
    const int ti = m.index_of(target);
    const int gcard = m.cards()[static_cast<size_t>(gi)];
    const int tcard = m.cards()[static_cast<size_t>(ti)];

    ConditionalFamily fam;
    std::vector<int> idx(2, 0);
    for (int b = 0; b < gcard; ++b) {
        double pb = 0.0;
        std::vector<double> vec(static_cast<size_t>(tcard), 0.0);
        for (int a = 0; a < tcard; ++a) {
            idx[static_cast<size_t>(gi)] = b;
            idx[static_cast<size_t>(ti)] = a;
            const double p = m.at(idx);
            vec[static_cast<size_t>(a)] = p;
            pb += p;
        }
        if (pb <= 0.0) continue;
        for (auto& v : vec) v /= pb;
        fam.given_states.push_back(b);
        fam.vectors.push_back(std::move(vec));
    }
    return fam;
}

RecoveredMap recover_step_map(const JointTable& joint, const std::string& target,
                              const std::string& given, double tol) {
    const ConditionalFamily fam = conditional_family(joint, target, given);
    const int in_card = joint.card(given);
    const int out_card = joint.card(target);

    RecoveredMap rec;
    rec.in_card = in_card;
    rec.out_card = out_card;
    rec.map.assign(static_cast<size_t>(in_card), -1);
    for (size_t i = 0; i < fam.given_states.size(); ++i) {
        const auto& vec = fam.vectors[i];
        int arg = -1;
        for (size_t a = 0; a < vec.size(); ++a)
            if (vec[a] >= 1.0 - tol) arg = static_cast<int>(a);
        if (arg < 0)
            throw NotDeterministicError(fam.given_states[i] + 1, vec,
                                        "p(" + target + "|" + given + "=" +
                                            std::to_string(fam.given_states[i] + 1) +
                                            ") is not a delta");
        rec.map[static_cast<size_t>(fam.given_states[i])] = arg;
    }

    if (in_card == out_card) {
        std::vector<bool> hit(static_cast<size_t>(out_card), false);
        bool ok = true;
        for (const int v : rec.map) {
            if (v < 0) continue;
            if (hit[static_cast<size_t>(v)]) ok = false;
            hit[static_cast<size_t>(v)] = true;
        }
        const bool total = std::none_of(rec.map.begin(), rec.map.end(), [](int v) { return v < 0; });
        rec.bijective = ok && total &&
                        std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
    }
    return rec;
}

}  // namespace icl
