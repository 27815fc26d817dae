#include "icl/sampler.hpp"

#include "icl/rng.hpp"

namespace icl {

Trajectory sample_trajectory(const Universe& u, long T, std::uint64_t seed) {
    if (T < 1) throw TooShortError("trajectory length must be >= 1");
    const Channel& chS = u.channel_or_throw("S");
    const Channel& chM = u.channel_or_throw("M");
    const int n = u.P.size();

    Rng chain(seed, 0);     // X transitions
    Rng channels(seed, 1);  // channel noise

    Trajectory traj;
    traj.seed = seed;
    traj.rng_name = kRngName;
    traj.n = n;
    traj.k_s = chS.output_card();
    traj.k_m = chM.output_card();
    traj.x.reserve(static_cast<size_t>(T));
    traj.s.reserve(static_cast<size_t>(T));
    traj.m.reserve(static_cast<size_t>(T));

    std::vector<double> weights(static_cast<size_t>(n));
    int x = chain.discrete(u.stationary.values());
    for (long t = 0; t < T; ++t) {
        traj.x.push_back(x);
        if (chS.map()) {
            traj.s.push_back((*chS.map())[static_cast<size_t>(x)]);
        } else {
            std::vector<double> col(static_cast<size_t>(chS.output_card()));
            for (int y = 0; y < chS.output_card(); ++y) col[static_cast<size_t>(y)] = chS(y, x);
            traj.s.push_back(channels.discrete(col));
        }
        if (chM.map()) {
            traj.m.push_back((*chM.map())[static_cast<size_t>(x)]);
        } else {
            std::vector<double> col(static_cast<size_t>(chM.output_card()));
            for (int y = 0; y < chM.output_card(); ++y) col[static_cast<size_t>(y)] = chM(y, x);
            traj.m.push_back(channels.discrete(col));
        }
        if (t + 1 < T) {
            for (int xp = 0; xp < n; ++xp) weights[static_cast<size_t>(xp)] = u.P(xp, x);
            x = chain.discrete(weights);
        }
    }
    return traj;
}

JointTable empirical_joint(const Trajectory& traj) {
    const long T = traj.length();
    if (T < 2) throw TooShortError("empirical joint needs T >= 2");

    const std::vector<std::string> names{"X", "X'", "S", "M", "S'", "M'"};
    const std::vector<int> cards{traj.n, traj.n, traj.k_s, traj.k_m, traj.k_s, traj.k_m};
    size_t cells = 1;
    for (const int c : cards) cells *= static_cast<size_t>(c);
    std::vector<double> counts(cells, 0.0);

    std::vector<size_t> strides(cards.size(), 1);
    for (int i = static_cast<int>(cards.size()) - 2; i >= 0; --i)
        strides[static_cast<size_t>(i)] =
            strides[static_cast<size_t>(i) + 1] * static_cast<size_t>(cards[static_cast<size_t>(i) + 1]);

    const double w = 1.0 / static_cast<double>(T - 1);
    for (long t = 0; t + 1 < T; ++t) {
        const size_t flat = strides[0] * static_cast<size_t>(traj.x[static_cast<size_t>(t)]) +
                            strides[1] * static_cast<size_t>(traj.x[static_cast<size_t>(t + 1)]) +
                            strides[2] * static_cast<size_t>(traj.s[static_cast<size_t>(t)]) +
                            strides[3] * static_cast<size_t>(traj.m[static_cast<size_t>(t)]) +
                            strides[4] * static_cast<size_t>(traj.s[static_cast<size_t>(t + 1)]) +
                            strides[5] * static_cast<size_t>(traj.m[static_cast<size_t>(t + 1)]);
        counts[flat] += w;
    }
    return JointTable::unchecked(names, cards, std::move(counts));
}

namespace {

std::vector<MeasureComparison> compare_all(const JointTable& emp, const JointTable& exact) {
    std::vector<MeasureComparison> out;
    const auto add = [&](std::string name, auto&& fn) {
        out.push_back({std::move(name), fn(emp), fn(exact)});
    };
    for (const std::string y : {"S", "M"}) {
        add("weak_ic_" + y, [&](const JointTable& j) {
            return informational_closure(j, y, Strength::Weak).value_bits;
        });
        add("strong_ic_" + y, [&](const JointTable& j) {
            return informational_closure(j, y, Strength::Strong).value_bits;
        });
    }
    add("weak_iac", [](const JointTable& j) {
        return interaction_closure(j, "S", "M", Strength::Weak).value_bits;
    });
    add("strong_iac", [](const JointTable& j) {
        return interaction_closure(j, "S", "M", Strength::Strong).value_bits;
    });
    add("transfer_entropy", [](const JointTable& j) { return transfer_entropy(j, "S", "M"); });
    add("h_zprime_given_z", [](const JointTable& j) {
        const std::vector<std::string> a{"M'"}, b{"M"};
        return conditional_entropy(j, a, b);
    });
    return out;
}

}  // namespace

std::vector<MeasureComparison> empirical_measures(const Trajectory& traj, const Universe& u) {
    const JointTable emp = empirical_joint(traj);
    const JointTable exact = u.joint();
    return compare_all(emp, exact);
}

}  // namespace icl
