// A universe bundles the transition kernel, its stationary distribution, and
// the named high-level channels (S and M in the two-process setting), plus
// where it came from. File format:
//
//   {"n": 6,
//    "P": [[row for x'=1], ...],                     // entries: numbers or "p/q"
//    "channels": [{"name": "S", "kind": "deterministic", "map": [1, 2, ...]},
//                 {"name": "M", "kind": "stochastic", "pi": [[row for y=1], ...]}],
//    "provenance": {...}}                            // optional
//
// States and map values are 1-based in files and reports.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "icl/channel.hpp"
#include "icl/joint.hpp"
#include "icl/markov.hpp"

namespace icl {

struct Provenance {
    std::optional<nlohmann::json> build_spec;  // the BuildSpec that produced this universe
    std::optional<std::uint64_t> seed;
    std::optional<nlohmann::json> input_echo;  // original P/channel entries (e.g. fraction strings)
};

struct Universe {
    StochasticMatrix P;
    Distribution stationary;
    std::vector<NamedChannel> channels;
    Provenance provenance;

    const Channel* find_channel(const std::string& name) const;
    const Channel& channel_or_throw(const std::string& name) const;

    // Exact two-step joint over X, X' and every channel.
    JointTable joint() const { return two_step_joint(P, channels, stationary); }

    // Partition induced by the M-map (block occupied now).
    Partition current_partition() const { return induced_partition(channel_or_throw("M")); }
    // Partition induced by the S-map (block occupied at the next step, up to
    // the bijection g).
    Partition future_partition() const { return induced_partition(channel_or_throw("S")); }
};

// Parse/serialize against the file schema above. load_universe computes and
// validates the stationary distribution (throws NonUniqueStationaryError for
// reducible inputs with several closed classes).
Universe universe_from_json(const nlohmann::json& doc);
Universe load_universe(const std::string& path);
nlohmann::json universe_to_json(const Universe& u);
void save_universe(const Universe& u, const std::string& path);

// FNV-1a over the canonical serialized form; stable id for reports.
std::string universe_digest(const Universe& u);

}  // namespace icl
