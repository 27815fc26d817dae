#include "icl/universe.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace icl {

namespace {

using nlohmann::json;

// Numbers stay numbers; strings go through the fraction parser. Returns the
// rational shadow when every entry in the document had one.
struct ParsedEntry {
    double value;
    std::optional<Rational> exact;
};

ParsedEntry parse_entry(const json& v, const char* where) {
    if (v.is_string()) {
        const Rational r = Rational::parse(v.get<std::string>());
        return {r.to_double(), r};
    }
    if (v.is_number_integer()) {
        const Rational r{v.get<std::int64_t>()};
        return {r.to_double(), r};
    }
    if (v.is_number()) return {v.get<double>(), std::nullopt};
    throw ParseError(std::string(where) + ": entry is neither number nor fraction string");
}

StochasticMatrix parse_matrix(const json& rows, int n, bool* any_fraction) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw ParseError("P must be an array of " + std::to_string(n) + " rows");
    std::vector<std::vector<double>> values(static_cast<size_t>(n));
    std::vector<std::vector<Rational>> exact(static_cast<size_t>(n));
    bool all_exact = true;
    for (int r = 0; r < n; ++r) {
        const auto& row = rows[static_cast<size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ParseError("P row " + std::to_string(r + 1) + " must have " + std::to_string(n) +
                             " entries");
        for (const auto& cell : row) {
            const ParsedEntry e = parse_entry(cell, "P");
            if (cell.is_string()) *any_fraction = true;
            values[static_cast<size_t>(r)].push_back(e.value);
            if (e.exact && all_exact) exact[static_cast<size_t>(r)].push_back(*e.exact);
            else all_exact = false;
        }
    }
    if (all_exact) return StochasticMatrix::validate_exact(exact);
    return StochasticMatrix::validate(values);
}

Channel parse_channel(const json& spec, int n, bool* any_fraction) {
    const std::string kind = spec.value("kind", "");
    if (kind == "deterministic") {
        if (!spec.contains("map")) throw ParseError("deterministic channel needs a map");
        std::vector<int> f;
        int k = 0;
        for (const auto& v : spec.at("map")) {
            const int y1 = v.get<int>();  // 1-based in files
            if (y1 < 1) throw ParseError("channel map values are 1-based positive integers");
            f.push_back(y1 - 1);
            k = std::max(k, y1);
        }
        if (spec.contains("k")) k = std::max(k, spec.at("k").get<int>());
        return Channel::from_function(f, n, k);
    }
    if (kind == "stochastic") {
        if (!spec.contains("pi")) throw ParseError("stochastic channel needs pi rows");
        std::vector<std::vector<double>> rows;
        for (const auto& row : spec.at("pi")) {
            std::vector<double> r;
            for (const auto& cell : row) {
                if (cell.is_string()) *any_fraction = true;
                r.push_back(parse_entry(cell, "pi").value);
            }
            rows.push_back(std::move(r));
        }
        return Channel::validate(rows);
    }
    throw ParseError("channel kind must be 'deterministic' or 'stochastic'");
}

}  // namespace

const Channel* Universe::find_channel(const std::string& name) const {
    for (const auto& [n, ch] : channels)
        if (n == name) return &ch;
    return nullptr;
}

const Channel& Universe::channel_or_throw(const std::string& name) const {
    if (const Channel* ch = find_channel(name)) return *ch;
    throw MissingVariableError("universe has no channel named '" + name + "'");
}

Universe universe_from_json(const nlohmann::json& doc) {
    if (!doc.contains("n") || !doc.contains("P") || !doc.contains("channels"))
        throw ParseError("universe file needs n, P, channels");
    const int n = doc.at("n").get<int>();
    if (n < 1) throw ParseError("n must be >= 1");

    bool any_fraction = false;
    StochasticMatrix P = parse_matrix(doc.at("P"), n, &any_fraction);

    std::vector<NamedChannel> channels;
    for (const auto& spec : doc.at("channels")) {
        std::string name = spec.value("name", "");
        if (name.empty()) name = "Y" + std::to_string(channels.size() + 1);
        channels.push_back({name, parse_channel(spec, n, &any_fraction)});
    }
    // canonical order: S before M before everything else, so joints line up
    std::stable_sort(channels.begin(), channels.end(), [](const auto& a, const auto& b) {
        const auto rank = [](const std::string& s) { return s == "S" ? 0 : s == "M" ? 1 : 2; };
        return rank(a.name) < rank(b.name);
    });

    Distribution stationary = stationary_distribution(P);

    Provenance prov;
    if (doc.contains("provenance")) {
        const auto& p = doc.at("provenance");
        if (p.contains("build_spec")) prov.build_spec = p.at("build_spec");
        if (p.contains("seed")) prov.seed = p.at("seed").get<std::uint64_t>();
        if (p.contains("input")) prov.input_echo = p.at("input");
    }
    if (any_fraction && !prov.input_echo)
        prov.input_echo = json{{"P", doc.at("P")}, {"channels", doc.at("channels")}};

    return {std::move(P), std::move(stationary), std::move(channels), std::move(prov)};
}

Universe load_universe(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
    return universe_from_json(doc);
}

nlohmann::json universe_to_json(const Universe& u) {
    const int n = u.P.size();
    json rows = json::array();
    for (int xp = 0; xp < n; ++xp) {
        json row = json::array();
        for (int x = 0; x < n; ++x) {
            if (u.P.has_exact()) {
                const Rational& r = u.P.exact(xp, x);
                if (r.den() == 1) row.push_back(r.num());
                else row.push_back(r.str());
            } else {
                row.push_back(u.P(xp, x));
            }
        }
        rows.push_back(std::move(row));
    }

    json channels = json::array();
    for (const auto& [name, ch] : u.channels) {
        json spec{{"name", name}};
        if (ch.map()) {
            spec["kind"] = "deterministic";
            json map = json::array();
            for (const int y : *ch.map()) map.push_back(y + 1);
            spec["map"] = std::move(map);
            spec["k"] = ch.output_card();
        } else {
            spec["kind"] = "stochastic";
            json pi = json::array();
            for (int y = 0; y < ch.output_card(); ++y) {
                json row = json::array();
                for (int x = 0; x < ch.input_card(); ++x) row.push_back(ch(y, x));
                pi.push_back(std::move(row));
            }
            spec["pi"] = std::move(pi);
        }
        channels.push_back(std::move(spec));
    }

    json doc{{"n", n}, {"P", std::move(rows)}, {"channels", std::move(channels)}};
    json prov;
    if (u.provenance.build_spec) prov["build_spec"] = *u.provenance.build_spec;
    if (u.provenance.seed) prov["seed"] = *u.provenance.seed;
    if (u.provenance.input_echo) prov["input"] = *u.provenance.input_echo;
    if (!prov.is_null()) doc["provenance"] = std::move(prov);
    return doc;
}

void save_universe(const Universe& u, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << universe_to_json(u).dump(2) << "\n";
}

std::string universe_digest(const Universe& u) {
    // content only: the same dynamical system gets the same digest no matter
    // how it was produced
    json doc = universe_to_json(u);
    doc.erase("provenance");
    const std::string s = doc.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace icl
