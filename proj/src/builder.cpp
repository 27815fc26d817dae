#include "icl/builder.hpp"

#include <algorithm>
#include <cmath>

#include "icl/measures.hpp"
#include "icl/rng.hpp"

namespace icl {

namespace {

using nlohmann::json;

std::vector<int> parse_map_1based(const json& arr, const char* name) {
    std::vector<int> out;
    for (const auto& v : arr) {
        const int x = v.get<int>();
        if (x < 1) throw ParseError(std::string(name) + " values are 1-based positive integers");
        out.push_back(x - 1);
    }
    return out;
}

json map_to_1based(const std::vector<int>& m) {
    json arr = json::array();
    for (const int v : m) arr.push_back(v + 1);
    return arr;
}

int alphabet_size(const std::vector<int>& f) {
    int k = 0;
    for (const int v : f) k = std::max(k, v + 1);
    return k;
}

bool surjective(const std::vector<int>& f, int k) {
    std::vector<bool> hit(static_cast<size_t>(k), false);
    for (const int v : f)
        if (v >= 0 && v < k) hit[static_cast<size_t>(v)] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::vector<int> identity_map(int k) {
    std::vector<int> g(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) g[static_cast<size_t>(i)] = i;
    return g;
}

// Allowed support of column x: the f^M-preimage of g(f^S(x)).
std::vector<std::vector<int>> column_blocks(const BuildSpec& spec) {
    const int k = spec.k();
    const auto g = spec.g.empty() ? identity_map(k) : spec.g;
    std::vector<std::vector<int>> pre(static_cast<size_t>(k));
    for (int x = 0; x < spec.n; ++x) pre[static_cast<size_t>(spec.f_m[static_cast<size_t>(x)])].push_back(x);
    std::vector<std::vector<int>> blocks(static_cast<size_t>(spec.n));
    for (int x = 0; x < spec.n; ++x)
        blocks[static_cast<size_t>(x)] = pre[static_cast<size_t>(g[static_cast<size_t>(spec.f_s[static_cast<size_t>(x)])])];
    return blocks;
}

std::vector<std::vector<double>> filled_matrix(const BuildSpec& spec,
                                               const std::vector<std::vector<int>>& blocks,
                                               Rng& rng) {
    const int n = spec.n;
    std::vector<std::vector<double>> rows(static_cast<size_t>(n),
                                          std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int x = 0; x < n; ++x) {
        const auto& block = blocks[static_cast<size_t>(x)];
        const int m = static_cast<int>(block.size());
        std::vector<double> w;
        switch (spec.fill.kind) {
            case FillSpec::Kind::Uniform:
                w.assign(static_cast<size_t>(m), 1.0 / m);
                break;
            case FillSpec::Kind::Dirichlet:
                w = rng.dirichlet(spec.fill.alpha, m);
                break;
            case FillSpec::Kind::Explicit: {
                if (static_cast<int>(spec.fill.values.size()) != n)
                    throw InfeasibleStructureError("explicit fill must be a full n x n matrix");
                double sum = 0.0;
                for (int xp = 0; xp < n; ++xp) {
                    const double v = spec.fill.values[static_cast<size_t>(xp)][static_cast<size_t>(x)];
                    const bool allowed = std::binary_search(block.begin(), block.end(), xp);
                    if (!allowed && v != 0.0)
                        throw InfeasibleStructureError(
                            "explicit fill puts mass outside the allowed block at (" +
                            std::to_string(xp + 1) + "," + std::to_string(x + 1) + ")");
                    rows[static_cast<size_t>(xp)][static_cast<size_t>(x)] = v;
                    sum += v;
                }
                if (std::abs(sum - 1.0) > kStochasticTol) throw ColumnSumError(x + 1, sum);
                continue;
            }
        }
        for (int i = 0; i < m; ++i) rows[static_cast<size_t>(block[static_cast<size_t>(i)])][static_cast<size_t>(x)] = w[static_cast<size_t>(i)];
    }
    return rows;
}

Universe finish_universe(const BuildSpec& spec, StochasticMatrix P) {
    const int k = spec.k();
    Distribution stationary = stationary_distribution(P);

    std::vector<NamedChannel> channels;
    channels.push_back({"S", Channel::from_function(spec.f_s, spec.n, k)});
    channels.push_back({"M", Channel::from_function(spec.f_m, spec.n, k)});

    Universe u{std::move(P), std::move(stationary), std::move(channels), {}};
    u.provenance.build_spec = spec.to_json();
    u.provenance.seed = spec.seed;

    // Guard: the construction must satisfy strong interaction closure.
    const MeasureReport closure =
        interaction_closure(u.joint(), "S", "M", Strength::Strong, kClosureTol);
    if (!closure.verdict)
        throw ClosureVerificationError("built universe violates strong interaction closure: " +
                                       std::to_string(closure.value_bits));
    return u;
}

}  // namespace

int BuildSpec::k() const { return std::max(alphabet_size(f_m), alphabet_size(f_s)); }

void BuildSpec::validate() const {
    if (n < 1) throw InfeasibleStructureError("n must be >= 1");
    if (static_cast<int>(f_m.size()) != n || static_cast<int>(f_s.size()) != n)
        throw InfeasibleStructureError("fM and fS must be total on the state space");
    const int km = alphabet_size(f_m);
    const int ks = alphabet_size(f_s);
    for (const int v : f_m)
        if (v < 0 || v >= km) throw OutOfRangeError("fM value out of range");
    for (const int v : f_s)
        if (v < 0 || v >= ks) throw OutOfRangeError("fS value out of range");
    if (km != ks)
        throw InfeasibleStructureError("fM and fS must use alphabets of equal size (|M| = |S|)");
    if (!surjective(f_m, km)) throw InfeasibleStructureError("fM must be surjective");
    if (!surjective(f_s, ks)) throw InfeasibleStructureError("fS must be surjective");
    if (!g.empty()) {
        if (static_cast<int>(g.size()) != km || !surjective(g, km))
            throw InfeasibleStructureError("g must be a bijection on the common alphabet");
    }
    if (require_perfect_control) {
        // every (s, m) intersection must hold a state
        std::vector<bool> seen(static_cast<size_t>(km) * km, false);
        for (int x = 0; x < n; ++x)
            seen[static_cast<size_t>(f_s[static_cast<size_t>(x)]) * km + f_m[static_cast<size_t>(x)]] = true;
        for (int s = 0; s < km; ++s)
            for (int m = 0; m < km; ++m)
                if (!seen[static_cast<size_t>(s) * km + m])
                    throw InfeasibleStructureError("empty intersection for (s=" + std::to_string(s + 1) +
                                                   ", m=" + std::to_string(m + 1) +
                                                   "): perfect control is infeasible");
    }
}

BuildSpec BuildSpec::from_json(const json& doc) {
    BuildSpec spec;
    spec.n = doc.at("n").get<int>();
    spec.f_m = parse_map_1based(doc.at("fM"), "fM");
    spec.f_s = parse_map_1based(doc.at("fS"), "fS");
    if (doc.contains("g")) spec.g = parse_map_1based(doc.at("g"), "g");
    if (doc.contains("fill")) {
        const auto& f = doc.at("fill");
        const std::string kind = f.value("kind", "dirichlet");
        if (kind == "uniform") {
            spec.fill = FillSpec::uniform();
        } else if (kind == "dirichlet") {
            spec.fill = FillSpec::dirichlet(f.value("alpha", 1.0));
        } else if (kind == "explicit") {
            std::vector<std::vector<double>> values;
            for (const auto& row : f.at("values")) {
                std::vector<double> r;
                for (const auto& cell : row) {
                    if (cell.is_string()) r.push_back(Rational::parse(cell.get<std::string>()).to_double());
                    else r.push_back(cell.get<double>());
                }
                values.push_back(std::move(r));
            }
            spec.fill = FillSpec::explicit_values(std::move(values));
        } else {
            throw ParseError("fill kind must be uniform, dirichlet, or explicit");
        }
    }
    if (doc.contains("seed")) spec.seed = doc.at("seed").get<std::uint64_t>();
    spec.require_perfect_control = doc.value("perfect_control", false);
    spec.max_retries = doc.value("max_retries", 100);
    return spec;
}

json BuildSpec::to_json() const {
    json doc{{"n", n}, {"fM", map_to_1based(f_m)}, {"fS", map_to_1based(f_s)}};
    if (!g.empty()) doc["g"] = map_to_1based(g);
    switch (fill.kind) {
        case FillSpec::Kind::Uniform: doc["fill"] = {{"kind", "uniform"}}; break;
        case FillSpec::Kind::Dirichlet: doc["fill"] = {{"kind", "dirichlet"}, {"alpha", fill.alpha}}; break;
        case FillSpec::Kind::Explicit: doc["fill"] = {{"kind", "explicit"}, {"values", fill.values}}; break;
    }
    doc["seed"] = seed;
    if (require_perfect_control) doc["perfect_control"] = true;
    if (max_retries != 100) doc["max_retries"] = max_retries;
    return doc;
}

Universe build_universe(const BuildSpec& spec) {
    spec.validate();
    const auto blocks = column_blocks(spec);
    for (const auto& block : blocks)
        if (block.empty()) throw InfeasibleStructureError("a required f^M block is empty");

    for (int attempt = 0; attempt < std::max(spec.max_retries, 1); ++attempt) {
        Rng rng(spec.seed, static_cast<std::uint64_t>(attempt));
        StochasticMatrix P = StochasticMatrix::validate(filled_matrix(spec, blocks, rng));
        if (!is_irreducible(P)) continue;
        return finish_universe(spec, std::move(P));
    }
    throw ReducibleAfterRetriesError(spec.max_retries);
}

Universe build_perfect_control_universe(BuildSpec spec) {
    spec.require_perfect_control = true;
    return build_universe(spec);
}

Universe example_universe() {
    const auto r = [](std::int64_t p, std::int64_t q) { return Rational{p, q}; };
    const std::vector<std::vector<Rational>> rows{
        {r(1, 3), 0, 0, r(1, 3), 0, 0},
        {r(1, 3), 0, 0, r(1, 6), 0, 0},
        {r(1, 3), 0, 0, r(1, 2), 0, 0},
        {0, r(1, 3), r(1, 2), 0, r(1, 4), r(1, 2)},
        {0, r(1, 3), r(1, 4), 0, r(1, 2), 0},
        {0, r(1, 3), r(1, 4), 0, r(1, 4), r(1, 2)},
    };
    StochasticMatrix P = StochasticMatrix::validate_exact(rows);
    Distribution stationary = stationary_distribution(P);

    const std::vector<int> f_m{0, 0, 0, 1, 1, 1};
    const std::vector<int> f_s{0, 1, 1, 0, 1, 1};
    std::vector<NamedChannel> channels;
    channels.push_back({"S", Channel::from_function(f_s, 6, 2)});
    channels.push_back({"M", Channel::from_function(f_m, 6, 2)});

    Universe u{std::move(P), std::move(stationary), std::move(channels), {}};
    u.provenance.build_spec = json{{"builtin", "example"}};
    return u;
}

Universe coinciding_universe(int n, const std::vector<std::vector<int>>& blocks,
                             const FillSpec& fill, std::uint64_t seed) {
    const Partition part = Partition::from_blocks(blocks, n);
    const int k = static_cast<int>(part.blocks.size());

    BuildSpec spec;
    spec.n = n;
    spec.f_m.assign(static_cast<size_t>(n), 0);
    for (int b = 0; b < k; ++b)
        for (const int x : part.blocks[static_cast<size_t>(b)]) spec.f_m[static_cast<size_t>(x)] = b;
    spec.f_s = spec.f_m;
    // Cycle the labels: with coinciding partitions, g = identity would trap
    // the chain inside one block.
    spec.g.resize(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) spec.g[static_cast<size_t>(i)] = (i + 1) % k;
    spec.fill = fill;
    spec.seed = seed;
    return build_universe(spec);
}

SearchResult maximize_control(const BuildSpec& spec, int iterations, std::uint64_t seed) {
    Universe best = build_universe(spec);
    const auto blocks = column_blocks(spec);
    const double alpha = spec.fill.kind == FillSpec::Kind::Dirichlet ? spec.fill.alpha : 1.0;

    double best_score = transfer_entropy(best.joint(), "S", "M");
    SearchResult result{std::move(best), {}, best_score};
    result.trace.reserve(static_cast<size_t>(std::max(iterations, 0)));

    Rng rng(seed, 0xabcdef);
    std::vector<std::vector<double>> rows(static_cast<size_t>(spec.n),
                                          std::vector<double>(static_cast<size_t>(spec.n), 0.0));
    for (int xp = 0; xp < spec.n; ++xp)
        for (int x = 0; x < spec.n; ++x) rows[static_cast<size_t>(xp)][static_cast<size_t>(x)] = result.universe.P(xp, x);

    for (int it = 0; it < iterations; ++it) {
        const int x = rng.uniform_int(0, spec.n - 1);
        const auto& block = blocks[static_cast<size_t>(x)];
        const auto w = rng.dirichlet(alpha, static_cast<int>(block.size()));

        auto candidate = rows;
        for (size_t i = 0; i < block.size(); ++i)
            candidate[static_cast<size_t>(block[i])][static_cast<size_t>(x)] = w[i];

        try {
            StochasticMatrix P = StochasticMatrix::validate(candidate);
            if (is_irreducible(P)) {
                BuildSpec prov = spec;
                prov.fill = FillSpec::explicit_values(candidate);
                Universe u = finish_universe(prov, std::move(P));
                const double score = transfer_entropy(u.joint(), "S", "M");
                if (score > result.best_score) {
                    result.best_score = score;
                    result.universe = std::move(u);
                    rows = std::move(candidate);
                }
            }
        } catch (const Error&) {
            // rejected move; keep climbing
        }
        result.trace.push_back(result.best_score);
    }
    return result;
}

}  // namespace icl
