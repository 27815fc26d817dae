#include "icl/markov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace icl {

namespace {

template <typename T>
bool is_zero(const T& v);
template <>
bool is_zero(const double& v) { return v == 0.0; }
template <>
bool is_zero(const Rational& v) { return v.is_zero(); }

// Gaussian elimination with partial pivoting; works for double and Rational.
// For Rational any nonzero pivot is exact, but picking the largest keeps the
// code shared. Returns false when the system is singular.
template <typename T>
bool solve_linear(std::vector<std::vector<T>>& a, std::vector<T>& b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        T best{};
        for (int r = col; r < n; ++r) {
            T mag = a[r][col];
            if constexpr (std::is_same_v<T, double>) mag = std::abs(mag);
            else mag = mag.abs();
            if (!is_zero(mag) && (pivot < 0 || best < mag)) { pivot = r; best = mag; }
        }
        if (pivot < 0) return false;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (int r = 0; r < n; ++r) {
            if (r == col || is_zero(a[r][col])) continue;
            const T factor = a[r][col] / a[col][col];
            for (int c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
            b[r] -= factor * b[col];
        }
    }
    for (int i = 0; i < n; ++i) b[i] /= a[i][i];
    return true;
}

struct SccResult {
    std::vector<int> component;  // state -> component id
    int count{0};
};

// Iterative Tarjan on the support graph.
SccResult strongly_connected_components(const StochasticMatrix& P) {
    const int n = P.size();
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x)
        for (int xp = 0; xp < n; ++xp)
            if (P(xp, x) > 0.0) adj[static_cast<size_t>(x)].push_back(xp);

    SccResult res;
    res.component.assign(static_cast<size_t>(n), -1);
    std::vector<int> index(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0);
    std::vector<bool> on_stack(static_cast<size_t>(n), false);
    std::vector<int> stack;
    int next_index = 0;

    struct Frame { int v; size_t edge; };
    for (int start = 0; start < n; ++start) {
        if (index[static_cast<size_t>(start)] != -1) continue;
        std::vector<Frame> call{{start, 0}};
        index[static_cast<size_t>(start)] = low[static_cast<size_t>(start)] = next_index++;
        stack.push_back(start);
        on_stack[static_cast<size_t>(start)] = true;
        while (!call.empty()) {
            auto& [v, edge] = call.back();
            if (edge < adj[static_cast<size_t>(v)].size()) {
                const int w = adj[static_cast<size_t>(v)][edge++];
                if (index[static_cast<size_t>(w)] == -1) {
                    index[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = next_index++;
                    stack.push_back(w);
                    on_stack[static_cast<size_t>(w)] = true;
                    call.push_back({w, 0});
                } else if (on_stack[static_cast<size_t>(w)]) {
                    low[static_cast<size_t>(v)] = std::min(low[static_cast<size_t>(v)], index[static_cast<size_t>(w)]);
                }
            } else {
                if (low[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
                    for (;;) {
                        const int w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<size_t>(w)] = false;
                        res.component[static_cast<size_t>(w)] = res.count;
                        if (w == v) break;
                    }
                    ++res.count;
                }
                const int child = v;
                call.pop_back();
                if (!call.empty()) {
                    const int parent = call.back().v;
                    low[static_cast<size_t>(parent)] =
                        std::min(low[static_cast<size_t>(parent)], low[static_cast<size_t>(child)]);
                }
            }
        }
    }
    return res;
}

// States belonging to closed communicating classes (no edge leaves the class).
// Returns one representative membership vector per closed class.
std::vector<std::vector<bool>> closed_classes(const StochasticMatrix& P) {
    const int n = P.size();
    const SccResult scc = strongly_connected_components(P);
    std::vector<bool> leaves(static_cast<size_t>(scc.count), false);
    for (int x = 0; x < n; ++x)
        for (int xp = 0; xp < n; ++xp)
            if (P(xp, x) > 0.0 && scc.component[static_cast<size_t>(x)] != scc.component[static_cast<size_t>(xp)])
                leaves[static_cast<size_t>(scc.component[static_cast<size_t>(x)])] = true;
    std::vector<std::vector<bool>> out;
    for (int c = 0; c < scc.count; ++c) {
        if (leaves[static_cast<size_t>(c)]) continue;
        std::vector<bool> members(static_cast<size_t>(n), false);
        for (int x = 0; x < n; ++x)
            if (scc.component[static_cast<size_t>(x)] == c) members[static_cast<size_t>(x)] = true;
        out.push_back(std::move(members));
    }
    return out;
}

template <typename T>
std::vector<T> stationary_on_class(const StochasticMatrix& P, const std::vector<bool>& members,
                                   auto entry) {
    const int n = P.size();
    std::vector<int> states;
    for (int x = 0; x < n; ++x)
        if (members[static_cast<size_t>(x)]) states.push_back(x);
    const int m = static_cast<int>(states.size());

    // (P - I) restricted to the class, last row replaced by the normalization.
    // Columns of the restricted P - I sum to zero, so dropping any one row
    // loses no rank.
    std::vector<std::vector<T>> a(static_cast<size_t>(m), std::vector<T>(static_cast<size_t>(m), T{0}));
    std::vector<T> b(static_cast<size_t>(m), T{0});
    for (int r = 0; r < m - 1; ++r) {
        for (int c = 0; c < m; ++c) a[static_cast<size_t>(r)][static_cast<size_t>(c)] = entry(states[static_cast<size_t>(r)], states[static_cast<size_t>(c)]);
        a[static_cast<size_t>(r)][static_cast<size_t>(r)] -= T{1};
    }
    for (int c = 0; c < m; ++c) a[static_cast<size_t>(m - 1)][static_cast<size_t>(c)] = T{1};
    b[static_cast<size_t>(m - 1)] = T{1};

    if (!solve_linear(a, b)) throw NumericalError("stationary solve failed: singular system");

    std::vector<T> pi(static_cast<size_t>(n), T{0});
    for (int i = 0; i < m; ++i) pi[static_cast<size_t>(states[static_cast<size_t>(i)])] = b[static_cast<size_t>(i)];
    return pi;
}

}  // namespace

StochasticMatrix StochasticMatrix::validate(const std::vector<std::vector<double>>& rows_xp) {
    const int n = static_cast<int>(rows_xp.size());
    if (n < 1) throw NonSquareError("matrix must have at least one row");
    for (const auto& row : rows_xp)
        if (static_cast<int>(row.size()) != n) throw NonSquareError("matrix is not square");
    std::vector<double> values(static_cast<size_t>(n) * n);
    for (int xp = 0; xp < n; ++xp)
        for (int x = 0; x < n; ++x) {
            const double v = rows_xp[static_cast<size_t>(xp)][static_cast<size_t>(x)];
            if (v < 0.0 || !std::isfinite(v))
                throw NegativeEntryError("entry (" + std::to_string(xp + 1) + "," +
                                         std::to_string(x + 1) + ") = " + std::to_string(v));
            values[static_cast<size_t>(xp) * n + x] = v;
        }
    for (int x = 0; x < n; ++x) {
        double sum = 0.0;
        for (int xp = 0; xp < n; ++xp) sum += values[static_cast<size_t>(xp) * n + x];
        if (std::abs(sum - 1.0) > kStochasticTol) throw ColumnSumError(x + 1, sum);
    }
    return {n, std::move(values), std::nullopt};
}

StochasticMatrix StochasticMatrix::validate_exact(const std::vector<std::vector<Rational>>& rows_xp) {
    const int n = static_cast<int>(rows_xp.size());
    if (n < 1) throw NonSquareError("matrix must have at least one row");
    for (const auto& row : rows_xp)
        if (static_cast<int>(row.size()) != n) throw NonSquareError("matrix is not square");
    std::vector<Rational> exact(static_cast<size_t>(n) * n);
    std::vector<double> values(static_cast<size_t>(n) * n);
    for (int xp = 0; xp < n; ++xp)
        for (int x = 0; x < n; ++x) {
            const Rational& v = rows_xp[static_cast<size_t>(xp)][static_cast<size_t>(x)];
            if (v < Rational{0})
                throw NegativeEntryError("entry (" + std::to_string(xp + 1) + "," +
                                         std::to_string(x + 1) + ") = " + v.str());
            exact[static_cast<size_t>(xp) * n + x] = v;
            values[static_cast<size_t>(xp) * n + x] = v.to_double();
        }
    for (int x = 0; x < n; ++x) {
        Rational sum{0};
        for (int xp = 0; xp < n; ++xp) sum += exact[static_cast<size_t>(xp) * n + x];
        if (sum != Rational{1}) throw ColumnSumError(x + 1, sum.to_double());
    }
    return {n, std::move(values), std::move(exact)};
}

Distribution Distribution::validate(std::vector<double> p) {
    double mass = 0.0;
    for (const double v : p) {
        if (v < 0.0 || !std::isfinite(v)) throw NegativeEntryError("negative probability");
        mass += v;
    }
    if (std::abs(mass - 1.0) > 1e-12) throw InputError("distribution mass " + std::to_string(mass));
    for (auto& v : p) v /= mass;
    return {std::move(p), std::nullopt};
}

Distribution Distribution::validate_exact(std::vector<Rational> p) {
    Rational mass{0};
    for (const auto& v : p) {
        if (v < Rational{0}) throw NegativeEntryError("negative probability");
        mass += v;
    }
    if (mass != Rational{1}) throw InputError("exact distribution mass " + mass.str());
    std::vector<double> values(p.size());
    for (size_t i = 0; i < p.size(); ++i) values[i] = p[i].to_double();
    return {std::move(values), std::move(p)};
}

bool Distribution::full_support() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v > 0.0; });
}

bool is_irreducible(const StochasticMatrix& P) {
    return strongly_connected_components(P).count == 1;
}

Distribution stationary_distribution(const StochasticMatrix& P) {
    const auto closed = closed_classes(P);
    if (closed.size() != 1)
        throw NonUniqueStationaryError("stationary distribution is not unique: " +
                                       std::to_string(closed.size()) + " closed classes");
    const auto& members = closed.front();

    if (P.has_exact()) {
        auto pi = stationary_on_class<Rational>(P, members,
                                                [&](int xp, int x) { return P.exact(xp, x); });
        return Distribution::validate_exact(std::move(pi));
    }
    auto pi = stationary_on_class<double>(P, members, [&](int xp, int x) { return P(xp, x); });
    // Clamp solver round-off; states outside the closed class are exact zeros
    // already by construction.
    for (auto& v : pi) v = std::max(v, 0.0);
    double mass = 0.0;
    for (const double v : pi) mass += v;
    if (!(mass > 0.0)) throw NumericalError("stationary solve produced zero mass");
    for (auto& v : pi) v /= mass;
    return Distribution::validate(std::move(pi));
}

}  // namespace icl
