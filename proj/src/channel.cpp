#include "icl/channel.hpp"

#include <algorithm>
#include <cmath>

namespace icl {

Channel Channel::validate(const std::vector<std::vector<double>>& rows_y) {
    const int k = static_cast<int>(rows_y.size());
    if (k < 1) throw DimensionMismatchError("channel needs at least one output row");
    const int n = static_cast<int>(rows_y.front().size());
    if (n < 1) throw DimensionMismatchError("channel needs at least one input column");
    for (const auto& row : rows_y)
        if (static_cast<int>(row.size()) != n) throw DimensionMismatchError("ragged channel rows");
    std::vector<double> entries(static_cast<size_t>(k) * n);
    for (int y = 0; y < k; ++y)
        for (int x = 0; x < n; ++x) {
            const double v = rows_y[static_cast<size_t>(y)][static_cast<size_t>(x)];
            if (v < 0.0 || !std::isfinite(v)) throw NegativeEntryError("negative channel entry");
            entries[static_cast<size_t>(y) * n + x] = v;
        }
    for (int x = 0; x < n; ++x) {
        double sum = 0.0;
        for (int y = 0; y < k; ++y) sum += entries[static_cast<size_t>(y) * n + x];
        if (std::abs(sum - 1.0) > kStochasticTol) throw ColumnSumError(x + 1, sum);
    }
    return {n, k, std::move(entries), std::nullopt};
}

Channel Channel::from_function(const std::vector<int>& f, int n, int k) {
    if (static_cast<int>(f.size()) != n) throw DimensionMismatchError("map size != input cardinality");
    std::vector<double> entries(static_cast<size_t>(k) * n, 0.0);
    for (int x = 0; x < n; ++x) {
        const int y = f[static_cast<size_t>(x)];
        if (y < 0 || y >= k)
            throw OutOfRangeError("f(" + std::to_string(x + 1) + ") = " + std::to_string(y + 1) +
                                  " outside {1.." + std::to_string(k) + "}");
        entries[static_cast<size_t>(y) * n + x] = 1.0;
    }
    return {n, k, std::move(entries), f};
}

Channel Channel::unchecked(int input_card, int output_card, std::vector<double> entries) {
    return {input_card, output_card, std::move(entries), std::nullopt};
}

DeterminismCheck is_deterministic(const Channel& ch, double tol) {
    DeterminismCheck out;
    out.map.assign(static_cast<size_t>(ch.input_card()), -1);
    for (int x = 0; x < ch.input_card(); ++x) {
        int arg = -1;
        for (int y = 0; y < ch.output_card(); ++y)
            if (ch(y, x) >= 1.0 - tol) arg = y;
        if (arg < 0) return {false, {}};
        out.map[static_cast<size_t>(x)] = arg;
    }
    out.deterministic = true;
    return out;
}

BayesianInverse bayesian_inverse(const Channel& ch, const Distribution& px) {
    if (px.size() != ch.input_card())
        throw DimensionMismatchError("input distribution size does not match channel");
    const int n = ch.input_card();
    const int k = ch.output_card();
    std::vector<double> py(static_cast<size_t>(k), 0.0);
    for (int y = 0; y < k; ++y)
        for (int x = 0; x < n; ++x) py[static_cast<size_t>(y)] += ch(y, x) * px[x];

    std::vector<double> inv(static_cast<size_t>(n) * k, 0.0);  // [x][y]
    std::vector<int> unreachable;
    for (int y = 0; y < k; ++y) {
        if (py[static_cast<size_t>(y)] == 0.0) {
            unreachable.push_back(y);
            continue;
        }
        for (int x = 0; x < n; ++x) {
            const double fwd = ch(y, x);
            if (fwd == 0.0) continue;  // exact zero regardless of p
            inv[static_cast<size_t>(x) * k + y] = fwd * px[x] / py[static_cast<size_t>(y)];
        }
    }
    return {Channel::unchecked(k, n, std::move(inv)), std::move(unreachable), std::move(py)};
}

Partition Partition::from_blocks(std::vector<std::vector<int>> blocks, int n) {
    std::vector<int> owner(static_cast<size_t>(n), -1);
    for (size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) throw InputError("empty partition block");
        std::sort(blocks[b].begin(), blocks[b].end());
        for (const int s : blocks[b]) {
            if (s < 0 || s >= n) throw OutOfRangeError("partition state out of range");
            if (owner[static_cast<size_t>(s)] != -1) throw InputError("overlapping partition blocks");
            owner[static_cast<size_t>(s)] = static_cast<int>(b);
        }
    }
    for (int s = 0; s < n; ++s)
        if (owner[static_cast<size_t>(s)] == -1)
            throw InputError("state " + std::to_string(s + 1) + " not covered by partition");
    Partition p;
    p.labels.resize(blocks.size());
    for (size_t b = 0; b < blocks.size(); ++b) p.labels[b] = static_cast<int>(b);
    p.blocks = std::move(blocks);
    return p;
}

int Partition::block_of(int state) const {
    for (size_t b = 0; b < blocks.size(); ++b)
        if (std::binary_search(blocks[b].begin(), blocks[b].end(), state)) return static_cast<int>(b);
    return -1;
}

bool Partition::same_blocks(const Partition& other) const {
    if (blocks.size() != other.blocks.size()) return false;
    auto a = blocks;
    auto b = other.blocks;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

Partition induced_partition(const Channel& ch) {
    const auto det = ch.map() ? DeterminismCheck{true, *ch.map()} : is_deterministic(ch);
    if (!det.deterministic) throw NotDeterministicError(0, {}, "channel is not deterministic");
    const int n = ch.input_card();
    const int k = ch.output_card();
    std::vector<std::vector<int>> pre(static_cast<size_t>(k));
    for (int x = 0; x < n; ++x) pre[static_cast<size_t>(det.map[static_cast<size_t>(x)])].push_back(x);
    Partition p;
    for (int y = 0; y < k; ++y) {
        if (pre[static_cast<size_t>(y)].empty()) continue;  // unreachable output
        p.blocks.push_back(std::move(pre[static_cast<size_t>(y)]));
        p.labels.push_back(y);
    }
    return p;
}

const char* to_string(PartitionRelation r) {
    switch (r) {
        case PartitionRelation::Coinciding: return "coinciding";
        case PartitionRelation::Orthogonal: return "orthogonal";
        case PartitionRelation::Intermediate: return "intermediate";
    }
    return "?";
}

PartitionRelation partition_relation(const Partition& a, const Partition& b) {
    size_t na = 0, nb = 0;
    for (const auto& blk : a.blocks) na += blk.size();
    for (const auto& blk : b.blocks) nb += blk.size();
    if (na != nb) throw StateSpaceMismatchError("partitions cover different state spaces");

    if (a.same_blocks(b)) return PartitionRelation::Coinciding;

    for (const auto& ba : a.blocks)
        for (const auto& bb : b.blocks) {
            std::vector<int> inter;
            std::set_intersection(ba.begin(), ba.end(), bb.begin(), bb.end(),
                                  std::back_inserter(inter));
            if (inter.empty()) return PartitionRelation::Intermediate;
        }
    return PartitionRelation::Orthogonal;
}

namespace {

// Phase-1 simplex for: find c >= 0 with G c = rhs (rows: point coordinates
// plus the convexity row). Bland's rule prevents cycling. Returns the
// residual optimum (0 when feasible).
double phase1_residual(const std::vector<std::vector<double>>& columns,
                       const std::vector<double>& rhs) {
    const int rows = static_cast<int>(rhs.size());
    const int vars = static_cast<int>(columns.size());

    // Tableau: [A | I | b] with artificial basis; objective = sum of artificials.
    const int width = vars + rows + 1;
    std::vector<std::vector<double>> tab(static_cast<size_t>(rows),
                                         std::vector<double>(static_cast<size_t>(width), 0.0));
    for (int r = 0; r < rows; ++r) {
        const double b = rhs[static_cast<size_t>(r)];
        const double sign = b < 0.0 ? -1.0 : 1.0;  // keep b nonnegative
        for (int v = 0; v < vars; ++v)
            tab[static_cast<size_t>(r)][static_cast<size_t>(v)] =
                sign * columns[static_cast<size_t>(v)][static_cast<size_t>(r)];
        tab[static_cast<size_t>(r)][static_cast<size_t>(vars + r)] = 1.0;
        tab[static_cast<size_t>(r)][static_cast<size_t>(width - 1)] = sign * b;
    }
    std::vector<int> basis(static_cast<size_t>(rows));
    for (int r = 0; r < rows; ++r) basis[static_cast<size_t>(r)] = vars + r;

    // Reduced objective row for min sum(artificials): z_j - c_j over columns.
    std::vector<double> obj(static_cast<size_t>(width), 0.0);
    for (int r = 0; r < rows; ++r)
        for (int j = 0; j < width; ++j) obj[static_cast<size_t>(j)] += tab[static_cast<size_t>(r)][static_cast<size_t>(j)];
    for (int r = 0; r < rows; ++r) obj[static_cast<size_t>(vars + r)] -= 1.0;

    constexpr double kPivotEps = 1e-12;
    for (;;) {
        // Bland: smallest-index column with positive reduced objective.
        int enter = -1;
        for (int j = 0; j < vars + rows; ++j)
            if (obj[static_cast<size_t>(j)] > kPivotEps) { enter = j; break; }
        if (enter < 0) break;

        int leave = -1;
        double best_ratio = 0.0;
        for (int r = 0; r < rows; ++r) {
            const double a = tab[static_cast<size_t>(r)][static_cast<size_t>(enter)];
            if (a <= kPivotEps) continue;
            const double ratio = tab[static_cast<size_t>(r)][static_cast<size_t>(width - 1)] / a;
            if (leave < 0 || ratio < best_ratio - kPivotEps ||
                (std::abs(ratio - best_ratio) <= kPivotEps &&
                 basis[static_cast<size_t>(r)] < basis[static_cast<size_t>(leave)])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave < 0) break;  // unbounded cannot happen here; defensive exit

        const double pivot = tab[static_cast<size_t>(leave)][static_cast<size_t>(enter)];
        for (int j = 0; j < width; ++j) tab[static_cast<size_t>(leave)][static_cast<size_t>(j)] /= pivot;
        for (int r = 0; r < rows; ++r) {
            if (r == leave) continue;
            const double f = tab[static_cast<size_t>(r)][static_cast<size_t>(enter)];
            if (f == 0.0) continue;
            for (int j = 0; j < width; ++j)
                tab[static_cast<size_t>(r)][static_cast<size_t>(j)] -= f * tab[static_cast<size_t>(leave)][static_cast<size_t>(j)];
        }
        const double fo = obj[static_cast<size_t>(enter)];
        for (int j = 0; j < width; ++j)
            obj[static_cast<size_t>(j)] -= fo * tab[static_cast<size_t>(leave)][static_cast<size_t>(j)];
        basis[static_cast<size_t>(leave)] = enter;
    }

    double residual = 0.0;
    for (int r = 0; r < rows; ++r)
        if (basis[static_cast<size_t>(r)] >= vars)
            residual += tab[static_cast<size_t>(r)][static_cast<size_t>(width - 1)];
    return residual;
}

}  // namespace

bool convex_membership(std::span<const double> point,
                       const std::vector<std::vector<double>>& generators, double tol) {
    if (generators.empty()) return false;
    const size_t dim = point.size();
    for (const auto& g : generators)
        if (g.size() != dim) throw DimensionMismatchError("generator dimension mismatch");

    std::vector<double> rhs(point.begin(), point.end());
    rhs.push_back(1.0);  // convexity row
    std::vector<std::vector<double>> cols;
    cols.reserve(generators.size());
    for (const auto& g : generators) {
        std::vector<double> col(g.begin(), g.end());
        col.push_back(1.0);
        cols.push_back(std::move(col));
    }
    return phase1_residual(cols, rhs) <= tol;
}

ExtremeSet extreme_points(const ConditionalFamily& family, double dedup_tol) {
    if (family.vectors.empty()) return {};
    const auto close = [dedup_tol](const std::vector<double>& a, const std::vector<double>& b) {
        double d = 0.0;
        for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
        return d <= dedup_tol;
    };

    // Deduplicate, collecting the witness level set per distinct vector.
    std::vector<std::vector<double>> distinct;
    std::vector<std::vector<int>> witnesses;
    for (size_t i = 0; i < family.vectors.size(); ++i) {
        bool found = false;
        for (size_t d = 0; d < distinct.size(); ++d)
            if (close(family.vectors[i], distinct[d])) {
                witnesses[d].push_back(family.given_states[i]);
                found = true;
                break;
            }
        if (!found) {
            distinct.push_back(family.vectors[i]);
            witnesses.push_back({family.given_states[i]});
        }
    }

    ExtremeSet out;
    for (size_t d = 0; d < distinct.size(); ++d) {
        std::vector<std::vector<double>> others;
        for (size_t o = 0; o < distinct.size(); ++o)
            if (o != d) others.push_back(distinct[o]);
        if (others.empty() || !convex_membership(distinct[d], others))
            out.push_back({distinct[d], witnesses[d]});
    }
    return out;
}

}  // namespace icl
