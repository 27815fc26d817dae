#include "icl/measures.hpp"

#include <algorithm>
#include <cmath>

namespace icl {

namespace {

constexpr double kLog2 = 0.6931471805599453094172321214581766;

double kahan_total(const std::vector<double>& terms) {
    double sum = 0.0, comp = 0.0;
    for (const double t : terms) {
        const double y = t - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return sum;
}

std::vector<std::string> concat(std::span<const std::string> a, std::span<const std::string> b,
                                std::span<const std::string> c = {}) {
    std::vector<std::string> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    out.insert(out.end(), c.begin(), c.end());
    return out;
}

void require_disjoint(std::span<const std::string> a, std::span<const std::string> b,
                      std::span<const std::string> c) {
    auto all = concat(a, b, c);
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw OverlappingVariablesError("variable sets must be disjoint");
}

// Flat-index projector from a table onto the marginal over a subset of its
// variables (subset given by positions in the source table).
struct Projector {
    std::vector<size_t> src_strides;
    std::vector<size_t> dst_strides;
    std::vector<int> cards;

    Projector(const JointTable& src, std::span<const int> vars) {
        size_t stride = 1;
        dst_strides.assign(vars.size(), 1);
        for (int i = static_cast<int>(vars.size()) - 1; i >= 0; --i) {
            dst_strides[static_cast<size_t>(i)] = stride;
            stride *= static_cast<size_t>(src.cards()[static_cast<size_t>(vars[static_cast<size_t>(i)])]);
        }
        for (const int v : vars) {
            src_strides.push_back(src.stride(v));
            cards.push_back(src.cards()[static_cast<size_t>(v)]);
        }
    }

    size_t map(size_t src_flat) const {
        size_t dst = 0;
        for (size_t i = 0; i < src_strides.size(); ++i) {
            const size_t digit = (src_flat / src_strides[i]) % static_cast<size_t>(cards[i]);
            dst += dst_strides[i] * digit;
        }
        return dst;
    }

    size_t cells() const {
        size_t n = 1;
        for (const int c : cards) n *= static_cast<size_t>(c);
        return n;
    }
};

std::vector<double> marginal_vector(const JointTable& t, std::span<const int> vars) {
    Projector proj(t, vars);
    std::vector<double> out(proj.cells(), 0.0);
    for (size_t flat = 0; flat < t.cell_count(); ++flat) out[proj.map(flat)] += t.probs()[flat];
    return out;
}

double entropy_of_vector(const std::vector<double>& p) {
    std::vector<double> terms;
    terms.reserve(p.size());
    for (const double v : p)
        if (v > 0.0) terms.push_back(-v * std::log2(v));
    return kahan_total(terms);
}

std::vector<int> positions(const JointTable& t, std::span<const std::string> vars) {
    std::vector<int> out;
    out.reserve(vars.size());
    for (const auto& v : vars) out.push_back(t.index_of(v));
    return out;
}

}  // namespace

double entropy(const JointTable& joint, std::span<const std::string> vars) {
    if (vars.empty()) throw MissingVariableError("entropy needs at least one variable");
    return entropy_of_vector(marginal_vector(joint, positions(joint, vars)));
}

double entropy(const JointTable& joint, std::initializer_list<std::string> vars) {
    return entropy(joint, std::span<const std::string>(vars.begin(), vars.size()));
}

double conditional_entropy(const JointTable& joint, std::span<const std::string> a,
                           std::span<const std::string> b) {
    const auto ab = concat(a, b);
    if (b.empty()) return entropy(joint, a);
    return entropy(joint, std::span<const std::string>(ab)) - entropy(joint, b);
}

double conditional_mutual_information(const JointTable& joint, std::span<const std::string> a,
                                      std::span<const std::string> b,
                                      std::span<const std::string> c) {
    require_disjoint(a, b, c);
    const auto pa = positions(joint, a);
    const auto pb = positions(joint, b);
    const auto pc = positions(joint, c);

    auto pac = pa; pac.insert(pac.end(), pc.begin(), pc.end());
    auto pbc = pb; pbc.insert(pbc.end(), pc.begin(), pc.end());
    auto pabc = pa; pabc.insert(pabc.end(), pb.begin(), pb.end());
    pabc.insert(pabc.end(), pc.begin(), pc.end());

    const auto m_abc = marginal_vector(joint, pabc);
    const auto m_ac = marginal_vector(joint, pac);
    const auto m_bc = marginal_vector(joint, pbc);
    const auto m_c = pc.empty() ? std::vector<double>{1.0} : marginal_vector(joint, pc);

    // Recompute index digits of the abc-marginal once per cell.
    std::vector<int> cards;
    for (const int v : pabc) cards.push_back(joint.cards()[static_cast<size_t>(v)]);
    const size_t la = pa.size(), lb = pb.size(), lc = pc.size();

    std::vector<size_t> strides(cards.size(), 1);
    for (int i = static_cast<int>(cards.size()) - 2; i >= 0; --i)
        strides[static_cast<size_t>(i)] =
            strides[static_cast<size_t>(i) + 1] * static_cast<size_t>(cards[static_cast<size_t>(i) + 1]);

    // The abc-marginal is laid out A-digits, then B, then C (C fastest); the
    // AC/BC/C marginals share that convention, so their flat indices can be
    // rebuilt from the odometer digits.
    std::vector<int> idx(cards.size(), 0);
    const int total = static_cast<int>(cards.size());
    std::vector<double> terms;
    terms.reserve(m_abc.size());
    for (size_t flat = 0; flat < m_abc.size(); ++flat) {
        const double pabc_v = m_abc[flat];
        if (pabc_v > 0.0) {
            size_t ic = 0, iac = 0, ibc = 0;
            size_t s = 1;
            for (int i = total - 1; i >= static_cast<int>(la + lb); --i) {
                const auto d = static_cast<size_t>(idx[static_cast<size_t>(i)]);
                ic += s * d;
                iac += s * d;
                ibc += s * d;
                s *= static_cast<size_t>(cards[static_cast<size_t>(i)]);
            }
            size_t sa = s, sb = s;
            for (int i = static_cast<int>(la) - 1; i >= 0; --i) {
                iac += sa * static_cast<size_t>(idx[static_cast<size_t>(i)]);
                sa *= static_cast<size_t>(cards[static_cast<size_t>(i)]);
            }
            for (int i = static_cast<int>(la + lb) - 1; i >= static_cast<int>(la); --i) {
                ibc += sb * static_cast<size_t>(idx[static_cast<size_t>(i)]);
                sb *= static_cast<size_t>(cards[static_cast<size_t>(i)]);
            }
            const double pc_v = lc == 0 ? 1.0 : m_c[ic];
            terms.push_back(pabc_v * (std::log(pabc_v * pc_v / (m_ac[iac] * m_bc[ibc])) / kLog2));
        }
        for (int v = total - 1; v >= 0; --v) {
            if (++idx[static_cast<size_t>(v)] < cards[static_cast<size_t>(v)]) break;
            idx[static_cast<size_t>(v)] = 0;
        }
    }
    return kahan_total(terms);
}

double conditional_mutual_information(const JointTable& joint, std::initializer_list<std::string> a,
                                      std::initializer_list<std::string> b,
                                      std::initializer_list<std::string> c) {
    return conditional_mutual_information(joint, std::span<const std::string>(a.begin(), a.size()),
                                          std::span<const std::string>(b.begin(), b.size()),
                                          std::span<const std::string>(c.begin(), c.size()));
}

double conditional_mutual_information_entropy_form(const JointTable& joint,
                                                   std::span<const std::string> a,
                                                   std::span<const std::string> b,
                                                   std::span<const std::string> c) {
    require_disjoint(a, b, c);
    const auto ac = concat(a, c);
    const auto bc = concat(b, c);
    const auto abc = concat(a, b, c);
    double v = entropy(joint, std::span<const std::string>(ac)) +
               entropy(joint, std::span<const std::string>(bc)) -
               entropy(joint, std::span<const std::string>(abc));
    if (!c.empty()) v -= entropy(joint, c);
    return v;
}

double conditional_mutual_information_entropy_form(const JointTable& joint,
                                                   std::initializer_list<std::string> a,
                                                   std::initializer_list<std::string> b,
                                                   std::initializer_list<std::string> c) {
    return conditional_mutual_information_entropy_form(
        joint, std::span<const std::string>(a.begin(), a.size()),
        std::span<const std::string>(b.begin(), b.size()),
        std::span<const std::string>(c.begin(), c.size()));
}

namespace {

MeasureReport zero_test(std::string name, double value, std::vector<std::string> roles, double tol) {
    MeasureReport r;
    r.name = std::move(name);
    r.value_bits = value;
    r.roles = std::move(roles);
    r.tol = tol;
    r.verdict = value <= tol;
    return r;
}

void require_vars(const JointTable& joint, std::initializer_list<std::string> vars) {
    for (const auto& v : vars)
        if (!joint.has(v)) throw MissingVariableError("joint is missing variable '" + v + "'");
}

}  // namespace

MeasureReport informational_closure(const JointTable& joint, const std::string& y, Strength s,
                                    double tol) {
    const std::string yp = primed(y);
    require_vars(joint, {"X", "X'", y, yp});
    const std::string second = s == Strength::Weak ? "X" : "X'";
    const double v = conditional_mutual_information(joint, {yp}, {second}, {y});
    return zero_test(s == Strength::Weak ? "weak_informational_closure" : "strong_informational_closure",
                     v, {yp, second, y}, tol);
}

MeasureReport interaction_closure(const JointTable& joint, const std::string& from_y,
                                  const std::string& to_z, Strength s, double tol) {
    const std::string zp = primed(to_z);
    require_vars(joint, {"X", "X'", from_y, zp});
    const std::string second = s == Strength::Weak ? "X" : "X'";
    const double v = conditional_mutual_information(joint, {zp}, {second}, {from_y});
    return zero_test(s == Strength::Weak ? "weak_interaction_closure" : "strong_interaction_closure",
                     v, {zp, second, from_y}, tol);
}

EqualityReport interaction_equalities(const JointTable& joint, const std::string& from_y,
                                      const std::string& to_z, double tol) {
    const std::string zp = primed(to_z);
    require_vars(joint, {"X", "X'", from_y, zp});
    EqualityReport r;
    r.tol = tol;
    r.i_zprime_y = conditional_mutual_information(joint, {zp}, {from_y}, {});
    r.i_zprime_x = conditional_mutual_information(joint, {zp}, {"X"}, {});
    r.i_zprime_xprime = conditional_mutual_information(joint, {zp}, {"X'"}, {});
    const double lo = std::min({r.i_zprime_y, r.i_zprime_x, r.i_zprime_xprime});
    const double hi = std::max({r.i_zprime_y, r.i_zprime_x, r.i_zprime_xprime});
    r.equal = hi - lo <= tol;
    return r;
}

double transfer_entropy(const JointTable& joint, const std::string& from_y,
                        const std::string& to_z) {
    const std::string zp = primed(to_z);
    require_vars(joint, {from_y, to_z, zp});
    if (from_y == to_z) return 0.0;  // a process cannot steer itself
    return conditional_mutual_information(joint, {zp}, {from_y}, {to_z});
}

PerfectControlReport is_perfect_apparent_control(const JointTable& joint,
                                                 const std::string& from_y,
                                                 const std::string& to_z, double tol) {
    const std::string zp = primed(to_z);
    require_vars(joint, {from_y, to_z, zp});
    const std::vector<std::string> keep{to_z, from_y, zp};
    const JointTable m = joint.marginalize(std::span<const std::string>(keep.data(), keep.size()));
    const int zi = m.index_of(to_z);
    const int yi = m.index_of(from_y);
    const int zpi = m.index_of(zp);
    const int kz = m.cards()[static_cast<size_t>(zi)];
    const int ky = m.cards()[static_cast<size_t>(yi)];

    PerfectControlReport rep;
    rep.tol = tol;
    rep.perfect = true;

    std::vector<int> idx(3, 0);
    const auto p3 = [&](int z, int y, int znext) {
        idx[static_cast<size_t>(zi)] = z;
        idx[static_cast<size_t>(yi)] = y;
        idx[static_cast<size_t>(zpi)] = znext;
        return m.at(idx);
    };

    for (int z = 0; z < kz; ++z) {
        double pz = 0.0;
        for (int y = 0; y < ky; ++y)
            for (int znext = 0; znext < kz; ++znext) pz += p3(z, y, znext);
        if (pz == 0.0) continue;  // unrealized current state
        for (int znext = 0; znext < kz; ++znext) {
            int witness = -1;
            for (int y = 0; y < ky && witness < 0; ++y) {
                double pzy = 0.0;
                for (int zn = 0; zn < kz; ++zn) pzy += p3(z, y, zn);
                if (pzy <= 0.0) continue;
                if (p3(z, y, znext) / pzy >= 1.0 - tol) witness = y;
            }
            if (witness >= 0) {
                rep.witnesses.push_back({z, znext, witness});
            } else {
                rep.perfect = false;
                rep.missing.emplace_back(z, znext);
            }
        }
    }
    return rep;
}

}  // namespace icl
