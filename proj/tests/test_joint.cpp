#include <doctest.h>

#include "fixture.hpp"
#include "icl/joint.hpp"
#include "oracles.hpp"

using icl::Channel;
using icl::JointTable;
using icl::StochasticMatrix;

namespace {

icl::JointTable fixture_joint() { return fixture::universe().joint(); }

}  // namespace

TEST_CASE("trivial 1-state universe gives a single cell of mass 1") {
    const auto P = StochasticMatrix::validate({{1.0}});
    const auto pi = stationary_distribution(P);
    const Channel ch = Channel::from_function({0}, 1, 1);
    const JointTable j = two_step_joint(P, {{"Y", ch}}, pi);
    CHECK(j.cell_count() == 1);
    CHECK(j.probs()[0] == doctest::Approx(1.0));
}

TEST_CASE("fixture joint hits the hand-computed cell") {
    const JointTable j = fixture_joint();
    // variables are X, X', S, S', M, M'
    REQUIRE(j.names() == std::vector<std::string>{"X", "X'", "S", "S'", "M", "M'"});
    // p(X=1, X'=2, S=1, M=1, S'=2, M'=1) = (9/70) * (1/3) = 3/70
    const std::vector<int> idx{0, 1, 0, 1, 0, 0};
    CHECK(j.at(idx) == doctest::Approx(3.0 / 70).epsilon(1e-14));
    CHECK(j.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("deterministic channels put zero mass off their graph") {
    const JointTable j = fixture_joint();
    const auto& fs = fixture::f_s();
    const auto& fm = fixture::f_m();
    std::vector<int> idx(6, 0);
    for (int x = 0; x < 6; ++x)
        for (int s = 0; s < 2; ++s)
            for (int m = 0; m < 2; ++m) {
                if (s == fs[static_cast<size_t>(x)] && m == fm[static_cast<size_t>(x)]) continue;
                idx = {x, 0, s, 0, m, 0};
                double mass = 0.0;
                for (int xp = 0; xp < 6; ++xp)
                    for (int sp = 0; sp < 2; ++sp)
                        for (int mp = 0; mp < 2; ++mp) {
                            idx[1] = xp; idx[3] = sp; idx[5] = mp;
                            mass += j.at(idx);
                        }
                CHECK(mass == 0.0);
            }
}

TEST_CASE("marginal to X,X' equals p(x) p(x'|x) entrywise") {
    const icl::Universe u = fixture::universe();
    const JointTable m = u.joint().marginalize({"X", "X'"});
    std::vector<int> idx{0, 0};
    for (int x = 0; x < 6; ++x)
        for (int xp = 0; xp < 6; ++xp) {
            idx[0] = x; idx[1] = xp;
            CHECK(std::abs(m.at(idx) - u.stationary[x] * u.P(xp, x)) < 1e-14);
        }
}

TEST_CASE("marginalizing X' out of p(X,X') recovers the stationary distribution") {
    const icl::Universe u = fixture::universe();
    const JointTable m = u.joint().marginalize({"X"});
    for (int x = 0; x < 6; ++x) {
        const std::vector<int> idx{x};
        CHECK(std::abs(m.at(idx) - u.stationary[x]) < 1e-14);
    }
}

TEST_CASE("marginalize to M gives the block mass") {
    const JointTable m = fixture_joint().marginalize({"M"});
    const std::vector<int> idx{0};
    CHECK(m.at(idx) == doctest::Approx(27.0 / 70).epsilon(1e-14));
}

TEST_CASE("marginalize to all variables is the identity") {
    const JointTable j = fixture_joint();
    const JointTable m = j.marginalize(std::span<const std::string>(j.names()));
    REQUIRE(m.cell_count() == j.cell_count());
    for (size_t i = 0; i < j.cell_count(); ++i) CHECK(m.probs()[i] == j.probs()[i]);
}

TEST_CASE("marginalize to nothing leaves the scalar mass") {
    const JointTable m = fixture_joint().marginalize({});
    CHECK(m.cell_count() == 1);
    CHECK(m.probs()[0] == doctest::Approx(1.0));
}

TEST_CASE("marginalize rejects unknown variables") {
    CHECK_THROWS_AS(fixture_joint().marginalize({"Q"}), icl::UnknownVariableError);
}

TEST_CASE("two_step_joint rejects mismatched channel cardinality") {
    const auto P = StochasticMatrix::validate({{0.5, 0.5}, {0.5, 0.5}});
    const auto pi = stationary_distribution(P);
    const Channel ch = Channel::from_function({0, 0, 1}, 3, 2);
    CHECK_THROWS_AS(two_step_joint(P, {{"Y", ch}}, pi), icl::DimensionMismatchError);
}

TEST_CASE("joint construction validates mass") {
    CHECK_THROWS_AS(JointTable({"A"}, {2}, {0.5, 0.6}), icl::InputError);
    CHECK_THROWS_AS(JointTable({"A"}, {2}, {1.5, -0.5}), icl::NegativeEntryError);
    CHECK_THROWS_AS(JointTable({"A"}, {3}, {0.5, 0.5}), icl::DimensionMismatchError);
}

TEST_CASE("identity-map channel makes p(X,Y) diagonal") {
    const auto P = StochasticMatrix::validate(fixture::matrix_rows());
    const auto pi = stationary_distribution(P);
    std::vector<int> ident{0, 1, 2, 3, 4, 5};
    const JointTable j = two_step_joint(P, {{"Y", Channel::from_function(ident, 6, 6)}}, pi);
    const JointTable m = j.marginalize({"X", "Y"});
    std::vector<int> idx{0, 0};
    for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y) {
            idx[0] = x; idx[1] = y;
            if (x == y) CHECK(m.at(idx) == doctest::Approx(pi[x]).epsilon(1e-12));
            else CHECK(m.at(idx) == 0.0);
        }
}

TEST_CASE("fixture joint agrees with the oracle cells") {
    const JointTable j = fixture_joint();
    const auto cells = oracle::two_step_cells(fixture::matrix_rows(),
                                              oracle::power_iteration(fixture::matrix_rows()),
                                              fixture::f_s(), fixture::f_m());
    double checked = 0.0;
    for (const auto& [key, p] : cells) {
        const std::vector<int> idx{key[0], key[1], key[2], key[3], key[4], key[5]};
        CHECK(std::abs(j.at(idx) - p) < 1e-12);
        checked += p;
    }
    CHECK(checked == doctest::Approx(1.0).epsilon(1e-12));
}
