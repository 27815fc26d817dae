#include <doctest.h>

#include "fixture.hpp"
#include "icl/builder.hpp"
#include "icl/measures.hpp"

using icl::BuildSpec;
using icl::FillSpec;
using icl::PartitionRelation;
using icl::Strength;
using icl::Universe;

namespace {

BuildSpec fixture_spec() {
    BuildSpec spec;
    spec.n = 6;
    spec.f_m = fixture::f_m();
    spec.f_s = fixture::f_s();
    spec.fill = FillSpec::explicit_values(fixture::matrix_rows());
    return spec;
}

}  // namespace

TEST_CASE("replaying the explicit fill reproduces the canonical matrix") {
    const Universe u = build_universe(fixture_spec());
    const Universe ref = fixture::universe();
    for (int xp = 0; xp < 6; ++xp)
        for (int x = 0; x < 6; ++x) CHECK(u.P(xp, x) == doctest::Approx(ref.P(xp, x)).epsilon(1e-15));
}

TEST_CASE("example universe carries the exact numbers") {
    const Universe u = icl::example_universe();
    REQUIRE(u.P.has_exact());
    CHECK(u.P.exact(3, 2) == icl::Rational{1, 2});  // p(x'=4|x=3)
    CHECK(u.stationary[0] == doctest::Approx(9.0 / 70).epsilon(1e-15));
    CHECK(partition_relation(u.current_partition(), u.future_partition()) ==
          PartitionRelation::Orthogonal);
}

TEST_CASE("identity structure on two states is reducible and errors after retries") {
    BuildSpec spec;
    spec.n = 2;
    spec.f_m = {0, 1};
    spec.f_s = {0, 1};
    spec.fill = FillSpec::uniform();
    spec.max_retries = 10;
    CHECK_THROWS_AS(build_universe(spec), icl::ReducibleAfterRetriesError);
}

TEST_CASE("4-state orthogonal spec builds a strongly closed universe") {
    BuildSpec spec;
    spec.n = 4;
    spec.f_m = {0, 0, 1, 1};
    spec.f_s = {0, 1, 0, 1};
    spec.fill = FillSpec::dirichlet(1.0);
    spec.seed = 7;
    const Universe u = build_universe(spec);

    CHECK(is_irreducible(u.P));
    CHECK(u.stationary.full_support());
    CHECK(interaction_closure(u.joint(), "S", "M", Strength::Strong).value_bits <= 1e-10);
    CHECK(partition_relation(u.current_partition(), u.future_partition()) ==
          PartitionRelation::Orthogonal);
}

TEST_CASE("support zeros are exact, not merely small") {
    BuildSpec spec;
    spec.n = 6;
    spec.f_m = {0, 0, 0, 1, 1, 1};
    spec.f_s = {0, 1, 1, 0, 1, 1};
    spec.fill = FillSpec::dirichlet(0.5);
    spec.seed = 3;
    const Universe u = build_universe(spec);
    const auto& fm = spec.f_m;
    for (int x = 0; x < 6; ++x)
        for (int xp = 0; xp < 6; ++xp)
            if (fm[static_cast<size_t>(xp)] != spec.f_s[static_cast<size_t>(x)])  // g = identity
                CHECK(u.P(xp, x) == 0.0);
}

TEST_CASE("same spec and seed give bit-identical universes") {
    BuildSpec spec;
    spec.n = 8;
    spec.f_m = {0, 0, 1, 1, 0, 1, 0, 1};
    spec.f_s = {0, 1, 0, 1, 1, 0, 0, 1};
    spec.fill = FillSpec::dirichlet(1.0);
    spec.seed = 42;
    const Universe a = build_universe(spec);
    const Universe b = build_universe(spec);
    for (int xp = 0; xp < 8; ++xp)
        for (int x = 0; x < 8; ++x) CHECK(a.P(xp, x) == b.P(xp, x));
}

TEST_CASE("recovered step map equals g composed with f^S") {
    BuildSpec spec;
    spec.n = 6;
    spec.f_m = {0, 0, 1, 1, 2, 2};
    spec.f_s = {0, 1, 2, 0, 1, 2};
    spec.g = {1, 2, 0};
    spec.fill = FillSpec::dirichlet(1.0);
    spec.seed = 11;
    const Universe u = build_universe(spec);
    const auto rec = recover_step_map(u.joint(), "M'", "X");
    for (int x = 0; x < 6; ++x)
        CHECK(rec.map[static_cast<size_t>(x)] == spec.g[static_cast<size_t>(spec.f_s[static_cast<size_t>(x)])]);
}

TEST_CASE("spec validation rejects broken structures") {
    BuildSpec spec;
    spec.n = 4;
    spec.f_m = {0, 0, 1, 1};
    spec.f_s = {0, 0, 0, 0};  // not surjective onto {0,1}
    CHECK_THROWS_AS(build_universe(spec), icl::InfeasibleStructureError);

    spec.f_s = {0, 1, 0, 1};
    spec.g = {0, 0};  // not a bijection
    CHECK_THROWS_AS(build_universe(spec), icl::InfeasibleStructureError);

    spec.g = {};
    spec.f_m = {0, 0, 1, 2};  // |M| = 3 but |S| = 2
    CHECK_THROWS_AS(build_universe(spec), icl::InfeasibleStructureError);
}

TEST_CASE("perfect control needs every intersection: pigeonhole at n=3, k=2") {
    BuildSpec spec;
    spec.n = 3;
    spec.f_m = {0, 0, 1};
    spec.f_s = {0, 1, 1};
    spec.require_perfect_control = true;
    CHECK_THROWS_AS(build_universe(spec), icl::InfeasibleStructureError);
}

TEST_CASE("perfect-control universe attains maximal transfer entropy") {
    BuildSpec spec;
    spec.n = 4;
    spec.f_m = {0, 0, 1, 1};
    spec.f_s = {0, 1, 0, 1};
    spec.fill = FillSpec::dirichlet(1.0);
    spec.seed = 5;
    const Universe u = icl::build_perfect_control_universe(spec);
    const auto j = u.joint();
    CHECK(is_perfect_apparent_control(j, "S", "M").perfect);
    const std::vector<std::string> mp{"M'"}, m{"M"};
    CHECK(std::abs(transfer_entropy(j, "S", "M") - conditional_entropy(j, mp, m)) <= 1e-10);
    CHECK(partition_relation(u.current_partition(), u.future_partition()) ==
          PartitionRelation::Orthogonal);
}

TEST_CASE("the fixture structure supports perfect control") {
    BuildSpec spec = fixture_spec();
    const Universe u = icl::build_perfect_control_universe(spec);
    CHECK(is_perfect_apparent_control(u.joint(), "S", "M").perfect);
}

TEST_CASE("coinciding universes kill apparent control") {
    const Universe u = icl::coinciding_universe(4, {{0, 1}, {2, 3}}, FillSpec::dirichlet(1.0), 9);
    const auto j = u.joint();
    CHECK(partition_relation(u.current_partition(), u.future_partition()) ==
          PartitionRelation::Coinciding);
    CHECK(transfer_entropy(j, "S", "M") <= 1e-10);
    CHECK(interaction_closure(j, "S", "M", Strength::Strong).value_bits <= 1e-10);
}

TEST_CASE("two singleton blocks give the deterministic 2-cycle") {
    const Universe u = icl::coinciding_universe(2, {{0}, {1}}, FillSpec::uniform(), 0);
    CHECK(u.P(1, 0) == 1.0);
    CHECK(u.P(0, 1) == 1.0);
    const auto j = u.joint();
    const std::vector<std::string> mp{"M'"}, m{"M"};
    CHECK(transfer_entropy(j, "S", "M") <= 1e-10);
    CHECK(conditional_entropy(j, mp, m) <= 1e-10);
}

TEST_CASE("reusing the 6-state current partition as blocks keeps TE and H(M'|M) at zero") {
    // With coinciding partitions M' is a function of M, so both vanish.
    const Universe u =
        icl::coinciding_universe(6, {{0, 1, 2}, {3, 4, 5}}, icl::FillSpec::dirichlet(1.0), 13);
    const auto j = u.joint();
    const std::vector<std::string> mp{"M'"}, m{"M"};
    CHECK(transfer_entropy(j, "S", "M") <= 1e-10);
    CHECK(conditional_entropy(j, mp, m) <= 1e-10);
}

TEST_CASE("hill climb never loses ground and respects the bound") {
    BuildSpec spec;
    spec.n = 4;
    spec.f_m = {0, 0, 1, 1};
    spec.f_s = {0, 1, 0, 1};
    spec.fill = FillSpec::dirichlet(1.0);
    spec.seed = 2;
    const auto result = icl::maximize_control(spec, 60, 17);
    REQUIRE(result.trace.size() == 60);
    double prev = 0.0;
    for (const double v : result.trace) {
        CHECK(v >= prev - 1e-15);
        prev = v;
    }
    CHECK(result.best_score <= 1.0 + 1e-12);  // H(M'|M) <= log2(2)
    CHECK(result.best_score >= transfer_entropy(build_universe(spec).joint(), "S", "M") - 1e-12);
}

TEST_CASE("hill climb from the canonical fill can only improve on 0.95669") {
    const auto result = icl::maximize_control(fixture_spec(), 200, 1);
    CHECK(result.best_score >= fixture::kTransferEntropy - 1e-12);
}

TEST_CASE("zero iterations return the initial fill unchanged") {
    const auto result = icl::maximize_control(fixture_spec(), 0, 1);
    CHECK(result.trace.empty());
    const Universe ref = fixture::universe();
    for (int xp = 0; xp < 6; ++xp)
        for (int x = 0; x < 6; ++x)
            CHECK(result.universe.P(xp, x) == doctest::Approx(ref.P(xp, x)).epsilon(1e-15));
}

TEST_CASE("build spec json round trip") {
    BuildSpec spec;
    spec.n = 4;
    spec.f_m = {0, 0, 1, 1};
    spec.f_s = {0, 1, 0, 1};
    spec.g = {1, 0};
    spec.fill = FillSpec::dirichlet(2.0);
    spec.seed = 99;
    spec.require_perfect_control = true;
    const BuildSpec back = BuildSpec::from_json(spec.to_json());
    CHECK(back.n == spec.n);
    CHECK(back.f_m == spec.f_m);
    CHECK(back.f_s == spec.f_s);
    CHECK(back.g == spec.g);
    CHECK(back.fill.alpha == spec.fill.alpha);
    CHECK(back.seed == spec.seed);
    CHECK(back.require_perfect_control);
}
