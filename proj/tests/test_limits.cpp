#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cocyclelab/errors.hpp"
#include "cocyclelab/limits.hpp"

using namespace cocyclelab;

namespace {

Tower z2_z4_z8(GroupPtr& z2, GroupPtr& z4, GroupPtr& z8) {
    z2 = make_cyclic(2);
    z4 = make_cyclic(4);
    z8 = make_cyclic(8);
    GroupHom s0(z4, z2, {0, 1, 0, 1});
    GroupHom s1(z8, z4, {0, 1, 2, 3, 0, 1, 2, 3});
    return Tower({z2, z4, z8}, {s0, s1});
}

Cochain carry_mod2(const ModulePtr& m) {
    // base-|G| carry with Z/2 values
    int n = m->group()->order();
    Cochain c(m, 2);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a + b >= n) c.set((std::size_t)a * n + b, Value{Rat(1)});
    return c;
}

} // namespace

TEST_CASE("H^1 stabilizes along the 2-adic tower") {
    GroupPtr z2, z4, z8;
    Tower t = z2_z4_z8(z2, z4, z8);
    ModulePtr m = GModule::trivial(z2, CoefficientGroup::finite_abelian({2}));
    TowerReport r = tower_experiment(t, m, 1);
    REQUIRE(r.levels.size() == 3);
    for (const CohomologyGroup& h : r.levels) CHECK(h.order() == 2);
    REQUIRE(r.inflation_matrices.size() == 2);
    for (std::size_t s = 0; s < 2; ++s) {
        CHECK(r.inflation_matrices[s].at(0, 0) == 1);
        CHECK(r.step_injective[s]);
        CHECK(r.step_surjective[s]);
    }
    CHECK(r.stabilization_index == 0);
}

TEST_CASE("H^2 inflation vanishes along the 2-adic tower") {
    GroupPtr z2, z4, z8;
    Tower t = z2_z4_z8(z2, z4, z8);
    ModulePtr m = GModule::trivial(z2, CoefficientGroup::finite_abelian({2}));
    TowerReport r = tower_experiment(t, m, 2);
    for (const CohomologyGroup& h : r.levels) CHECK(h.order() == 2);
    for (std::size_t s = 0; s < 2; ++s) {
        // inflating through Z/2^(k+1) -> Z/2^k kills the carry class: the
        // pulled-back extension acquires a homomorphic section
        CHECK(r.inflation_matrices[s].at(0, 0) == 0);
        CHECK_FALSE(r.step_injective[s]);
        CHECK_FALSE(r.step_surjective[s]);
    }
    CHECK(r.stabilization_index == -1);
}

TEST_CASE("tower rejects modules over the wrong group") {
    GroupPtr z2, z4, z8;
    Tower t = z2_z4_z8(z2, z4, z8);
    ModulePtr wrong = GModule::trivial(z4, CoefficientGroup::finite_abelian({2}));
    CHECK_THROWS_AS(tower_experiment(t, wrong, 1), ModuleMismatch);
}

TEST_CASE("descent by the exact route recovers an inflated class") {
    GroupPtr z2 = make_cyclic(2), z4 = make_cyclic(4);
    GroupHom pi(z4, z2, {0, 1, 0, 1});
    ModulePtr m2 = GModule::trivial(z2, CoefficientGroup::finite_abelian({2}));
    Cochain psi = inflate(pi, carry_mod2(m2));
    DescendResult r = descend_cocycle(psi, pi);
    CHECK(r.success);
    REQUIRE(r.descended.has_value());
    REQUIRE(r.lambda.has_value());
    CHECK(r.descended->module()->group() == z2);
    CHECK(is_cocycle(*r.descended));
    CHECK(inflate(pi, *r.descended, psi.module()) + coboundary(*r.lambda) == psi);
}

TEST_CASE("descent reports an exact obstruction for the carry class") {
    GroupPtr z2 = make_cyclic(2), z4 = make_cyclic(4);
    GroupHom pi(z4, z2, {0, 1, 0, 1});
    ModulePtr m4 = GModule::trivial(z4, CoefficientGroup::finite_abelian({2}));
    Cochain carry4 = carry_mod2(m4);
    REQUIRE(is_cocycle(carry4));
    DescendResult r = descend_cocycle(carry4, pi);
    CHECK_FALSE(r.success);
    CHECK_FALSE(r.descended.has_value());
    REQUIRE(!r.class_coords.empty());
    CHECK(r.class_coords[0] == Rat(1));
    CHECK(r.detail == "class lies outside the inflation image");
}

TEST_CASE("descent by the modal route absorbs a small perturbation") {
    const int n = 2048;
    GroupPtr big = make_cyclic(n), z2 = make_cyclic(2);
    std::vector<int> table(n);
    for (int g = 0; g < n; ++g) table[g] = g % 2;
    GroupHom pi(big, z2, table);
    ModulePtr mbig = GModule::trivial(big, CoefficientGroup::finite_abelian({2}));
    Cochain delta(mbig, 1);
    delta.set(7, Value{Rat(1)});
    Cochain psi = coboundary(delta);
    DescendResult r = descend_cocycle(psi, pi);
    CHECK(r.success);
    CHECK_FALSE(r.used_exact_fallback);
    CHECK(r.defect_rho0 <= ConstantsTable::default_eta(2));
    REQUIRE(r.descended.has_value());
    CHECK(inflate(pi, *r.descended, mbig) + coboundary(*r.lambda) == psi);
}

TEST_CASE("descent validates its inputs") {
    GroupPtr z2 = make_cyclic(2), z4 = make_cyclic(4);
    GroupHom incl(z2, z4, {0, 2});
    ModulePtr m2 = GModule::trivial(z2, CoefficientGroup::finite_abelian({2}));
    CHECK_THROWS_AS(descend_cocycle(Cochain(m2, 2), incl), ModuleMismatch);
    GroupHom pi(z4, z2, {0, 1, 0, 1});
    CHECK_THROWS_AS(descend_cocycle(Cochain(m2, 2), pi), ModuleMismatch);
    ModulePtr q4 = GModule::trivial(z4, CoefficientGroup::rational_vector(1));
    CHECK_THROWS_AS(descend_cocycle(Cochain(q4, 2), pi), WrongCoefficientKind);
    ModulePtr m4 = GModule::trivial(z4, CoefficientGroup::finite_abelian({2}));
    Cochain bad(m4, 2);
    bad.set(1, Value{Rat(1)});
    CHECK_THROWS_AS(descend_cocycle(bad, pi), NotACocycle);
}

TEST_CASE("a nested chain of torsion modules maps into the circle") {
    GroupPtr z2 = make_cyclic(2);
    ModulePtr s0 = GModule::trivial(z2, CoefficientGroup::finite_abelian({2}));
    ModulePtr s1 = GModule::trivial(z2, CoefficientGroup::finite_abelian({4}));
    ModulePtr s2 = GModule::trivial(z2, CoefficientGroup::finite_abelian({8}));
    ModulePtr amb = GModule::trivial(z2, CoefficientGroup::rational_torus(1));
    DirectSystem d({s0, s1, s2}, {ModuleHom(s0, s1, {Rat(2)}), ModuleHom(s1, s2, {Rat(2)})},
                   amb,
                   {ModuleHom(s0, amb, {Rat(1, 2)}), ModuleHom(s1, amb, {Rat(1, 4)}),
                    ModuleHom(s2, amb, {Rat(1, 8)})});
    DirectSystemReport r = direct_system_experiment(d, 1);
    REQUIRE(r.stages.size() == 3);
    CHECK(r.stages[0].order() == 2); // Hom(Z/2, Z/2^k) has order 2 throughout
    CHECK(r.stages[1].order() == 2);
    CHECK(r.stages[2].order() == 2);
    REQUIRE(r.stage_maps.size() == 2);
    CHECK(r.stage_maps[0].at(0, 0) == 1);
    CHECK(r.stage_maps[1].at(0, 0) == 1);
    REQUIRE(r.ambient.has_value());
    CHECK(r.ambient->order() == 2);
    REQUIRE(r.ambient_generators.size() == 1);
    CHECK(r.ambient_generators[0].values_in_stage == 0);
    CHECK(r.ambient_generators[0].class_hit);
    CHECK(r.dying.empty());
}

TEST_CASE("direct systems are validated") {
    GroupPtr z2 = make_cyclic(2);
    ModulePtr s0 = GModule::trivial(z2, CoefficientGroup::finite_abelian({2}));
    ModulePtr s1 = GModule::trivial(z2, CoefficientGroup::finite_abelian({4}));
    CHECK_THROWS_AS(DirectSystem({}, {}), ParseError);
    CHECK_THROWS_AS(DirectSystem({s0, s1}, {}), ParseError);
    // x -> 0 is a valid module map but not injective
    CHECK_THROWS_AS(DirectSystem({s0, s1}, {ModuleHom(s0, s1, {Rat(0)})}), KernelMismatch);
}
