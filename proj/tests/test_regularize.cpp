#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cocyclelab/cohomology.hpp"
#include "cocyclelab/errors.hpp"
#include "cocyclelab/regularize.hpp"

using namespace cocyclelab;

namespace {

ModulePtr big_mod2(int n) {
    return GModule::trivial(make_cyclic(n), CoefficientGroup::finite_abelian({2}));
}

// d(delta_x): a 2-cocycle supported on at most 3n of the n^2 cells
Cochain small_cocycle(const ModulePtr& m, int x) {
    Cochain delta(m, 1);
    delta.set((std::size_t)x, Value{Rat(1)});
    return coboundary(delta);
}

} // namespace

TEST_CASE("default thresholds follow the factorial law") {
    CHECK(ConstantsTable::default_eta(1) == Rat(1, 100));
    CHECK(ConstantsTable::default_eta(2) == Rat(1, 400));
    CHECK(ConstantsTable::default_eta(3) == Rat(1, 3600));
    ConstantsTable t;
    t.eta[2] = Rat(1, 7);
    CHECK(t.eta_for(2) == Rat(1, 7));
    CHECK(t.eta_for(3) == Rat(1, 3600));
}

TEST_CASE("degree 1 returns the cocycle unchanged") {
    ModulePtr m = big_mod2(4);
    Cochain zero(m, 1);
    RegularizationResult r = regularize(zero);
    CHECK(r.phi == zero);
    CHECK(r.lambda.is_zero());
    CHECK(r.bounds_guaranteed);
    // a nonzero homomorphism is not small; an override lets it through intact
    Cochain hom(m, 1);
    hom.set(1, Value{Rat(1)});
    hom.set(3, Value{Rat(1)});
    REQUIRE(is_cocycle(hom));
    CHECK_THROWS_AS(regularize(hom), NotSmallEnough);
    RegularizationResult r2 = regularize(hom, Rat(1));
    CHECK(r2.phi == hom);
    CHECK_FALSE(r2.bounds_guaranteed);
    CHECK(r2.threshold_used == Rat(1));
}

TEST_CASE("a small degree-2 cocycle trivializes exactly") {
    ModulePtr m = big_mod2(2048);
    Cochain psi = small_cocycle(m, 5);
    REQUIRE(rho0(psi) <= ConstantsTable::default_eta(2));
    RegularizationResult r = regularize(psi);
    CHECK(r.phi.is_zero());
    CHECK(coboundary(r.lambda) == psi);
    CHECK(r.bounds_guaranteed);
    REQUIRE(r.levels.size() == 2);
    CHECK(r.levels[0].degree == 2);
    CHECK(r.levels[1].degree == 1);
    CHECK(r.levels[0].sqrt_small);

    Cochain lam = trivialize_small_discrete(psi);
    CHECK(coboundary(lam) == psi);
}

TEST_CASE("the decomposition identity survives a threshold override") {
    // the base-4 carry cocycle generates H^2(Z/4, Z/2): it cannot trivialize
    GroupPtr z4 = make_cyclic(4);
    ModulePtr m = GModule::trivial(z4, CoefficientGroup::finite_abelian({2}));
    Cochain carry(m, 2);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (a + b >= 4) carry.set((std::size_t)a * 4 + b, Value{Rat(1)});
    REQUIRE(is_cocycle(carry));
    CHECK_THROWS_AS(regularize(carry), NotSmallEnough);

    RegularizationResult r = regularize(carry, Rat(1));
    CHECK_FALSE(r.bounds_guaranteed);
    CHECK(r.phi + coboundary(r.lambda) == carry);
    CHECK(is_cocycle(r.phi));
    CHECK_FALSE(r.phi.is_zero()); // the class is nonzero, so phi cannot vanish
    CHECK_THROWS_AS(trivialize_small_discrete(carry, Rat(1)), NotSmallEnough);
}

TEST_CASE("input validation") {
    ModulePtr m = big_mod2(4);
    Cochain bad(m, 2);
    bad.set(1, Value{Rat(1)});
    CHECK_THROWS_AS(regularize(bad, Rat(1)), NotACocycle);
    Cochain deg0(m, 0);
    CHECK_THROWS_AS(regularize(deg0), UnsupportedDegree);

    GroupPtr z2 = make_cyclic(2);
    ModulePtr shear = GModule::with_matrices(
        z2, CoefficientGroup::rational_vector(2),
        {{Rat(1), Rat(0), Rat(0), Rat(1)}, {Rat(-1), Rat(1), Rat(0), Rat(1)}});
    CHECK_FALSE(shear->isometric());
    CHECK_THROWS_AS(regularize(Cochain(shear, 2)), NonIsometricModule);
    CHECK_THROWS_AS(crossed_hom_bound_check(shear), NonIsometricModule);

    ModulePtr q = GModule::trivial(z2, CoefficientGroup::rational_vector(1));
    CHECK_THROWS_AS(trivialize_small_discrete(Cochain(q, 1)), WrongCoefficientKind);
}

TEST_CASE("crossed-homomorphism bound holds on small discrete modules") {
    for (GroupPtr g : {make_cyclic(4), make_s3()}) {
        ModulePtr m = GModule::trivial(g, CoefficientGroup::finite_abelian({2}));
        CrossedHomReport r = crossed_hom_bound_check(m);
        CHECK(r.pass);
        CHECK(r.tested >= 2); // at least zero and one nonzero crossed hom
    }
    GroupPtr z2 = make_cyclic(2);
    ModulePtr neg = GModule::with_matrices(z2, CoefficientGroup::finite_abelian({3}),
                                           {{Rat(1)}, {Rat(-1)}});
    CrossedHomReport r = crossed_hom_bound_check(neg);
    CHECK(r.pass);
    CHECK(r.tested == 3); // alpha(1) free in Z/3, alpha determined by it
}

TEST_CASE("crossed-homomorphism bound over rational coefficients") {
    ModulePtr m = GModule::trivial(make_cyclic(3), CoefficientGroup::rational_vector(2));
    CrossedHomReport r = crossed_hom_bound_check(m);
    CHECK(r.pass);
    CHECK(r.tested >= 1); // only the zero map: Hom(Z/3, Q^2) = 0
}
