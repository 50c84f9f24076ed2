#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cocyclelab/errors.hpp"
#include "cocyclelab/ses.hpp"

using namespace cocyclelab;

namespace {

ModulePtr triv(const GroupPtr& g, CoeffPtr c) { return GModule::trivial(g, std::move(c)); }

} // namespace

TEST_CASE("the multiplication family has the advertised shape") {
    ModulePtr z = triv(make_cyclic(2), CoefficientGroup::free_abelian(1));
    ModuleSES s = make_ses_zxm(z, 3);
    CHECK(s.family == "ZxmZ_Zm");
    CHECK(s.multiplier == 3);
    CHECK(s.a->coeffs()->kind() == CoeffKind::FreeAbelian);
    CHECK(s.c->coeffs()->kind() == CoeffKind::FiniteAbelian);
    CHECK(s.i.apply(Value{Rat(2)})[0] == Rat(6));
    CHECK(s.j.apply(Value{Rat(7)})[0] == Rat(1));
    // section is a right inverse of j
    for (long long x = 0; x < 3; ++x) {
        Value c{Rat(x)};
        CHECK(s.j.apply(s.section(c)) == c);
    }
}

TEST_CASE("connecting map yields cocycles one degree up") {
    ModulePtr z = triv(make_cyclic(2), CoefficientGroup::free_abelian(1));
    ModuleSES s = make_ses_zxm(z, 2);
    CohomologyGroup h1c = cohomology(s.c, 1);
    REQUIRE(h1c.order() == 2);
    Cochain delta = connecting_map(s, h1c.generators[0]);
    CHECK(delta.degree() == 2);
    CHECK(delta.module() == s.a);
    CHECK(is_cocycle(delta));
    // H^2(Z/2, Z) = Z/2 and the image class is the generator (Bockstein of
    // the identity homomorphism is the nonzero class)
    CohomologyGroup h2a = cohomology(s.a, 2);
    REQUIRE(h2a.order() == 2);
    CHECK(class_of(h2a, delta)[0] == Rat(1));
    // coboundaries connect to coboundaries
    Cochain f(s.c, 0);
    f.set(0, Value{Rat(1)});
    Cochain d0 = connecting_map(s, coboundary(f));
    CHECK(is_coboundary(cohomology(s.a, 2), d0).has_value());
}

TEST_CASE("explicit Z/2 -> Z/4 -> Z/2 connecting hits the carry class") {
    GroupPtr z2 = make_cyclic(2);
    ModulePtr m2 = triv(z2, CoefficientGroup::finite_abelian({2}));
    ModulePtr m4 = triv(z2, CoefficientGroup::finite_abelian({4}));
    ModulePtr m2c = triv(z2, CoefficientGroup::finite_abelian({2}));
    ModuleSES s = make_ses_explicit(m2, m4, m2c, {Rat(2)}, {Rat(1)});
    CohomologyGroup h1 = cohomology(m2c, 1);
    REQUIRE(h1.order() == 2);
    Cochain delta = connecting_map(s, h1.generators[0]);
    CohomologyGroup h2 = cohomology(m2, 2);
    REQUIRE(h2.order() == 2);
    CHECK(class_of(h2, delta)[0] == Rat(1));
}

TEST_CASE("the connecting class does not depend on the section") {
    GroupPtr z2 = make_cyclic(2);
    ModulePtr m2 = triv(z2, CoefficientGroup::finite_abelian({2}));
    ModulePtr m4 = triv(z2, CoefficientGroup::finite_abelian({4}));
    ModulePtr m2c = triv(z2, CoefficientGroup::finite_abelian({2}));
    ModuleSES s = make_ses_explicit(m2, m4, m2c, {Rat(2)}, {Rat(1)});
    // shift the section at 1 by an element of the kernel: 1 -> 3 instead of 1
    ModuleSES s2 = s.with_section([](const Value& c) {
        return c[0].is_zero() ? Value{Rat(0)} : Value{Rat(3)};
    });
    CohomologyGroup h1 = cohomology(m2c, 1);
    Cochain d1 = connecting_map(s, h1.generators[0]);
    Cochain d2 = connecting_map(s2, h1.generators[0]);
    CohomologyGroup h2 = cohomology(m2, 2);
    CHECK(class_of(h2, d1) == class_of(h2, d2));
    CHECK(is_coboundary(h2, d1 - d2).has_value());
}

TEST_CASE("les_check passes for the multiplication families") {
    for (int n : {2, 3, 4})
        for (long long m : {2LL, 3LL}) {
            ModulePtr z = triv(make_cyclic(n), CoefficientGroup::free_abelian(1));
            LesReport r = les_check(make_ses_zxm(z, m), 2);
            CHECK(r.all_exact);
            for (const LesSlot& slot : r.slots) CHECK(slot.exact);
            CHECK(r.slots.size() > 4); // covers degrees 0 through 2
        }
}

TEST_CASE("les_check passes for Z -> Q -> Q/Z") {
    for (int n : {2, 3}) {
        ModulePtr z = triv(make_cyclic(n), CoefficientGroup::free_abelian(1));
        ModuleSES s = make_ses_z_q_qmodz(z);
        CHECK(s.family == "Z_Q_QmodZ");
        LesReport r = les_check(s, 2);
        CHECK(r.all_exact);
        // a larger desk scale for the degree-0 slots changes nothing
        LesReport r2 = les_check(s, 2, 4);
        CHECK(r2.all_exact);
    }
}

TEST_CASE("les_check passes for an explicit finite sequence") {
    GroupPtr z2 = make_cyclic(2);
    ModulePtr m2 = triv(z2, CoefficientGroup::finite_abelian({2}));
    ModulePtr m4 = triv(z2, CoefficientGroup::finite_abelian({4}));
    ModulePtr m2c = triv(z2, CoefficientGroup::finite_abelian({2}));
    LesReport r = les_check(make_ses_explicit(m2, m4, m2c, {Rat(2)}, {Rat(1)}), 2);
    CHECK(r.all_exact);
}

TEST_CASE("explicit sequences are validated") {
    GroupPtr z2 = make_cyclic(2);
    ModulePtr m2 = triv(z2, CoefficientGroup::finite_abelian({2}));
    ModulePtr m4 = triv(z2, CoefficientGroup::finite_abelian({4}));
    ModulePtr m2c = triv(z2, CoefficientGroup::finite_abelian({2}));
    // j = 0 is not surjective
    CHECK_THROWS_AS(make_ses_explicit(m2, m4, m2c, {Rat(2)}, {Rat(0)}), KernelMismatch);
    // i = 0 is not injective
    CHECK_THROWS_AS(make_ses_explicit(m2, m4, m2c, {Rat(0)}, {Rat(1)}), KernelMismatch);
    // image of i is not the kernel of j when the quotient is too small
    ModulePtr m1 = triv(z2, CoefficientGroup::finite_abelian({2}));
    ModulePtr big = triv(z2, CoefficientGroup::finite_abelian({8}));
    CHECK_THROWS_AS(make_ses_explicit(m1, big, m2c, {Rat(4)}, {Rat(1)}), KernelMismatch);
}

TEST_CASE("connecting rejects non-cocycles and foreign modules") {
    ModulePtr z = triv(make_cyclic(2), CoefficientGroup::free_abelian(1));
    ModuleSES s = make_ses_zxm(z, 2);
    Cochain bad(s.c, 2);
    bad.set(1, Value{Rat(1)});
    CHECK_THROWS_AS(connecting_map(s, bad), NotACocycle);
    Cochain wrong(s.a, 1);
    CHECK_THROWS_AS(connecting_map(s, wrong), ModuleMismatch);
}
