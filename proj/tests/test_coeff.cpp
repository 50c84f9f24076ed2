#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cocyclelab/coeff.hpp"
#include "cocyclelab/errors.hpp"

using namespace cocyclelab;

TEST_CASE("finite abelian enumeration round-trips") {
    CoeffPtr a = CoefficientGroup::finite_abelian({2, 4});
    CHECK(a->count() == 8);
    for (long long i = 0; i < 8; ++i) CHECK(a->index_of(a->element(i)) == i);
    CHECK_THROWS_AS(CoefficientGroup::finite_abelian({4, 2}), DivisibilityError);
    CHECK_THROWS_AS(CoefficientGroup::finite_abelian({}), ParseError);
}

TEST_CASE("normalization per kind") {
    CoeffPtr zm = CoefficientGroup::finite_abelian({5});
    Value v{Rat(-3)};
    zm->normalize(v);
    CHECK(v[0] == Rat(2));

    CoeffPtr t = CoefficientGroup::rational_torus(1);
    Value w{Rat(7, 3)};
    t->normalize(w);
    CHECK(w[0] == Rat(1, 3));
    Value s = t->sub(Value{Rat(0)}, Value{Rat(1, 4)});
    CHECK(s[0] == Rat(3, 4));

    CoeffPtr z = CoefficientGroup::free_abelian(1);
    Value bad{Rat(1, 2)};
    CHECK_THROWS_AS(z->normalize(bad), InternalError);
}

TEST_CASE("metrics") {
    CoeffPtr zm = CoefficientGroup::finite_abelian({3});
    CHECK(zm->rho(Value{Rat(0)}) == Rat(0));
    CHECK(zm->rho(Value{Rat(2)}) == Rat(1));

    CoeffPtr q2 = CoefficientGroup::rational_vector(2);
    CHECK(q2->rho(Value{Rat(-3, 2), Rat(1)}) == Rat(3, 2));

    CoeffPtr t = CoefficientGroup::rational_torus(1);
    CHECK(t->rho(Value{Rat(3, 4)}) == Rat(1, 4)); // circle distance
    CHECK(t->rho(Value{Rat(1, 2)}) == Rat(1, 2));
}

TEST_CASE("rho0 from distances matches the breakpoint definition") {
    // mass{rho > eps} < eps at the returned value, and at nothing smaller
    CHECK(rho0_from_distances({}) == Rat(0));
    CHECK(rho0_from_distances({Rat(0), Rat(0)}) == Rat(0));
    // one large outlier among four points: eps = 1/4 gives mass 1/4 (not <), so 1/4
    // works only if mass{>1/4} <= 1/4; distances {1,0,0,0}: mass{>1/4} = 1/4
    CHECK(rho0_from_distances({Rat(1), Rat(0), Rat(0), Rat(0)}) == Rat(1, 4));
    // all points at 1/10: either eps >= 1/10 or mass 1 below it
    CHECK(rho0_from_distances({Rat(1, 10), Rat(1, 10)}) == Rat(1, 10));
}

TEST_CASE("matrix actions are validated and isometry detected") {
    GroupPtr z2 = make_cyclic(2);
    CoeffPtr z3 = CoefficientGroup::finite_abelian({3});
    // negation action of Z/2 on Z/3
    ModulePtr neg = GModule::with_matrices(z2, z3, {{Rat(1)}, {Rat(-1)}});
    CHECK(neg->isometric());
    CHECK(neg->act(1, Value{Rat(1)})[0] == Rat(2));

    // not an involution -> action law fails
    CHECK_THROWS_AS(GModule::with_matrices(z2, CoefficientGroup::free_abelian(1),
                                           {{Rat(1)}, {Rat(2)}}),
                    GroupAxiomError);
    // identity element must act trivially
    CHECK_THROWS_AS(GModule::with_matrices(z2, CoefficientGroup::free_abelian(1),
                                           {{Rat(-1)}, {Rat(1)}}),
                    GroupAxiomError);

    // scaling by 2 on Q is a valid action of Z/1 but not isometric
    ModulePtr sc = GModule::with_matrices(make_cyclic(1), CoefficientGroup::rational_vector(1),
                                          {{Rat(1)}});
    CHECK(sc->isometric());
    GroupPtr z2b = make_cyclic(2);
    ModulePtr swap2 = GModule::with_matrices(
        z2b, CoefficientGroup::rational_vector(2),
        {{Rat(1), Rat(0), Rat(0), Rat(1)}, {Rat(0), Rat(1), Rat(1), Rat(0)}});
    CHECK(swap2->isometric());
}

TEST_CASE("induced module diagonal action") {
    GroupPtr z2 = make_cyclic(2);
    ModulePtr base = GModule::trivial(z2, CoefficientGroup::finite_abelian({3}));
    ModulePtr ind = GModule::induced_of(base);
    CHECK(ind->coeffs()->dim() == 2);
    // f with f(0)=1, f(1)=2; (R^1 f)(h) = f(1+h)
    Value f{Rat(1), Rat(2)};
    Value rf = ind->act(1, f);
    CHECK(rf[0] == Rat(2));
    CHECK(rf[1] == Rat(1));

    Value c = embed_constants(Value{Rat(2)}, *ind);
    CHECK(c == Value{Rat(2), Rat(2)});
    auto back = constant_value_of(c, *ind);
    REQUIRE(back.has_value());
    CHECK((*back)[0] == Rat(2));
    CHECK_FALSE(constant_value_of(f, *ind).has_value());
}

TEST_CASE("select_lift subtracts the modal value for discrete metrics") {
    GroupPtr z3 = make_cyclic(3);
    ModulePtr base = GModule::trivial(z3, CoefficientGroup::finite_abelian({5}));
    // f = (2, 2, 4): modal value 2, lift = (0, 0, 2)
    Value lift = select_lift(Value{Rat(2), Rat(2), Rat(4)}, *base);
    CHECK(lift == Value{Rat(0), Rat(0), Rat(2)});
    // constants lift to zero
    CHECK(select_lift(Value{Rat(3), Rat(3), Rat(3)}, *base) ==
          Value{Rat(0), Rat(0), Rat(0)});
}

TEST_CASE("module homomorphisms enforce relations and equivariance") {
    GroupPtr z2 = make_cyclic(2);
    ModulePtr m2 = GModule::trivial(z2, CoefficientGroup::finite_abelian({2}));
    ModulePtr m4 = GModule::trivial(z2, CoefficientGroup::finite_abelian({4}));
    ModuleHom incl(m2, m4, {Rat(2)}); // x -> 2x is well defined
    CHECK(incl.apply(Value{Rat(1)})[0] == Rat(2));
    // x -> x is not: 2 * 1 != 0 mod 4
    CHECK_THROWS_AS(ModuleHom(m2, m4, {Rat(1)}), ModuleMismatch);

    ModulePtr neg3 = GModule::with_matrices(z2, CoefficientGroup::finite_abelian({3}),
                                            {{Rat(1)}, {Rat(-1)}});
    ModulePtr triv3 = GModule::trivial(z2, CoefficientGroup::finite_abelian({3}));
    // identity is not equivariant between the trivial and negation actions
    CHECK_THROWS_AS(ModuleHom(triv3, neg3, {Rat(1)}), ModuleMismatch);
    // zero map is
    ModuleHom zero(triv3, neg3, {Rat(0)});
    CHECK(neg3->coeffs()->is_zero(zero.apply(Value{Rat(2)})));
}

TEST_CASE("pullback along a surjection") {
    GroupPtr z2 = make_cyclic(2), z4 = make_cyclic(4);
    GroupHom pi(z4, z2, {0, 1, 0, 1});
    ModulePtr neg = GModule::with_matrices(z2, CoefficientGroup::finite_abelian({3}),
                                           {{Rat(1)}, {Rat(-1)}});
    ModulePtr pulled = neg->pullback(pi);
    CHECK(pulled->group() == z4);
    CHECK(pulled->act(3, Value{Rat(1)})[0] == Rat(2));
    CHECK(pulled->act(2, Value{Rat(1)})[0] == Rat(1));
}
