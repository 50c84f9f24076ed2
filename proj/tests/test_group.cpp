#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cocyclelab/errors.hpp"
#include "cocyclelab/group.hpp"

using namespace cocyclelab;

TEST_CASE("cyclic groups") {
    GroupPtr z6 = make_cyclic(6);
    CHECK(z6->order() == 6);
    CHECK(z6->mul(4, 5) == 3);
    CHECK(z6->inv(2) == 4);
    CHECK(z6->is_abelian());
    CHECK(z6->element_order(2) == 3);
    CHECK(z6->exponent() == 6);
}

TEST_CASE("products and S3") {
    GroupPtr v4 = make_product(make_cyclic(2), make_cyclic(2));
    CHECK(v4->order() == 4);
    CHECK(v4->exponent() == 2);
    CHECK(v4->is_abelian());

    GroupPtr s3 = make_s3();
    CHECK(s3->order() == 6);
    CHECK_FALSE(s3->is_abelian());
    CHECK(s3->exponent() == 6);
    int order2 = 0, order3 = 0;
    for (int g = 1; g < 6; ++g) {
        if (s3->element_order(g) == 2) ++order2;
        if (s3->element_order(g) == 3) ++order3;
    }
    CHECK(order2 == 3);
    CHECK(order3 == 2);
}

TEST_CASE("invalid tables are rejected") {
    // non-associative magma on 3 points
    CHECK_THROWS_AS(FiniteGroup(3, {0, 1, 2, 1, 2, 0, 2, 1, 0}), GroupAxiomError);
    // identity not at index 0
    CHECK_THROWS_AS(FiniteGroup(2, {1, 0, 0, 1}), GroupAxiomError);
    // wrong table size
    CHECK_THROWS_AS(FiniteGroup(2, {0, 1, 1}), GroupAxiomError);
}

TEST_CASE("homomorphisms are validated") {
    GroupPtr z4 = make_cyclic(4), z2 = make_cyclic(2);
    GroupHom pi = make_quotient_hom(4, 2);
    CHECK(pi.surjective());
    CHECK_FALSE(pi.injective());
    CHECK(pi(3) == 1);
    CHECK_THROWS_AS(GroupHom(z4, z2, std::vector<int>{0, 1, 1, 0}), GroupAxiomError);
    GroupHom id = GroupHom::identity(z4);
    CHECK(id.injective());
    GroupHom comp = GroupHom::compose(pi, id);
    CHECK(comp(3) == 1);
}

TEST_CASE("towers compose steps") {
    GroupPtr z2 = make_cyclic(2), z4 = make_cyclic(4), z8 = make_cyclic(8);
    GroupHom s0(z4, z2, {0, 1, 0, 1});
    GroupHom s1(z8, z4, {0, 1, 2, 3, 0, 1, 2, 3});
    Tower t({z2, z4, z8}, {s0, s1});
    CHECK(t.size() == 3);
    GroupHom full = t.composite(2, 0);
    for (int g = 0; g < 8; ++g) CHECK(full(g) == g % 2);
    GroupHom self = t.composite(1, 1);
    for (int g = 0; g < 4; ++g) CHECK(self(g) == g);
}
