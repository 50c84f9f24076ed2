#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cocyclelab/errors.hpp"
#include "cocyclelab/extensions.hpp"

using namespace cocyclelab;

namespace {

ModulePtr z2_mod2() {
    return GModule::trivial(make_cyclic(2), CoefficientGroup::finite_abelian({2}));
}

Cochain carry2(const ModulePtr& m) {
    Cochain c(m, 2);
    c.set(3, Value{Rat(1)}); // (1,1) -> 1
    return c;
}

Cochain random_cochain(const ModulePtr& m, int degree, std::mt19937& rng) {
    const CoefficientGroup& A = *m->coeffs();
    Cochain c(m, degree);
    for (std::size_t cell = 0; cell < c.table_size(); ++cell)
        c.set(cell, A.element((long long)(rng() % (unsigned long long)A.count())));
    return c;
}

} // namespace

TEST_CASE("the carry cocycle builds the cyclic extension of order 4") {
    ModulePtr m = z2_mod2();
    ExtensionPresentation ep = extension_from_cocycle(carry2(m));
    const FiniteGroup& E = *ep.extension;
    CHECK(E.order() == 4);
    bool cyclic = false;
    for (int e = 0; e < 4; ++e)
        if (E.element_order(e) == 4) cyclic = true;
    CHECK(cyclic);
    // embed lands in the kernel of project, and project is onto G
    for (int a = 0; a < 2; ++a) CHECK(ep.project[ep.embed[a]] == 0);
    std::vector<int> hit(2, 0);
    for (int e = 0; e < 4; ++e) hit[ep.project[e]] = 1;
    CHECK(hit == std::vector<int>{1, 1});
    CHECK_FALSE(has_homomorphic_section(ep));
}

TEST_CASE("the zero cocycle builds the split extension") {
    ModulePtr m = z2_mod2();
    ExtensionPresentation ep = extension_from_cocycle(Cochain(m, 2));
    CHECK(ep.extension->order() == 4);
    CHECK(ep.extension->exponent() == 2); // Z/2 x Z/2
    CHECK(has_homomorphic_section(ep));
}

TEST_CASE("a nontrivial action builds a nonabelian extension") {
    GroupPtr z2 = make_cyclic(2);
    ModulePtr neg = GModule::with_matrices(z2, CoefficientGroup::finite_abelian({3}),
                                           {{Rat(1)}, {Rat(-1)}});
    ExtensionPresentation ep = extension_from_cocycle(Cochain(neg, 2));
    CHECK(ep.extension->order() == 6);
    CHECK_FALSE(ep.extension->is_abelian()); // S3
    CHECK(has_homomorphic_section(ep));
}

TEST_CASE("associativity of the table is exactly the cocycle condition") {
    ModulePtr m = GModule::trivial(make_cyclic(3), CoefficientGroup::finite_abelian({3}));
    std::mt19937 rng(41);
    int cocycles = 0, failures = 0;
    for (int t = 0; t < 60; ++t) {
        Cochain psi = random_cochain(m, 2, rng);
        auto fail = associativity_failure(psi);
        CHECK(fail.has_value() != is_cocycle(psi));
        if (fail) {
            ++failures;
            // the reported triple indeed breaks associativity
            std::array<int, 3> tr = *fail;
            Value d = coboundary_at(psi, std::span<const int>(tr.data(), 3));
            CHECK_FALSE(m->coeffs()->is_zero(d));
            CHECK_THROWS_AS(extension_from_cocycle(psi), NotACocycle);
        } else {
            ++cocycles;
            CHECK(extension_from_cocycle(psi).extension->order() == 27);
        }
    }
    CHECK(failures > 0); // random tables are rarely all cocycles
    // coboundaries always pass
    for (int t = 0; t < 5; ++t)
        CHECK_FALSE(associativity_failure(coboundary(random_cochain(m, 1, rng))));
}

TEST_CASE("normalization only shifts by a coboundary") {
    ModulePtr m = GModule::trivial(make_cyclic(2), CoefficientGroup::finite_abelian({4}));
    std::mt19937 rng(43);
    for (int t = 0; t < 10; ++t) {
        Cochain psi = coboundary(random_cochain(m, 1, rng));
        ExtensionPresentation ep = extension_from_cocycle(psi);
        CHECK(ep.normalized == psi - coboundary(ep.normalizer));
        CHECK(ep.normalized.value_at(0) == m->coeffs()->zero());
        CHECK(is_cocycle(ep.normalized));
    }
}

TEST_CASE("factor sets round-trip up to equivalence") {
    ModulePtr m = z2_mod2();
    std::mt19937 rng(47);
    std::vector<Cochain> inputs = {carry2(m), Cochain(m, 2),
                                   carry2(m) + coboundary(random_cochain(m, 1, rng))};
    for (const Cochain& psi : inputs) {
        ExtensionPresentation ep = extension_from_cocycle(psi);
        FactorSetResult fs = cocycle_from_extension(ep, ep.canonical_section());
        EquivalenceResult eq = extensions_equivalent(fs.cocycle, psi);
        CHECK(eq.equivalent);
        REQUIRE(eq.witness.has_value());
        CHECK(coboundary(*eq.witness) == fs.cocycle - psi);
    }
}

TEST_CASE("the extracted class does not depend on the section") {
    ModulePtr m = z2_mod2();
    ExtensionPresentation ep = extension_from_cocycle(carry2(m));
    std::vector<int> s1 = ep.canonical_section();
    // the other transversal: replace the lift of 1 by its kernel translate
    std::vector<int> s2 = s1;
    s2[1] = ep.extension->mul(ep.embed[1], s1[1]);
    FactorSetResult f1 = cocycle_from_extension(ep, s1);
    FactorSetResult f2 = cocycle_from_extension(ep, s2);
    CHECK(extensions_equivalent(f1.cocycle, f2.cocycle).equivalent);
}

TEST_CASE("equivalence distinguishes the two classes over Z/2") {
    ModulePtr m = z2_mod2();
    EquivalenceResult eq = extensions_equivalent(carry2(m), Cochain(m, 2));
    CHECK_FALSE(eq.equivalent);
    CHECK_FALSE(eq.witness.has_value());
    CHECK(extensions_equivalent(carry2(m), carry2(m)).equivalent);
}

TEST_CASE("extraction validates its inputs") {
    ModulePtr m = z2_mod2();
    ExtensionPresentation ep = extension_from_cocycle(carry2(m));
    std::vector<int> bad = ep.canonical_section();
    bad[1] = bad[0]; // not a right inverse of project
    CHECK_THROWS_AS(cocycle_from_extension(ep, bad), SectionInvalid);
    CHECK_THROWS_AS(cocycle_from_extension(ep, std::vector<int>{0}), SectionInvalid);
    // embed that misses the kernel
    std::vector<int> wrong_embed = {0, ep.canonical_section()[1]};
    CHECK_THROWS_AS(cocycle_from_extension(m, ep.extension, wrong_embed, ep.project,
                                           ep.canonical_section()),
                    KernelMismatch);
}
