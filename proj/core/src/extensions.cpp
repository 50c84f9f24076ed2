#include "cocyclelab/extensions.hpp"

#include <functional>

#include "cocyclelab/cohomology.hpp"
#include "cocyclelab/errors.hpp"

namespace cocyclelab {

namespace {

void require_degree_two_finite(const Cochain& psi) {
    if (psi.degree() != 2) throw UnsupportedDegree("extensions come from degree-2 cochains");
    if (!psi.module()->coeffs()->finite())
        throw WrongCoefficientKind("extensions need finite coefficients");
}

Cochain normalizing_lambda(const Cochain& psi) {
    Cochain lam(psi.module(), 1);
    Value c = psi.value_at(0); // psi(e,e)
    for (std::size_t g = 0; g < lam.table_size(); ++g) lam.set(g, c);
    return lam;
}

} // namespace

std::vector<int> ExtensionPresentation::canonical_section() const {
    int n = module->group()->order();
    std::vector<int> s(n);
    for (int g = 0; g < n; ++g) s[g] = g;
    return s;
}

std::vector<int> extension_table(const Cochain& psi) {
    require_degree_two_finite(psi);
    const GModule& m = *psi.module();
    const CoefficientGroup& A = *m.coeffs();
    const FiniteGroup& G = *m.group();
    int n = G.order();
    long long cnt = A.count();
    long long N = cnt * n;
    check_capacity((std::size_t)N * (std::size_t)N, "extension multiplication table");

    Cochain norm = psi - coboundary(normalizing_lambda(psi));
    std::vector<int> table((std::size_t)N * N);
    for (long long a = 0; a < cnt; ++a) {
        Value va = A.element(a);
        for (int g = 0; g < n; ++g) {
            for (long long b = 0; b < cnt; ++b) {
                Value tgb = m.act(g, A.element(b));
                for (int h = 0; h < n; ++h) {
                    Value sum = A.add(A.add(va, tgb), norm.value_at((std::size_t)g * n + h));
                    long long c = A.index_of(sum);
                    table[(std::size_t)(a * n + g) * N + (b * n + h)] =
                        (int)(c * n + G.mul(g, h));
                }
            }
        }
    }
    return table;
}

std::optional<std::array<int, 3>> associativity_failure(const Cochain& psi) {
    require_degree_two_finite(psi);
    const FiniteGroup& G = *psi.module()->group();
    int n = G.order();
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (int k = 0; k < n; ++k) {
                std::array<int, 3> t{g, h, k};
                if (!psi.module()->coeffs()->is_zero(coboundary_at(psi, t)))
                    return t;
            }
    return std::nullopt;
}

ExtensionPresentation extension_from_cocycle(const Cochain& psi) {
    require_degree_two_finite(psi);
    if (!is_cocycle(psi)) throw NotACocycle("the extension table would not be associative");

    const GModule& m = *psi.module();
    const CoefficientGroup& A = *m.coeffs();
    int n = m.group()->order();
    long long cnt = A.count();
    long long N = cnt * n;

    Cochain lam = normalizing_lambda(psi);
    Cochain norm = psi - coboundary(lam);
    auto extension = std::make_shared<const FiniteGroup>(
        (int)N, extension_table(psi), "extension of " + A.describe());

    std::vector<int> embed(cnt), project(N);
    for (long long a = 0; a < cnt; ++a) embed[a] = (int)(a * n);
    for (long long e = 0; e < N; ++e) project[e] = (int)(e % n);

    return ExtensionPresentation{std::move(extension), psi.module(), std::move(embed),
                                 std::move(project), psi, std::move(norm), std::move(lam)};
}

FactorSetResult cocycle_from_extension(const ModulePtr& module, const GroupPtr& extension,
                                       const std::vector<int>& embed,
                                       const std::vector<int>& project,
                                       const std::vector<int>& section) {
    const CoefficientGroup& A = *module->coeffs();
    const FiniteGroup& G = *module->group();
    const FiniteGroup& E = *extension;
    if (!A.finite()) throw WrongCoefficientKind("extensions need finite coefficients");
    long long cnt = A.count();
    int n = G.order();
    long long N = (long long)E.order();
    if (N != cnt * n) throw ModuleMismatch("|E| must equal |A| * |G|");
    if ((long long)embed.size() != cnt || (long long)project.size() != N)
        throw ParseError("embedding/projection tables have the wrong size");

    // embed is an injective homomorphism from the additive group of A
    std::vector<long long> pre(N, -1);
    for (long long a = 0; a < cnt; ++a) {
        if (embed[a] < 0 || embed[a] >= N || pre[embed[a]] >= 0)
            throw KernelMismatch("embedding is not injective");
        pre[embed[a]] = a;
    }
    for (long long x = 0; x < cnt; ++x)
        for (long long y = 0; y < cnt; ++y)
            if (E.mul(embed[x], embed[y]) !=
                embed[A.index_of(A.add(A.element(x), A.element(y)))])
                throw KernelMismatch("embedding is not a homomorphism");

    // project is a surjective homomorphism with kernel exactly the image
    std::vector<bool> hit(n, false);
    for (long long u = 0; u < N; ++u) {
        if (project[u] < 0 || project[u] >= n) throw ParseError("projection value out of range");
        hit[project[u]] = true;
        if ((project[u] == 0) != (pre[u] >= 0))
            throw KernelMismatch("projection kernel differs from the embedding image");
    }
    for (int g = 0; g < n; ++g)
        if (!hit[g]) throw KernelMismatch("projection is not surjective");
    for (long long u = 0; u < N; ++u)
        for (long long v = 0; v < N; ++v)
            if (project[E.mul((int)u, (int)v)] != G.mul(project[u], project[v]))
                throw KernelMismatch("projection is not a homomorphism");

    if ((int)section.size() != n) throw SectionInvalid("section table has the wrong size");
    for (int g = 0; g < n; ++g)
        if (section[g] < 0 || section[g] >= N || project[section[g]] != g)
            throw SectionInvalid("section is not a right inverse of the projection");
    if (section[0] != 0) throw SectionInvalid("section must send the identity to the identity");

    // the module's action must be conjugation by the section
    for (int g = 0; g < n; ++g)
        for (long long a = 0; a < cnt; ++a) {
            int conj = E.mul(E.mul(section[g], embed[a]), E.inv(section[g]));
            if (conj != embed[A.index_of(module->act(g, A.element(a)))])
                throw ModuleMismatch("the action does not match conjugation in the extension");
        }

    Cochain psi(module, 2);
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            int t = E.mul(E.mul(section[g], section[h]), E.inv(section[G.mul(g, h)]));
            if (pre[t] < 0)
                throw KernelMismatch("section defect left the embedding image");
            psi.set((std::size_t)g * n + h, A.element(pre[t]));
        }
    if (!is_cocycle(psi)) throw InternalError("extracted factor set is not a cocycle");

    // explicit isomorphism from the rebuilt extension onto E
    ExtensionPresentation rebuilt = extension_from_cocycle(psi);
    std::vector<int> iso(N);
    std::vector<bool> seen(N, false);
    for (long long a = 0; a < cnt; ++a)
        for (int g = 0; g < n; ++g) {
            int img = E.mul(embed[a], section[g]);
            iso[a * n + g] = img;
            if (seen[img]) throw InternalError("rebuilt-extension map is not injective");
            seen[img] = true;
        }
    const FiniteGroup& E2 = *rebuilt.extension;
    for (long long u = 0; u < N; ++u) {
        for (long long v = 0; v < N; ++v)
            if (iso[E2.mul((int)u, (int)v)] != E.mul(iso[u], iso[v]))
                throw InternalError("rebuilt-extension map is not a homomorphism");
        if (project[iso[u]] != rebuilt.project[u])
            throw InternalError("rebuilt-extension map does not commute with the projection");
    }
    for (long long a = 0; a < cnt; ++a)
        if (iso[rebuilt.embed[a]] != embed[a])
            throw InternalError("rebuilt-extension map does not commute with the embedding");

    return FactorSetResult{std::move(psi), std::move(iso)};
}

FactorSetResult cocycle_from_extension(const ExtensionPresentation& ep,
                                       const std::vector<int>& section) {
    return cocycle_from_extension(ep.module, ep.extension, ep.embed, ep.project, section);
}

EquivalenceResult extensions_equivalent(const Cochain& psi1, const Cochain& psi2) {
    if (psi1.module() != psi2.module() || psi1.degree() != 2 || psi2.degree() != 2)
        throw ModuleMismatch("equivalence needs two degree-2 cochains over one module");
    if (!is_cocycle(psi1) || !is_cocycle(psi2))
        throw NotACocycle("equivalence is defined for cocycles");
    CohomologyGroup h = cohomology(psi1.module(), 2);
    EquivalenceResult res;
    res.witness = is_coboundary(h, psi1 - psi2);
    res.equivalent = res.witness.has_value();
    return res;
}

bool has_homomorphic_section(const ExtensionPresentation& ep) {
    const FiniteGroup& E = *ep.extension;
    const FiniteGroup& G = *ep.module->group();
    int n = G.order();
    std::vector<std::vector<int>> fiber(n);
    for (int u = 0; u < E.order(); ++u) fiber[ep.project[u]].push_back(u);

    std::vector<int> s(n, -1);
    s[0] = 0;
    std::function<bool(int)> rec = [&](int g) -> bool {
        if (g == n) return true;
        for (int cand : fiber[g]) {
            s[g] = cand;
            bool ok = true;
            for (int a = 0; a < n && ok; ++a) {
                if (s[a] < 0) continue;
                for (int b = 0; b < n && ok; ++b) {
                    if (s[b] < 0) continue;
                    int p = G.mul(a, b);
                    if (s[p] >= 0 && E.mul(s[a], s[b]) != s[p]) ok = false;
                }
            }
            if (ok && rec(g + 1)) return true;
            s[g] = -1;
        }
        return false;
    };
    return rec(1);
}

} // namespace cocyclelab
