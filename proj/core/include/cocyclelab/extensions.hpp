#ifndef COCYCLELAB_EXTENSIONS_HPP
#define COCYCLELAB_EXTENSIONS_HPP

#include <array>
#include <optional>
#include <vector>

#include "cocyclelab/cochain.hpp"

namespace cocyclelab {

/// A group extension E of the coefficient group A by G, presented on the
/// index set A x G (lexicographic, so (0,e) is index 0 and the identity).
struct ExtensionPresentation {
    GroupPtr extension;        // E with mul (a,g)(b,h) = (a + T^g b + psi'(g,h), gh)
    ModulePtr module;          // the coefficients A with their G-action
    std::vector<int> embed;    // a -> index of (a, e); image = kernel of project
    std::vector<int> project;  // index of (a,g) -> g
    Cochain cocycle;           // the originating 2-cocycle
    Cochain normalized;        // psi' = cocycle - d(normalizer); psi'(e,.) = psi'(.,e) = 0
    Cochain normalizer;        // constant 1-cochain with value cocycle(e,e)

    /// The canonical section g -> (0, g).
    std::vector<int> canonical_section() const;
};

/// Build the extension classified by a degree-2 cocycle over finite
/// coefficients.  Throws NotACocycle when the input is not a cocycle; use
/// associativity_failure to obtain the failing triple in that case.
ExtensionPresentation extension_from_cocycle(const Cochain& psi);

/// The would-be extension multiplication table of a degree-2 cochain, with no
/// group validation (row-major |A||G| x |A||G| indices).
std::vector<int> extension_table(const Cochain& psi);

/// First (g,h,k) in lexicographic order where the extension table fails
/// associativity, which happens exactly where d(psi) is nonzero; nullopt iff
/// psi is a 2-cocycle.
std::optional<std::array<int, 3>> associativity_failure(const Cochain& psi);

struct FactorSetResult {
    Cochain cocycle;      // the factor set i^{-1}(s(g) s(h) s(gh)^{-1})
    std::vector<int> iso; // (a,g) index in the rebuilt extension -> index in E
};

/// Extract the factor set of an extension along a section (project[section[g]]
/// = g, section[e] = identity).  The module supplies the coefficient
/// identification and must match conjugation in E.  Also returns an explicit
/// isomorphism from the extension rebuilt out of the factor set onto E,
/// commuting with embed and project.
FactorSetResult cocycle_from_extension(const ModulePtr& module, const GroupPtr& extension,
                                       const std::vector<int>& embed,
                                       const std::vector<int>& project,
                                       const std::vector<int>& section);
FactorSetResult cocycle_from_extension(const ExtensionPresentation& ep,
                                       const std::vector<int>& section);

struct EquivalenceResult {
    bool equivalent = false;
    std::optional<Cochain> witness; // lambda with psi1 - psi2 = d(lambda)
};

/// Whether two degree-2 cocycles over the same module classify equivalent
/// extensions, i.e. differ by a coboundary.
EquivalenceResult extensions_equivalent(const Cochain& psi1, const Cochain& psi2);

/// Exhaustive search for a homomorphic (splitting) section of the extension.
bool has_homomorphic_section(const ExtensionPresentation& ep);

} // namespace cocyclelab

#endif
