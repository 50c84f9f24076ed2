#ifndef COCYCLELAB_FGABELIAN_HPP
#define COCYCLELAB_FGABELIAN_HPP

#include <optional>
#include <string>
#include <vector>

#include "cocyclelab/matrix.hpp"

namespace cocyclelab {

/// A finitely generated abelian group presented on k coordinates as
/// Z^k / (m_1 e_1, ..., m_k e_k) with m_i >= 0 and m_i = 0 meaning a free
/// coordinate.
struct FgPresentation {
    std::vector<BigInt> moduli;

    std::size_t coords() const { return moduli.size(); }
    static FgPresentation free_of_rank(std::size_t k) {
        return {std::vector<BigInt>(k, BigInt(0))};
    }
    bool is_trivial_element(const std::vector<BigInt>& v) const;
    std::vector<BigInt> reduce(std::vector<BigInt> v) const;
};

/// Does v lie in the subgroup generated by the columns of `gens`
/// (taken modulo the presentation)?  Returns one coefficient vector if so.
std::optional<std::vector<BigInt>> solve_in_subgroup(const IntMat& gens,
                                                     const FgPresentation& pres,
                                                     const std::vector<BigInt>& v);

/// Generators of the kernel of the homomorphism source -> target whose matrix
/// on coordinates is `map` (columns indexed by source coordinates).  The map
/// must be well defined; the returned vectors generate the kernel subgroup of
/// the source (reduced modulo the source presentation, zero columns dropped).
std::vector<std::vector<BigInt>> kernel_generators(const IntMat& map,
                                                   const FgPresentation& source,
                                                   const FgPresentation& target);

/// Invariant factors of Z^ambient / (columns of gens): the nontrivial finite
/// factors in a divisibility chain, followed by one 0 per free factor.
std::vector<BigInt> quotient_invariants(const IntMat& gens, std::size_t ambient);

std::string invariants_to_string(const std::vector<BigInt>& factors);

} // namespace cocyclelab

#endif
