#ifndef COCYCLELAB_COHOMOLOGY_HPP
#define COCYCLELAB_COHOMOLOGY_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cocyclelab/cochain.hpp"
#include "cocyclelab/fgabelian.hpp"
#include "cocyclelab/matrix.hpp"

namespace cocyclelab {

struct CohomologyData;

/// H^p(G, A) together with the retained factorizations needed to answer
/// class_of and is_coboundary queries afterwards.
struct CohomologyGroup {
    ModulePtr module;
    int degree = 0;
    /// Divisibility chain of finite factors (> 1), then one 0 per Z factor.
    /// Empty for the trivial group.  Unused when `rational` is set.
    std::vector<BigInt> invariant_factors;
    bool rational = false; // RationalVector coefficients: the answer is a rank
    int rank = 0;
    std::vector<Cochain> generators; // one cocycle per invariant factor

    std::shared_ptr<const CohomologyData> data;

    /// Group order; 0 when infinite.
    BigInt order() const;
    bool is_trivial() const;
    FgPresentation presentation() const;
    std::string describe() const;
};

/// Exact H^p.  Discrete kinds go through integer SNF of the coboundary
/// matrix; RationalVector reports a rank; RationalTorus with p >= 1 is
/// computed one degree up with Z^d coefficients and transported back through
/// the connecting construction; RationalTorus at p = 0 restricts to the
/// finitely generated sub-presentation of elements whose denominator divides
/// exp(G) * torus_denominator_scale.
CohomologyGroup cohomology(const ModulePtr& m, int degree,
                           long long torus_denominator_scale = 1);

/// Coordinates c with psi - sum c_i gen_i a coboundary; entries are integers
/// reduced modulo the invariant factors (rationals for RationalVector
/// coefficients).  Throws NotACocycle.
std::vector<Rat> class_of(const CohomologyGroup& h, const Cochain& psi);

/// A witness lambda with d(lambda) = psi, or nullopt when the class of psi is
/// nonzero.  Degree 0: psi is a coboundary iff it is zero (the witness is the
/// empty degree-0 statement; a zero cochain of degree 0 is returned).
std::optional<Cochain> is_coboundary(const CohomologyGroup& h, const Cochain& psi);

/// Pullback along a surjection pi : G' -> G; the result lives over
/// module->pullback(pi) (or the supplied equivalent target module).
Cochain inflate(const GroupHom& pi, const Cochain& psi);
Cochain inflate(const GroupHom& pi, const Cochain& psi, const ModulePtr& target);

/// Matrix of d : C^p -> C^(p+1) against the standard basis, for modules whose
/// action matrices are integral / rational.
IntMat coboundary_matrix(const ModulePtr& m, int degree);
RatMat coboundary_matrix_q(const ModulePtr& m, int degree);

/// Relation moduli of the flat coordinate presentation of a discrete module
/// (0 per free coordinate); throws WrongCoefficientKind otherwise.
std::vector<BigInt> presentation_moduli(const GModule& m);

struct BruteForceResult {
    BigInt z_count;  // |Z^p|
    BigInt b_count;  // |B^p|
    BigInt order;    // |H^p|
    std::vector<BigInt> invariant_factors; // ascending divisibility chain
};

/// Independent oracle: enumerate cocycles (depth-first with constraints
/// checked as soon as their last-read cell is assigned) and all coboundaries,
/// then identify the quotient's isomorphism type from element orders.
/// `limit` bounds the nominal enumeration sizes |A|^(cells).
BruteForceResult brute_force_cohomology(const ModulePtr& m, int degree, const BigInt& limit);

} // namespace cocyclelab

#endif
