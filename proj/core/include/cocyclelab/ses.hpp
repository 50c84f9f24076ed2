#ifndef COCYCLELAB_SES_HPP
#define COCYCLELAB_SES_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cocyclelab/cohomology.hpp"

namespace cocyclelab {

/// A short exact sequence of coefficient modules 0 -> A -> B -> C -> 0 over
/// one group, with a chosen set-theoretic section s : C -> B of j.
struct ModuleSES {
    ModulePtr a, b, c;
    ModuleHom i, j;
    std::function<Value(const Value&)> section;
    std::string family; // "ZxmZ_Zm", "Z_Q_QmodZ" or "explicit"
    long long multiplier = 0; // m for the ZxmZ_Zm family

    /// Same sequence with a different section (for section-independence tests).
    ModuleSES with_section(std::function<Value(const Value&)> s) const;
};

/// Z^d --(x m)--> Z^d --> (Z/m)^d over zmod's group and action; the section
/// picks the smallest non-negative representative.
ModuleSES make_ses_zxm(const ModulePtr& zmod, long long m);

/// Z^d -> Q^d -> (Q/Z)^d with the same (integral) action; the section reads
/// the canonical torus representative in [0,1) as a rational.
ModuleSES make_ses_z_q_qmodz(const ModulePtr& zmod);

/// Explicit maps between finite modules; i/j given as integer matrices.
/// Everything (injectivity, surjectivity, image = kernel) is verified
/// exhaustively; the canonical section maps each C element to the first B
/// element (in enumeration order) over it.
ModuleSES make_ses_explicit(const ModulePtr& a, const ModulePtr& b, const ModulePtr& c,
                            std::vector<Rat> i_matrix, std::vector<Rat> j_matrix);

/// Connecting homomorphism: lift psi through the section, take d, pull back
/// through i.  The result is an A-valued (p+1)-cocycle.
Cochain connecting_map(const ModuleSES& s, const Cochain& psi);

struct LesSlot {
    int degree;
    std::string at;      // e.g. "H^1(B)"
    bool exact;
    std::string detail;  // counterexample coordinates on failure
};

struct LesReport {
    std::vector<LesSlot> slots;
    bool all_exact = true;
};

/// Exactness of ... -> H^p(A) -> H^p(B) -> H^p(C) -> H^(p+1)(A) -> ... for
/// all slots up to degree p_max, including injectivity of H^0(A) -> H^0(B).
/// For the Z_Q_QmodZ family the degree-0 slots are checked on the denominator
/// |G| * denominator_scale sub-presentation (1/N)Z^d -> ((1/N)Z/Z)^d, where
/// all desk-scale fixed-point phenomena live.
LesReport les_check(const ModuleSES& s, int p_max, long long denominator_scale = 1);

} // namespace cocyclelab

#endif
