#ifndef COCYCLELAB_COEFF_HPP
#define COCYCLELAB_COEFF_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cocyclelab/group.hpp"
#include "cocyclelab/rat.hpp"

namespace cocyclelab {

class GModule;
using ModulePtr = std::shared_ptr<const GModule>;

/// A coefficient value, flattened to exact rationals.  The interpretation of
/// the coordinates (integer, residue, torus representative, or |G| blocks of a
/// base value) is owned by the CoefficientGroup that produced it.
using Value = std::vector<Rat>;

enum class CoeffKind {
    FreeAbelian,     // Z^d, discrete metric
    FiniteAbelian,   // Z/m1 x ... x Z/md with m1 | m2 | ... | md, discrete metric
    RationalVector,  // Q^d, sup-norm
    RationalTorus,   // (Q/Z)^d, sup of per-coordinate circle distances
    Induced,         // C(G,A) for a base module (G,A), metric rho_0
    Quotient,        // C(G,A)/iota(A), elements stored as canonical lifts
};

class CoefficientGroup;
using CoeffPtr = std::shared_ptr<const CoefficientGroup>;

class CoefficientGroup : public std::enable_shared_from_this<CoefficientGroup> {
public:
    static CoeffPtr free_abelian(int rank);
    static CoeffPtr finite_abelian(std::vector<long long> factors);
    static CoeffPtr rational_vector(int dim);
    static CoeffPtr rational_torus(int dim);
    static CoeffPtr induced(ModulePtr base);
    static CoeffPtr quotient(ModulePtr base);

    CoeffKind kind() const { return kind_; }
    int dim() const { return dim_; }
    const std::vector<long long>& factors() const { return factors_; }
    /// Base module of an Induced or Quotient coefficient group.
    const ModulePtr& base() const { return base_; }

    bool discrete_metric() const {
        return kind_ == CoeffKind::FreeAbelian || kind_ == CoeffKind::FiniteAbelian;
    }
    bool finite() const;
    /// Number of elements for finite kinds.
    long long count() const;
    Value element(long long index) const;
    long long index_of(const Value& v) const;

    Value zero() const { return Value(dim_, Rat(0)); }
    void normalize(Value& v) const;
    Value add(const Value& a, const Value& b) const;
    Value sub(const Value& a, const Value& b) const;
    Value neg(const Value& a) const;
    Value scale(long long k, const Value& a) const;
    bool eq(const Value& a, const Value& b) const;
    bool is_zero(const Value& a) const;
    /// Translation-invariant metric, as distance to zero.
    Rat rho(const Value& a) const;
    /// Deterministic total order (lexicographic on normalized coordinates).
    bool less(const Value& a, const Value& b) const;

    std::string describe() const;

private:
    friend class GModule;
    CoefficientGroup() = default;

    CoeffKind kind_ = CoeffKind::FreeAbelian;
    int dim_ = 0;
    std::vector<long long> factors_;
    ModulePtr base_;
};

enum class ActionKind { Trivial, Matrices, Diagonal };

/// A coefficient group together with a G-action by automorphisms.
/// Actions are validated exhaustively at construction (identity, action law,
/// compatibility with the relations); the isometric flag records whether the
/// action provably preserves the metric.
class GModule : public std::enable_shared_from_this<GModule> {
public:
    /// Trivial action.
    static ModulePtr trivial(GroupPtr g, CoeffPtr c);
    /// Action by one matrix per group element, row-major dim x dim.
    static ModulePtr with_matrices(GroupPtr g, CoeffPtr c,
                                   std::vector<std::vector<Rat>> matrices);
    /// The induced module C(G,A) with the diagonal action.
    static ModulePtr induced_of(const ModulePtr& base);
    /// The quotient module C(G,A)/iota(A).
    static ModulePtr quotient_of(const ModulePtr& base);

    const GroupPtr& group() const { return group_; }
    const CoeffPtr& coeffs() const { return coeffs_; }
    ActionKind action_kind() const { return action_; }
    bool trivial_action() const;
    bool isometric() const { return isometric_; }
    const std::vector<Rat>& action_matrix(int g) const { return matrices_[g]; }

    Value act(int g, const Value& v) const;

    /// Pull the module back along a homomorphism into its group.
    ModulePtr pullback(const GroupHom& pi) const;

    std::string describe() const;

private:
    GModule() = default;
    void validate_matrices() const;
    void compute_isometric();

    GroupPtr group_;
    CoeffPtr coeffs_;
    ActionKind action_ = ActionKind::Trivial;
    std::vector<std::vector<Rat>> matrices_;
    bool isometric_ = true;
};

/// iota : A -> C(G,A), the constant-maps embedding.
Value embed_constants(const Value& a, const GModule& induced_module);

/// Whether an induced value is a constant map; returns the constant.
std::optional<Value> constant_value_of(const Value& f, const GModule& induced_module);

/// Canonical coset representative: among f - iota(a), minimize rho_0, break
/// ties lexicographically.  Candidate constants are the values attained by f
/// (plus zero); for discrete metrics this attains the true minimum (subtract
/// the modal value).  `base_module` is the (G,A) the carrier maps into.
Value select_lift(const Value& f, const GModule& base_module);

/// Exact rho_0 of a map with the given pointwise distances to zero, under the
/// uniform probability on the index set.
Rat rho0_from_distances(std::vector<Rat> distances);

/// An additive, action-equivariant map between coefficient modules over the
/// same group, given by an integer or rational matrix on the presentations.
class ModuleHom {
public:
    ModuleHom(ModulePtr source, ModulePtr target, std::vector<Rat> matrix);

    const ModulePtr& source() const { return source_; }
    const ModulePtr& target() const { return target_; }
    const std::vector<Rat>& matrix() const { return matrix_; }
    Value apply(const Value& v) const;

private:
    ModulePtr source_, target_;
    std::vector<Rat> matrix_; // target.dim x source.dim, row-major
};

} // namespace cocyclelab

#endif
