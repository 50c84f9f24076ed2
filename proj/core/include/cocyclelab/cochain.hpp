#ifndef COCYCLELAB_COCHAIN_HPP
#define COCYCLELAB_COCHAIN_HPP

#include <span>
#include <vector>

#include "cocyclelab/coeff.hpp"
#include "cocyclelab/config.hpp"

namespace cocyclelab {

/// A degree-p cochain G^p -> A, stored densely in row-major lexicographic
/// element order: index = sum_i g_i * n^(p-i).  Degree 0 is a single A-value.
class Cochain {
public:
    Cochain(ModulePtr module, int degree);
    Cochain(ModulePtr module, int degree, std::vector<Rat> flat_values);

    const ModulePtr& module() const { return module_; }
    int degree() const { return degree_; }
    std::size_t table_size() const { return size_; }
    const std::vector<Rat>& flat() const { return values_; }
    std::vector<Rat>& flat() { return values_; }

    std::span<const Rat> at(std::size_t idx) const {
        return {values_.data() + idx * dim_, (std::size_t)dim_};
    }
    Value value_at(std::size_t idx) const {
        auto s = at(idx);
        return Value(s.begin(), s.end());
    }
    void set(std::size_t idx, const Value& v);

    std::size_t index_of_tuple(std::span<const int> tuple) const;
    std::vector<int> tuple_of_index(std::size_t idx) const;

    bool entry_is_zero(std::size_t idx) const {
        auto s = at(idx);
        for (const Rat& x : s)
            if (!x.is_zero()) return false;
        return true;
    }

    Cochain operator+(const Cochain& o) const;
    Cochain operator-(const Cochain& o) const;
    Cochain operator-() const;
    Cochain scaled(long long k) const;
    bool operator==(const Cochain& o) const;
    bool is_zero() const;

    /// Reinterpret the table over another module with the same group and the
    /// same flat coefficient dimension (induced <-> quotient transport).
    Cochain reinterpret(ModulePtr other) const;

    /// Map all values through a module homomorphism.
    Cochain mapped(const ModuleHom& hom) const;

private:
    void check_compatible(const Cochain& o) const;

    ModulePtr module_;
    int degree_;
    std::size_t size_; // |G|^degree
    int dim_;
    std::vector<Rat> values_;
};

/// Inhomogeneous bar-resolution coboundary d : C^p -> C^(p+1).
Cochain coboundary(const Cochain& phi);

/// d(phi) evaluated at a single (p+1)-tuple.
Value coboundary_at(const Cochain& phi, std::span<const int> tuple);

/// Exact kernel test.  Dense evaluation when |G|^(p+1) fits the capacity
/// limit; otherwise a support-driven check that only visits tuples reading a
/// nonzero entry (sound and complete, since d(phi) != 0 at a tuple forces
/// some term of the formula to read a nonzero cell).
bool is_cocycle(const Cochain& phi);

/// rho_0(0, phi): exact infimum over the breakpoint set.
Rat rho0(const Cochain& phi);
/// rho_inf(0, phi): max over G^p of rho(0, phi(g)).
Rat rho_inf(const Cochain& phi);
/// epsilon-smallness: mass{ rho(0,phi(g)) > eps } < eps.
bool is_eps_small(const Cochain& phi, const Rat& eps);

/// Dimension-shifting operator: for a p-cocycle psi, the (p-1)-cochain valued
/// in C(G,A) with Q psi(g_1..g_{p-1})(h) = (-1)^p psi(g_1..g_{p-1},
/// g_{p-1}^{-1}...g_1^{-1} h).  Throws NotACocycle if psi is not one.
Cochain dimension_shift_Q(const Cochain& psi);

namespace detail {
/// Same as dimension_shift_Q but skips the cocycle precondition check.
/// Callers must guarantee that psi is a cocycle.
Cochain dimension_shift_q_unchecked(const Cochain& psi);
} // namespace detail

/// The compact-group averaging contraction: kappa with d(kappa) = psi,
/// for rational-vector coefficients.
Cochain average_kappa(const Cochain& psi);

/// sqrt(eps)-smallness of a C(G,A)-valued cochain, evaluated entirely in
/// squared form over exact rationals:
/// mass{ g : mass{ h : rho(0, f(g)(h))^2 >= eps }^2 >= eps }^2 < eps.
bool sqrt_smallness_holds(const Cochain& induced_valued, const Rat& eps);

/// Project a C(G,A)-valued cochain to C(G,A)/iota(A) (values canonicalized).
Cochain project_to_quotient(const Cochain& induced_valued, const ModulePtr& quotient_module);
/// Transport a quotient-valued cochain back to its canonical induced lift.
Cochain lift_from_quotient(const Cochain& quotient_valued, const ModulePtr& induced_module);
/// Identify an iota(A)-valued cochain with the A-valued one; throws
/// InternalError if some value is not a constant map.
Cochain identify_constants(const Cochain& induced_valued, const ModulePtr& base_module);
/// Embed an A-valued cochain as the iota(A)-valued one.
Cochain embed_as_constants(const Cochain& base_valued, const ModulePtr& induced_module);

} // namespace cocyclelab

#endif
