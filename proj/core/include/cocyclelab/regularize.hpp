#ifndef COCYCLELAB_REGULARIZE_HPP
#define COCYCLELAB_REGULARIZE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cocyclelab/cochain.hpp"

namespace cocyclelab {

/// Smallness thresholds per degree: eta_p = 1 / (100 * (p!)^2), plus room for
/// empirically measured bound multipliers (regression data, not asserted
/// theory constants).
struct ConstantsTable {
    std::map<int, Rat> eta;
    std::map<int, Rat> k_measured;

    static Rat default_eta(int degree);
    Rat eta_for(int degree) const;
};

struct RegularizationLevel {
    int degree;
    Rat rho0_input;        // rho_0 of the cocycle entering this level
    bool sqrt_small;       // the shifted cochain passed the squared smallness test
    Rat rho0_lambda;       // rho_0 of the lambda produced at this level
    Rat rhoinf_phi;        // rho_inf of the phi produced at this level
};

struct RegularizationResult {
    Cochain phi;    // cocycle with controlled rho_inf
    Cochain lambda; // degree p-1, psi = phi + d(lambda) exactly
    Rat threshold_used;
    bool bounds_guaranteed; // false when a threshold override was used
    std::vector<RegularizationLevel> levels;
};

/// Smallness-driven decomposition psi = phi + d(lambda) by recursion on the
/// degree: degree 1 returns (psi, 0); higher degrees shift the dimension,
/// project modulo constants, recurse, and identify the correction inside the
/// constants.  Requires an isometric module and rho_0(0,psi) within the
/// degree's threshold (or the override).
RegularizationResult regularize(const Cochain& psi,
                                std::optional<Rat> threshold_override = std::nullopt);

/// For discrete metrics a successful regularization forces phi = 0; returns
/// the witness lambda with d(lambda) = psi.  Throws RegularityBreach when phi
/// is nonzero with rho_inf < 1 (impossible in a discrete metric) and
/// NotSmallEnough when the input misses the gate or phi is legitimately
/// nonzero under an override.
Cochain trivialize_small_discrete(const Cochain& psi,
                                  std::optional<Rat> threshold_override = std::nullopt);

struct CrossedHomReport {
    long long tested = 0;      // 1-cocycles examined
    long long small_count = 0; // those with eps = rho_0 < 1/2
    Rat extremal_ratio;        // max over tested nonzero alpha of rho_inf / eps
    bool pass = true;
    std::string detail;
};

/// Checks rho_inf(0, alpha) <= 2 * rho_0(0, alpha) over the module's
/// 1-cocycles (exhaustive for finite coefficients, kernel-basis sampling for
/// rational ones).
CrossedHomReport crossed_hom_bound_check(const ModulePtr& m);

} // namespace cocyclelab

#endif
