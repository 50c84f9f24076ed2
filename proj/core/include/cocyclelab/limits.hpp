#ifndef COCYCLELAB_LIMITS_HPP
#define COCYCLELAB_LIMITS_HPP

#include <optional>
#include <string>
#include <vector>

#include "cocyclelab/cohomology.hpp"
#include "cocyclelab/regularize.hpp"

namespace cocyclelab {

struct TowerReport {
    std::vector<ModulePtr> modules;        // pulled back to each level
    std::vector<CohomologyGroup> levels;   // H^p at each level, coarsest first
    std::vector<IntMat> inflation_matrices; // step m: classes of level m in level m+1
    std::vector<bool> step_injective, step_surjective;
    /// Smallest level index from which every later inflation step is
    /// bijective; -1 if the observed steps never settle.  Observational only.
    int stabilization_index = -1;
};

/// H^p along a finite tower of quotients with the coefficients pulled back
/// from the coarsest level.
TowerReport tower_experiment(const Tower& t, const ModulePtr& coarsest_module, int degree);

struct DescendOptions {
    std::optional<Rat> threshold_override;
};

struct DescendResult {
    bool success = false;
    std::optional<Cochain> descended; // cocycle over the quotient group
    std::optional<Cochain> lambda;    // psi = inflate(descended) + d(lambda)
    Rat defect_rho0;                  // rho_0 of the lift defect that was handled
    std::vector<Rat> class_coords;    // class of psi upstairs (filled on obstruction)
    bool used_exact_fallback = false;
    std::string detail;
};

/// Push a cocycle over pi's source down to pi's target: approximate by the
/// fiberwise modal lift, repair the defect by small-cocycle trivialization
/// when the smallness gates pass, and otherwise decide membership in the
/// inflation image exactly through the cohomology groups.  An Obstruction
/// result is exact: the class genuinely lies outside the inflation image.
DescendResult descend_cocycle(const Cochain& psi, const GroupHom& pi,
                              const DescendOptions& opts = {});

/// An increasing chain of coefficient modules over one group, with optional
/// ambient module receiving all stages.
struct DirectSystem {
    std::vector<ModulePtr> stages;
    std::vector<ModuleHom> inclusions;    // stage m -> stage m+1
    ModulePtr ambient;                    // may be null
    std::vector<ModuleHom> into_ambient;  // stage m -> ambient, when ambient is set

    DirectSystem(std::vector<ModulePtr> stages_, std::vector<ModuleHom> inclusions_,
                 ModulePtr ambient_ = nullptr, std::vector<ModuleHom> into_ambient_ = {});
};

struct DirectSystemReport {
    std::vector<CohomologyGroup> stages;
    std::vector<IntMat> stage_maps; // inclusion-induced on classes
    std::optional<CohomologyGroup> ambient;

    struct AmbientGenerator {
        int values_in_stage = -1; // least stage whose submodule contains all table values
        bool class_hit = false;   // its class is in the image of that stage's map
    };
    std::vector<AmbientGenerator> ambient_generators;

    struct DyingClass {
        int stage;
        std::size_t generator;
        int dies_at = -1; // least later stage where the class already vanishes
    };
    std::vector<DyingClass> dying; // stage classes that die in the ambient module
};

DirectSystemReport direct_system_experiment(const DirectSystem& d, int degree);

} // namespace cocyclelab

#endif
