#include "cocyclelab/limits.hpp"

#include <algorithm>
#include <map>

#include "cocyclelab/config.hpp"
#include "cocyclelab/errors.hpp"

namespace cocyclelab {

namespace {

BigInt coord_int(const Rat& r) {
    if (!r.is_integer()) throw InternalError("class coordinate is not an integer");
    return BigInt(r.num());
}

std::vector<BigInt> coords_int(const std::vector<Rat>& v) {
    std::vector<BigInt> out;
    out.reserve(v.size());
    for (const Rat& r : v) out.push_back(coord_int(r));
    return out;
}

bool same_group(const GroupPtr& a, const GroupPtr& b) {
    return a == b || (a->order() == b->order() && a->table() == b->table());
}

IntMat class_matrix(const CohomologyGroup& target, const std::vector<Cochain>& images) {
    IntMat out(target.invariant_factors.size(), images.size());
    for (std::size_t j = 0; j < images.size(); ++j) {
        std::vector<Rat> c = class_of(target, images[j]);
        for (std::size_t r = 0; r < out.rows(); ++r) out.at(r, j) = coord_int(c[r]);
    }
    return out;
}

bool map_injective(const IntMat& mat, const FgPresentation& src, const FgPresentation& dst) {
    return kernel_generators(mat, src, dst).empty();
}

bool map_surjective(const IntMat& mat, const FgPresentation& dst) {
    for (std::size_t j = 0; j < dst.coords(); ++j) {
        std::vector<BigInt> e(dst.coords());
        e[j] = 1;
        if (!solve_in_subgroup(mat, dst, e)) return false;
    }
    return true;
}

} // namespace

TowerReport tower_experiment(const Tower& t, const ModulePtr& coarsest_module, int degree) {
    if (!same_group(coarsest_module->group(), t.level(0)))
        throw ModuleMismatch("module is not defined over the coarsest level");
    TowerReport rep;
    rep.modules.push_back(coarsest_module);
    for (int m = 0; m + 1 < t.size(); ++m)
        rep.modules.push_back(rep.modules.back()->pullback(t.step(m)));
    for (int m = 0; m < t.size(); ++m)
        rep.levels.push_back(cohomology(rep.modules[m], degree));
    for (int m = 0; m + 1 < t.size(); ++m) {
        std::vector<Cochain> images;
        for (const Cochain& g : rep.levels[m].generators)
            images.push_back(inflate(t.step(m), g, rep.modules[m + 1]));
        IntMat mat = class_matrix(rep.levels[m + 1], images);
        FgPresentation ps = rep.levels[m].presentation();
        FgPresentation pt = rep.levels[m + 1].presentation();
        rep.step_injective.push_back(map_injective(mat, ps, pt));
        rep.step_surjective.push_back(map_surjective(mat, pt));
        rep.inflation_matrices.push_back(std::move(mat));
    }
    int idx = -1;
    for (int m = (int)rep.inflation_matrices.size(); m-- > 0;) {
        if (rep.step_injective[m] && rep.step_surjective[m])
            idx = m;
        else
            break;
    }
    if (rep.inflation_matrices.empty()) idx = 0;
    rep.stabilization_index = idx;
    return rep;
}

namespace {

// Quotient-level module for an action that factors through pi.
ModulePtr factored_module(const ModulePtr& big, const GroupHom& pi) {
    const FiniteGroup& gs = *pi.source();
    int dim = big->coeffs()->dim();
    for (int k = 0; k < gs.order(); ++k) {
        if (pi(k) != 0) continue;
        for (int i = 0; i < dim; ++i) {
            Value e((std::size_t)dim);
            e[i] = Rat(1);
            Value img = big->act(k, e);
            if (!big->coeffs()->eq(img, e))
                throw ModuleMismatch("the action does not factor through the quotient");
        }
    }
    if (big->trivial_action()) return GModule::trivial(pi.target(), big->coeffs());
    std::vector<int> lift(pi.target()->order(), -1);
    for (int g = 0; g < gs.order(); ++g)
        if (lift[pi(g)] < 0) lift[pi(g)] = g;
    std::vector<std::vector<Rat>> mats;
    for (int gbar = 0; gbar < pi.target()->order(); ++gbar)
        mats.push_back(big->action_matrix(lift[gbar]));
    return GModule::with_matrices(pi.target(), big->coeffs(), std::move(mats));
}

} // namespace

DescendResult descend_cocycle(const Cochain& psi, const GroupHom& pi, const DescendOptions& opts) {
    if (!pi.surjective()) throw ModuleMismatch("descent needs a surjective projection");
    if (!same_group(psi.module()->group(), pi.source()))
        throw ModuleMismatch("cochain is not defined over the projection's source");
    if (!psi.module()->coeffs()->discrete_metric())
        throw WrongCoefficientKind("descent works over discrete metrics");
    if (!is_cocycle(psi)) throw NotACocycle("descent input must be a cocycle");

    const ModulePtr& mbig = psi.module();
    ModulePtr msmall = factored_module(mbig, pi);
    int p = psi.degree();
    int ns = pi.source()->order();
    int nt = pi.target()->order();

    // Fiberwise modal lift psi_1 over the quotient group.
    Cochain psi1(msmall, p);
    {
        std::size_t tcells = psi1.table_size();
        check_capacity(psi.table_size(), "fiber enumeration");
        std::vector<std::map<std::vector<Rat>, long long>> buckets(tcells);
        for (std::size_t cell = 0; cell < psi.table_size(); ++cell) {
            std::size_t rest = cell, target = 0;
            std::vector<int> digits(p);
            for (int k = p - 1; k >= 0; --k) {
                digits[k] = pi((int)(rest % ns));
                rest /= ns;
            }
            for (int k = 0; k < p; ++k) target = target * nt + digits[k];
            auto v = psi.at(cell);
            ++buckets[target][std::vector<Rat>(v.begin(), v.end())];
        }
        for (std::size_t cell = 0; cell < tcells; ++cell) {
            long long best = -1;
            const std::vector<Rat>* pick = nullptr;
            for (const auto& [val, cnt] : buckets[cell])
                if (cnt > best) { // map order makes ties pick the smallest value
                    best = cnt;
                    pick = &val;
                }
            psi1.set(cell, *pick);
        }
    }

    DescendResult res;
    Cochain defect = psi - inflate(pi, psi1, mbig);
    res.defect_rho0 = rho0(defect);

    Rat thr_p = opts.threshold_override ? *opts.threshold_override
                                        : ConstantsTable::default_eta(p);
    Rat thr_q = opts.threshold_override ? *opts.threshold_override
                                        : ConstantsTable::default_eta(p + 1);

    // Modal path: repair d(psi_1) by trivializing the small defect cocycle.
    Cochain w = -coboundary(psi1);
    bool modal_done = false;
    Cochain psiprime(msmall, p);
    Cochain lambda(mbig, p - 1);
    if (rho0(w) <= thr_q) {
        try {
            Cochain psi2 = trivialize_small_discrete(w, opts.threshold_override);
            Cochain cand = psi1 + psi2;
            Cochain phi = psi - inflate(pi, cand, mbig);
            if (rho0(phi) <= thr_p) {
                lambda = trivialize_small_discrete(phi, opts.threshold_override);
                psiprime = cand;
                modal_done = true;
                res.detail = "modal lift with small-defect trivialization";
            }
        } catch (const NotSmallEnough&) {
        } catch (const RegularityBreach&) {
        }
    }

    if (!modal_done) {
        // Exact decision through the cohomology groups.
        CohomologyGroup hbig = cohomology(mbig, p);
        CohomologyGroup hsmall = cohomology(msmall, p);
        std::vector<Cochain> images;
        for (const Cochain& g : hsmall.generators) images.push_back(inflate(pi, g, mbig));
        IntMat inflmat = class_matrix(hbig, images);
        std::vector<BigInt> coords = coords_int(class_of(hbig, psi));
        auto sol = solve_in_subgroup(inflmat, hbig.presentation(), coords);
        if (!sol) {
            res.success = false;
            for (const BigInt& b : coords) {
                res.class_coords.push_back(Rat(b.convert_to<long long>()));
            }
            res.detail = "class lies outside the inflation image";
            return res;
        }
        Cochain cand(msmall, p);
        for (std::size_t i = 0; i < hsmall.generators.size(); ++i) {
            BigInt c = (*sol)[i];
            if (c > INT64_MAX || c < INT64_MIN) throw OverflowError("combination coefficient");
            cand = cand + hsmall.generators[i].scaled(c.convert_to<long long>());
        }
        if (!is_cocycle(cand)) throw InternalError("combined representative is not a cocycle");
        Cochain phi = psi - inflate(pi, cand, mbig);
        auto wit = is_coboundary(hbig, phi);
        if (!wit) throw InternalError("inflation-image member has no coboundary witness");
        psiprime = cand;
        lambda = *wit;
        res.used_exact_fallback = true;
        res.detail = "exact inflation-image membership";
    }

    if (!(psi == inflate(pi, psiprime, mbig) + coboundary(lambda)))
        throw InternalError("descent certificate failed verification");
    res.success = true;
    res.descended = std::move(psiprime);
    res.lambda = std::move(lambda);
    return res;
}

DirectSystem::DirectSystem(std::vector<ModulePtr> stages_, std::vector<ModuleHom> inclusions_,
                           ModulePtr ambient_, std::vector<ModuleHom> into_ambient_)
    : stages(std::move(stages_)), inclusions(std::move(inclusions_)),
      ambient(std::move(ambient_)), into_ambient(std::move(into_ambient_)) {
    if (stages.empty()) throw ParseError("a direct system needs at least one stage");
    if (inclusions.size() + 1 != stages.size())
        throw ParseError("a direct system needs one inclusion per consecutive stage pair");
    for (std::size_t m = 0; m + 1 < stages.size(); ++m) {
        if (inclusions[m].source() != stages[m] || inclusions[m].target() != stages[m + 1])
            throw ModuleMismatch("inclusion endpoints do not match the stages");
        const CoefficientGroup& a = *stages[m]->coeffs();
        if (a.finite())
            for (long long x = 0; x < a.count(); ++x)
                if (!a.is_zero(a.element(x)) &&
                    stages[m + 1]->coeffs()->is_zero(inclusions[m].apply(a.element(x))))
                    throw KernelMismatch("stage inclusion is not injective");
    }
    if (ambient && into_ambient.size() != stages.size())
        throw ParseError("each stage needs a map into the ambient module");
    for (std::size_t m = 0; m < into_ambient.size(); ++m) {
        // compatibility: into_ambient[m] = into_ambient[m+1] after the inclusion
        if (m + 1 >= stages.size()) break;
        const CoefficientGroup& a = *stages[m]->coeffs();
        if (!a.finite()) continue;
        for (long long x = 0; x < a.count(); ++x) {
            Value direct = into_ambient[m].apply(a.element(x));
            Value via = into_ambient[m + 1].apply(inclusions[m].apply(a.element(x)));
            if (!ambient->coeffs()->eq(direct, via))
                throw ModuleMismatch("ambient maps are inconsistent with the inclusions");
        }
    }
}

DirectSystemReport direct_system_experiment(const DirectSystem& d, int degree) {
    DirectSystemReport rep;
    for (const ModulePtr& s : d.stages) rep.stages.push_back(cohomology(s, degree));
    for (std::size_t m = 0; m + 1 < d.stages.size(); ++m) {
        std::vector<Cochain> images;
        for (const Cochain& g : rep.stages[m].generators)
            images.push_back(g.mapped(d.inclusions[m]));
        rep.stage_maps.push_back(class_matrix(rep.stages[m + 1], images));
    }
    if (!d.ambient) return rep;

    rep.ambient = cohomology(d.ambient, degree);
    std::vector<IntMat> amb_mats;
    for (std::size_t m = 0; m < d.stages.size(); ++m) {
        std::vector<Cochain> images;
        for (const Cochain& g : rep.stages[m].generators)
            images.push_back(g.mapped(d.into_ambient[m]));
        amb_mats.push_back(class_matrix(*rep.ambient, images));
    }

    auto stage_contains = [&](std::size_t m, const Value& v) {
        const CoefficientGroup& a = *d.stages[m]->coeffs();
        if (!a.finite()) throw WrongCoefficientKind("stage modules must be finite");
        for (long long x = 0; x < a.count(); ++x)
            if (d.ambient->coeffs()->eq(d.into_ambient[m].apply(a.element(x)), v)) return true;
        return false;
    };

    FgPresentation pamb = rep.ambient->presentation();
    for (std::size_t j = 0; j < rep.ambient->generators.size(); ++j) {
        DirectSystemReport::AmbientGenerator info;
        const Cochain& g = rep.ambient->generators[j];
        for (std::size_t m = 0; m < d.stages.size() && info.values_in_stage < 0; ++m) {
            bool all = true;
            for (std::size_t cell = 0; cell < g.table_size() && all; ++cell)
                all = stage_contains(m, g.value_at(cell));
            if (all) info.values_in_stage = (int)m;
        }
        if (info.values_in_stage >= 0) {
            std::vector<BigInt> e(pamb.coords());
            e[j] = 1;
            info.class_hit =
                solve_in_subgroup(amb_mats[info.values_in_stage], pamb, e).has_value();
        }
        rep.ambient_generators.push_back(info);
    }

    for (std::size_t m = 0; m < d.stages.size(); ++m) {
        for (std::size_t j = 0; j < rep.stages[m].generators.size(); ++j) {
            if (!pamb.is_trivial_element(amb_mats[m].column(j))) continue;
            DirectSystemReport::DyingClass dc{(int)m, j, -1};
            Cochain carried = rep.stages[m].generators[j];
            for (std::size_t k = m; k < d.stages.size(); ++k) {
                if (k > m) carried = carried.mapped(d.inclusions[k - 1]);
                std::vector<Rat> cls = class_of(rep.stages[k], carried);
                bool zero = true;
                for (const Rat& r : cls) zero = zero && r.is_zero();
                if (zero) {
                    dc.dies_at = (int)k;
                    break;
                }
            }
            rep.dying.push_back(dc);
        }
    }
    return rep;
}

} // namespace cocyclelab
