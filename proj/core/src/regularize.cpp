#include "cocyclelab/regularize.hpp"

#include <algorithm>

#include "cocyclelab/cohomology.hpp"
#include "cocyclelab/errors.hpp"

namespace cocyclelab {

Rat ConstantsTable::default_eta(int degree) {
    if (degree < 0) throw UnsupportedDegree("negative degree");
    long long fact = 1;
    for (int k = 2; k <= degree; ++k) {
        if (fact > (long long)3e8) throw OverflowError("threshold underflows 64-bit rationals");
        fact *= k;
    }
    return Rat(1, 100 * fact * fact);
}

Rat ConstantsTable::eta_for(int degree) const {
    auto it = eta.find(degree);
    return it != eta.end() ? it->second : default_eta(degree);
}

namespace {

struct RecOut {
    Cochain phi, lambda;
};

RecOut regularize_rec(const Cochain& psi, std::vector<RegularizationLevel>& levels) {
    const ModulePtr& m = psi.module();
    int p = psi.degree();
    RegularizationLevel lev;
    lev.degree = p;
    lev.rho0_input = rho0(psi);
    lev.sqrt_small = true;

    if (p == 1 || psi.is_zero()) {
        // Base case: a small 1-cocycle is already uniformly small (the
        // crossed-homomorphism bound), so it is returned unchanged.
        RecOut out{psi, Cochain(m, p - 1)};
        lev.rho0_lambda = Rat(0);
        lev.rhoinf_phi = rho_inf(out.phi);
        levels.push_back(lev);
        return out;
    }

    // psi was validated as a cocycle at entry, so the re-check can be skipped.
    Cochain qpsi = detail::dimension_shift_q_unchecked(psi);
    lev.sqrt_small = sqrt_smallness_holds(qpsi, lev.rho0_input);
    ModulePtr ind = qpsi.module();
    ModulePtr quot = GModule::quotient_of(m);
    Cochain projected = project_to_quotient(qpsi, quot);

    RecOut inner = regularize_rec(projected, levels);

    Cochain kappa = lift_from_quotient(inner.phi, ind);
    Cochain alpha = lift_from_quotient(inner.lambda, ind);
    Cochain residue = qpsi - kappa - coboundary(alpha);
    Cochain lambda = identify_constants(residue, m);
    Cochain phi = psi - coboundary(lambda);

    lev.rho0_lambda = rho0(lambda);
    lev.rhoinf_phi = rho_inf(phi);
    levels.push_back(lev);
    return RecOut{std::move(phi), std::move(lambda)};
}

} // namespace

RegularizationResult regularize(const Cochain& psi, std::optional<Rat> threshold_override) {
    const ModulePtr& m = psi.module();
    if (!m->isometric())
        throw NonIsometricModule("regularization needs a metric-preserving action");
    if (psi.degree() < 1) throw UnsupportedDegree("regularization needs degree >= 1");
    if (!is_cocycle(psi)) throw NotACocycle("regularization input must be a cocycle");

    Rat eps = rho0(psi);
    Rat thr = threshold_override ? *threshold_override
                                 : ConstantsTable::default_eta(psi.degree());
    if (eps > thr)
        throw NotSmallEnough("rho_0 = " + eps.str() + " exceeds the threshold " + thr.str());

    std::vector<RegularizationLevel> levels;
    RecOut out = regularize_rec(psi, levels);
    // levels were recorded innermost-first
    std::reverse(levels.begin(), levels.end());

    if (!(psi == out.phi + coboundary(out.lambda)))
        throw InternalError("decomposition identity failed");
    if (!is_cocycle(out.phi)) throw InternalError("regularized part is not a cocycle");

    return RegularizationResult{std::move(out.phi), std::move(out.lambda), thr,
                                !threshold_override.has_value(), std::move(levels)};
}

Cochain trivialize_small_discrete(const Cochain& psi, std::optional<Rat> threshold_override) {
    if (!psi.module()->coeffs()->discrete_metric())
        throw WrongCoefficientKind("trivialization works over discrete metrics");
    RegularizationResult res = regularize(psi, threshold_override);
    if (!res.phi.is_zero()) {
        if (rho_inf(res.phi) < Rat(1) || res.bounds_guaranteed)
            throw RegularityBreach("nonzero regular part despite uniform smallness");
        throw NotSmallEnough("the cocycle does not trivialize at this threshold");
    }
    return res.lambda;
}

CrossedHomReport crossed_hom_bound_check(const ModulePtr& m) {
    if (!m->isometric())
        throw NonIsometricModule("the crossed-homomorphism bound presumes isometry");
    const FiniteGroup& grp = *m->group();
    const CoefficientGroup& A = *m->coeffs();
    int n = grp.order();
    CrossedHomReport rep;
    rep.extremal_ratio = Rat(0);

    auto examine = [&](const Cochain& alpha) {
        ++rep.tested;
        Rat eps = rho0(alpha);
        Rat ri = rho_inf(alpha);
        if (!alpha.is_zero() && eps < Rat(1, 2)) ++rep.small_count;
        if (eps < Rat(1, 2) && ri > Rat(2) * eps) {
            rep.pass = false;
            rep.detail = "counterexample with rho_0 = " + eps.str() +
                         ", rho_inf = " + ri.str();
        }
        if (!eps.is_zero()) {
            Rat ratio = ri / eps;
            if (ratio > rep.extremal_ratio) rep.extremal_ratio = ratio;
        }
    };

    if (A.finite()) {
        long long cnt = A.count();
        // depth-first over alpha : G -> A with the cocycle constraints
        // T^g alpha(h) - alpha(gh) + alpha(g) = 0 checked as soon as all three
        // cells are known
        struct Con {
            int g, c0;
            std::pair<int, int> cells; // (gh, g)
        };
        std::vector<std::vector<Con>> by_cell(n);
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < n; ++h) {
                Con c{g, h, {grp.mul(g, h), g}};
                int maxc = std::max({h, c.cells.first, c.cells.second});
                by_cell[maxc].push_back(c);
            }
        std::vector<long long> tab(n, -1);
        std::function<void(int)> rec = [&](int k) {
            if (k == n) {
                Cochain alpha(m, 1);
                for (int c = 0; c < n; ++c) alpha.set(c, A.element(tab[c]));
                examine(alpha);
                return;
            }
            for (long long v = 0; v < cnt; ++v) {
                tab[k] = v;
                bool ok = true;
                for (const Con& c : by_cell[k]) {
                    Value lhs = A.add(A.sub(m->act(c.g, A.element(tab[c.c0])),
                                            A.element(tab[c.cells.first])),
                                      A.element(tab[c.cells.second]));
                    if (!A.is_zero(lhs)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) rec(k + 1);
            }
            tab[k] = -1;
        };
        rec(0);
        if (rep.detail.empty())
            rep.detail = std::to_string(rep.tested) + " 1-cocycles enumerated, " +
                         std::to_string(rep.small_count) + " below the 1/2 gate";
    } else if (A.kind() == CoeffKind::RationalVector) {
        // kernel basis of d at degree 1, plus pairwise sums
        RatMat d1 = coboundary_matrix_q(m, 1);
        auto basis = d1.kernel_basis();
        int dim = A.dim();
        auto to_cochain = [&](const std::vector<Rat>& v) {
            Cochain c(m, 1);
            Value val((std::size_t)dim);
            for (int cell = 0; cell < n; ++cell) {
                for (int i = 0; i < dim; ++i) val[i] = v[(std::size_t)cell * dim + i];
                c.set(cell, val);
            }
            return c;
        };
        examine(Cochain(m, 1));
        for (std::size_t i = 0; i < basis.size(); ++i) {
            examine(to_cochain(basis[i]));
            for (std::size_t j = i + 1; j < basis.size(); ++j) {
                std::vector<Rat> sum = basis[i];
                for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = sum[k] + basis[j][k];
                examine(to_cochain(sum));
            }
        }
        if (rep.detail.empty())
            rep.detail = basis.empty() ? "only the zero crossed homomorphism exists"
                                       : std::to_string(rep.tested) + " kernel combinations tested";
    } else {
        throw WrongCoefficientKind("crossed-homomorphism check supports discrete and rational kinds");
    }
    return rep;
}

} // namespace cocyclelab
