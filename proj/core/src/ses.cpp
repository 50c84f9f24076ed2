#include "cocyclelab/ses.hpp"

#include <algorithm>

#include "cocyclelab/errors.hpp"

namespace cocyclelab {

namespace {

BigInt coord_int(const Rat& r) {
    if (!r.is_integer()) throw InternalError("class coordinate is not an integer");
    return BigInt(r.num());
}

std::vector<std::vector<Rat>> action_matrices_of(const GModule& m) {
    std::vector<std::vector<Rat>> mats;
    for (int g = 0; g < m.group()->order(); ++g) mats.push_back(m.action_matrix(g));
    return mats;
}

ModulePtr same_action_over(const ModulePtr& src, const CoeffPtr& coeffs) {
    if (src->trivial_action()) return GModule::trivial(src->group(), coeffs);
    return GModule::with_matrices(src->group(), coeffs, action_matrices_of(*src));
}

std::vector<Rat> identity_matrix(int d) {
    std::vector<Rat> m((std::size_t)d * d);
    for (int i = 0; i < d; ++i) m[(std::size_t)i * d + i] = Rat(1);
    return m;
}

} // namespace

ModuleSES ModuleSES::with_section(std::function<Value(const Value&)> s) const {
    ModuleSES out = *this;
    out.section = std::move(s);
    return out;
}

ModuleSES make_ses_zxm(const ModulePtr& zmod, long long m) {
    if (zmod->coeffs()->kind() != CoeffKind::FreeAbelian)
        throw WrongCoefficientKind("the ZxmZ_Zm family needs free abelian coefficients");
    if (m < 2) throw ParseError("multiplier must be >= 2");
    int d = zmod->coeffs()->dim();
    CoeffPtr cc = CoefficientGroup::finite_abelian(std::vector<long long>((std::size_t)d, m));
    ModulePtr cmod = same_action_over(zmod, cc);
    std::vector<Rat> mi = identity_matrix(d);
    for (Rat& r : mi)
        if (!r.is_zero()) r = Rat(m);
    ModuleSES s{zmod,
                zmod,
                cmod,
                ModuleHom(zmod, zmod, std::move(mi)),
                ModuleHom(zmod, cmod, identity_matrix(d)),
                [](const Value& v) { return v; },
                "ZxmZ_Zm",
                m};
    return s;
}

ModuleSES make_ses_z_q_qmodz(const ModulePtr& zmod) {
    if (zmod->coeffs()->kind() != CoeffKind::FreeAbelian)
        throw WrongCoefficientKind("the Z_Q_QmodZ family needs free abelian coefficients");
    int d = zmod->coeffs()->dim();
    ModulePtr qmod = same_action_over(zmod, CoefficientGroup::rational_vector(d));
    ModulePtr tmod = same_action_over(zmod, CoefficientGroup::rational_torus(d));
    ModuleSES s{zmod,
                qmod,
                tmod,
                ModuleHom(zmod, qmod, identity_matrix(d)),
                ModuleHom(qmod, tmod, identity_matrix(d)),
                [](const Value& v) { return v; }, // torus representatives are already in [0,1)
                "Z_Q_QmodZ",
                0};
    return s;
}

ModuleSES make_ses_explicit(const ModulePtr& a, const ModulePtr& b, const ModulePtr& c,
                            std::vector<Rat> i_matrix, std::vector<Rat> j_matrix) {
    if (!a->coeffs()->finite() || !b->coeffs()->finite() || !c->coeffs()->finite())
        throw WrongCoefficientKind("explicit sequences need finite coefficient kinds");
    ModuleHom i(a, b, std::move(i_matrix));
    ModuleHom j(b, c, std::move(j_matrix));
    const CoefficientGroup& ca = *a->coeffs();
    const CoefficientGroup& cb = *b->coeffs();
    const CoefficientGroup& cc = *c->coeffs();
    for (long long x = 0; x < ca.count(); ++x)
        if (cb.is_zero(i.apply(ca.element(x))) && !ca.is_zero(ca.element(x)))
            throw KernelMismatch("i is not injective");
    std::vector<long long> section_table(cc.count(), -1);
    for (long long x = 0; x < cb.count(); ++x) {
        long long ci = cc.index_of(j.apply(cb.element(x)));
        if (section_table[ci] < 0) section_table[ci] = x;
    }
    for (long long ci = 0; ci < cc.count(); ++ci)
        if (section_table[ci] < 0) throw KernelMismatch("j is not surjective");
    // image(i) = kernel(j), elementwise
    std::vector<bool> is_img(cb.count(), false);
    for (long long x = 0; x < ca.count(); ++x) is_img[cb.index_of(i.apply(ca.element(x)))] = true;
    for (long long x = 0; x < cb.count(); ++x) {
        bool ker = cc.is_zero(j.apply(cb.element(x)));
        if (ker != is_img[x]) throw KernelMismatch("image(i) differs from kernel(j)");
    }
    auto section = [cptr = c->coeffs(), bptr = b->coeffs(), section_table](const Value& v) {
        return bptr->element(section_table[cptr->index_of(v)]);
    };
    return ModuleSES{a, b, c, std::move(i), std::move(j), section, "explicit", 0};
}

Cochain connecting_map(const ModuleSES& s, const Cochain& psi) {
    if (!is_cocycle(psi)) throw NotACocycle("connecting map needs a cocycle");
    if (psi.module()->coeffs()->dim() != s.c->coeffs()->dim() ||
        psi.module()->coeffs()->kind() != s.c->coeffs()->kind())
        throw ModuleMismatch("cochain is not valued in the sequence's quotient module");
    int p = psi.degree();
    const CoefficientGroup& cb = *s.b->coeffs();
    Cochain lifted(s.b, p);
    for (std::size_t cell = 0; cell < psi.table_size(); ++cell) {
        Value cv = psi.value_at(cell);
        Value bv = s.section(cv);
        if (!psi.module()->coeffs()->eq(s.j.apply(bv), cv))
            throw SectionInvalid("section does not split j at a lifted value");
        lifted.set(cell, bv);
    }
    Cochain dl = coboundary(lifted);

    Cochain out(s.a, p + 1);
    int da = s.a->coeffs()->dim();
    int db = cb.dim();
    if (cb.discrete_metric()) {
        IntMat gens((std::size_t)db, (std::size_t)da);
        for (int r = 0; r < db; ++r)
            for (int cidx = 0; cidx < da; ++cidx)
                gens.at(r, cidx) = coord_int(s.i.matrix()[(std::size_t)r * da + cidx]);
        FgPresentation pres{presentation_moduli(*s.b)};
        for (std::size_t cell = 0; cell < out.table_size(); ++cell) {
            auto v = dl.at(cell);
            std::vector<BigInt> vi(db);
            for (int r = 0; r < db; ++r) vi[r] = coord_int(v[r]);
            auto sol = solve_in_subgroup(gens, pres, vi);
            if (!sol) throw KernelMismatch("connecting value is outside the image of i");
            Value av((std::size_t)da);
            for (int k = 0; k < da; ++k) {
                if ((*sol)[k] > INT64_MAX || (*sol)[k] < INT64_MIN)
                    throw OverflowError("preimage coordinate out of range");
                av[k] = Rat((*sol)[k].convert_to<long long>());
            }
            out.set(cell, av);
        }
    } else if (cb.kind() == CoeffKind::RationalVector) {
        RatMat im((std::size_t)db, (std::size_t)da);
        for (int r = 0; r < db; ++r)
            for (int cidx = 0; cidx < da; ++cidx)
                im.at(r, cidx) = s.i.matrix()[(std::size_t)r * da + cidx];
        for (std::size_t cell = 0; cell < out.table_size(); ++cell) {
            auto v = dl.at(cell);
            auto sol = im.solve(std::vector<Rat>(v.begin(), v.end()));
            if (!sol) throw KernelMismatch("connecting value is outside the image of i");
            Value av(sol->begin(), sol->end());
            if (s.a->coeffs()->discrete_metric())
                for (const Rat& r : av)
                    if (!r.is_integer())
                        throw KernelMismatch("connecting value does not pull back integrally");
            out.set(cell, av);
        }
    } else {
        throw WrongCoefficientKind("cannot pull back through " + cb.describe());
    }
    if (!is_cocycle(out)) throw InternalError("connecting image is not a cocycle");
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct ChainNode {
    CohomologyGroup h;
    std::string name;
    // map to the next node, on cochains
    std::function<Cochain(const Cochain&)> step;
};

IntMat class_matrix(const CohomologyGroup& target, const std::vector<Cochain>& gens,
                    const std::function<Cochain(const Cochain&)>& f) {
    std::size_t rows = target.rational ? 0 : target.invariant_factors.size();
    IntMat out(rows, gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) {
        std::vector<Rat> c = class_of(target, f(gens[j]));
        for (std::size_t r = 0; r < rows; ++r) out.at(r, j) = coord_int(c[r]);
    }
    return out;
}

std::string coords_to_string(const std::vector<BigInt>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s + ")";
}

} // namespace

LesReport les_check(const ModuleSES& s, int p_max, long long denominator_scale) {
    std::vector<ChainNode> nodes;
    auto push = [&](CohomologyGroup h, std::string name,
                    std::function<Cochain(const Cochain&)> step) {
        nodes.push_back(ChainNode{std::move(h), std::move(name), std::move(step)});
    };
    auto via_hom = [](const ModuleHom& hom) {
        return [hom](const Cochain& x) { return x.mapped(hom); };
    };

    if (s.family == "Z_Q_QmodZ") {
        // Degree-0 groups live on the denominator-N sub-presentation
        // Z^d --(x N)--> (1/N)Z^d --> ((1/N)Z/Z)^d; its connecting map agrees
        // with the full sequence's on these classes.
        long long n = s.a->group()->exponent() * (denominator_scale < 1 ? 1 : denominator_scale);
        ModuleSES sub = make_ses_zxm(s.a, n);
        ModulePtr torus = s.c;
        auto to_torus = [sub, torus, n](const Cochain& x) {
            Cochain t(torus, x.degree());
            for (std::size_t cell = 0; cell < x.table_size(); ++cell) {
                Value v = x.value_at(cell);
                for (Rat& r : v) r = r / Rat(n);
                t.set(cell, v);
            }
            return t;
        };
        push(cohomology(s.a, 0), "H^0(A)", via_hom(sub.i));
        push(cohomology(sub.a, 0), "H^0(B)", via_hom(sub.j)); // (1/N)Z^d in scaled coordinates
        ModuleSES full = s;
        push(cohomology(sub.c, 0), "H^0(C)",
             [full, to_torus](const Cochain& x) { return connecting_map(full, to_torus(x)); });
        for (int p = 1; p <= p_max + 1; ++p) {
            push(cohomology(s.a, p), "H^" + std::to_string(p) + "(A)", via_hom(s.i));
            if (p > p_max) break;
            push(cohomology(s.b, p), "H^" + std::to_string(p) + "(B)", via_hom(s.j));
            push(cohomology(s.c, p), "H^" + std::to_string(p) + "(C)",
                 [full](const Cochain& x) { return connecting_map(full, x); });
        }
    } else {
        ModuleSES full = s;
        for (int p = 0; p <= p_max + 1; ++p) {
            push(cohomology(s.a, p), "H^" + std::to_string(p) + "(A)", via_hom(s.i));
            if (p > p_max) break;
            push(cohomology(s.b, p), "H^" + std::to_string(p) + "(B)", via_hom(s.j));
            push(cohomology(s.c, p), "H^" + std::to_string(p) + "(C)",
                 [full](const Cochain& x) { return connecting_map(full, x); });
        }
    }
    // One final node so the last H^(p_max+1)(A) slot has an outgoing map.
    CohomologyGroup last_b = cohomology(s.b, p_max + 1);

    // Class matrices along the chain.
    std::vector<IntMat> mats(nodes.size());
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k)
        mats[k] = class_matrix(nodes[k + 1].h, nodes[k].h.generators, nodes[k].step);
    mats[nodes.size() - 1] =
        class_matrix(last_b, nodes.back().h.generators, nodes.back().step);

    LesReport report;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const CohomologyGroup& here = nodes[k].h;
        const CohomologyGroup& next = k + 1 < nodes.size() ? nodes[k + 1].h : last_b;
        FgPresentation ph = here.presentation();
        FgPresentation pn = next.presentation();
        LesSlot slot;
        slot.degree = here.degree;
        slot.at = nodes[k].name;
        slot.exact = true;

        // image of the previous map is killed by this one (checked on actual
        // cochain composites, not just matrices)
        if (k > 0) {
            for (const Cochain& g : nodes[k - 1].h.generators) {
                Cochain through = nodes[k].step(nodes[k - 1].step(g));
                std::vector<Rat> cls = class_of(next, through);
                for (const Rat& r : cls)
                    if (!r.is_zero()) {
                        slot.exact = false;
                        slot.detail = "composite of consecutive maps is nonzero";
                    }
            }
        }
        // kernel of this map is contained in the previous image
        IntMat incoming = k > 0 ? mats[k - 1] : IntMat(ph.coords(), 0);
        for (const auto& kg : kernel_generators(mats[k], ph, pn)) {
            if (!solve_in_subgroup(incoming, ph, kg)) {
                slot.exact = false;
                slot.detail = "kernel class " + coords_to_string(kg) + " is not in the image";
            }
        }
        report.all_exact = report.all_exact && slot.exact;
        report.slots.push_back(std::move(slot));
    }
    return report;
}

} // namespace cocyclelab
