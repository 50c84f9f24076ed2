#include "cocyclelab/cohomology.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cocyclelab/config.hpp"
#include "cocyclelab/errors.hpp"

namespace cocyclelab {

namespace {

std::size_t ipow_checked(std::size_t base, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (base != 0 && r > (std::size_t)-1 / base)
            throw CapacityExceeded("table size overflows size_t");
        r *= base;
    }
    return r;
}

BigInt big_of_rat(const Rat& r, const char* what) {
    if (!r.is_integer()) throw InternalError(std::string(what) + ": entry is not an integer");
    return BigInt(r.num());
}

Rat rat_of_big(const BigInt& b) {
    if (b > INT64_MAX || b < INT64_MIN)
        throw OverflowError("coordinate does not fit 64 bits");
    return Rat(b.convert_to<long long>());
}

bool same_group(const GroupPtr& a, const GroupPtr& b) {
    return a == b || (a->order() == b->order() && a->table() == b->table());
}

// Sparse column of the action of g on the flat coordinate presentation.
void action_triplets(const GModule& m, int g,
                     std::vector<std::tuple<int, int, Rat>>& out) {
    out.clear();
    switch (m.action_kind()) {
    case ActionKind::Trivial:
        for (int i = 0; i < m.coeffs()->dim(); ++i) out.emplace_back(i, i, Rat(1));
        return;
    case ActionKind::Matrices: {
        int d = m.coeffs()->dim();
        const auto& mat = m.action_matrix(g);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (!mat[(std::size_t)i * d + j].is_zero())
                    out.emplace_back(i, j, mat[(std::size_t)i * d + j]);
        return;
    }
    case ActionKind::Diagonal: {
        const auto& base = *m.coeffs()->base();
        int d0 = base.coeffs()->dim();
        const auto& grp = *m.group();
        std::vector<std::tuple<int, int, Rat>> inner;
        action_triplets(base, g, inner);
        for (int h = 0; h < grp.order(); ++h) {
            int src = grp.mul(grp.inv(g), h);
            for (const auto& [i, j, v] : inner)
                out.emplace_back(h * d0 + i, src * d0 + j, v);
        }
        return;
    }
    }
    throw InternalError("unknown action kind");
}

template <class Emit>
void assemble_coboundary(const ModulePtr& mp, int p, const Emit& emit) {
    const GModule& m = *mp;
    const FiniteGroup& grp = *m.group();
    int n = grp.order();
    int d = m.coeffs()->dim();
    std::size_t np = ipow_checked(n, p);
    std::vector<std::tuple<int, int, Rat>> act;
    std::vector<int> tup(p + 1);
    for (std::size_t ti = 0; ti < ipow_checked(n, p + 1); ++ti) {
        std::size_t rest = ti;
        for (int k = p; k >= 0; --k) {
            tup[k] = (int)(rest % n);
            rest /= n;
        }
        // first term: T^{g_1} phi(g_2..g_{p+1})
        std::size_t tail = 0;
        for (int k = 1; k <= p; ++k) tail = tail * n + tup[k];
        action_triplets(m, tup[0], act);
        for (const auto& [i, j, v] : act)
            emit(ti * d + i, tail * d + j, v);
        // middle terms: (-1)^k phi(.. g_k g_{k+1} ..)
        for (int k = 1; k <= p; ++k) {
            std::size_t idx = 0;
            for (int t = 0; t <= p; ++t) {
                if (t == k) continue;
                int e = (t == k - 1) ? grp.mul(tup[k - 1], tup[k]) : tup[t];
                idx = idx * n + e;
            }
            Rat sgn(k % 2 ? -1 : 1);
            for (int i = 0; i < d; ++i) emit(ti * d + i, idx * d + i, sgn);
        }
        // last term: (-1)^{p+1} phi(g_1..g_p)
        std::size_t pre = 0;
        for (int k = 0; k < p; ++k) pre = pre * n + tup[k];
        Rat sgn((p + 1) % 2 ? -1 : 1);
        for (int i = 0; i < d; ++i) emit(ti * d + i, pre * d + i, sgn);
    }
    (void)np;
}

} // namespace

IntMat coboundary_matrix(const ModulePtr& m, int degree) {
    int n = m->group()->order();
    int d = m->coeffs()->dim();
    std::size_t rows = ipow_checked(n, degree + 1) * d;
    std::size_t cols = ipow_checked(n, degree) * d;
    check_capacity(rows * cols, "coboundary matrix");
    IntMat out(rows, cols);
    assemble_coboundary(m, degree, [&](std::size_t i, std::size_t j, const Rat& v) {
        out.add_at(i, j, big_of_rat(v, "coboundary matrix"));
    });
    return out;
}

RatMat coboundary_matrix_q(const ModulePtr& m, int degree) {
    int n = m->group()->order();
    int d = m->coeffs()->dim();
    std::size_t rows = ipow_checked(n, degree + 1) * d;
    std::size_t cols = ipow_checked(n, degree) * d;
    check_capacity(rows * cols, "coboundary matrix");
    RatMat out(rows, cols);
    assemble_coboundary(m, degree, [&](std::size_t i, std::size_t j, const Rat& v) {
        out.at(i, j) = out.at(i, j) + v;
    });
    return out;
}

std::vector<BigInt> presentation_moduli(const GModule& m) {
    const CoefficientGroup& c = *m.coeffs();
    switch (c.kind()) {
    case CoeffKind::FreeAbelian:
        return std::vector<BigInt>(c.dim(), BigInt(0));
    case CoeffKind::FiniteAbelian: {
        std::vector<BigInt> out;
        for (long long f : c.factors()) out.push_back(f);
        return out;
    }
    case CoeffKind::Induced: {
        std::vector<BigInt> base = presentation_moduli(*c.base());
        std::vector<BigInt> out;
        int n = m.group()->order();
        for (int h = 0; h < n; ++h) out.insert(out.end(), base.begin(), base.end());
        return out;
    }
    default:
        throw WrongCoefficientKind("no integral coordinate presentation for " + c.describe());
    }
}

// ---------------------------------------------------------------------------

struct CohomologyData {
    enum class Mode { Integer, Rational, TorusShift, TorusFixed } mode = Mode::Integer;

    // Integer pipeline.  The cocycle lattice is V * diag(strides) restricted
    // to basis_cols; u2/uinv2/d2 diagonalize the coboundary sublattice inside
    // it.
    bool finite = false;
    std::vector<BigInt> moduli; // per flat coordinate of C^p
    IntMat vinv;
    std::vector<BigInt> s;               // padded diagonal of the scaled d_p SNF
    std::vector<std::size_t> basis_cols;
    std::vector<BigInt> strides;
    IntMat u2, uinv2;
    std::vector<BigInt> d2;
    std::size_t rank2 = 0, r1 = 0;
    std::vector<std::size_t> factor_pos;
    std::vector<int> gen_sign;
    SnfResult bfact; // factorization of [d_{p-1} | relations]
    std::size_t brows = 0, bcols = 0, lambda_cols = 0;

    // Rational pipeline.
    RatMat dprev_q; // empty at degree 0
    std::vector<std::vector<Rat>> gen_vecs_q;

    // Torus via degree shift.
    std::unique_ptr<CohomologyGroup> z_level;
    ModulePtr z_module, q_module;

    // Torus degree 0 on the finitely generated sub-presentation.
    std::unique_ptr<CohomologyGroup> sub_h0;
    ModulePtr sub_module;
    BigInt sub_den = 0;
};

namespace {

std::vector<BigInt> flat_int_values(const Cochain& c) {
    std::vector<BigInt> out;
    out.reserve(c.flat().size());
    for (const Rat& r : c.flat()) out.push_back(big_of_rat(r, "cochain value"));
    return out;
}

Cochain cochain_from_big(const ModulePtr& m, int degree, const std::vector<BigInt>& flat) {
    Cochain out(m, degree);
    int d = m->coeffs()->dim();
    std::size_t cells = out.table_size();
    Value v((std::size_t)d);
    for (std::size_t c = 0; c < cells; ++c) {
        for (int i = 0; i < d; ++i) v[i] = rat_of_big(flat[c * d + i]);
        out.set(c, v); // set() normalizes modulo the coefficient relations
    }
    return out;
}

// Canonical generator representative among {g, -g}: smaller first nonzero
// index, then lexicographically smaller table.  Returns the kept sign.
int canonicalize_sign(Cochain& g) {
    Cochain neg = -g;
    const auto& a = g.flat();
    const auto& b = neg.flat();
    for (std::size_t i = 0; i < a.size(); ++i) {
        bool az = a[i].is_zero(), bz = b[i].is_zero();
        if (az != bz) {
            if (az) { g = neg; return -1; }
            return 1;
        }
        if (!(a[i] == b[i])) {
            if (b[i] < a[i]) { g = neg; return -1; }
            return 1;
        }
    }
    return 1;
}

// Coordinates of an integer vector in the cocycle-lattice basis.
std::vector<BigInt> lattice_coords(const CohomologyData& d, const std::vector<BigInt>& x) {
    std::vector<BigInt> z = d.vinv.apply(x);
    std::vector<BigInt> c(d.r1);
    if (d.finite) {
        for (std::size_t i = 0; i < d.r1; ++i) {
            if (z[d.basis_cols[i]] % d.strides[i] != 0)
                throw InternalError("vector is not in the cocycle lattice");
            c[i] = z[d.basis_cols[i]] / d.strides[i];
        }
    } else {
        std::size_t k = 0;
        for (std::size_t j = 0; j < z.size(); ++j) {
            if (j < d.s.size() && !d.s[j].is_zero()) {
                if (!z[j].is_zero())
                    throw InternalError("vector is not in the cocycle lattice");
            } else {
                c[k++] = z[j];
            }
        }
    }
    return c;
}

CohomologyGroup integer_cohomology(const ModulePtr& m, int p) {
    CohomologyGroup h;
    h.module = m;
    h.degree = p;
    auto data = std::make_shared<CohomologyData>();
    data->mode = CohomologyData::Mode::Integer;

    int n = m->group()->order();
    int dim = m->coeffs()->dim();
    std::size_t nc = ipow_checked(n, p) * dim;
    check_capacity(nc, "cochain table");

    std::vector<BigInt> amod = presentation_moduli(*m);
    bool finite = !amod.empty() && !amod[0].is_zero();
    for (const BigInt& b : amod)
        if (finite != !b.is_zero()) throw InternalError("mixed free/finite coordinates");
    data->finite = finite;
    data->moduli.resize(nc);
    for (std::size_t c = 0; c < nc; ++c) data->moduli[c] = amod[c % dim];
    BigInt L = 1;
    if (finite)
        for (const BigInt& b : amod) L = lcm(L, b);

    // Cocycle lattice: kernel of the row-scaled coboundary matrix modulo L.
    IntMat D = coboundary_matrix(m, p);
    if (finite)
        for (std::size_t r = 0; r < D.rows(); ++r) {
            BigInt f = L / amod[r % dim];
            if (f != 1)
                for (std::size_t c = 0; c < D.cols(); ++c)
                    if (!D.at(r, c).is_zero()) D.at(r, c) *= f;
        }
    SnfOptions kopts;
    kopts.want_u = false;
    SnfResult kf = smith_normal_form(D, kopts);
    data->vinv = kf.vinv;
    data->s.assign(nc, BigInt(0));
    for (std::size_t i = 0; i < kf.diag.size(); ++i) data->s[i] = kf.diag[i];
    if (finite) {
        for (std::size_t i = 0; i < nc; ++i) {
            data->basis_cols.push_back(i);
            data->strides.push_back(L / gcd(data->s[i], L));
        }
    } else {
        for (std::size_t i = 0; i < nc; ++i)
            if (data->s[i].is_zero()) {
                data->basis_cols.push_back(i);
                data->strides.push_back(1);
            }
    }
    data->r1 = data->basis_cols.size();

    // Coboundary generators: columns of d_{p-1} plus the relation vectors.
    std::vector<std::vector<std::pair<std::size_t, BigInt>>> bgens;
    std::size_t nprev = p >= 1 ? ipow_checked(n, p - 1) * (std::size_t)dim : 0;
    IntMat dprev;
    if (p >= 1) {
        dprev = coboundary_matrix(m, p - 1);
        for (std::size_t j = 0; j < dprev.cols(); ++j) {
            std::vector<std::pair<std::size_t, BigInt>> col;
            for (std::size_t i = 0; i < dprev.rows(); ++i)
                if (!dprev.at(i, j).is_zero()) col.emplace_back(i, dprev.at(i, j));
            bgens.push_back(std::move(col));
        }
    }
    if (finite)
        for (std::size_t c = 0; c < nc; ++c)
            bgens.push_back({{c, data->moduli[c]}});

    // Their coordinates in the lattice basis.
    IntMat C(data->r1, bgens.size());
    {
        std::vector<BigInt> z(nc);
        for (std::size_t j = 0; j < bgens.size(); ++j) {
            std::fill(z.begin(), z.end(), BigInt(0));
            for (const auto& [row, val] : bgens[j])
                for (std::size_t i = 0; i < nc; ++i)
                    if (!data->vinv.at(i, row).is_zero()) z[i] += val * data->vinv.at(i, row);
            if (finite) {
                for (std::size_t i = 0; i < data->r1; ++i) {
                    if (z[data->basis_cols[i]] % data->strides[i] != 0)
                        throw InternalError("coboundary outside the cocycle lattice");
                    C.at(i, j) = z[data->basis_cols[i]] / data->strides[i];
                }
            } else {
                std::size_t k = 0;
                for (std::size_t i = 0; i < nc; ++i) {
                    if (!data->s[i].is_zero()) {
                        if (!z[i].is_zero())
                            throw InternalError("coboundary outside the cocycle lattice");
                    } else {
                        C.at(k++, j) = z[i];
                    }
                }
            }
        }
    }

    SnfOptions qopts;
    qopts.want_v = false;
    SnfResult qf = smith_normal_form(C, qopts);
    data->u2 = qf.u;
    data->uinv2 = qf.uinv;
    data->d2 = qf.diag;
    data->rank2 = qf.rank;

    for (std::size_t i = 0; i < qf.rank; ++i)
        if (qf.diag[i] > 1) {
            data->factor_pos.push_back(i);
            h.invariant_factors.push_back(qf.diag[i]);
        }
    for (std::size_t i = qf.rank; i < data->r1; ++i) {
        data->factor_pos.push_back(i);
        h.invariant_factors.push_back(0);
    }

    // Generators: columns of (lattice basis) * uinv2 at the factor positions.
    for (std::size_t pos : data->factor_pos) {
        std::vector<BigInt> vec(nc);
        for (std::size_t i = 0; i < data->r1; ++i) {
            const BigInt& coef = data->uinv2.at(i, pos);
            if (coef.is_zero()) continue;
            std::size_t col = data->basis_cols[i];
            for (std::size_t r = 0; r < nc; ++r)
                if (!kf.v.at(r, col).is_zero())
                    vec[r] += coef * data->strides[i] * kf.v.at(r, col);
        }
        Cochain g = cochain_from_big(m, p, vec);
        data->gen_sign.push_back(canonicalize_sign(g));
        if (!is_cocycle(g)) throw InternalError("generated representative is not a cocycle");
        h.generators.push_back(std::move(g));
    }

    // Membership solver [d_{p-1} | relations].
    data->lambda_cols = nprev;
    data->brows = nc;
    data->bcols = nprev + (finite ? nc : 0);
    if (data->bcols > 0) {
        IntMat mb(nc, data->bcols);
        for (std::size_t j = 0; j < nprev; ++j)
            for (std::size_t i = 0; i < nc; ++i) mb.at(i, j) = dprev.at(i, j);
        if (finite)
            for (std::size_t c = 0; c < nc; ++c) mb.at(c, nprev + c) = data->moduli[c];
        data->bfact = smith_normal_form(mb);
    }

    h.data = std::move(data);
    return h;
}

CohomologyGroup rational_cohomology(const ModulePtr& m, int p) {
    CohomologyGroup h;
    h.module = m;
    h.degree = p;
    h.rational = true;
    auto data = std::make_shared<CohomologyData>();
    data->mode = CohomologyData::Mode::Rational;

    int n = m->group()->order();
    int dim = m->coeffs()->dim();
    std::size_t nc = ipow_checked(n, p) * dim;
    check_capacity(nc, "cochain table");

    // Ranks via integer SNF after clearing denominators row by row (row
    // scaling preserves rank; the int64 fast path is much faster than
    // rational elimination at these sizes).
    auto int_rank = [&](const RatMat& q) -> std::size_t {
        IntMat z(q.rows(), q.cols());
        for (std::size_t i = 0; i < q.rows(); ++i) {
            long long l = 1;
            for (std::size_t j = 0; j < q.cols(); ++j) l = std::lcm(l, q.at(i, j).den());
            for (std::size_t j = 0; j < q.cols(); ++j) {
                const Rat& v = q.at(i, j);
                if (!v.is_zero()) z.at(i, j) = BigInt(v.num()) * (l / v.den());
            }
        }
        SnfOptions o;
        o.want_u = o.want_v = false;
        return smith_normal_form(z, o).rank;
    };

    RatMat D = coboundary_matrix_q(m, p);
    std::size_t dimker = nc - int_rank(D);
    std::size_t imgrank = 0;
    if (p >= 1) {
        data->dprev_q = coboundary_matrix_q(m, p - 1);
        imgrank = int_rank(data->dprev_q);
    }
    h.rank = (int)(dimker - imgrank);

    if (h.rank > 0) {
        // Pick kernel vectors independent modulo the image via an incremental
        // row-reduced span.
        std::vector<std::vector<Rat>> span;        // reduced vectors
        std::vector<std::size_t> pivots;
        auto insert = [&](std::vector<Rat> v) -> bool {
            for (std::size_t k = 0; k < span.size(); ++k) {
                const Rat& c = v[pivots[k]];
                if (c.is_zero()) continue;
                for (std::size_t j = 0; j < v.size(); ++j)
                    v[j] = v[j] - c * span[k][j];
            }
            std::size_t piv = v.size();
            for (std::size_t j = 0; j < v.size(); ++j)
                if (!v[j].is_zero()) {
                    piv = j;
                    break;
                }
            if (piv == v.size()) return false;
            Rat inv = Rat(1) / v[piv];
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = v[j] * inv;
            span.push_back(std::move(v));
            pivots.push_back(piv);
            return true;
        };
        if (p >= 1)
            for (std::size_t j = 0; j < data->dprev_q.cols(); ++j) {
                std::vector<Rat> col(nc);
                for (std::size_t i = 0; i < nc; ++i) col[i] = data->dprev_q.at(i, j);
                insert(std::move(col));
            }
        for (const auto& k : D.kernel_basis()) {
            if ((int)data->gen_vecs_q.size() == h.rank) break;
            std::vector<Rat> copy = k;
            if (insert(std::move(copy))) data->gen_vecs_q.push_back(k);
        }
        for (const auto& g : data->gen_vecs_q) {
            Cochain c(m, p);
            Value v((std::size_t)dim);
            for (std::size_t cell = 0; cell < c.table_size(); ++cell) {
                for (int i = 0; i < dim; ++i) v[i] = g[cell * dim + i];
                c.set(cell, v);
            }
            if (!is_cocycle(c)) throw InternalError("rational generator is not a cocycle");
            h.generators.push_back(std::move(c));
        }
    }

    h.data = std::move(data);
    return h;
}

CohomologyGroup torus_fixed_points(const ModulePtr& m, long long scale) {
    CohomologyGroup h;
    h.module = m;
    h.degree = 0;
    auto data = std::make_shared<CohomologyData>();
    data->mode = CohomologyData::Mode::TorusFixed;

    int dim = m->coeffs()->dim();
    long long den = m->group()->exponent() * (scale < 1 ? 1 : scale);
    data->sub_den = den;
    CoeffPtr sub = CoefficientGroup::finite_abelian(std::vector<long long>(dim, den));
    if (m->trivial_action()) {
        data->sub_module = GModule::trivial(m->group(), sub);
    } else {
        std::vector<std::vector<Rat>> mats;
        for (int g = 0; g < m->group()->order(); ++g) mats.push_back(m->action_matrix(g));
        data->sub_module = GModule::with_matrices(m->group(), sub, std::move(mats));
    }
    data->sub_h0 = std::make_unique<CohomologyGroup>(cohomology(data->sub_module, 0));

    h.invariant_factors = data->sub_h0->invariant_factors;
    for (const auto& g : data->sub_h0->generators) {
        Cochain t(m, 0);
        Value v((std::size_t)dim);
        auto src = g.value_at(0);
        for (int i = 0; i < dim; ++i) v[i] = src[i] / Rat(den);
        t.set(0, v);
        h.generators.push_back(std::move(t));
    }
    h.data = std::move(data);
    return h;
}

CohomologyGroup torus_switchback(const ModulePtr& m, int p) {
    CohomologyGroup h;
    h.module = m;
    h.degree = p;
    auto data = std::make_shared<CohomologyData>();
    data->mode = CohomologyData::Mode::TorusShift;

    int dim = m->coeffs()->dim();
    CoeffPtr zc = CoefficientGroup::free_abelian(dim);
    CoeffPtr qc = CoefficientGroup::rational_vector(dim);
    if (m->trivial_action()) {
        data->z_module = GModule::trivial(m->group(), zc);
        data->q_module = GModule::trivial(m->group(), qc);
    } else {
        std::vector<std::vector<Rat>> mats;
        for (int g = 0; g < m->group()->order(); ++g) mats.push_back(m->action_matrix(g));
        data->z_module = GModule::with_matrices(m->group(), zc, mats);
        data->q_module = GModule::with_matrices(m->group(), qc, std::move(mats));
    }
    data->z_level = std::make_unique<CohomologyGroup>(cohomology(data->z_module, p + 1));
    for (const BigInt& f : data->z_level->invariant_factors) {
        if (f.is_zero())
            throw InternalError("infinite factor in integral coefficients above degree 0");
        h.invariant_factors.push_back(f);
    }

    // Transport generators back: average the rational reading of each Z-level
    // generator, then reduce modulo 1.
    for (const auto& gz : data->z_level->generators) {
        Cochain gq = gz.reinterpret(data->q_module);
        Cochain kappa = average_kappa(gq);
        Cochain t(m, p);
        Value v((std::size_t)dim);
        for (std::size_t cell = 0; cell < t.table_size(); ++cell) {
            auto src = kappa.at(cell);
            for (int i = 0; i < dim; ++i) v[i] = src[i];
            t.set(cell, v); // torus normalization reduces mod 1
        }
        if (!is_cocycle(t)) throw InternalError("transported generator is not a cocycle");
        h.generators.push_back(std::move(t));
    }
    h.data = std::move(data);
    return h;
}

// Connecting value of a torus cocycle: d of its canonical rational lift,
// which is integer valued, read over the Z-coefficient module.
Cochain torus_connect(const CohomologyData& data, const Cochain& psi) {
    Cochain lift = psi.reinterpret(data.q_module);
    Cochain dl = coboundary(lift);
    for (const Rat& r : dl.flat())
        if (!r.is_integer()) throw InternalError("torus connecting value is not integral");
    return dl.reinterpret(data.z_module);
}

} // namespace

CohomologyGroup cohomology(const ModulePtr& m, int degree, long long torus_denominator_scale) {
    if (degree < 0) throw UnsupportedDegree("negative degree");
    switch (m->coeffs()->kind()) {
    case CoeffKind::FreeAbelian:
    case CoeffKind::FiniteAbelian:
        return integer_cohomology(m, degree);
    case CoeffKind::Induced:
        if (m->coeffs()->base()->coeffs()->discrete_metric())
            return integer_cohomology(m, degree);
        throw WrongCoefficientKind("cohomology of induced modules needs a discrete base");
    case CoeffKind::RationalVector:
        return rational_cohomology(m, degree);
    case CoeffKind::RationalTorus:
        return degree == 0 ? torus_fixed_points(m, torus_denominator_scale)
                           : torus_switchback(m, degree);
    default:
        throw WrongCoefficientKind("cohomology is not defined for " + m->coeffs()->describe());
    }
}

BigInt CohomologyGroup::order() const {
    if (rational) return rank > 0 ? BigInt(0) : BigInt(1);
    BigInt o = 1;
    for (const BigInt& f : invariant_factors) {
        if (f.is_zero()) return 0;
        o *= f;
    }
    return o;
}

bool CohomologyGroup::is_trivial() const {
    return rational ? rank == 0 : invariant_factors.empty();
}

FgPresentation CohomologyGroup::presentation() const {
    if (rational) {
        if (rank > 0) throw InternalError("rational cohomology of positive rank is not finitely generated over Z");
        return FgPresentation{};
    }
    return FgPresentation{invariant_factors};
}

std::string CohomologyGroup::describe() const {
    if (rational) {
        if (rank == 0) return "0";
        return rank == 1 ? "Q" : "Q^" + std::to_string(rank);
    }
    return invariants_to_string(invariant_factors);
}

namespace {

void require_compatible(const CohomologyGroup& h, const Cochain& psi) {
    if (psi.degree() != h.degree || psi.module()->coeffs()->dim() != h.module->coeffs()->dim() ||
        !same_group(psi.module()->group(), h.module->group()))
        throw ModuleMismatch("cochain does not live in the group's cochain space");
    if (!is_cocycle(psi)) throw NotACocycle("class queries need a cocycle");
}

} // namespace

std::vector<Rat> class_of(const CohomologyGroup& h, const Cochain& psi) {
    require_compatible(h, psi);
    const CohomologyData& d = *h.data;
    switch (d.mode) {
    case CohomologyData::Mode::Integer: {
        std::vector<BigInt> c = lattice_coords(d, flat_int_values(psi));
        std::vector<BigInt> y = d.u2.apply(c);
        std::vector<Rat> out;
        for (std::size_t k = 0; k < d.factor_pos.size(); ++k) {
            std::size_t pos = d.factor_pos[k];
            BigInt val = y[pos] * d.gen_sign[k];
            if (pos < d.rank2) {
                val %= d.d2[pos];
                if (val < 0) val += d.d2[pos];
            }
            out.push_back(rat_of_big(val));
        }
        return out;
    }
    case CohomologyData::Mode::Rational: {
        if (h.rank == 0) return {};
        std::size_t nc = psi.flat().size();
        std::size_t prev = d.dprev_q.cols();
        RatMat solver(nc, prev + d.gen_vecs_q.size());
        for (std::size_t i = 0; i < nc; ++i) {
            for (std::size_t j = 0; j < prev; ++j) solver.at(i, j) = d.dprev_q.at(i, j);
            for (std::size_t j = 0; j < d.gen_vecs_q.size(); ++j)
                solver.at(i, prev + j) = d.gen_vecs_q[j][i];
        }
        auto sol = solver.solve(psi.flat());
        if (!sol) throw InternalError("cocycle outside span of image and generators");
        return std::vector<Rat>(sol->begin() + prev, sol->end());
    }
    case CohomologyData::Mode::TorusShift:
        return class_of(*d.z_level, torus_connect(d, psi));
    case CohomologyData::Mode::TorusFixed: {
        int dim = h.module->coeffs()->dim();
        Cochain sub(d.sub_module, 0);
        Value v((std::size_t)dim);
        auto src = psi.value_at(0);
        for (int i = 0; i < dim; ++i) {
            Rat scaled = src[i] * rat_of_big(d.sub_den);
            if (!scaled.is_integer())
                throw DivisibilityError("torus value denominator exceeds the sub-presentation; "
                                        "raise the denominator scale");
            v[i] = scaled;
        }
        sub.set(0, v);
        return class_of(*d.sub_h0, sub);
    }
    }
    throw InternalError("unknown cohomology mode");
}

std::optional<Cochain> is_coboundary(const CohomologyGroup& h, const Cochain& psi) {
    require_compatible(h, psi);
    const CohomologyData& d = *h.data;
    if (h.degree == 0)
        return psi.is_zero() ? std::optional<Cochain>(Cochain(psi.module(), 0)) : std::nullopt;
    switch (d.mode) {
    case CohomologyData::Mode::Integer: {
        if (d.bcols == 0) {
            // No image at all: the only coboundary is zero.
            return psi.is_zero() ? std::optional<Cochain>(Cochain(psi.module(), h.degree - 1))
                                 : std::nullopt;
        }
        auto sol = snf_solve(d.bfact, d.brows, d.bcols, flat_int_values(psi));
        if (!sol) return std::nullopt;
        sol->resize(d.lambda_cols);
        Cochain lambda = cochain_from_big(psi.module(), h.degree - 1, *sol);
        if (!(coboundary(lambda) == psi)) throw InternalError("witness verification failed");
        return lambda;
    }
    case CohomologyData::Mode::Rational: {
        auto sol = d.dprev_q.solve(psi.flat());
        if (!sol) return std::nullopt;
        Cochain lambda(psi.module(), h.degree - 1);
        int dim = psi.module()->coeffs()->dim();
        Value v((std::size_t)dim);
        for (std::size_t cell = 0; cell < lambda.table_size(); ++cell) {
            for (int i = 0; i < dim; ++i) v[i] = (*sol)[cell * dim + i];
            lambda.set(cell, v);
        }
        if (!(coboundary(lambda) == psi)) throw InternalError("witness verification failed");
        return lambda;
    }
    case CohomologyData::Mode::TorusShift: {
        Cochain w = torus_connect(d, psi);
        auto mu = is_coboundary(*d.z_level, w);
        if (!mu) return std::nullopt;
        Cochain lift = psi.reinterpret(d.q_module);
        Cochain nu = lift - mu->reinterpret(d.q_module);
        if (!is_cocycle(nu)) throw InternalError("rational difference is not a cocycle");
        Cochain alpha = average_kappa(nu);
        Cochain beta(psi.module(), h.degree - 1);
        int dim = psi.module()->coeffs()->dim();
        Value v((std::size_t)dim);
        for (std::size_t cell = 0; cell < beta.table_size(); ++cell) {
            auto src = alpha.at(cell);
            for (int i = 0; i < dim; ++i) v[i] = src[i];
            beta.set(cell, v);
        }
        if (!(coboundary(beta) == psi)) throw InternalError("witness verification failed");
        return beta;
    }
    default:
        throw InternalError("unknown cohomology mode");
    }
}

Cochain inflate(const GroupHom& pi, const Cochain& psi) {
    return inflate(pi, psi, psi.module()->pullback(pi));
}

Cochain inflate(const GroupHom& pi, const Cochain& psi, const ModulePtr& target) {
    if (!same_group(psi.module()->group(), pi.target()))
        throw ModuleMismatch("cochain is not defined over the surjection's target group");
    if (!same_group(target->group(), pi.source()) ||
        target->coeffs()->dim() != psi.module()->coeffs()->dim())
        throw ModuleMismatch("inflation target module mismatch");
    int p = psi.degree();
    int ns = pi.source()->order();
    int nt = pi.target()->order();
    Cochain out(target, p);
    std::vector<int> tup(p);
    for (std::size_t ti = 0; ti < out.table_size(); ++ti) {
        std::size_t rest = ti, mapped = 0;
        for (int k = p - 1; k >= 0; --k) {
            tup[k] = pi((int)(rest % ns));
            rest /= ns;
        }
        for (int k = 0; k < p; ++k) mapped = mapped * nt + tup[k];
        out.set(ti, psi.value_at(mapped));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Brute-force oracle.

namespace {

// Invariant factors of a finite abelian group from its elements' order data.
// `reps` excludes nothing (identity included); is_zero tests a scaled rep.
std::vector<BigInt> factors_from_orders(
    std::size_t order, const std::function<bool(std::size_t rep, long long k)>& scaled_is_zero,
    std::size_t nreps) {
    std::vector<BigInt> out;
    if (order <= 1) return out;
    // prime factorization of the order
    std::vector<long long> primes;
    {
        long long n = (long long)order;
        for (long long q = 2; q * q <= n; ++q)
            if (n % q == 0) {
                primes.push_back(q);
                while (n % q == 0) n /= q;
            }
        if (n > 1) primes.push_back(n);
    }
    // exponent profile per prime: c_k = #cyclic q-factors of order >= q^k
    std::map<long long, std::vector<int>> profile;
    for (long long q : primes) {
        std::vector<long long> counts; // n_k = #{x : q^k x = 0}
        counts.push_back(1);           // n_0
        long long qk = 1;
        while (true) {
            qk *= q;
            long long cnt = 0;
            for (std::size_t r = 0; r < nreps; ++r)
                if (scaled_is_zero(r, qk)) ++cnt;
            counts.push_back(cnt);
            if (counts[counts.size() - 1] == counts[counts.size() - 2]) break;
        }
        std::vector<int> c;
        for (std::size_t k = 1; k < counts.size(); ++k) {
            long long ratio = counts[k] / counts[k - 1];
            if (counts[k] % counts[k - 1] != 0) throw InternalError("non-multiplicative order counts");
            int e = 0;
            while (ratio > 1) {
                if (ratio % q != 0) throw InternalError("order count is not a prime power");
                ratio /= q;
                ++e;
            }
            if (e > 0 || !c.empty()) c.push_back(e);
        }
        // c is the number of factors of order >= q^k only when each step adds
        // q per surviving factor; with e factors counted per level, the count
        // of q-factors with exponent >= k is c[k-1].
        profile[q] = c;
    }
    std::size_t nfac = 0;
    for (auto& [q, c] : profile)
        if (!c.empty()) nfac = std::max(nfac, (std::size_t)c[0]);
    // invariant factor t (1 = largest): product over primes of q^(exponent of
    // the t-th largest q-factor)
    std::vector<BigInt> chain;
    for (std::size_t t = 1; t <= nfac; ++t) {
        BigInt f = 1;
        for (auto& [q, c] : profile) {
            int e = 0;
            for (std::size_t k = 0; k < c.size(); ++k)
                if ((std::size_t)c[k] >= t) e = (int)k + 1;
            for (int i = 0; i < e; ++i) f *= q;
        }
        if (f > 1) chain.push_back(f);
    }
    std::reverse(chain.begin(), chain.end()); // ascending divisibility
    return chain;
}

} // namespace

BruteForceResult brute_force_cohomology(const ModulePtr& m, int degree, const BigInt& limit) {
    const CoefficientGroup& A = *m->coeffs();
    if (!A.finite()) throw WrongCoefficientKind("brute force needs finite coefficients");
    const FiniteGroup& grp = *m->group();
    int n = grp.order();
    long long cnt = A.count();

    BruteForceResult res;
    if (degree == 0) {
        std::vector<long long> fixed;
        for (long long a = 0; a < cnt; ++a) {
            Value v = A.element(a);
            bool ok = true;
            for (int g = 1; g < n && ok; ++g) ok = A.eq(m->act(g, v), v);
            if (ok) fixed.push_back(a);
        }
        res.z_count = fixed.size();
        res.b_count = 1;
        res.order = fixed.size();
        auto scaled_zero = [&](std::size_t r, long long k) {
            return A.is_zero(A.scale(k, A.element(fixed[r])));
        };
        res.invariant_factors =
            factors_from_orders(fixed.size(), scaled_zero, fixed.size());
        return res;
    }

    std::size_t cells = ipow_checked(n, degree);
    std::size_t prevcells = ipow_checked(n, degree - 1);
    {
        // The coboundary side is a genuine full enumeration one degree down;
        // the cocycle side is a pruned search bounded by its own node counter.
        BigInt prevfull = 1;
        for (std::size_t i = 0; i < prevcells; ++i) {
            prevfull *= cnt;
            if (prevfull > limit) throw CapacityExceeded("coboundary enumeration exceeds the limit");
        }
    }

    // All coboundaries, via full enumeration one degree down.
    std::set<std::vector<int>> bset;
    {
        std::vector<int> lam(prevcells, 0);
        while (true) {
            Cochain l(m, degree - 1);
            for (std::size_t c = 0; c < prevcells; ++c) l.set(c, A.element(lam[c]));
            Cochain dl = coboundary(l);
            std::vector<int> table(cells);
            for (std::size_t c = 0; c < cells; ++c) table[c] = (int)A.index_of(dl.value_at(c));
            bset.insert(std::move(table));
            std::size_t k = 0;
            while (k < prevcells && ++lam[k] == cnt) lam[k++] = 0;
            if (k == prevcells) break;
        }
    }
    res.b_count = bset.size();

    // Element arithmetic on indices.
    std::vector<int> addt((std::size_t)cnt * cnt), negt(cnt);
    for (long long a = 0; a < cnt; ++a) {
        negt[a] = (int)A.index_of(A.neg(A.element(a)));
        for (long long b = 0; b < cnt; ++b)
            addt[a * cnt + b] = (int)A.index_of(A.add(A.element(a), A.element(b)));
    }
    std::vector<std::vector<int>> actp(n, std::vector<int>(cnt));
    for (int g = 0; g < n; ++g)
        for (long long a = 0; a < cnt; ++a)
            actp[g][a] = (int)A.index_of(m->act(g, A.element(a)));
    int zero_idx = (int)A.index_of(A.zero());

    // Cocycle constraints, grouped by the last cell each one reads.
    struct Constraint {
        int g1;
        std::size_t c0;
        std::vector<std::pair<std::size_t, int>> terms; // (cell, sign)
    };
    std::vector<std::vector<Constraint>> by_cell(cells);
    {
        int p = degree;
        std::vector<int> tup(p + 1);
        for (std::size_t ti = 0; ti < ipow_checked(n, p + 1); ++ti) {
            std::size_t rest = ti;
            for (int k = p; k >= 0; --k) {
                tup[k] = (int)(rest % n);
                rest /= n;
            }
            Constraint c;
            c.g1 = tup[0];
            c.c0 = 0;
            for (int k = 1; k <= p; ++k) c.c0 = c.c0 * n + tup[k];
            std::size_t maxcell = c.c0;
            for (int k = 1; k <= p; ++k) {
                std::size_t idx = 0;
                for (int t = 0; t <= p; ++t) {
                    if (t == k) continue;
                    idx = idx * n + ((t == k - 1) ? grp.mul(tup[k - 1], tup[k]) : tup[t]);
                }
                c.terms.emplace_back(idx, k % 2 ? -1 : 1);
                maxcell = std::max(maxcell, idx);
            }
            std::size_t pre = 0;
            for (int k = 0; k < p; ++k) pre = pre * n + tup[k];
            c.terms.emplace_back(pre, (p + 1) % 2 ? -1 : 1);
            maxcell = std::max(maxcell, pre);
            by_cell[maxcell].push_back(std::move(c));
        }
    }

    // Depth-first enumeration of the cocycles.
    std::vector<std::vector<int>> zs;
    std::vector<int> tab(cells, -1);
    long long nodes = 0;
    BigInt node_limit = limit;
    auto satisfied = [&](const Constraint& c) {
        int val = actp[c.g1][tab[c.c0]];
        for (const auto& [cell, sgn] : c.terms) {
            int t = tab[cell];
            if (sgn < 0) t = negt[t];
            val = addt[(std::size_t)val * cnt + t];
        }
        return val == zero_idx;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == cells) {
            zs.push_back(tab);
            return;
        }
        for (int v = 0; v < cnt; ++v) {
            if (++nodes > node_limit) throw CapacityExceeded("cocycle search exceeds the limit");
            tab[k] = v;
            bool ok = true;
            for (const Constraint& c : by_cell[k])
                if (!satisfied(c)) {
                    ok = false;
                    break;
                }
            if (ok) rec(k + 1);
        }
        tab[k] = -1;
    };
    rec(0);
    res.z_count = zs.size();

    // Coset representatives of Z/B.
    auto diff_in_b = [&](const std::vector<int>& x, const std::vector<int>& y) {
        std::vector<int> d(cells);
        for (std::size_t c = 0; c < cells; ++c) d[c] = addt[(std::size_t)x[c] * cnt + negt[y[c]]];
        return bset.count(d) > 0;
    };
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        bool found = false;
        for (std::size_t r : reps)
            if (diff_in_b(zs[i], zs[r])) {
                found = true;
                break;
            }
        if (!found) reps.push_back(i);
    }
    res.order = reps.size();
    if (res.b_count * res.order != res.z_count)
        throw InternalError("coset count is inconsistent with |Z|/|B|");

    auto scaled_zero = [&](std::size_t r, long long k) {
        std::vector<int> scaled(cells, zero_idx);
        const std::vector<int>& x = zs[reps[r]];
        for (long long i = 0; i < k; ++i)
            for (std::size_t c = 0; c < cells; ++c)
                scaled[c] = addt[(std::size_t)scaled[c] * cnt + x[c]];
        return bset.count(scaled) > 0;
    };
    res.invariant_factors = factors_from_orders(reps.size(), scaled_zero, reps.size());
    return res;
}

} // namespace cocyclelab
