#include "cocyclelab/cochain.hpp"

#include <algorithm>
#include <atomic>

#include "cocyclelab/errors.hpp"
#include "cocyclelab/parallel.hpp"

namespace cocyclelab {

namespace {

std::size_t pow_checked(int base, int exp, int dim, const char* what) {
    std::size_t s = 1;
    for (int i = 0; i < exp; ++i) {
        if (s > max_table_entries() / (std::size_t)base) throw CapacityExceeded(what);
        s *= (std::size_t)base;
    }
    check_capacity(s * (std::size_t)dim, what);
    return s;
}

// Fast-path guard: values are plain residues and the action reads through.
bool discrete_trivial(const GModule& m) {
    return m.trivial_action() && m.coeffs()->kind() == CoeffKind::FiniteAbelian &&
           m.coeffs()->dim() <= 16;
}

// Per-coordinate residue moduli when every flat coordinate is a
// finite-abelian residue, either directly or blockwise through C(G,A).
// Returns the factor list and its period, or nullptr when not applicable.
const std::vector<long long>* residue_moduli(const CoefficientGroup& A, int* period) {
    if (A.kind() == CoeffKind::FiniteAbelian) {
        *period = A.dim();
        return &A.factors();
    }
    if (A.kind() == CoeffKind::Induced &&
        A.base()->coeffs()->kind() == CoeffKind::FiniteAbelian) {
        *period = A.base()->coeffs()->dim();
        return &A.base()->coeffs()->factors();
    }
    return nullptr;
}

void decode_into(std::size_t idx, int n, int len, int* t) {
    for (int i = len - 1; i >= 0; --i) {
        t[i] = (int)(idx % (std::size_t)n);
        idx /= (std::size_t)n;
    }
}

std::size_t index_of(const int* t, int len, int n) {
    std::size_t idx = 0;
    for (int i = 0; i < len; ++i) idx = idx * (std::size_t)n + (std::size_t)t[i];
    return idx;
}

// Per-coordinate integer coboundary sums at one (p+1)-tuple, without
// normalization; only valid under discrete_trivial.
void eval_d_residues(const Cochain& phi, const int* t, long long* acc) {
    const FiniteGroup& G = *phi.module()->group();
    int p = phi.degree();
    int n = G.order();
    int dim = phi.module()->coeffs()->dim();
    const Rat* src = phi.flat().data();
    int sub[16];

    for (int i = 0; i < p; ++i) sub[i] = t[i + 1];
    const Rat* v = src + index_of(sub, p, n) * (std::size_t)dim;
    for (int j = 0; j < dim; ++j) acc[j] = v[j].num();

    for (int i = 1; i <= p; ++i) {
        int k = 0;
        for (int j = 0; j < p + 1; ++j) {
            if (j == i - 1) {
                sub[k++] = G.mul(t[i - 1], t[i]);
                ++j;
            } else {
                sub[k++] = t[j];
            }
        }
        v = src + index_of(sub, p, n) * (std::size_t)dim;
        if (i % 2 == 1)
            for (int j = 0; j < dim; ++j) acc[j] -= v[j].num();
        else
            for (int j = 0; j < dim; ++j) acc[j] += v[j].num();
    }

    for (int i = 0; i < p; ++i) sub[i] = t[i];
    v = src + index_of(sub, p, n) * (std::size_t)dim;
    if ((p + 1) % 2 == 1)
        for (int j = 0; j < dim; ++j) acc[j] -= v[j].num();
    else
        for (int j = 0; j < dim; ++j) acc[j] += v[j].num();
}

// Support-driven cocycle check specialized to degree 2, trivial action,
// scalar finite-abelian coefficients.  Checks the same tuple set as the
// generic support loop, but all four faces of every touching triple are read
// from n-length rows of derived tables (the value table, its transpose, the
// antidiagonal table AD[q][x] = psi(x, x^{-1} q), and the transposed
// multiplication table), so the scan stays cache-resident for large groups.
bool sparse_check_deg2(const Cochain& phi, const std::vector<std::size_t>& support) {
    const FiniteGroup& G = *phi.module()->group();
    int n = G.order();
    std::size_t nn = (std::size_t)n * n;
    long long m = phi.module()->coeffs()->factors()[0];
    const Rat* src = phi.flat().data();
    const int* mul = G.table().data();

    std::vector<int32_t> P(nn), PT(nn), AD(nn), mulT(nn);
    std::vector<int> invv(n);
    for (int x = 0; x < n; ++x) invv[x] = G.inv(x);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int32_t v = (int32_t)src[(std::size_t)a * n + b].num();
            P[(std::size_t)a * n + b] = v;
            PT[(std::size_t)b * n + a] = v;
            mulT[(std::size_t)b * n + a] = mul[(std::size_t)a * n + b];
        }
    for (int x = 0; x < n; ++x) {
        const int* rowix = mul + (std::size_t)invv[x] * n;
        const int32_t* rowPx = P.data() + (std::size_t)x * n;
        for (int q = 0; q < n; ++q) AD[(std::size_t)q * n + x] = rowPx[rowix[q]];
    }

    for (std::size_t cell : support) {
        int sa = (int)(cell / (std::size_t)n);
        int sb = (int)(cell % (std::size_t)n);
        int c = mul[(std::size_t)sa * n + sb];
        int32_t t_ab = P[cell];
        const int32_t* rowPT_sa = PT.data() + (std::size_t)sa * n;
        const int32_t* rowPT_sb = PT.data() + (std::size_t)sb * n;
        const int32_t* rowPT_c = PT.data() + (std::size_t)c * n;
        const int32_t* rowP_sa = P.data() + (std::size_t)sa * n;
        const int32_t* rowP_sb = P.data() + (std::size_t)sb * n;
        const int32_t* rowP_c = P.data() + (std::size_t)c * n;
        const int32_t* rowAD_sa = AD.data() + (std::size_t)sa * n;
        const int32_t* rowAD_sb = AD.data() + (std::size_t)sb * n;
        const int32_t* rowAD_c = AD.data() + (std::size_t)c * n;
        const int32_t* rowmulT_sa = mulT.data() + (std::size_t)sa * n;
        const int* rowmul_sa = mul + (std::size_t)sa * n;
        const int* rowmul_sb = mul + (std::size_t)sb * n;
        for (int x = 0; x < n; ++x) {
            // tuple (x, sa, sb)
            int32_t d = t_ab - rowPT_sb[rowmulT_sa[x]] + rowPT_c[x] - rowPT_sa[x];
            if (d % m != 0) return false;
            // tuple (x, x^{-1} sa, sb)
            d = rowPT_sb[rowmulT_sa[invv[x]]] - t_ab + rowAD_c[x] - rowAD_sa[x];
            if (d % m != 0) return false;
            // tuple (sa, x, x^{-1} sb)
            d = rowAD_sb[x] - rowAD_c[rowmul_sa[x]] + t_ab - rowP_sa[x];
            if (d % m != 0) return false;
            // tuple (sa, sb, x)
            d = rowP_sb[x] - rowP_c[x] + rowP_sa[rowmul_sb[x]] - t_ab;
            if (d % m != 0) return false;
        }
    }
    return true;
}

} // namespace

Cochain::Cochain(ModulePtr module, int degree) : module_(std::move(module)), degree_(degree) {
    if (degree_ < 0) throw UnsupportedDegree("cochain degree must be >= 0");
    dim_ = module_->coeffs()->dim();
    size_ = pow_checked(module_->group()->order(), degree_, dim_, "cochain table");
    values_.assign(size_ * (std::size_t)dim_, Rat(0));
}

Cochain::Cochain(ModulePtr module, int degree, std::vector<Rat> flat_values)
    : Cochain(std::move(module), degree) {
    if (flat_values.size() != values_.size())
        throw ParseError("cochain value table has wrong length");
    values_ = std::move(flat_values);
    Value tmp(dim_);
    for (std::size_t i = 0; i < size_; ++i) {
        std::copy(values_.begin() + i * dim_, values_.begin() + (i + 1) * dim_, tmp.begin());
        module_->coeffs()->normalize(tmp);
        std::copy(tmp.begin(), tmp.end(), values_.begin() + i * dim_);
    }
}

void Cochain::set(std::size_t idx, const Value& v) {
    Value n = v;
    module_->coeffs()->normalize(n);
    std::copy(n.begin(), n.end(), values_.begin() + idx * dim_);
}

std::size_t Cochain::index_of_tuple(std::span<const int> tuple) const {
    int n = module_->group()->order();
    std::size_t idx = 0;
    for (int g : tuple) idx = idx * n + (std::size_t)g;
    return idx;
}

std::vector<int> Cochain::tuple_of_index(std::size_t idx) const {
    int n = module_->group()->order();
    std::vector<int> t(degree_);
    for (int i = degree_ - 1; i >= 0; --i) {
        t[i] = (int)(idx % n);
        idx /= n;
    }
    return t;
}

void Cochain::check_compatible(const Cochain& o) const {
    if (module_.get() != o.module_.get() || degree_ != o.degree_)
        throw ModuleMismatch("cochain operands do not match");
}

Cochain Cochain::operator+(const Cochain& o) const {
    check_compatible(o);
    Cochain r(module_, degree_);
    int period = 0;
    if (const auto* mods = residue_moduli(*module_->coeffs(), &period)) {
        std::size_t total = size_ * (std::size_t)dim_;
        for (std::size_t k = 0; k < total; ++k) {
            long long m = (*mods)[k % (std::size_t)period];
            long long s = values_[k].num() + o.values_[k].num();
            r.values_[k] = Rat(((s % m) + m) % m);
        }
        return r;
    }
    Value tmp(dim_);
    for (std::size_t i = 0; i < size_; ++i) {
        for (int j = 0; j < dim_; ++j) tmp[j] = values_[i * dim_ + j] + o.values_[i * dim_ + j];
        r.set(i, tmp);
    }
    return r;
}

Cochain Cochain::operator-(const Cochain& o) const {
    check_compatible(o);
    Cochain r(module_, degree_);
    int period = 0;
    if (const auto* mods = residue_moduli(*module_->coeffs(), &period)) {
        std::size_t total = size_ * (std::size_t)dim_;
        for (std::size_t k = 0; k < total; ++k) {
            long long m = (*mods)[k % (std::size_t)period];
            long long s = values_[k].num() - o.values_[k].num();
            r.values_[k] = Rat(((s % m) + m) % m);
        }
        return r;
    }
    Value tmp(dim_);
    for (std::size_t i = 0; i < size_; ++i) {
        for (int j = 0; j < dim_; ++j) tmp[j] = values_[i * dim_ + j] - o.values_[i * dim_ + j];
        r.set(i, tmp);
    }
    return r;
}

Cochain Cochain::operator-() const {
    Cochain r(module_, degree_);
    Value tmp(dim_);
    for (std::size_t i = 0; i < size_; ++i) {
        for (int j = 0; j < dim_; ++j) tmp[j] = -values_[i * dim_ + j];
        r.set(i, tmp);
    }
    return r;
}

Cochain Cochain::scaled(long long k) const {
    Cochain r(module_, degree_);
    Value tmp(dim_);
    for (std::size_t i = 0; i < size_; ++i) {
        for (int j = 0; j < dim_; ++j) tmp[j] = Rat(k) * values_[i * dim_ + j];
        r.set(i, tmp);
    }
    return r;
}

bool Cochain::operator==(const Cochain& o) const {
    return module_.get() == o.module_.get() && degree_ == o.degree_ && values_ == o.values_;
}

bool Cochain::is_zero() const {
    for (const Rat& x : values_)
        if (!x.is_zero()) return false;
    return true;
}

Cochain Cochain::reinterpret(ModulePtr other) const {
    if (other->group().get() != module_->group().get() ||
        other->coeffs()->dim() != dim_)
        throw ModuleMismatch("reinterpret requires same group and flat dimension");
    return Cochain(std::move(other), degree_, values_);
}

Cochain Cochain::mapped(const ModuleHom& hom) const {
    if (hom.source().get() != module_.get())
        throw ModuleMismatch("cochain is not over the homomorphism's source module");
    Cochain r(hom.target(), degree_);
    for (std::size_t i = 0; i < size_; ++i) r.set(i, hom.apply(value_at(i)));
    return r;
}

// ---------------------------------------------------------------------------

Value coboundary_at(const Cochain& phi, std::span<const int> tuple) {
    const GModule& M = *phi.module();
    const FiniteGroup& G = *M.group();
    const CoefficientGroup& A = *M.coeffs();
    int p = phi.degree();
    if ((int)tuple.size() != p + 1) throw InternalError("coboundary_at: wrong tuple length");

    if (p == 0) {
        Value a = phi.value_at(0);
        return A.sub(M.act(tuple[0], a), a);
    }

    std::vector<int> sub(p);
    // T^{g1} phi(g2..g_{p+1})
    for (int i = 0; i < p; ++i) sub[i] = tuple[i + 1];
    Value acc = M.act(tuple[0], phi.value_at(phi.index_of_tuple(sub)));
    // middle terms (-1)^i phi(..., g_i g_{i+1}, ...)
    for (int i = 1; i <= p; ++i) {
        int k = 0;
        for (int j = 0; j < p + 1; ++j) {
            if (j == i - 1) {
                sub[k++] = G.mul(tuple[i - 1], tuple[i]);
                ++j; // skip the merged slot
            } else {
                sub[k++] = tuple[j];
            }
        }
        Value term = phi.value_at(phi.index_of_tuple(sub));
        acc = (i % 2 == 1) ? A.sub(acc, term) : A.add(acc, term);
    }
    // (-1)^{p+1} phi(g1..gp)
    for (int i = 0; i < p; ++i) sub[i] = tuple[i];
    Value last = phi.value_at(phi.index_of_tuple(sub));
    acc = ((p + 1) % 2 == 1) ? A.sub(acc, last) : A.add(acc, last);
    return acc;
}

Cochain coboundary(const Cochain& phi) {
    Cochain r(phi.module(), phi.degree() + 1);
    std::size_t cells = r.table_size();
    int p = phi.degree();
    if (p >= 1 && p + 1 <= 15 && discrete_trivial(*phi.module())) {
        int n = phi.module()->group()->order();
        int dim = phi.module()->coeffs()->dim();
        const auto& factors = phi.module()->coeffs()->factors();
        Rat* dst = r.flat().data();
        parallel_for(cells, thread_count(), [&](std::size_t idx) {
            int t[16];
            long long acc[16];
            decode_into(idx, n, p + 1, t);
            eval_d_residues(phi, t, acc);
            for (int j = 0; j < dim; ++j) {
                long long m = factors[j];
                dst[idx * (std::size_t)dim + j] = Rat(((acc[j] % m) + m) % m);
            }
        });
        return r;
    }
    parallel_for(cells, thread_count(), [&](std::size_t idx) {
        std::vector<int> t = r.tuple_of_index(idx);
        r.set(idx, coboundary_at(phi, t));
    });
    return r;
}

bool is_cocycle(const Cochain& phi) {
    const FiniteGroup& G = *phi.module()->group();
    const CoefficientGroup& A = *phi.module()->coeffs();
    int p = phi.degree();
    int n = G.order();
    std::size_t full = 1;
    bool fits = true;
    for (int i = 0; i < p + 1 && fits; ++i) {
        if (full > max_table_entries() / (std::size_t)n) fits = false;
        full *= (std::size_t)n;
    }

    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < phi.table_size(); ++i)
        if (!phi.entry_is_zero(i)) support.push_back(i);
    if (support.empty()) return true;
    std::size_t sparse_cost = (std::size_t)(p + 2) * support.size() * (std::size_t)n;

    bool fast = p >= 1 && p + 1 <= 15 && discrete_trivial(*phi.module());
    const auto& factors = A.factors();
    auto check_at = [&](std::span<const int> t) {
        if (fast) {
            long long acc[16];
            eval_d_residues(phi, t.data(), acc);
            for (int j = 0; j < A.dim(); ++j)
                if (acc[j] % factors[j] != 0) return false;
            return true;
        }
        return A.is_zero(coboundary_at(phi, t));
    };

    auto decode = [&](std::size_t idx) {
        std::vector<int> t(p + 1);
        for (int i = p; i >= 0; --i) {
            t[i] = (int)(idx % n);
            idx /= n;
        }
        return t;
    };

    if (fits && (sparse_cost >= full || p == 0)) {
        std::atomic<bool> ok{true};
        parallel_for(full, thread_count(), [&](std::size_t idx) {
            if (!ok.load(std::memory_order_relaxed)) return;
            if (!check_at(decode(idx))) ok.store(false, std::memory_order_relaxed);
        });
        return ok.load();
    }
    if (!fits && sparse_cost >= full)
        throw CapacityExceeded("cocycle check grid");

    if (p == 2 && fast && A.dim() == 1 && n <= 4096 && factors[0] <= 1000000)
        return sparse_check_deg2(phi, support);

    // Support-driven check: visit only tuples whose coboundary formula reads a
    // nonzero cell of phi.
    std::vector<int> t(p + 1);
    for (std::size_t cell : support) {
        std::vector<int> s = phi.tuple_of_index(cell);
        for (int pattern = 0; pattern <= p + 1; ++pattern) {
            for (int x = 0; x < n; ++x) {
                if (pattern == 0) {
                    t[0] = x;
                    for (int i = 0; i < p; ++i) t[i + 1] = s[i];
                } else if (pattern == p + 1) {
                    for (int i = 0; i < p; ++i) t[i] = s[i];
                    t[p] = x;
                } else {
                    // the merged slot g_pattern * g_{pattern+1} equals s[pattern-1]
                    for (int i = 0; i < pattern - 1; ++i) t[i] = s[i];
                    t[pattern - 1] = x;
                    t[pattern] = G.mul(G.inv(x), s[pattern - 1]);
                    for (int i = pattern + 1; i <= p; ++i) t[i] = s[i - 1];
                }
                if (!check_at(t)) return false;
            }
        }
    }
    return true;
}

Rat rho0(const Cochain& phi) {
    const CoefficientGroup& A = *phi.module()->coeffs();
    if (A.discrete_metric()) {
        // All distances are 0/1, so rho0 is the nonzero mass.
        long long k = 0;
        for (std::size_t i = 0; i < phi.table_size(); ++i)
            if (!phi.entry_is_zero(i)) ++k;
        return Rat(k, (long long)phi.table_size());
    }
    std::vector<Rat> dists(phi.table_size());
    parallel_for(phi.table_size(), thread_count(),
                 [&](std::size_t i) { dists[i] = A.rho(phi.value_at(i)); });
    return rho0_from_distances(std::move(dists));
}

Rat rho_inf(const Cochain& phi) {
    const CoefficientGroup& A = *phi.module()->coeffs();
    if (A.discrete_metric()) return phi.is_zero() ? Rat(0) : Rat(1);
    Rat m(0);
    for (std::size_t i = 0; i < phi.table_size(); ++i)
        m = std::max(m, A.rho(phi.value_at(i)));
    return m;
}

bool is_eps_small(const Cochain& phi, const Rat& eps) {
    const CoefficientGroup& A = *phi.module()->coeffs();
    long long bad = 0;
    for (std::size_t i = 0; i < phi.table_size(); ++i)
        if (A.rho(phi.value_at(i)) > eps) ++bad;
    return Rat(bad, (long long)phi.table_size()) < eps;
}

namespace detail {

Cochain dimension_shift_q_unchecked(const Cochain& psi) {
    int p = psi.degree();
    const GroupPtr& G = psi.module()->group();
    int n = G->order();
    int bd = psi.module()->coeffs()->dim();
    ModulePtr ind = GModule::induced_of(psi.module());
    Cochain r(ind, p - 1);
    int sign = (p % 2 == 0) ? 1 : -1;

    if (psi.module()->coeffs()->kind() == CoeffKind::FiniteAbelian) {
        // residues can be copied (or negated mod m) straight into the table
        const auto& factors = psi.module()->coeffs()->factors();
        const Rat* src = psi.flat().data();
        Rat* dst = r.flat().data();
        parallel_for(r.table_size(), thread_count(), [&](std::size_t idx) {
            std::vector<int> t = r.tuple_of_index(idx);
            int prod = 0;
            for (int g : t) prod = G->mul(prod, g);
            int q = G->inv(prod);
            std::vector<int> full(p);
            for (int i = 0; i < p - 1; ++i) full[i] = t[i];
            Rat* out = dst + idx * (std::size_t)n * bd;
            for (int h = 0; h < n; ++h) {
                full[p - 1] = G->mul(q, h);
                const Rat* v = src + psi.index_of_tuple(full) * (std::size_t)bd;
                for (int j = 0; j < bd; ++j) {
                    long long x = v[j].num();
                    out[(std::size_t)h * bd + j] =
                        (sign < 0 && x != 0) ? Rat(factors[j] - x) : v[j];
                }
            }
        });
        return r;
    }

    parallel_for(r.table_size(), thread_count(), [&](std::size_t idx) {
        std::vector<int> t = r.tuple_of_index(idx);
        int prod = 0; // g_1 g_2 ... g_{p-1}
        for (int g : t) prod = G->mul(prod, g);
        int q = G->inv(prod);
        Value block((std::size_t)n * bd);
        std::vector<int> full(p);
        for (int i = 0; i < p - 1; ++i) full[i] = t[i];
        for (int h = 0; h < n; ++h) {
            full[p - 1] = G->mul(q, h);
            Value v = psi.value_at(psi.index_of_tuple(full));
            if (sign < 0) v = psi.module()->coeffs()->neg(v);
            std::copy(v.begin(), v.end(), block.begin() + (std::size_t)h * bd);
        }
        r.set(idx, block);
    });
    return r;
}

} // namespace detail

Cochain dimension_shift_Q(const Cochain& psi) {
    if (psi.degree() < 1) throw UnsupportedDegree("Q needs degree >= 1");
    if (!is_cocycle(psi)) throw NotACocycle("Q applies to cocycles only");
    return detail::dimension_shift_q_unchecked(psi);
}

Cochain average_kappa(const Cochain& psi) {
    if (psi.module()->coeffs()->kind() != CoeffKind::RationalVector)
        throw WrongCoefficientKind("averaging needs rational vector coefficients");
    int p = psi.degree();
    if (p < 1) throw UnsupportedDegree("averaging needs degree >= 1");
    if (!is_cocycle(psi)) throw NotACocycle("averaging applies to cocycles only");

    const GroupPtr& G = psi.module()->group();
    const CoefficientGroup& A = *psi.module()->coeffs();
    int n = G->order();
    Cochain r(psi.module(), p - 1);
    Rat sign = (p % 2 == 0) ? Rat(1) : Rat(-1);

    parallel_for(r.table_size(), thread_count(), [&](std::size_t idx) {
        std::vector<int> t = r.tuple_of_index(idx);
        int prod = 0;
        for (int g : t) prod = G->mul(prod, g);
        int q = G->inv(prod);
        std::vector<int> full(p);
        for (int i = 0; i < p - 1; ++i) full[i] = t[i];
        Value acc = A.zero();
        for (int h = 0; h < n; ++h) {
            full[p - 1] = G->mul(q, h);
            acc = A.add(acc, psi.value_at(psi.index_of_tuple(full)));
        }
        for (Rat& x : acc) x = sign * x / Rat(n);
        r.set(idx, acc);
    });
    return r;
}

bool sqrt_smallness_holds(const Cochain& induced_valued, const Rat& eps) {
    const CoeffPtr& C = induced_valued.module()->coeffs();
    if (C->kind() != CoeffKind::Induced && C->kind() != CoeffKind::Quotient)
        throw WrongCoefficientKind("sqrt-smallness check needs C(G,A) values");
    const ModulePtr& base = C->base();
    int n = base->group()->order();
    int bd = base->coeffs()->dim();
    bool base_discrete = base->coeffs()->discrete_metric();
    bool one_is_bad = Rat(1) >= eps; // whether a distance of 1 exceeds sqrt(eps)
    long long outer_bad = 0;
    Value block(bd);
    for (std::size_t i = 0; i < induced_valued.table_size(); ++i) {
        auto f = induced_valued.at(i);
        long long inner_bad = 0;
        if (base_discrete) {
            // Block distances are 0/1: only nonzero blocks can be bad.
            if (one_is_bad)
                for (int h = 0; h < n; ++h)
                    for (int j = 0; j < bd; ++j)
                        if (!f[(std::size_t)h * bd + j].is_zero()) {
                            ++inner_bad;
                            break;
                        }
            Rat im(inner_bad, n);
            if (im * im >= eps) ++outer_bad;
            continue;
        }
        for (int h = 0; h < n; ++h) {
            std::copy(f.begin() + (std::size_t)h * bd, f.begin() + (std::size_t)(h + 1) * bd,
                      block.begin());
            Rat d = base->coeffs()->rho(block);
            if (d * d >= eps) ++inner_bad; // rho >= sqrt(eps), squared
        }
        Rat im(inner_bad, n);
        if (im * im >= eps) ++outer_bad; // inner mass >= sqrt(eps), squared
    }
    Rat om(outer_bad, (long long)induced_valued.table_size());
    return om * om < eps;
}

Cochain project_to_quotient(const Cochain& induced_valued, const ModulePtr& quotient_module) {
    // Normalization of a Quotient value canonicalizes it.
    return induced_valued.reinterpret(quotient_module);
}

Cochain lift_from_quotient(const Cochain& quotient_valued, const ModulePtr& induced_module) {
    return quotient_valued.reinterpret(induced_module);
}

Cochain identify_constants(const Cochain& induced_valued, const ModulePtr& base_module) {
    const GModule& ind = *induced_valued.module();
    Cochain r(base_module, induced_valued.degree());
    for (std::size_t i = 0; i < induced_valued.table_size(); ++i) {
        auto c = constant_value_of(induced_valued.value_at(i), ind);
        if (!c) throw InternalError("expected a constant-valued map at tuple " + std::to_string(i));
        r.set(i, *c);
    }
    return r;
}

Cochain embed_as_constants(const Cochain& base_valued, const ModulePtr& induced_module) {
    Cochain r(induced_module, base_valued.degree());
    for (std::size_t i = 0; i < base_valued.table_size(); ++i)
        r.set(i, embed_constants(base_valued.value_at(i), *induced_module));
    return r;
}

} // namespace cocyclelab
