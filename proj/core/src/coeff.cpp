#include "cocyclelab/coeff.hpp"

#include <algorithm>
#include <map>

#include "cocyclelab/errors.hpp"

namespace cocyclelab {

// rho_0 for a finite tuple of pointwise distances with uniform mass 1/n:
// inf { eps : mass{rho > eps} < eps }, evaluated exactly over the breakpoint
// set {distances} + {suffix masses}.
Rat rho0_from_distances(std::vector<Rat> v) {
    long long n = (long long)v.size();
    if (n == 0) return Rat(0);
    std::sort(v.begin(), v.end());
    auto mass_above = [&](const Rat& c) {
        // number of entries strictly greater than c
        auto it = std::upper_bound(v.begin(), v.end(), c);
        return Rat((long long)(v.end() - it), n);
    };
    std::vector<Rat> candidates;
    candidates.push_back(Rat(0));
    for (const Rat& x : v) candidates.push_back(x);
    for (long long k = 0; k <= n; ++k) candidates.push_back(Rat(k, n));
    std::sort(candidates.begin(), candidates.end());
    for (const Rat& c : candidates)
        if (mass_above(c) <= c) return c;
    return Rat(1); // unreachable: c = 1 always satisfies mass <= 1
}

namespace {

bool is_integer_vec(const std::vector<Rat>& v) {
    for (const Rat& x : v)
        if (!x.is_integer()) return false;
    return true;
}

} // namespace

CoeffPtr CoefficientGroup::free_abelian(int rank) {
    if (rank < 1) throw ParseError("free abelian rank must be >= 1");
    auto c = std::shared_ptr<CoefficientGroup>(new CoefficientGroup());
    c->kind_ = CoeffKind::FreeAbelian;
    c->dim_ = rank;
    return c;
}

CoeffPtr CoefficientGroup::finite_abelian(std::vector<long long> factors) {
    if (factors.empty()) throw ParseError("finite abelian needs at least one factor");
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i] < 1) throw ParseError("invariant factors must be positive");
        if (i > 0 && factors[i] % factors[i - 1] != 0)
            throw DivisibilityError("invariant factors must form a divisibility chain");
    }
    auto c = std::shared_ptr<CoefficientGroup>(new CoefficientGroup());
    c->kind_ = CoeffKind::FiniteAbelian;
    c->dim_ = (int)factors.size();
    c->factors_ = std::move(factors);
    return c;
}

CoeffPtr CoefficientGroup::rational_vector(int dim) {
    if (dim < 1) throw ParseError("rational vector dimension must be >= 1");
    auto c = std::shared_ptr<CoefficientGroup>(new CoefficientGroup());
    c->kind_ = CoeffKind::RationalVector;
    c->dim_ = dim;
    return c;
}

CoeffPtr CoefficientGroup::rational_torus(int dim) {
    if (dim < 1) throw ParseError("rational torus dimension must be >= 1");
    auto c = std::shared_ptr<CoefficientGroup>(new CoefficientGroup());
    c->kind_ = CoeffKind::RationalTorus;
    c->dim_ = dim;
    return c;
}

CoeffPtr CoefficientGroup::induced(ModulePtr base) {
    auto c = std::shared_ptr<CoefficientGroup>(new CoefficientGroup());
    c->kind_ = CoeffKind::Induced;
    c->dim_ = base->group()->order() * base->coeffs()->dim();
    c->base_ = std::move(base);
    return c;
}

CoeffPtr CoefficientGroup::quotient(ModulePtr base) {
    auto c = std::shared_ptr<CoefficientGroup>(new CoefficientGroup());
    c->kind_ = CoeffKind::Quotient;
    c->dim_ = base->group()->order() * base->coeffs()->dim();
    c->base_ = std::move(base);
    return c;
}

bool CoefficientGroup::finite() const { return kind_ == CoeffKind::FiniteAbelian; }

long long CoefficientGroup::count() const {
    if (!finite()) throw WrongCoefficientKind("element enumeration needs a finite kind");
    long long c = 1;
    for (long long m : factors_) {
        if (c > (1LL << 40) / m) throw CapacityExceeded("finite coefficient group too large");
        c *= m;
    }
    return c;
}

Value CoefficientGroup::element(long long index) const {
    long long c = count();
    if (index < 0 || index >= c) throw InternalError("coefficient element index out of range");
    Value v(dim_);
    for (int i = dim_ - 1; i >= 0; --i) {
        v[i] = Rat(index % factors_[i]);
        index /= factors_[i];
    }
    return v;
}

long long CoefficientGroup::index_of(const Value& v) const {
    count(); // kind check
    long long idx = 0;
    for (int i = 0; i < dim_; ++i) {
        if (!v[i].is_integer()) throw InternalError("non-integer finite abelian value");
        long long x = ((v[i].num() % factors_[i]) + factors_[i]) % factors_[i];
        idx = idx * factors_[i] + x;
    }
    return idx;
}

void CoefficientGroup::normalize(Value& v) const {
    if ((int)v.size() != dim_) throw InternalError("value has wrong dimension");
    switch (kind_) {
    case CoeffKind::FreeAbelian:
        for (const Rat& x : v)
            if (!x.is_integer()) throw InternalError("non-integer free abelian value");
        break;
    case CoeffKind::FiniteAbelian:
        for (int i = 0; i < dim_; ++i) {
            if (!v[i].is_integer()) throw InternalError("non-integer finite abelian value");
            long long m = factors_[i];
            v[i] = Rat(((v[i].num() % m) + m) % m);
        }
        break;
    case CoeffKind::RationalVector:
        break;
    case CoeffKind::RationalTorus:
        for (int i = 0; i < dim_; ++i) v[i] = v[i].mod1();
        break;
    case CoeffKind::Induced: {
        int bd = base_->coeffs()->dim();
        int n = base_->group()->order();
        Value block(bd);
        for (int h = 0; h < n; ++h) {
            std::copy(v.begin() + (std::size_t)h * bd, v.begin() + (std::size_t)(h + 1) * bd,
                      block.begin());
            base_->coeffs()->normalize(block);
            std::copy(block.begin(), block.end(), v.begin() + (std::size_t)h * bd);
        }
        break;
    }
    case CoeffKind::Quotient: {
        // Canonical coset representative of v + iota(A).
        v = select_lift(v, *base_);
        break;
    }
    }
}

Value CoefficientGroup::add(const Value& a, const Value& b) const {
    Value r(dim_);
    for (int i = 0; i < dim_; ++i) r[i] = a[i] + b[i];
    normalize(r);
    return r;
}

Value CoefficientGroup::sub(const Value& a, const Value& b) const {
    Value r(dim_);
    for (int i = 0; i < dim_; ++i) r[i] = a[i] - b[i];
    normalize(r);
    return r;
}

Value CoefficientGroup::neg(const Value& a) const {
    Value r(dim_);
    for (int i = 0; i < dim_; ++i) r[i] = -a[i];
    normalize(r);
    return r;
}

Value CoefficientGroup::scale(long long k, const Value& a) const {
    Value r(dim_);
    for (int i = 0; i < dim_; ++i) r[i] = Rat(k) * a[i];
    normalize(r);
    return r;
}

bool CoefficientGroup::eq(const Value& a, const Value& b) const {
    for (int i = 0; i < dim_; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

bool CoefficientGroup::is_zero(const Value& a) const {
    for (const Rat& x : a)
        if (!x.is_zero()) return false;
    return true;
}

Rat CoefficientGroup::rho(const Value& a) const {
    switch (kind_) {
    case CoeffKind::FreeAbelian:
    case CoeffKind::FiniteAbelian:
        return is_zero(a) ? Rat(0) : Rat(1);
    case CoeffKind::RationalVector: {
        Rat m(0);
        for (const Rat& x : a) m = std::max(m, x.abs());
        return m;
    }
    case CoeffKind::RationalTorus: {
        Rat m(0);
        for (const Rat& x : a) m = std::max(m, std::min(x, Rat(1) - x));
        return m;
    }
    case CoeffKind::Induced:
    case CoeffKind::Quotient: {
        int bd = base_->coeffs()->dim();
        int n = base_->group()->order();
        if (base_->coeffs()->discrete_metric()) {
            // Block distances are 0/1, so rho0 is just the nonzero mass.
            long long k = 0;
            for (int h = 0; h < n; ++h) {
                bool nz = false;
                for (int j = 0; j < bd; ++j)
                    if (!a[(std::size_t)h * bd + j].is_zero()) { nz = true; break; }
                if (nz) ++k;
            }
            return Rat(k, n);
        }
        std::vector<Rat> dists(n);
        Value block(bd);
        for (int h = 0; h < n; ++h) {
            std::copy(a.begin() + (std::size_t)h * bd, a.begin() + (std::size_t)(h + 1) * bd,
                      block.begin());
            dists[h] = base_->coeffs()->rho(block);
        }
        return rho0_from_distances(std::move(dists));
    }
    }
    throw InternalError("unknown coefficient kind");
}

bool CoefficientGroup::less(const Value& a, const Value& b) const {
    for (int i = 0; i < dim_; ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return false;
}

std::string CoefficientGroup::describe() const {
    switch (kind_) {
    case CoeffKind::FreeAbelian: return "Z^" + std::to_string(dim_);
    case CoeffKind::FiniteAbelian: {
        std::string s;
        for (long long m : factors_) s += (s.empty() ? "Z/" : " x Z/") + std::to_string(m);
        return s;
    }
    case CoeffKind::RationalVector: return "Q^" + std::to_string(dim_);
    case CoeffKind::RationalTorus: return "(Q/Z)^" + std::to_string(dim_);
    case CoeffKind::Induced: return "C(G," + base_->coeffs()->describe() + ")";
    case CoeffKind::Quotient: return "C(G," + base_->coeffs()->describe() + ")/const";
    }
    return "?";
}

// ---------------------------------------------------------------------------

ModulePtr GModule::trivial(GroupPtr g, CoeffPtr c) {
    auto m = std::shared_ptr<GModule>(new GModule());
    m->group_ = std::move(g);
    m->coeffs_ = std::move(c);
    m->action_ = ActionKind::Trivial;
    m->isometric_ = true;
    return m;
}

ModulePtr GModule::with_matrices(GroupPtr g, CoeffPtr c,
                                 std::vector<std::vector<Rat>> matrices) {
    auto m = std::shared_ptr<GModule>(new GModule());
    m->group_ = std::move(g);
    m->coeffs_ = std::move(c);
    m->action_ = ActionKind::Matrices;
    m->matrices_ = std::move(matrices);
    m->validate_matrices();
    m->compute_isometric();
    return m;
}

ModulePtr GModule::induced_of(const ModulePtr& base) {
    auto m = std::shared_ptr<GModule>(new GModule());
    m->group_ = base->group();
    m->coeffs_ = CoefficientGroup::induced(base);
    m->action_ = ActionKind::Diagonal;
    m->isometric_ = base->isometric();
    return m;
}

ModulePtr GModule::quotient_of(const ModulePtr& base) {
    auto m = std::shared_ptr<GModule>(new GModule());
    m->group_ = base->group();
    m->coeffs_ = CoefficientGroup::quotient(base);
    m->action_ = ActionKind::Diagonal;
    m->isometric_ = base->isometric();
    return m;
}

bool GModule::trivial_action() const { return action_ == ActionKind::Trivial; }

void GModule::validate_matrices() const {
    int n = group_->order(), d = coeffs_->dim();
    if ((int)matrices_.size() != n) throw ParseError("need one action matrix per group element");
    for (const auto& m : matrices_)
        if ((int)m.size() != (std::size_t)d * d) throw ParseError("action matrix has wrong shape");
    CoeffKind k = coeffs_->kind();
    if (k == CoeffKind::Induced || k == CoeffKind::Quotient)
        throw ParseError("induced modules carry the diagonal action, not matrices");
    if (k != CoeffKind::RationalVector) {
        for (const auto& m : matrices_)
            if (!is_integer_vec(m)) throw ParseError("action matrices must be integral");
    }
    // Identity acts as the identity matrix.
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (matrices_[0][(std::size_t)i * d + j] != Rat(i == j ? 1 : 0))
                throw GroupAxiomError("identity element must act as the identity matrix");
    // Relations respected: m_j * M e_j = 0 in the target presentation.
    if (k == CoeffKind::FiniteAbelian) {
        const auto& f = coeffs_->factors();
        for (const auto& m : matrices_)
            for (int j = 0; j < d; ++j)
                for (int i = 0; i < d; ++i) {
                    long long e = m[(std::size_t)i * d + j].num();
                    if ((__int128)e * f[j] % f[i] != 0)
                        throw GroupAxiomError("action matrix does not respect the relations");
                }
    }
    // Action law, exhaustive; forces invertibility via the inverse element.
    auto same_map = [&](const std::vector<Rat>& a, const std::vector<Rat>& b) {
        if (k == CoeffKind::FiniteAbelian) {
            const auto& f = coeffs_->factors();
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    Rat diff = a[(std::size_t)i * d + j] - b[(std::size_t)i * d + j];
                    if (!diff.is_integer() || diff.num() % f[i] != 0) return false;
                }
            return true;
        }
        return a == b;
    };
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            std::vector<Rat> prod((std::size_t)d * d, Rat(0));
            for (int i = 0; i < d; ++i)
                for (int l = 0; l < d; ++l) {
                    const Rat& x = matrices_[g][(std::size_t)i * d + l];
                    if (x.is_zero()) continue;
                    for (int j = 0; j < d; ++j)
                        prod[(std::size_t)i * d + j] += x * matrices_[h][(std::size_t)l * d + j];
                }
            if (!same_map(prod, matrices_[group_->mul(g, h)]))
                throw GroupAxiomError("action matrices are not a group homomorphism at (" +
                                      std::to_string(g) + "," + std::to_string(h) + ")");
        }
}

void GModule::compute_isometric() {
    if (coeffs_->discrete_metric()) {
        isometric_ = true;
        return;
    }
    int d = coeffs_->dim();
    auto signed_perm = [&](const std::vector<Rat>& m) {
        for (int i = 0; i < d; ++i) {
            int nz = 0;
            for (int j = 0; j < d; ++j) {
                const Rat& x = m[(std::size_t)i * d + j];
                if (!x.is_zero()) {
                    ++nz;
                    if (x != Rat(1) && x != Rat(-1)) return false;
                }
            }
            if (nz != 1) return false;
        }
        return true;
    };
    isometric_ = true;
    for (const auto& m : matrices_)
        if (!signed_perm(m)) { isometric_ = false; break; }
    if (isometric_) return;
    // Fallback: verify rho-preservation on the documented test set
    // {e_i, e_i + e_j, e_i - e_j}.
    std::vector<Value> tests;
    for (int i = 0; i < d; ++i) {
        Value e(d, Rat(0));
        e[i] = Rat(1);
        tests.push_back(e);
        for (int j = i + 1; j < d; ++j) {
            Value s(d, Rat(0)), t(d, Rat(0));
            s[i] = Rat(1); s[j] = Rat(1);
            t[i] = Rat(1); t[j] = Rat(-1);
            tests.push_back(s);
            tests.push_back(t);
        }
    }
    isometric_ = true;
    for (int g = 0; g < group_->order() && isometric_; ++g)
        for (const Value& v0 : tests) {
            Value v = v0;
            coeffs_->normalize(v);
            if (coeffs_->rho(act(g, v)) != coeffs_->rho(v)) { isometric_ = false; break; }
        }
}

Value GModule::act(int g, const Value& v) const {
    switch (action_) {
    case ActionKind::Trivial:
        return v;
    case ActionKind::Matrices: {
        int d = coeffs_->dim();
        Value r(d, Rat(0));
        const auto& m = matrices_[g];
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const Rat& x = m[(std::size_t)i * d + j];
                if (!x.is_zero()) r[i] += x * v[j];
            }
        coeffs_->normalize(r);
        return r;
    }
    case ActionKind::Diagonal: {
        // (R^g f)(h) = T^g ( f(g^{-1} h) )
        const ModulePtr& base = coeffs_->base();
        int n = group_->order();
        int bd = base->coeffs()->dim();
        int gi = group_->inv(g);
        Value r((std::size_t)n * bd);
        Value block(bd);
        for (int h = 0; h < n; ++h) {
            int src = group_->mul(gi, h);
            std::copy(v.begin() + (std::size_t)src * bd, v.begin() + (std::size_t)(src + 1) * bd,
                      block.begin());
            Value tb = base->act(g, block);
            std::copy(tb.begin(), tb.end(), r.begin() + (std::size_t)h * bd);
        }
        coeffs_->normalize(r); // canonicalizes again for Quotient
        return r;
    }
    }
    throw InternalError("unknown action kind");
}

ModulePtr GModule::pullback(const GroupHom& pi) const {
    if (pi.target().get() != group_.get())
        throw ModuleMismatch("pullback homomorphism does not land in the module's group");
    if (action_ == ActionKind::Trivial) return GModule::trivial(pi.source(), coeffs_);
    if (action_ == ActionKind::Diagonal)
        throw ModuleMismatch("cannot pull back an induced module");
    std::vector<std::vector<Rat>> mats(pi.source()->order());
    for (int g = 0; g < pi.source()->order(); ++g) mats[g] = matrices_[pi(g)];
    return GModule::with_matrices(pi.source(), coeffs_, std::move(mats));
}

std::string GModule::describe() const {
    return coeffs_->describe() + " over " +
           (group_->label().empty() ? "G" : group_->label()) +
           (trivial_action() ? " (trivial action)" : "");
}

// ---------------------------------------------------------------------------

Value embed_constants(const Value& a, const GModule& induced_module) {
    const CoeffPtr& c = induced_module.coeffs();
    if (c->kind() != CoeffKind::Induced && c->kind() != CoeffKind::Quotient)
        throw WrongCoefficientKind("embed_constants needs an induced module");
    const ModulePtr& base = c->base();
    int n = base->group()->order(), bd = base->coeffs()->dim();
    Value av = a;
    base->coeffs()->normalize(av);
    Value r((std::size_t)n * bd);
    for (int h = 0; h < n; ++h) std::copy(av.begin(), av.end(), r.begin() + (std::size_t)h * bd);
    return r;
}

std::optional<Value> constant_value_of(const Value& f, const GModule& induced_module) {
    const ModulePtr& base = induced_module.coeffs()->base();
    int n = base->group()->order(), bd = base->coeffs()->dim();
    Value first(f.begin(), f.begin() + bd);
    for (int h = 1; h < n; ++h)
        for (int i = 0; i < bd; ++i)
            if (f[(std::size_t)h * bd + i] != first[i]) return std::nullopt;
    return first;
}

Value select_lift(const Value& f, const GModule& base_module) {
    const GModule& base = base_module;
    int n = base.group()->order(), bd = base.coeffs()->dim();
    if ((int)f.size() != n * bd) throw InternalError("select_lift: wrong carrier size");

    // Candidate constants: values attained by f, plus zero.
    std::map<Value, int> counts; // value -> multiplicity, keyed in lexicographic order
    Value block(bd);
    for (int h = 0; h < n; ++h) {
        std::copy(f.begin() + (std::size_t)h * bd, f.begin() + (std::size_t)(h + 1) * bd,
                  block.begin());
        counts[block] += 1;
    }
    counts[base.coeffs()->zero()] += 0;

    auto subtract_const = [&](const Value& a) {
        Value r((std::size_t)n * bd);
        Value tmp(bd);
        for (int h = 0; h < n; ++h) {
            std::copy(f.begin() + (std::size_t)h * bd, f.begin() + (std::size_t)(h + 1) * bd,
                      tmp.begin());
            Value d = base.coeffs()->sub(tmp, a);
            std::copy(d.begin(), d.end(), r.begin() + (std::size_t)h * bd);
        }
        return r;
    };

    if (base.coeffs()->discrete_metric()) {
        // rho_0(f - iota(a)) = 1 - count(a)/n: the modal value wins.
        int best = -1;
        std::optional<Value> lift;
        for (const auto& [a, c] : counts) {
            if (c < best) continue;
            Value cand = subtract_const(a);
            if (c > best || (lift && std::lexicographical_compare(
                                         cand.begin(), cand.end(), lift->begin(), lift->end(),
                                         [](const Rat& x, const Rat& y) { return x < y; }))) {
                best = c;
                lift = std::move(cand);
            }
        }
        return *lift;
    }

    std::optional<Value> lift;
    std::optional<Rat> best;
    auto induced = CoefficientGroup::induced(base.shared_from_this());
    for (const auto& [a, c] : counts) {
        Value cand = subtract_const(a);
        Rat r = induced->rho(cand);
        bool take = !best || r < *best ||
                    (r == *best && std::lexicographical_compare(
                                       cand.begin(), cand.end(), lift->begin(), lift->end(),
                                       [](const Rat& x, const Rat& y) { return x < y; }));
        if (take) {
            best = r;
            lift = std::move(cand);
        }
    }
    return *lift;
}

// ---------------------------------------------------------------------------

ModuleHom::ModuleHom(ModulePtr source, ModulePtr target, std::vector<Rat> matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (source_->group().get() != target_->group().get())
        throw ModuleMismatch("module homomorphism endpoints live over different groups");
    int ds = source_->coeffs()->dim(), dt = target_->coeffs()->dim();
    if ((int)matrix_.size() != (std::size_t)dt * ds)
        throw ParseError("module homomorphism matrix has wrong shape");
    // Well-definedness on the source relations.
    if (source_->coeffs()->kind() == CoeffKind::FiniteAbelian) {
        const auto& f = source_->coeffs()->factors();
        for (int j = 0; j < ds; ++j) {
            Value col(dt);
            for (int i = 0; i < dt; ++i) col[i] = Rat(f[j]) * matrix_[(std::size_t)i * ds + j];
            target_->coeffs()->normalize(col);
            if (!target_->coeffs()->is_zero(col))
                throw ModuleMismatch("module homomorphism does not kill the source relations");
        }
    }
    // Equivariance, checked on the source basis vectors.
    for (int g = 0; g < source_->group()->order(); ++g)
        for (int j = 0; j < ds; ++j) {
            Value e(ds, Rat(0));
            e[j] = Rat(1);
            source_->coeffs()->normalize(e);
            Value lhs = target_->act(g, apply(e));
            Value rhs = apply(source_->act(g, e));
            if (!target_->coeffs()->eq(lhs, rhs))
                throw ModuleMismatch("module homomorphism is not action-equivariant");
        }
}

Value ModuleHom::apply(const Value& v) const {
    int ds = source_->coeffs()->dim(), dt = target_->coeffs()->dim();
    Value r(dt, Rat(0));
    for (int i = 0; i < dt; ++i)
        for (int j = 0; j < ds; ++j) {
            const Rat& x = matrix_[(std::size_t)i * ds + j];
            if (!x.is_zero()) r[i] += x * v[j];
        }
    target_->coeffs()->normalize(r);
    return r;
}

} // namespace cocyclelab
