#include "cocyclelab/group.hpp"

#include <numeric>

#include "cocyclelab/errors.hpp"

namespace cocyclelab {

FiniteGroup::FiniteGroup(int order, std::vector<int> mul, std::string label)
    : n_(order), mul_(std::move(mul)), label_(std::move(label)) {
    if (n_ < 1) throw GroupAxiomError("order must be positive");
    if (mul_.size() != (std::size_t)n_ * n_)
        throw GroupAxiomError("multiplication table has wrong size");
    validate();
    inv_.assign(n_, -1);
    for (int g = 0; g < n_; ++g)
        for (int h = 0; h < n_; ++h)
            if (this->mul(g, h) == 0 && this->mul(h, g) == 0) inv_[g] = h;
    for (int g = 0; g < n_; ++g)
        if (inv_[g] < 0)
            throw GroupAxiomError("element " + std::to_string(g) + " has no two-sided inverse");
}

void FiniteGroup::validate() const {
    for (int g = 0; g < n_; ++g)
        for (int h = 0; h < n_; ++h) {
            int v = mul(g, h);
            if (v < 0 || v >= n_)
                throw GroupAxiomError("entry mul(" + std::to_string(g) + "," + std::to_string(h) +
                                      ") out of range");
        }
    for (int g = 0; g < n_; ++g) {
        if (mul(0, g) != g || mul(g, 0) != g)
            throw GroupAxiomError("index 0 is not a two-sided identity at element " +
                                  std::to_string(g));
    }
    // Exhaustive associativity; names the first failing triple.
    for (int g = 0; g < n_; ++g)
        for (int h = 0; h < n_; ++h) {
            int gh = mul(g, h);
            for (int k = 0; k < n_; ++k)
                if (mul(gh, k) != mul(g, mul(h, k)))
                    throw GroupAxiomError("associativity fails at (" + std::to_string(g) + "," +
                                          std::to_string(h) + "," + std::to_string(k) + ")");
        }
}

bool FiniteGroup::is_abelian() const {
    for (int g = 0; g < n_; ++g)
        for (int h = g + 1; h < n_; ++h)
            if (mul(g, h) != mul(h, g)) return false;
    return true;
}

int FiniteGroup::element_order(int g) const {
    int k = 1, x = g;
    while (x != 0) {
        x = mul(x, g);
        ++k;
    }
    return k;
}

long long FiniteGroup::exponent() const {
    long long e = 1;
    for (int g = 0; g < n_; ++g) e = std::lcm(e, (long long)element_order(g));
    return e;
}

GroupPtr make_cyclic(int n) {
    if (n < 1) throw GroupAxiomError("cyclic order must be >= 1");
    std::vector<int> mul((std::size_t)n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mul[(std::size_t)i * n + j] = (i + j) % n;
    return std::make_shared<FiniteGroup>(n, std::move(mul), "Z/" + std::to_string(n));
}

GroupPtr make_product(const GroupPtr& g, const GroupPtr& h) {
    int a = g->order(), b = h->order(), n = a * b;
    std::vector<int> mul((std::size_t)n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int gi = i / b, hi = i % b, gj = j / b, hj = j % b;
            mul[(std::size_t)i * n + j] = g->mul(gi, gj) * b + h->mul(hi, hj);
        }
    std::string label = g->label() + "x" + h->label();
    return std::make_shared<FiniteGroup>(n, std::move(mul), label);
}

GroupPtr make_s3() {
    // Permutations of {0,1,2} listed with the identity first; composition
    // (p*q)(x) = p(q(x)).
    const int perms[6][3] = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    std::vector<int> mul(36);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            int comp[3];
            for (int x = 0; x < 3; ++x) comp[x] = perms[i][perms[j][x]];
            int idx = -1;
            for (int k = 0; k < 6; ++k)
                if (perms[k][0] == comp[0] && perms[k][1] == comp[1] && perms[k][2] == comp[2])
                    idx = k;
            mul[(std::size_t)i * 6 + j] = idx;
        }
    return std::make_shared<FiniteGroup>(6, std::move(mul), "S3");
}

GroupHom::GroupHom(GroupPtr source, GroupPtr target, std::vector<int> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
    int n = source_->order(), m = target_->order();
    if ((int)map_.size() != n) throw GroupAxiomError("homomorphism table has wrong size");
    for (int g = 0; g < n; ++g)
        if (map_[g] < 0 || map_[g] >= m)
            throw GroupAxiomError("homomorphism value out of range at " + std::to_string(g));
    if (map_[0] != 0) throw GroupAxiomError("homomorphism does not fix the identity");
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            if (map_[source_->mul(g, h)] != target_->mul(map_[g], map_[h]))
                throw GroupAxiomError("homomorphism not multiplicative at (" + std::to_string(g) +
                                      "," + std::to_string(h) + ")");
    std::vector<char> hit(m, 0);
    for (int g = 0; g < n; ++g) hit[map_[g]] = 1;
    surjective_ = true;
    for (int t = 0; t < m; ++t)
        if (!hit[t]) surjective_ = false;
    injective_ = true;
    for (int g = 1; g < n; ++g)
        if (map_[g] == 0) injective_ = false;
}

GroupHom GroupHom::identity(const GroupPtr& g) {
    std::vector<int> map(g->order());
    std::iota(map.begin(), map.end(), 0);
    return GroupHom(g, g, std::move(map));
}

GroupHom GroupHom::compose(const GroupHom& outer, const GroupHom& inner) {
    if (inner.target()->order() != outer.source()->order())
        throw ModuleMismatch("homomorphism composition domains do not match");
    std::vector<int> map(inner.source()->order());
    for (int g = 0; g < (int)map.size(); ++g) map[g] = outer(inner(g));
    return GroupHom(inner.source(), outer.target(), std::move(map));
}

GroupHom make_quotient_hom(int n, int k) {
    if (n < 1 || k < 1) throw DivisibilityError("orders must be positive");
    if (n % k != 0)
        throw DivisibilityError(std::to_string(k) + " does not divide " + std::to_string(n));
    std::vector<int> map(n);
    for (int i = 0; i < n; ++i) map[i] = i % k;
    return GroupHom(make_cyclic(n), make_cyclic(k), std::move(map));
}

Tower::Tower(std::vector<GroupPtr> levels, std::vector<GroupHom> steps)
    : levels_(std::move(levels)), steps_(std::move(steps)) {
    if (levels_.empty()) throw ParseError("tower needs at least one level");
    if (steps_.size() + 1 != levels_.size())
        throw ParseError("tower needs one step per consecutive level pair");
    for (std::size_t m = 0; m < steps_.size(); ++m) {
        if (steps_[m].source().get() != levels_[m + 1].get() ||
            steps_[m].target().get() != levels_[m].get())
            throw ParseError("tower step " + std::to_string(m) + " does not connect its levels");
        if (!steps_[m].surjective())
            throw GroupAxiomError("tower step " + std::to_string(m) + " is not surjective");
    }
}

GroupHom Tower::composite(int m, int k) const {
    if (k > m || k < 0 || m >= (int)levels_.size())
        throw ParseError("bad tower composite indices");
    GroupHom h = GroupHom::identity(levels_[m]);
    for (int i = m - 1; i >= k; --i) h = GroupHom::compose(steps_[i], h);
    return h;
}

} // namespace cocyclelab
