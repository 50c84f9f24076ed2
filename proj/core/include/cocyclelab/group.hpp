#ifndef COCYCLELAB_GROUP_HPP
#define COCYCLELAB_GROUP_HPP

#include <memory>
#include <string>
#include <vector>

#include "cocyclelab/rat.hpp"

namespace cocyclelab {

/// A finite group given by its multiplication table on indices 0..n-1.
/// Index 0 is always the identity.  Instances are validated eagerly and
/// immutable afterwards; the uniform Haar probability never exists as an
/// object, tuple masses are computed as exact rationals count/n^p.
class FiniteGroup {
public:
    FiniteGroup(int order, std::vector<int> mul, std::string label = "");

    int order() const { return n_; }
    int mul(int g, int h) const { return mul_[(std::size_t)g * n_ + h]; }
    int inv(int g) const { return inv_[g]; }
    const std::string& label() const { return label_; }
    const std::vector<int>& table() const { return mul_; }

    bool is_abelian() const;
    /// Order of the element g.
    int element_order(int g) const;
    /// Exponent of the group (lcm of element orders).
    long long exponent() const;

private:
    void validate() const;

    int n_;
    std::vector<int> mul_;
    std::vector<int> inv_;
    std::string label_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

GroupPtr make_cyclic(int n);
GroupPtr make_product(const GroupPtr& g, const GroupPtr& h);
/// The symmetric group S3 on a fixed element labeling (used by tests and demos).
GroupPtr make_s3();

/// A homomorphism between finite groups, stored as the full value table.
/// Multiplicativity is verified exhaustively at construction.
class GroupHom {
public:
    GroupHom(GroupPtr source, GroupPtr target, std::vector<int> map);

    const GroupPtr& source() const { return source_; }
    const GroupPtr& target() const { return target_; }
    int operator()(int g) const { return map_[g]; }
    const std::vector<int>& map() const { return map_; }

    bool surjective() const { return surjective_; }
    bool injective() const { return injective_; }

    static GroupHom identity(const GroupPtr& g);
    static GroupHom compose(const GroupHom& outer, const GroupHom& inner);

private:
    GroupPtr source_, target_;
    std::vector<int> map_;
    bool surjective_, injective_;
};

/// Canonical surjection Z/n -> Z/k for k | n.
GroupHom make_quotient_hom(int n, int k);

/// A finite inverse tower G_1 <- G_2 <- ... <- G_M of surjections,
/// with G_1 the coarsest level.  steps[m] : levels[m+1] -> levels[m].
class Tower {
public:
    Tower(std::vector<GroupPtr> levels, std::vector<GroupHom> steps);

    int size() const { return (int)levels_.size(); }
    const GroupPtr& level(int m) const { return levels_[m]; }
    const GroupHom& step(int m) const { return steps_[m]; }

    /// Composite projection levels[m] -> levels[k], m >= k.
    GroupHom composite(int m, int k) const;

private:
    std::vector<GroupPtr> levels_;
    std::vector<GroupHom> steps_;
};

} // namespace cocyclelab

#endif
