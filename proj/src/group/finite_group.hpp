#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace xmod {

using Elem = std::uint32_t;

/// A finite group given by dense multiplication and inverse tables.
///
/// Elements are the indices 0..order()-1 and index 0 is always the identity.
/// Instances are immutable; copies share nothing mutable, so a group may be
/// read concurrently from any number of threads.
class FiniteGroup {
public:
    /// Builds a group from a row-major order x order table (`table[a*n+b] = a*b`).
    /// Throws InputError if the table is not a group with identity 0.
    /// Associativity is checked exhaustively up to order 64 and on a fixed
    /// pseudo-random sample of triples above that.
    static FiniteGroup from_table(std::uint32_t order, std::vector<Elem> table);

    std::uint32_t order() const { return order_; }
    Elem mul(Elem a, Elem b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
    Elem inv(Elem a) const { return inverse_[a]; }
    static constexpr Elem identity() { return 0; }

    Elem conj(Elem x, Elem h) const { return mul(mul(inv(h), x), h); } // h^-1 x h
    Elem power(Elem a, std::uint64_t k) const;
    std::uint32_t element_order(Elem a) const;
    bool is_abelian() const;
    std::uint32_t exponent() const;

    std::span<const Elem> table() const { return table_; }

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
        return a.order_ == b.order_ && a.table_ == b.table_;
    }

private:
    FiniteGroup(std::uint32_t order, std::vector<Elem> table, std::vector<Elem> inverse)
        : order_(order), table_(std::move(table)), inverse_(std::move(inverse)) {}

    std::uint32_t order_ = 1;
    std::vector<Elem> table_;
    std::vector<Elem> inverse_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Homomorphism between finite groups, stored as an image table.
class GroupHom {
public:
    /// Throws InputError with a witness pair if `map` is not multiplicative.
    GroupHom(GroupPtr source, GroupPtr target, std::vector<Elem> map);

    static GroupHom identity(GroupPtr g);
    static GroupHom trivial(GroupPtr source, GroupPtr target);

    const FiniteGroup& source() const { return *source_; }
    const FiniteGroup& target() const { return *target_; }
    const GroupPtr& source_ptr() const { return source_; }
    const GroupPtr& target_ptr() const { return target_; }
    Elem operator()(Elem x) const { return map_[x]; }
    std::span<const Elem> table() const { return map_; }

    bool is_injective() const;
    bool is_surjective() const;
    std::vector<Elem> image() const; // sorted, identity first

    /// this ∘ first
    GroupHom after(const GroupHom& first) const;

private:
    GroupPtr source_;
    GroupPtr target_;
    std::vector<Elem> map_;
};

/// Right action of `actor` on `space` by automorphisms: act(g, h) = g^h.
class GroupAction {
public:
    /// `table[h * |space| + g] = g^h`. Throws InputError on any violated axiom.
    GroupAction(GroupPtr actor, GroupPtr space, std::vector<Elem> table);

    static GroupAction trivial(GroupPtr actor, GroupPtr space);

    const FiniteGroup& actor() const { return *actor_; }
    const FiniteGroup& space() const { return *space_; }
    const GroupPtr& actor_ptr() const { return actor_; }
    const GroupPtr& space_ptr() const { return space_; }
    Elem operator()(Elem g, Elem h) const { return table_[static_cast<std::size_t>(h) * space_->order() + g]; }
    std::span<const Elem> table() const { return table_; }
    bool is_trivial() const;

private:
    GroupPtr actor_;
    GroupPtr space_;
    std::vector<Elem> table_;
};

GroupPtr make_cyclic(std::uint32_t n);

/// Componentwise product; element (x, y) has index x * |b| + y.
GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b);

/// Symmetric group on `n` points (n <= 5), elements in lexicographic order of
/// permutations. Mostly useful for tests and the spec-file format.
GroupPtr make_symmetric(std::uint32_t n);

/// Dihedral group of order 2n: index r^k s^e -> k + n*e.
GroupPtr make_dihedral(std::uint32_t n);

struct Subgroup {
    GroupPtr group;
    GroupHom embedding;
};

/// Subgroup on a closed subset of `parent` (must contain identity). Elements
/// are re-indexed in increasing parent order, so the identity stays at 0.
Subgroup make_subgroup(const GroupPtr& parent, std::vector<Elem> elements);

bool is_normal_subset(const FiniteGroup& g, std::span<const Elem> subset);

Subgroup kernel(const GroupHom& h);

struct Quotient {
    GroupPtr group;
    GroupHom projection;
};

/// Quotient of the target by the image of `h`. Cosets are indexed by their
/// smallest element. Throws InputError if the image is not normal.
Quotient cokernel(const GroupHom& h);

/// Quotient of `g` by a normal subset.
Quotient quotient(const GroupPtr& g, std::span<const Elem> normal_subgroup);

} // namespace xmod
