#pragma once

#include "group/finite_group.hpp"
#include "groupcoh/rational_matrix.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace xmod {

enum class ArithmeticKind { SL2Z, GL2Z, SL3Z, GL3Z };

/// "SL2Z", "GL2Z", "SL3Z-partial", "GL3Z-partial".
std::string to_string(ArithmeticKind kind);
std::optional<ArithmeticKind> parse_arithmetic_kind(const std::string& name);
/// n for SL(n,Z) / GL(n,Z).
std::size_t matrix_size(ArithmeticKind kind);

struct NamedMatrix {
    std::string name;
    RationalMatrix matrix;
};

/// An arithmetic group presented by named integer generator matrices.
struct ArithmeticGroupTag {
    ArithmeticKind kind = ArithmeticKind::SL2Z;
    std::vector<NamedMatrix> generators;

    /// SL2Z: S (order 4), R (order 6). GL2Z adds J = [[0,1],[1,0]].
    /// SL3Z/GL3Z: the elementary generators; GL3Z adds D = diag(-1,1,...).
    static ArithmeticGroupTag standard(ArithmeticKind kind);
    /// Elementary matrices E_ij = I + e_ij (i != j) of SL(n,Z), n >= 2;
    /// GL adds D = diag(-1,1,...).
    static ArithmeticGroupTag elementary(ArithmeticKind kind);

    /// Throws InputError unless every generator is integral, n x n and has
    /// determinant 1 (SL) or +-1 (GL).
    void check() const;
    const RationalMatrix& generator(const std::string& name) const;
};

/// A finite-dimensional rational representation of a finite group (one
/// matrix per element) or of an arithmetic group (one matrix per generator).
class ModuleRep {
public:
    /// Throws InputError unless `matrices[g]` is invertible, of a common size
    /// and rho(a) rho(b) = rho(a b) for all pairs.
    static ModuleRep finite(GroupPtr group, std::vector<RationalMatrix> matrices);
    /// Extends generator images to the whole group and then checks as above.
    static ModuleRep finite_from_generators(GroupPtr group, std::span<const Elem> generators,
                                            std::span<const RationalMatrix> images);
    static ModuleRep trivial(GroupPtr group, std::size_t dimension);
    /// `images[k]` is the action of `tag.generators[k]`.
    static ModuleRep arithmetic(ArithmeticGroupTag tag, std::vector<RationalMatrix> images);
    /// Q^n with each generator acting by itself.
    static ModuleRep standard(ArithmeticGroupTag tag);

    bool is_finite() const { return group_ != nullptr; }
    const GroupPtr& group() const { return group_; }
    const std::optional<ArithmeticGroupTag>& tag() const { return tag_; }
    std::size_t dimension() const { return dimension_; }

    /// Finite case: rho(g).
    const RationalMatrix& matrix(Elem g) const;
    /// Matrices whose common fixed space is the invariant subspace: every
    /// element in the finite case, the generators in the arithmetic case.
    const std::vector<RationalMatrix>& matrices() const { return matrices_; }
    /// Arithmetic case: image of the named generator.
    const RationalMatrix& generator_image(const std::string& name) const;

private:
    GroupPtr group_;
    std::optional<ArithmeticGroupTag> tag_;
    std::size_t dimension_ = 0;
    std::vector<RationalMatrix> matrices_;
};

/// Lambda^k of a matrix in the basis of sorted k-subsets, lexicographic;
/// entry (I, J) is the minor on rows I and columns J.
RationalMatrix exterior_power(const RationalMatrix& m, std::size_t k);

/// Action on Lambda^k of the module. Throws InputError if k > dimension.
ModuleRep exterior_power_rep(const ModuleRep& mod, std::size_t k);

/// Basis (as columns) of {v : rho(s) v = chi(s) v for every s in
/// mod.matrices()}. An empty character means chi = 1; otherwise it has one
/// entry +-1 per matrix.
RationalMatrix invariants(const ModuleRep& mod, std::span<const int> character = {});

/// Basis of the fixed space of a single matrix.
RationalMatrix fixed_space(const RationalMatrix& m);

} // namespace xmod
