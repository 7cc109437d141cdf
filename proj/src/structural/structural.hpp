#pragma once

#include "common/bigint.hpp"
#include "groupcoh/module_rep.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace xmod {

/// Dimensions of a graded vector space in degrees 0..truncation. Nothing is
/// claimed above the truncation degree.
struct GradedDims {
    int truncation = 0;
    std::vector<std::uint64_t> dims; // size truncation + 1

    static GradedDims zero(int truncation);
    /// The ground field in degree 0.
    static GradedDims unit(int truncation);
    std::uint64_t at(int degree) const;
    friend bool operator==(const GradedDims&, const GradedDims&) = default;
    std::string str() const;
};

/// Free graded-commutative algebra on generators of the given degrees:
/// odd generators are exterior, even ones polynomial. Degrees must be >= 1.
GradedDims free_gca_dims(std::span<const int> degrees, int truncation);

/// S(Q^k[3]): an exterior algebra on k degree-3 classes.
GradedDims kernel_torus_cohomology(std::size_t k, int truncation);

/// (S(Q^k[3]))^C for a finite group C acting on Q^k: dimension of
/// Lambda^q(Q^k)^C in degree 3q, zero elsewhere.
GradedDims finite_cokernel_cohomology(std::size_t k, const ModuleRep& rep, int truncation);

/// Convolution of two sequences with the same truncation.
GradedDims kunneth(const GradedDims& a, const GradedDims& b);

/// Exponents of a simple compact Lie algebra of type family/rank, from the
/// shipped table. Throws InputError on an invalid type/rank.
std::vector<int> lie_exponents(char family, int rank);
BigInt weyl_group_order(char family, int rank);
/// Re-runs the consistency check prod(e_i + 1) = |W| over the table (also run
/// once on first use) and returns the number of types checked. Throws
/// InvariantViolation on a mismatch.
std::size_t check_exponent_table();

struct CompactGroupSpec {
    struct FiniteCokernel {
        ModuleRep rep; // finite group acting on Q^n
    };
    struct TorusCokernel {
        std::size_t rank = 0;
    };
    struct SimpleCokernel {
        char family = 'A';
        int rank = 1;
    };

    /// n = dimension of the degree-3 kernel classes.
    std::size_t center_rank = 0;
    std::variant<FiniteCokernel, TorusCokernel, SimpleCokernel> cokernel;
    /// Rank t of the transgression from the n degree-3 classes into the
    /// degree-4 generators of H(BC). Only the simple case has one to hit.
    std::size_t transgression_rank = 0;
};

/// Degrees of the polynomial generators of H(BC) for simple C: 2(e_i + 1).
std::vector<int> classifying_space_degrees(char family, int rank);

/// H(BC)/(im T) tensor S(ker T[3]) for a simple cokernel, the Kuenneth product
/// with H(BT) for a torus and the finite-cokernel answer for a finite group.
GradedDims compact_cokernel_cohomology(const CompactGroupSpec& spec, int truncation);

enum class ArithmeticVariant { SL, GL };

/// E_2^{p,q} = H^p(SL(n,Z) or GL(n,Z), S(Q^n[3])^q), p <= pmax, q <= qmax.
/// Full pages for n <= 2; for n = 3 only the p = 0 column. Unknown entries
/// are nullopt.
struct E2Page {
    ArithmeticVariant variant = ArithmeticVariant::SL;
    std::size_t n = 0;
    int pmax = 0;
    int qmax = 0;
    std::vector<std::vector<std::optional<std::uint64_t>>> grid; // grid[p][q]

    std::optional<std::uint64_t> at(int p, int q) const { return grid.at(p).at(q); }
    /// Nonzero known entries as (p, q, dim).
    std::vector<std::tuple<int, int, std::uint64_t>> support() const;
};

E2Page e2_page(ArithmeticVariant variant, std::size_t n, int pmax, int qmax);

} // namespace xmod
