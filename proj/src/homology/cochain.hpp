#pragma once

#include "homology/matrix.hpp"
#include "nerve/nerve.hpp"

#include <map>
#include <optional>
#include <string>

namespace xmod {

/// Coefficients for cochains: the integers, the rationals, or GF(p).
struct CoefficientRing {
    enum class Kind { Z, Q, Fp };
    Kind kind = Kind::Q;
    std::uint32_t p = 0;

    static CoefficientRing integers() { return {Kind::Z, 0}; }
    static CoefficientRing rationals() { return {Kind::Q, 0}; }
    /// Throws InputError unless p is prime.
    static CoefficientRing prime_field(std::uint32_t p);
    /// "Z", "Q" or "F<p>".
    std::string name() const;
    bool is_field() const { return kind != Kind::Z; }
};

struct ComplexOptions {
    bool normalized = true;
    /// Largest number of cochain generators materialized at any level.
    std::uint64_t budget = 1ull << 24;
    unsigned threads = 1;
};

/// Simplicial cochain complex of a nerve, built level by level on demand.
///
/// In normalized mode C^p is spanned by the nondegenerate p-simplices; in
/// unnormalized mode by all of them. The differential is
/// delta = sum_i (-1)^i d_i^*. Levels and matrices are cached, so an instance
/// is not safe to share between threads while it is being filled.
class CochainComplex {
public:
    CochainComplex(Nerve nerve, ComplexOptions options);

    const Nerve& nerve() const { return nerve_; }
    const ComplexOptions& options() const { return options_; }

    /// dim C^p, exact and without enumerating.
    BigInt dimension(int p) const;
    /// True if level p fits in the budget.
    bool fits(int p) const;

    /// Sorted codes of the simplices spanning C^p. Throws BudgetExceeded.
    const std::vector<std::uint64_t>& basis(int p);
    /// Position of a simplex in basis(p), or nullopt if it is degenerate in
    /// normalized mode.
    std::optional<std::size_t> index_of(int p, std::uint64_t code);

    /// Matrix of delta^q: C^q -> C^(q+1); rows follow basis(q+1), columns
    /// basis(q).
    const SparseIntMatrix& coboundary(int q);

    /// delta^q applied to a cochain (values reduced mod `modulus` if nonzero).
    std::vector<std::int64_t> apply_coboundary(int q, std::span<const std::int64_t> cochain,
                                               std::uint32_t modulus);

    /// Alexander-Whitney cup product of a p-cochain and a q-cochain:
    /// (a u b)(x) = a(front_p x) * b(back_q x).
    std::vector<std::int64_t> cup_product(int p, std::span<const std::int64_t> a, int q,
                                          std::span<const std::int64_t> b, std::uint32_t modulus);

private:
    Nerve nerve_;
    ComplexOptions options_;
    std::map<int, std::vector<std::uint64_t>> levels_;
    std::map<int, SparseIntMatrix> deltas_;
};

struct DegreeCohomology {
    int degree = 0;
    BigInt cochains = 0;         // dim C^n
    std::size_t rank = 0;        // betti number over a field, free rank over Z
    std::vector<BigInt> torsion; // over Z only
};

struct MatrixReport {
    int degree = 0; // delta^degree
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t nonzeros = 0;
    std::size_t rank = 0;
    double assembly_seconds = 0;
    double elimination_seconds = 0;
};

struct CohomologyResult {
    CoefficientRing ring;
    bool normalized = true;
    int requested_degree = 0;
    /// Highest degree actually computed; below requested_degree when the
    /// budget stopped the computation.
    int computed_degree = -1;
    std::string stop_reason;
    std::vector<DegreeCohomology> degrees;
    std::vector<MatrixReport> matrices;

    bool complete() const { return computed_degree == requested_degree; }
    /// Betti numbers (or free ranks) in degree order.
    std::vector<std::size_t> ranks() const;
};

/// Cohomology H^n(N[G -> H]; ring) for n <= max_degree.
CohomologyResult cohomology(CochainComplex& complex, CoefficientRing ring, int max_degree);
CohomologyResult cohomology(const CrossedModule& cm, CoefficientRing ring, int max_degree,
                            const ComplexOptions& options = {});

} // namespace xmod
