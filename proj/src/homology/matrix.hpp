#pragma once

#include "common/bigint.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace xmod {

struct Triplet {
    std::size_t row = 0;
    std::size_t col = 0;
    std::int64_t value = 0;
};

/// Sparse integer matrix in compressed-row form.
///
/// Entries are machine integers (coboundary entries are bounded by the number
/// of faces); the eliminations that consume the matrix switch to
/// arbitrary-precision arithmetic as soon as an intermediate value would
/// overflow.
class SparseIntMatrix {
public:
    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t rows, std::size_t cols);

    /// Sums duplicate coordinates and drops zeros.
    static SparseIntMatrix from_triplets(std::size_t rows, std::size_t cols,
                                         std::vector<Triplet> entries);
    /// Rows given as (column, value) lists; each list must be sorted by column
    /// with no duplicates or zeros.
    static SparseIntMatrix from_rows(std::size_t cols,
                                     std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> rows);

    std::size_t rows() const { return row_start_.size() - 1; }
    std::size_t cols() const { return cols_; }
    std::size_t nonzeros() const { return col_.size(); }

    std::span<const std::uint32_t> row_cols(std::size_t r) const {
        return {col_.data() + row_start_[r], row_start_[r + 1] - row_start_[r]};
    }
    std::span<const std::int64_t> row_values(std::size_t r) const {
        return {val_.data() + row_start_[r], row_start_[r + 1] - row_start_[r]};
    }

    std::int64_t at(std::size_t r, std::size_t c) const;
    std::vector<Triplet> triplets() const;
    SparseIntMatrix transpose() const;
    /// this * other
    SparseIntMatrix multiply(const SparseIntMatrix& other) const;
    bool is_zero() const { return col_.empty(); }

    /// Appends the rows of a block assembled elsewhere (same column count).
    void append_rows(const SparseIntMatrix& block);

private:
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_start_{0};
    std::vector<std::uint32_t> col_;
    std::vector<std::int64_t> val_;
};

struct SNFResult {
    std::size_t rank = 0;
    /// Nonzero diagonal of the Smith form, d1 | d2 | ..., all positive.
    std::vector<BigInt> divisors;

    /// Divisors greater than one.
    std::vector<BigInt> torsion() const;
};

struct SNFOptions {
    /// Largest remainder (rows * cols) handed to the dense phase after the
    /// sparse unit-pivot phase.
    std::uint64_t dense_limit = 1ull << 26;
};

/// Exact Smith normal form. A sparse phase eliminates unit pivots with the
/// smallest Markowitz cost; what is left is diagonalized densely with
/// minimal-magnitude pivots and the diagonal is brought to divisibility form.
/// Throws BudgetExceeded if the dense remainder is larger than the limit.
SNFResult smith_normal_form(const SparseIntMatrix& m, const SNFOptions& options = {});

/// Rank over GF(p), p prime, by modular elimination.
/// Vectors are reduced along the shorter side of the matrix.
std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint32_t p);

/// True if `v` (length rows()) lies in the column space of `m` over GF(p).
bool in_column_space_mod_p(const SparseIntMatrix& m, std::span<const std::int64_t> v, std::uint32_t p);

/// Largest side length the GF(p) eliminations accept.
inline constexpr std::size_t kMaxDenseSide = 1u << 16;

} // namespace xmod
