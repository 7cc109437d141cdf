#pragma once

#include "common/bigint.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace xmod {

/// Dense matrix over Q with exact arithmetic.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix from_integers(const std::vector<std::vector<long long>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RationalMatrix operator*(const RationalMatrix& b) const;
    RationalMatrix operator+(const RationalMatrix& b) const;
    RationalMatrix operator-(const RationalMatrix& b) const;
    RationalMatrix scaled(const Rational& s) const;
    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    RationalMatrix transpose() const;
    RationalMatrix power(unsigned k) const;
    bool is_identity() const;
    bool is_integral() const;

    std::size_t rank() const;
    Rational determinant() const;
    std::optional<RationalMatrix> inverse() const;
    /// Columns form a basis of {v : M v = 0}, in reduced echelon normal form.
    RationalMatrix kernel_basis() const;
    /// Submatrix on the given rows and columns.
    RationalMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

    std::string str() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// [a | b | ...] (same row count).
RationalMatrix hstack(const std::vector<RationalMatrix>& blocks);
/// Rows of every block stacked (same column count).
RationalMatrix vstack(const std::vector<RationalMatrix>& blocks);

/// Dimension of the sum of the column spaces.
std::size_t span_dimension(const std::vector<RationalMatrix>& column_bases);
/// Dimension of the intersection of two column spaces.
std::size_t intersection_dimension(const RationalMatrix& a, const RationalMatrix& b);

} // namespace xmod
