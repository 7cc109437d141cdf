#include "groupcoh/rational_matrix.hpp"

#include "common/error.hpp"

#include <sstream>

namespace xmod {

namespace {

// In-place reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(std::vector<Rational>& a, std::size_t rows, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv * cols + c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(a[r * cols + j], a[piv * cols + j]);
        const Rational inv = 1 / a[r * cols + c];
        for (std::size_t j = c; j < cols; ++j)
            a[r * cols + j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i * cols + c] == 0)
                continue;
            const Rational f = a[i * cols + c];
            for (std::size_t j = c; j < cols; ++j)
                a[i * cols + j] -= f * a[r * cols + j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

void require_same_shape(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InputError("matrix shapes differ");
}

} // namespace

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_integers(const std::vector<std::vector<long long>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    RationalMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw InputError("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& b) const {
    if (cols_ != b.rows_)
        throw InputError("matrix shapes do not compose");
    RationalMatrix out(rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                out(i, j) += a * b(k, j);
        }
    return out;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& b) const {
    require_same_shape(*this, b);
    RationalMatrix out = *this;
    for (std::size_t k = 0; k < data_.size(); ++k)
        out.data_[k] += b.data_[k];
    return out;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& b) const {
    require_same_shape(*this, b);
    RationalMatrix out = *this;
    for (std::size_t k = 0; k < data_.size(); ++k)
        out.data_[k] -= b.data_[k];
    return out;
}

RationalMatrix RationalMatrix::scaled(const Rational& s) const {
    RationalMatrix out = *this;
    for (auto& v : out.data_)
        v *= s;
    return out;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(j, i) = (*this)(i, j);
    return out;
}

RationalMatrix RationalMatrix::power(unsigned k) const {
    if (rows_ != cols_)
        throw InputError("power of a non-square matrix");
    RationalMatrix out = identity(rows_);
    for (unsigned i = 0; i < k; ++i)
        out = out * *this;
    return out;
}

bool RationalMatrix::is_identity() const { return rows_ == cols_ && *this == identity(rows_); }

bool RationalMatrix::is_integral() const {
    for (const auto& v : data_)
        if (denominator(v) != 1)
            return false;
    return true;
}

std::size_t RationalMatrix::rank() const {
    auto a = data_;
    return rref(a, rows_, cols_).size();
}

Rational RationalMatrix::determinant() const {
    if (rows_ != cols_)
        throw InputError("determinant of a non-square matrix");
    auto a = data_;
    const std::size_t n = rows_;
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv * n + c] == 0)
            ++piv;
        if (piv == n)
            return 0;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a[c * n + j], a[piv * n + j]);
            det = -det;
        }
        det *= a[c * n + c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i * n + c] == 0)
                continue;
            const Rational f = a[i * n + c] / a[c * n + c];
            for (std::size_t j = c; j < n; ++j)
                a[i * n + j] -= f * a[c * n + j];
        }
    }
    return det;
}

std::optional<RationalMatrix> RationalMatrix::inverse() const {
    if (rows_ != cols_)
        return std::nullopt;
    const std::size_t n = rows_;
    RationalMatrix aug = hstack({*this, identity(n)});
    auto pivots = rref(aug.data_, n, 2 * n);
    if (pivots.size() < n || pivots[n - 1] >= n)
        return std::nullopt;
    RationalMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = aug(i, n + j);
    return out;
}

RationalMatrix RationalMatrix::kernel_basis() const {
    auto a = data_;
    auto pivots = rref(a, rows_, cols_);
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots)
        is_pivot[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < cols_; ++c)
        if (!is_pivot[c])
            free.push_back(c);
    RationalMatrix basis(cols_, free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
        basis(free[k], k) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            basis(pivots[r], k) = -a[r * cols_ + free[k]];
    }
    return basis;
}

RationalMatrix RationalMatrix::submatrix(const std::vector<std::size_t>& rows,
                                         const std::vector<std::size_t>& cols) const {
    RationalMatrix out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            out(i, j) = (*this)(rows[i], cols[j]);
    return out;
}

std::string RationalMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j)
            os << (j ? ", " : "") << (*this)(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

RationalMatrix hstack(const std::vector<RationalMatrix>& blocks) {
    if (blocks.empty())
        return {};
    const std::size_t rows = blocks[0].rows();
    std::size_t cols = 0;
    for (const auto& b : blocks) {
        if (b.rows() != rows)
            throw InputError("hstack: row counts differ");
        cols += b.cols();
    }
    RationalMatrix out(rows, cols);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, off + j) = b(i, j);
        off += b.cols();
    }
    return out;
}

RationalMatrix vstack(const std::vector<RationalMatrix>& blocks) {
    if (blocks.empty())
        return {};
    const std::size_t cols = blocks[0].cols();
    std::size_t rows = 0;
    for (const auto& b : blocks) {
        if (b.cols() != cols)
            throw InputError("vstack: column counts differ");
        rows += b.rows();
    }
    RationalMatrix out(rows, cols);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < cols; ++j)
                out(off + i, j) = b(i, j);
        off += b.rows();
    }
    return out;
}

std::size_t span_dimension(const std::vector<RationalMatrix>& column_bases) {
    std::vector<RationalMatrix> nonempty;
    for (const auto& b : column_bases)
        if (b.cols() > 0)
            nonempty.push_back(b);
    if (nonempty.empty())
        return 0;
    return hstack(nonempty).rank();
}

std::size_t intersection_dimension(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rank() + b.rank() - span_dimension({a, b});
}

} // namespace xmod
