#include "homology/matrix.hpp"

#include "common/error.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace xmod {

SparseIntMatrix::SparseIntMatrix(std::size_t rows, std::size_t cols)
    : cols_(cols), row_start_(rows + 1, 0) {}

SparseIntMatrix SparseIntMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                               std::vector<Triplet> entries) {
    for (const auto& t : entries)
        if (t.row >= rows || t.col >= cols)
            throw InputError("matrix entry outside the declared shape");
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    SparseIntMatrix m(rows, cols);
    std::size_t k = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        while (k < entries.size() && entries[k].row == r) {
            std::size_t c = entries[k].col;
            std::int64_t v = 0;
            while (k < entries.size() && entries[k].row == r && entries[k].col == c)
                v += entries[k++].value;
            if (v != 0) {
                m.col_.push_back(static_cast<std::uint32_t>(c));
                m.val_.push_back(v);
            }
        }
        m.row_start_[r + 1] = m.col_.size();
    }
    return m;
}

SparseIntMatrix SparseIntMatrix::from_rows(
    std::size_t cols, std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> rows) {
    SparseIntMatrix m(rows.size(), cols);
    std::size_t total = 0;
    for (const auto& r : rows)
        total += r.size();
    m.col_.reserve(total);
    m.val_.reserve(total);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (const auto& [c, v] : rows[r]) {
            m.col_.push_back(c);
            m.val_.push_back(v);
        }
        m.row_start_[r + 1] = m.col_.size();
    }
    return m;
}

std::int64_t SparseIntMatrix::at(std::size_t r, std::size_t c) const {
    auto cs = row_cols(r);
    auto it = std::lower_bound(cs.begin(), cs.end(), static_cast<std::uint32_t>(c));
    if (it == cs.end() || *it != c)
        return 0;
    return row_values(r)[static_cast<std::size_t>(it - cs.begin())];
}

std::vector<Triplet> SparseIntMatrix::triplets() const {
    std::vector<Triplet> out;
    out.reserve(nonzeros());
    for (std::size_t r = 0; r < rows(); ++r)
        for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k)
            out.push_back({r, col_[k], val_[k]});
    return out;
}

SparseIntMatrix SparseIntMatrix::transpose() const {
    SparseIntMatrix t(cols_, rows());
    std::vector<std::size_t> count(cols_ + 1, 0);
    for (auto c : col_)
        ++count[c + 1];
    std::partial_sum(count.begin(), count.end(), count.begin());
    t.row_start_ = count;
    t.col_.resize(col_.size());
    t.val_.resize(val_.size());
    std::vector<std::size_t> next(count.begin(), count.end() - 1);
    for (std::size_t r = 0; r < rows(); ++r) {
        for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
            std::size_t pos = next[col_[k]]++;
            t.col_[pos] = static_cast<std::uint32_t>(r);
            t.val_[pos] = val_[k];
        }
    }
    return t;
}

SparseIntMatrix SparseIntMatrix::multiply(const SparseIntMatrix& other) const {
    if (cols_ != other.rows())
        throw InputError("matrix shapes do not compose");
    std::vector<Triplet> out;
    for (std::size_t r = 0; r < rows(); ++r) {
        auto cs = row_cols(r);
        auto vs = row_values(r);
        for (std::size_t a = 0; a < cs.size(); ++a) {
            auto oc = other.row_cols(cs[a]);
            auto ov = other.row_values(cs[a]);
            for (std::size_t b = 0; b < oc.size(); ++b)
                out.push_back({r, oc[b], vs[a] * ov[b]});
        }
    }
    return from_triplets(rows(), other.cols(), std::move(out));
}

void SparseIntMatrix::append_rows(const SparseIntMatrix& block) {
    if (block.cols() != cols_)
        throw InputError("appended block has a different column count");
    const std::size_t base = col_.size();
    col_.insert(col_.end(), block.col_.begin(), block.col_.end());
    val_.insert(val_.end(), block.val_.begin(), block.val_.end());
    for (std::size_t r = 1; r < block.row_start_.size(); ++r)
        row_start_.push_back(base + block.row_start_[r]);
}

std::vector<BigInt> SNFResult::torsion() const {
    std::vector<BigInt> out;
    for (const auto& d : divisors)
        if (d > 1)
            out.push_back(d);
    return out;
}

namespace {

struct Overflow {};

// Arithmetic policy: checked machine integers or arbitrary precision.
inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw Overflow{};
    return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw Overflow{};
    return r;
}
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Overflow{};
    return r;
}
inline BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }

inline std::int64_t magnitude(std::int64_t a) {
    if (a == std::numeric_limits<std::int64_t>::min())
        throw Overflow{};
    return a < 0 ? -a : a;
}
inline BigInt magnitude(const BigInt& a) { return abs(a); }

template <class T>
bool is_unit(const T& a) {
    return a == 1 || a == -1;
}

template <class T>
using SparseRow = std::vector<std::pair<std::uint32_t, T>>;

// Remainder of the sparse phase, in dense form.
template <class T>
struct Remainder {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<T> data;
};

// Eliminates unit pivots; returns the number of unit divisors found and the
// dense remainder.
template <class T>
std::pair<std::size_t, Remainder<T>> sparse_phase(const SparseIntMatrix& m, std::uint64_t dense_limit) {
    const std::size_t nr = m.rows(), nc = m.cols();
    std::vector<SparseRow<T>> rows(nr);
    std::vector<std::vector<std::uint32_t>> colrows(nc);
    std::vector<std::uint32_t> colcount(nc, 0);
    std::vector<char> col_done(nc, 0), row_done(nr, 0);
    for (std::size_t r = 0; r < nr; ++r) {
        auto cs = m.row_cols(r);
        auto vs = m.row_values(r);
        rows[r].reserve(cs.size());
        for (std::size_t k = 0; k < cs.size(); ++k) {
            rows[r].emplace_back(cs[k], T(vs[k]));
            colrows[cs[k]].push_back(static_cast<std::uint32_t>(r));
            ++colcount[cs[k]];
        }
    }

    using Item = std::pair<std::uint32_t, std::uint32_t>; // (count, col)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (std::size_t c = 0; c < nc; ++c)
        if (colcount[c] > 0)
            heap.emplace(colcount[c], static_cast<std::uint32_t>(c));
    auto touch = [&](std::uint32_t c) {
        if (!col_done[c] && colcount[c] > 0)
            heap.emplace(colcount[c], c);
    };
    auto find = [&](const SparseRow<T>& row, std::uint32_t c) {
        return std::lower_bound(row.begin(), row.end(), c,
                                [](const auto& e, std::uint32_t x) { return e.first < x; });
    };

    std::size_t units = 0;
    SparseRow<T> merged;
    std::vector<std::uint32_t> touched;
    while (!heap.empty()) {
        auto [count, c] = heap.top();
        heap.pop();
        if (col_done[c] || count != colcount[c] || count == 0)
            continue;

        // Drop stale entries and pick the shortest row with a unit in column c.
        auto& list = colrows[c];
        std::size_t keep = 0;
        std::int64_t best = -1;
        for (std::uint32_t r : list) {
            if (row_done[r])
                continue;
            auto it = find(rows[r], c);
            if (it == rows[r].end() || it->first != c)
                continue;
            list[keep++] = r;
            if (is_unit(it->second) && (best < 0 || rows[r].size() < rows[best].size()))
                best = r;
        }
        list.resize(keep);
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        if (best < 0)
            continue;

        const auto pr = static_cast<std::uint32_t>(best);
        const SparseRow<T> pivot_row = std::move(rows[pr]);
        rows[pr].clear();
        const T a = find(pivot_row, c)->second; // +-1, its own inverse
        touched.clear();
        for (std::uint32_t r : list) {
            if (r == pr)
                continue;
            auto& row = rows[r];
            const T f = mul(find(row, c)->second, a);
            merged.clear();
            merged.reserve(row.size() + pivot_row.size());
            auto x = row.begin();
            auto y = pivot_row.begin();
            while (x != row.end() || y != pivot_row.end()) {
                if (y == pivot_row.end() || (x != row.end() && x->first < y->first)) {
                    merged.push_back(std::move(*x++));
                } else if (x == row.end() || y->first < x->first) {
                    merged.emplace_back(y->first, sub(T(0), mul(f, y->second)));
                    ++colcount[y->first];
                    colrows[y->first].push_back(r);
                    touched.push_back(y->first);
                    ++y;
                } else {
                    T v = sub(x->second, mul(f, y->second));
                    if (v != 0) {
                        merged.emplace_back(x->first, std::move(v));
                    } else {
                        --colcount[x->first];
                        touched.push_back(x->first);
                    }
                    ++x;
                    ++y;
                }
            }
            row.swap(merged);
        }
        row_done[pr] = 1;
        for (const auto& [j, v] : pivot_row) {
            --colcount[j];
            touched.push_back(j);
        }
        col_done[c] = 1;
        list.clear();
        list.shrink_to_fit();
        ++units;
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (auto j : touched)
            touch(j);
    }

    // Dense remainder over the surviving rows and columns.
    std::vector<std::int64_t> col_map(nc, -1);
    std::size_t dc = 0;
    for (std::size_t c = 0; c < nc; ++c)
        if (!col_done[c] && colcount[c] > 0)
            col_map[c] = static_cast<std::int64_t>(dc++);
    std::vector<std::size_t> live;
    for (std::size_t r = 0; r < nr; ++r)
        if (!row_done[r] && !rows[r].empty())
            live.push_back(r);
    Remainder<T> rem;
    rem.rows = live.size();
    rem.cols = dc;
    if (rem.rows * rem.cols > dense_limit) {
        std::ostringstream os;
        os << "Smith normal form: dense remainder " << rem.rows << " x " << rem.cols
           << " exceeds the limit";
        throw BudgetExceeded(os.str());
    }
    rem.data.assign(rem.rows * rem.cols, T(0));
    for (std::size_t i = 0; i < live.size(); ++i)
        for (const auto& [j, v] : rows[live[i]])
            rem.data[i * rem.cols + static_cast<std::size_t>(col_map[j])] = v;
    return {units, std::move(rem)};
}

// Diagonalizes the dense remainder; returns the absolute values of the
// nonzero diagonal entries.
template <class T>
std::vector<T> dense_diagonal(Remainder<T> d) {
    const std::size_t R = d.rows, C = d.cols;
    auto at = [&](std::size_t i, std::size_t j) -> T& { return d.data[i * C + j]; };
    auto swap_rows = [&](std::size_t a, std::size_t b) {
        if (a != b)
            for (std::size_t j = 0; j < C; ++j)
                std::swap(at(a, j), at(b, j));
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        if (a != b)
            for (std::size_t i = 0; i < R; ++i)
                std::swap(at(i, a), at(i, b));
    };
    std::vector<T> diag;
    for (std::size_t k = 0; k < std::min(R, C); ++k) {
        // Minimal nonzero magnitude in the trailing block.
        std::size_t bi = R, bj = C;
        T best = 0;
        for (std::size_t i = k; i < R; ++i)
            for (std::size_t j = k; j < C; ++j)
                if (at(i, j) != 0) {
                    T v = magnitude(at(i, j));
                    if (bi == R || v < best) {
                        best = v;
                        bi = i;
                        bj = j;
                    }
                }
        if (bi == R)
            break;
        swap_rows(k, bi);
        swap_cols(k, bj);
        for (;;) {
            bool clean = true;
            const T piv = at(k, k);
            for (std::size_t i = k + 1; i < R; ++i) {
                if (at(i, k) == 0)
                    continue;
                T q = at(i, k) / piv;
                if (q != 0)
                    for (std::size_t j = k; j < C; ++j)
                        if (at(k, j) != 0)
                            at(i, j) = sub(at(i, j), mul(q, at(k, j)));
                if (at(i, k) != 0)
                    clean = false;
            }
            for (std::size_t j = k + 1; j < C; ++j) {
                if (at(k, j) == 0)
                    continue;
                T q = at(k, j) / piv;
                if (q != 0)
                    for (std::size_t i = k; i < R; ++i)
                        if (at(i, k) != 0)
                            at(i, j) = sub(at(i, j), mul(q, at(i, k)));
                if (at(k, j) != 0)
                    clean = false;
            }
            if (clean)
                break;
            // A remainder smaller than the pivot moves onto the diagonal.
            std::size_t mi = k, mj = k;
            T mv = magnitude(at(k, k));
            for (std::size_t i = k + 1; i < R; ++i)
                if (at(i, k) != 0 && magnitude(at(i, k)) < mv) {
                    mv = magnitude(at(i, k));
                    mi = i;
                    mj = k;
                }
            for (std::size_t j = k + 1; j < C; ++j)
                if (at(k, j) != 0 && magnitude(at(k, j)) < mv) {
                    mv = magnitude(at(k, j));
                    mi = k;
                    mj = j;
                }
            swap_rows(k, mi);
            swap_cols(k, mj);
        }
        diag.push_back(magnitude(at(k, k)));
    }
    return diag;
}

std::vector<BigInt> divisibility_chain(std::vector<BigInt> d) {
    std::sort(d.begin(), d.end());
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            if (d[j] % d[i] == 0)
                continue;
            BigInt g = gcd(d[i], d[j]);
            BigInt l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    return d;
}

template <class T>
SNFResult run_snf(const SparseIntMatrix& m, const SNFOptions& options) {
    auto [units, rem] = sparse_phase<T>(m, options.dense_limit);
    std::vector<BigInt> rest;
    try {
        for (const auto& v : dense_diagonal<T>(rem))
            rest.emplace_back(v);
    } catch (const Overflow&) {
        Remainder<BigInt> big{rem.rows, rem.cols, {}};
        big.data.reserve(rem.data.size());
        for (const auto& v : rem.data)
            big.data.emplace_back(v);
        rest.clear();
        for (auto& v : dense_diagonal<BigInt>(std::move(big)))
            rest.push_back(std::move(v));
    }
    SNFResult out;
    out.divisors.assign(units, BigInt(1));
    std::vector<BigInt> chain = divisibility_chain(std::move(rest));
    out.divisors.insert(out.divisors.end(), chain.begin(), chain.end());
    out.rank = out.divisors.size();
    return out;
}

std::uint32_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint32_t p) {
    std::uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1u)
            r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

// Incremental reduced row echelon form over GF(2) on bit-packed rows.
class Gf2Echelon {
public:
    explicit Gf2Echelon(std::size_t n) : n_(n), words_((n + 63) / 64), pivot_row_(n, -1) {
        work_.assign(words_, 0);
    }

    std::size_t rank() const { return pivots_.size(); }
    std::size_t width() const { return n_; }

    /// Adds a sparse vector; returns true if it raised the rank.
    bool insert(std::span<const std::uint32_t> cols, std::span<const std::int64_t> vals) {
        std::fill(work_.begin(), work_.end(), 0);
        for (std::size_t k = 0; k < cols.size(); ++k)
            if (vals[k] & 1)
                work_[cols[k] >> 6] ^= 1ull << (cols[k] & 63);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            std::uint32_t c = cols[k];
            if (pivot_row_[c] >= 0 && (work_[c >> 6] >> (c & 63) & 1)) {
                const std::uint64_t* b = row(static_cast<std::size_t>(pivot_row_[c]));
                for (std::size_t w = 0; w < words_; ++w)
                    work_[w] ^= b[w];
            }
        }
        std::size_t q = n_;
        for (std::size_t w = 0; w < words_; ++w)
            if (work_[w]) {
                q = w * 64 + static_cast<std::size_t>(__builtin_ctzll(work_[w]));
                break;
            }
        if (q == n_)
            return false;
        for (std::size_t r = 0; r < pivots_.size(); ++r) {
            std::uint64_t* b = row(r);
            if (b[q >> 6] >> (q & 63) & 1)
                for (std::size_t w = 0; w < words_; ++w)
                    b[w] ^= work_[w];
        }
        basis_.insert(basis_.end(), work_.begin(), work_.end());
        pivot_row_[q] = static_cast<std::int64_t>(pivots_.size());
        pivots_.push_back(q);
        return true;
    }

private:
    std::uint64_t* row(std::size_t r) { return basis_.data() + r * words_; }

    std::size_t n_;
    std::size_t words_;
    std::vector<std::int64_t> pivot_row_;
    std::vector<std::size_t> pivots_;
    std::vector<std::uint64_t> basis_;
    std::vector<std::uint64_t> work_;
};

// Incremental reduced row echelon form over GF(p), p odd.
class GfpEchelon {
public:
    GfpEchelon(std::size_t n, std::uint32_t p) : n_(n), p_(p), pivot_row_(n, -1), work_(n, 0) {}

    std::size_t rank() const { return pivots_.size(); }

    bool insert(std::span<const std::uint32_t> cols, std::span<const std::int64_t> vals) {
        std::fill(work_.begin(), work_.end(), 0);
        for (std::size_t k = 0; k < cols.size(); ++k)
            work_[cols[k]] = reduce(vals[k], p_);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            std::uint32_t c = cols[k];
            std::uint64_t coef = work_[c];
            if (pivot_row_[c] >= 0 && coef != 0) {
                const std::uint32_t* b = row(static_cast<std::size_t>(pivot_row_[c]));
                std::uint64_t neg = p_ - coef;
                for (std::size_t j = 0; j < n_; ++j)
                    if (b[j])
                        work_[j] = static_cast<std::uint32_t>((work_[j] + neg * b[j]) % p_);
            }
        }
        std::size_t q = n_;
        for (std::size_t j = 0; j < n_; ++j)
            if (work_[j]) {
                q = j;
                break;
            }
        if (q == n_)
            return false;
        std::uint64_t inv = pow_mod(work_[q], p_ - 2, p_);
        for (std::size_t j = q; j < n_; ++j)
            if (work_[j])
                work_[j] = static_cast<std::uint32_t>(work_[j] * inv % p_);
        for (std::size_t r = 0; r < pivots_.size(); ++r) {
            std::uint32_t* b = row(r);
            std::uint64_t coef = b[q];
            if (coef == 0)
                continue;
            std::uint64_t neg = p_ - coef;
            for (std::size_t j = q; j < n_; ++j)
                if (work_[j])
                    b[j] = static_cast<std::uint32_t>((b[j] + neg * work_[j]) % p_);
        }
        basis_.insert(basis_.end(), work_.begin(), work_.end());
        pivot_row_[q] = static_cast<std::int64_t>(pivots_.size());
        pivots_.push_back(q);
        return true;
    }

private:
    std::uint32_t* row(std::size_t r) { return basis_.data() + r * n_; }

    std::size_t n_;
    std::uint32_t p_;
    std::vector<std::int64_t> pivot_row_;
    std::vector<std::size_t> pivots_;
    std::vector<std::uint32_t> basis_;
    std::vector<std::uint32_t> work_;
};

template <class E>
std::size_t rank_with(E& echelon, const SparseIntMatrix& m, std::size_t cap) {
    for (std::size_t r = 0; r < m.rows() && echelon.rank() < cap; ++r)
        echelon.insert(m.row_cols(r), m.row_values(r));
    return echelon.rank();
}

void check_prime(std::uint32_t p) {
    if (p < 2)
        throw InputError("modulus must be a prime");
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
        if (p % d == 0)
            throw InputError("modulus must be a prime");
}

} // namespace

SNFResult smith_normal_form(const SparseIntMatrix& m, const SNFOptions& options) {
    try {
        return run_snf<std::int64_t>(m, options);
    } catch (const Overflow&) {
        return run_snf<BigInt>(m, options);
    }
}

std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint32_t p) {
    check_prime(p);
    if (m.rows() == 0 || m.cols() == 0 || m.is_zero())
        return 0;
    const SparseIntMatrix* vectors = &m;
    SparseIntMatrix t;
    if (m.cols() > m.rows()) {
        t = m.transpose();
        vectors = &t;
    }
    const std::size_t width = vectors->cols();
    if (width > kMaxDenseSide) {
        std::ostringstream os;
        os << "rank over GF(" << p << "): shorter side " << width << " exceeds " << kMaxDenseSide;
        throw BudgetExceeded(os.str());
    }
    if (p == 2) {
        Gf2Echelon e(width);
        return rank_with(e, *vectors, width);
    }
    GfpEchelon e(width, p);
    return rank_with(e, *vectors, width);
}

bool in_column_space_mod_p(const SparseIntMatrix& m, std::span<const std::int64_t> v, std::uint32_t p) {
    if (v.size() != m.rows())
        throw InputError("vector length does not match the matrix");
    std::vector<Triplet> entries = m.triplets();
    for (std::size_t r = 0; r < v.size(); ++r)
        if (v[r] % static_cast<std::int64_t>(p) != 0)
            entries.push_back({r, m.cols(), v[r]});
    auto augmented = SparseIntMatrix::from_triplets(m.rows(), m.cols() + 1, std::move(entries));
    return rank_mod_p(augmented, p) == rank_mod_p(m, p);
}

} // namespace xmod
