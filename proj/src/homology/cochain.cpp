#include "homology/cochain.hpp"

#include "common/error.hpp"
#include "common/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace xmod {

namespace {

bool is_prime(std::uint32_t p) {
    if (p < 2)
        return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::int64_t reduce_mod(std::int64_t v, std::uint32_t modulus) {
    if (modulus == 0)
        return v;
    std::int64_t r = v % static_cast<std::int64_t>(modulus);
    return r < 0 ? r + modulus : r;
}

// Raw levels scanned to find the nondegenerate simplices.
constexpr std::uint64_t kMaxScan = 1ull << 36;

} // namespace

CoefficientRing CoefficientRing::prime_field(std::uint32_t p) {
    if (!is_prime(p)) {
        std::ostringstream os;
        os << "GF(" << p << ") is not a field: " << p << " is not prime";
        throw InputError(os.str());
    }
    return {Kind::Fp, p};
}

std::string CoefficientRing::name() const {
    switch (kind) {
    case Kind::Z:
        return "Z";
    case Kind::Q:
        return "Q";
    case Kind::Fp:
        return "F" + std::to_string(p);
    }
    return "?";
}

CochainComplex::CochainComplex(Nerve nerve, ComplexOptions options)
    : nerve_(std::move(nerve)), options_(options) {}

BigInt CochainComplex::dimension(int p) const {
    return options_.normalized ? nondegenerate_count(nerve_, p) : nerve_.level_count(p);
}

bool CochainComplex::fits(int p) const {
    if (p > kMaxLevel)
        return false;
    if (dimension(p) > options_.budget)
        return false;
    auto raw = nerve_.level_size(p);
    return raw && *raw <= kMaxScan;
}

const std::vector<std::uint64_t>& CochainComplex::basis(int p) {
    auto it = levels_.find(p);
    if (it != levels_.end())
        return it->second;
    if (!fits(p)) {
        std::ostringstream os;
        os << "level " << p << " has " << dimension(p) << " cochain generators, over the budget of "
           << options_.budget;
        throw BudgetExceeded(os.str());
    }
    const std::uint64_t raw = *nerve_.level_size(p);
    std::vector<std::uint64_t> codes;
    if (!options_.normalized) {
        codes.resize(raw);
        for (std::uint64_t c = 0; c < raw; ++c)
            codes[c] = c;
    } else {
        const unsigned threads = std::max(1u, options_.threads);
        std::vector<std::vector<std::uint64_t>> parts(threads);
        parallel_chunks(raw, threads, [&](unsigned t, std::size_t begin, std::size_t end) {
            for (std::uint64_t c = begin; c < end; ++c)
                if (!nerve_.is_degenerate_code(p, c))
                    parts[t].push_back(c);
        });
        for (auto& part : parts)
            codes.insert(codes.end(), part.begin(), part.end());
        if (BigInt(codes.size()) != dimension(p))
            throw InvariantViolation("nondegenerate enumeration disagrees with inclusion-exclusion");
    }
    return levels_.emplace(p, std::move(codes)).first->second;
}

std::optional<std::size_t> CochainComplex::index_of(int p, std::uint64_t code) {
    const auto& b = basis(p);
    if (!options_.normalized)
        return code < b.size() ? std::optional<std::size_t>(code) : std::nullopt;
    auto it = std::lower_bound(b.begin(), b.end(), code);
    if (it == b.end() || *it != code)
        return std::nullopt;
    return static_cast<std::size_t>(it - b.begin());
}

const SparseIntMatrix& CochainComplex::coboundary(int q) {
    auto it = deltas_.find(q);
    if (it != deltas_.end())
        return it->second;
    if (q < 0)
        throw InputError("coboundary degree must be non-negative");
    const auto& rows = basis(q + 1);
    const auto& cols = basis(q);
    const bool normalized = options_.normalized;
    const unsigned threads = std::max(1u, options_.threads);
    std::vector<SparseIntMatrix> blocks(threads, SparseIntMatrix(0, cols.size()));
    parallel_chunks(rows.size(), threads, [&](unsigned t, std::size_t begin, std::size_t end) {
        std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> out(end - begin);
        std::vector<std::pair<std::uint32_t, std::int64_t>> entry;
        for (std::size_t r = begin; r < end; ++r) {
            entry.clear();
            for (int i = 0; i <= q + 1; ++i) {
                std::uint64_t y = nerve_.face_code(q + 1, rows[r], i);
                std::size_t col;
                if (normalized) {
                    auto pos = std::lower_bound(cols.begin(), cols.end(), y);
                    if (pos == cols.end() || *pos != y)
                        continue; // degenerate face
                    col = static_cast<std::size_t>(pos - cols.begin());
                } else {
                    col = y;
                }
                entry.emplace_back(static_cast<std::uint32_t>(col), i % 2 ? -1 : 1);
            }
            std::sort(entry.begin(), entry.end());
            auto& row = out[r - begin];
            for (const auto& [c, v] : entry) {
                if (!row.empty() && row.back().first == c)
                    row.back().second += v;
                else
                    row.emplace_back(c, v);
            }
            row.erase(std::remove_if(row.begin(), row.end(), [](const auto& e) { return e.second == 0; }),
                      row.end());
        }
        blocks[t] = SparseIntMatrix::from_rows(cols.size(), std::move(out));
    });
    SparseIntMatrix m(0, cols.size());
    for (const auto& b : blocks)
        m.append_rows(b);
    return deltas_.emplace(q, std::move(m)).first->second;
}

std::vector<std::int64_t> CochainComplex::apply_coboundary(int q, std::span<const std::int64_t> cochain,
                                                           std::uint32_t modulus) {
    const auto& d = coboundary(q);
    if (cochain.size() != d.cols())
        throw InputError("cochain length does not match the degree");
    std::vector<std::int64_t> out(d.rows(), 0);
    for (std::size_t r = 0; r < d.rows(); ++r) {
        auto cs = d.row_cols(r);
        auto vs = d.row_values(r);
        std::int64_t acc = 0;
        for (std::size_t k = 0; k < cs.size(); ++k)
            acc = reduce_mod(acc + vs[k] * cochain[cs[k]], modulus);
        out[r] = acc;
    }
    return out;
}

std::vector<std::int64_t> CochainComplex::cup_product(int p, std::span<const std::int64_t> a, int q,
                                                      std::span<const std::int64_t> b,
                                                      std::uint32_t modulus) {
    if (p < 0 || q < 0)
        throw InputError("cup product degrees must be non-negative");
    if (a.size() != basis(p).size() || b.size() != basis(q).size())
        throw InputError("cochain length does not match its degree");
    const int n = p + q;
    const auto& simplices = basis(n);
    std::vector<std::int64_t> out(simplices.size(), 0);
    for (std::size_t k = 0; k < simplices.size(); ++k) {
        auto front = index_of(p, nerve_.front_face_code(n, simplices[k], p));
        if (!front || a[*front] == 0)
            continue;
        auto back = index_of(q, nerve_.back_face_code(n, simplices[k], p));
        if (!back)
            continue;
        out[k] = reduce_mod(a[*front] * b[*back], modulus);
    }
    return out;
}

std::vector<std::size_t> CohomologyResult::ranks() const {
    std::vector<std::size_t> out;
    for (const auto& d : degrees)
        out.push_back(d.rank);
    return out;
}

CohomologyResult cohomology(CochainComplex& complex, CoefficientRing ring, int max_degree) {
    if (max_degree < 0)
        throw InputError("maximal degree must be non-negative");
    CohomologyResult result;
    result.ring = ring;
    result.normalized = complex.options().normalized;
    result.requested_degree = max_degree;

    std::map<int, std::size_t> ranks;
    std::map<int, SNFResult> snf;
    auto rank_of = [&](int q) -> std::size_t {
        if (auto it = ranks.find(q); it != ranks.end())
            return it->second;
        MatrixReport info;
        info.degree = q;
        auto t0 = std::chrono::steady_clock::now();
        const auto& d = complex.coboundary(q);
        info.assembly_seconds = seconds_since(t0);
        info.rows = d.rows();
        info.cols = d.cols();
        info.nonzeros = d.nonzeros();
        t0 = std::chrono::steady_clock::now();
        std::size_t r;
        if (ring.kind == CoefficientRing::Kind::Fp) {
            r = rank_mod_p(d, ring.p);
        } else {
            auto s = smith_normal_form(d);
            r = s.rank;
            snf.emplace(q, std::move(s));
        }
        info.elimination_seconds = seconds_since(t0);
        info.rank = r;
        result.matrices.push_back(info);
        ranks.emplace(q, r);
        return r;
    };

    for (int n = 0; n <= max_degree; ++n) {
        if (!complex.fits(n + 1)) {
            std::ostringstream os;
            os << "degree " << n << " needs C^" << n + 1 << " with " << complex.dimension(n + 1)
               << " generators, over the budget of " << complex.options().budget;
            result.stop_reason = os.str();
            break;
        }
        DegreeCohomology deg;
        deg.degree = n;
        try {
            const std::size_t dim = complex.basis(n).size();
            const std::size_t out = rank_of(n);
            const std::size_t in = n > 0 ? rank_of(n - 1) : 0;
            deg.cochains = dim;
            deg.rank = dim - out - in;
            if (ring.kind == CoefficientRing::Kind::Z && n > 0)
                deg.torsion = snf.at(n - 1).torsion();
        } catch (const BudgetExceeded& e) {
            result.stop_reason = e.what();
            break;
        }
        result.degrees.push_back(std::move(deg));
        result.computed_degree = n;
    }
    return result;
}

CohomologyResult cohomology(const CrossedModule& cm, CoefficientRing ring, int max_degree,
                            const ComplexOptions& options) {
    CochainComplex complex(Nerve(cm), options);
    return cohomology(complex, ring, max_degree);
}

} // namespace xmod
