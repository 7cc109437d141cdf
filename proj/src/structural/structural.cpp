#include "structural/structural.hpp"

#include "common/error.hpp"
#include "groupcoh/group_cohomology.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

namespace xmod {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b)
        throw InputError("graded dimension overflows 64 bits; lower the truncation degree");
    return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        throw InputError("graded dimension overflows 64 bits; lower the truncation degree");
    return a * b;
}

void require_truncation(int truncation) {
    if (truncation < 0)
        throw InputError("truncation degree must be non-negative");
}

BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i)
        r *= i;
    return r;
}

bool valid_type(char family, int rank) {
    switch (family) {
    case 'A':
        return rank >= 1;
    case 'B':
        return rank >= 2;
    case 'C':
        return rank >= 3;
    case 'D':
        return rank >= 4;
    case 'E':
        return rank >= 6 && rank <= 8;
    case 'F':
        return rank == 4;
    case 'G':
        return rank == 2;
    default:
        return false;
    }
}

constexpr int kMaxClassicalRank = 64;

std::vector<int> table_exponents(char family, int rank) {
    std::vector<int> e;
    switch (family) {
    case 'A':
        for (int i = 1; i <= rank; ++i)
            e.push_back(i);
        break;
    case 'B':
    case 'C':
        for (int i = 1; i <= rank; ++i)
            e.push_back(2 * i - 1);
        break;
    case 'D':
        for (int i = 1; i < rank; ++i)
            e.push_back(2 * i - 1);
        e.push_back(rank - 1);
        break;
    case 'E':
        if (rank == 6)
            e = {1, 4, 5, 7, 8, 11};
        else if (rank == 7)
            e = {1, 5, 7, 9, 11, 13, 17};
        else
            e = {1, 7, 11, 13, 17, 19, 23, 29};
        break;
    case 'F':
        e = {1, 5, 7, 11};
        break;
    case 'G':
        e = {1, 5};
        break;
    }
    std::sort(e.begin(), e.end());
    return e;
}

BigInt table_weyl_order(char family, int rank) {
    switch (family) {
    case 'A':
        return factorial(rank + 1);
    case 'B':
    case 'C':
        return (BigInt(1) << rank) * factorial(rank);
    case 'D':
        return (BigInt(1) << (rank - 1)) * factorial(rank);
    case 'E':
        return rank == 6 ? BigInt(51840) : rank == 7 ? BigInt(2903040) : BigInt(696729600);
    case 'F':
        return 1152;
    case 'G':
        return 12;
    }
    return 0;
}

std::size_t verify_table() {
    std::size_t checked = 0;
    const std::string families = "ABCDEFG";
    for (char f : families)
        for (int r = 1; r <= 16; ++r) {
            if (!valid_type(f, r))
                continue;
            BigInt prod = 1;
            for (int e : table_exponents(f, r))
                prod *= e + 1;
            if (prod != table_weyl_order(f, r)) {
                std::ostringstream os;
                os << "exponent table inconsistent for " << f << r << ": product " << prod << " != |W| "
                   << table_weyl_order(f, r);
                throw InvariantViolation(os.str());
            }
            ++checked;
        }
    return checked;
}

void ensure_table_checked() {
    static const std::size_t once = verify_table();
    (void)once;
}

} // namespace

GradedDims GradedDims::zero(int truncation) {
    require_truncation(truncation);
    return {truncation, std::vector<std::uint64_t>(truncation + 1, 0)};
}

GradedDims GradedDims::unit(int truncation) {
    auto g = zero(truncation);
    g.dims[0] = 1;
    return g;
}

std::uint64_t GradedDims::at(int degree) const {
    if (degree < 0 || degree > truncation)
        throw InputError("degree outside the truncation");
    return dims[degree];
}

std::string GradedDims::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t q = 0; q < dims.size(); ++q)
        os << (q ? "," : "") << dims[q];
    os << ") through degree " << truncation;
    return os.str();
}

GradedDims free_gca_dims(std::span<const int> degrees, int truncation) {
    auto out = GradedDims::unit(truncation);
    auto& d = out.dims;
    for (int g : degrees) {
        if (g < 1)
            throw InputError("generator degrees must be positive");
        if (g % 2) {
            // Exterior: descending so each generator is used at most once.
            for (int q = truncation; q >= g; --q)
                d[q] = checked_add(d[q], d[q - g]);
        } else {
            for (int q = g; q <= truncation; ++q)
                d[q] = checked_add(d[q], d[q - g]);
        }
    }
    return out;
}

GradedDims kernel_torus_cohomology(std::size_t k, int truncation) {
    return free_gca_dims(std::vector<int>(k, 3), truncation);
}

GradedDims finite_cokernel_cohomology(std::size_t k, const ModuleRep& rep, int truncation) {
    if (!rep.is_finite())
        throw InputError("finite-cokernel cohomology needs a finite group");
    if (rep.dimension() != k)
        throw InputError("the cokernel must act on Q^" + std::to_string(k));
    auto out = GradedDims::zero(truncation);
    for (std::size_t q = 0; q <= k && 3 * static_cast<int>(q) <= truncation; ++q)
        out.dims[3 * q] = invariants(exterior_power_rep(rep, q)).cols();
    return out;
}

GradedDims kunneth(const GradedDims& a, const GradedDims& b) {
    if (a.truncation != b.truncation)
        throw InputError("Kuenneth product needs a common truncation degree");
    auto out = GradedDims::zero(a.truncation);
    for (int i = 0; i <= a.truncation; ++i)
        for (int j = 0; i + j <= a.truncation; ++j)
            out.dims[i + j] = checked_add(out.dims[i + j], checked_mul(a.dims[i], b.dims[j]));
    return out;
}

std::vector<int> lie_exponents(char family, int rank) {
    ensure_table_checked();
    if (!valid_type(family, rank) || rank > kMaxClassicalRank) {
        std::ostringstream os;
        os << "no simple compact Lie group of type " << family << rank;
        throw InputError(os.str());
    }
    return table_exponents(family, rank);
}

BigInt weyl_group_order(char family, int rank) {
    lie_exponents(family, rank); // validates
    return table_weyl_order(family, rank);
}

std::size_t check_exponent_table() { return verify_table(); }

std::vector<int> classifying_space_degrees(char family, int rank) {
    std::vector<int> out;
    for (int e : lie_exponents(family, rank))
        out.push_back(2 * (e + 1));
    return out;
}

GradedDims compact_cokernel_cohomology(const CompactGroupSpec& spec, int truncation) {
    require_truncation(truncation);
    const std::size_t n = spec.center_rank;
    const std::size_t t = spec.transgression_rank;
    if (t > n)
        throw InputError("transgression rank " + std::to_string(t) + " exceeds the kernel rank " + std::to_string(n));

    if (const auto* f = std::get_if<CompactGroupSpec::FiniteCokernel>(&spec.cokernel)) {
        if (t > 0)
            throw InputError("a finite cokernel has no degree-4 classes for the transgression to hit");
        return finite_cokernel_cohomology(n, f->rep, truncation);
    }
    if (const auto* tor = std::get_if<CompactGroupSpec::TorusCokernel>(&spec.cokernel)) {
        if (t > 0)
            throw InputError("transgression into a torus cokernel is not supported; only t = 0");
        return kunneth(free_gca_dims(std::vector<int>(tor->rank, 2), truncation),
                       kernel_torus_cohomology(n, truncation));
    }
    const auto& simple = std::get<CompactGroupSpec::SimpleCokernel>(spec.cokernel);
    std::vector<int> degrees = classifying_space_degrees(simple.family, simple.rank);
    const auto fours = static_cast<std::size_t>(std::count(degrees.begin(), degrees.end(), 4));
    if (t > fours)
        throw InputError("transgression rank " + std::to_string(t) + " exceeds the " + std::to_string(fours) +
                         " degree-4 generator(s) of the classifying space");
    // T is injective of rank t onto t degree-4 generators: those generators
    // are divided out and t of the degree-3 classes do not survive.
    for (std::size_t k = 0; k < t; ++k)
        degrees.erase(std::find(degrees.begin(), degrees.end(), 4));
    degrees.insert(degrees.end(), n - t, 3);
    return free_gca_dims(degrees, truncation);
}

std::vector<std::tuple<int, int, std::uint64_t>> E2Page::support() const {
    std::vector<std::tuple<int, int, std::uint64_t>> out;
    for (int p = 0; p <= pmax; ++p)
        for (int q = 0; q <= qmax; ++q)
            if (grid[p][q] && *grid[p][q] != 0)
                out.emplace_back(p, q, *grid[p][q]);
    return out;
}

E2Page e2_page(ArithmeticVariant variant, std::size_t n, int pmax, int qmax) {
    if (pmax < 0 || qmax < 0)
        throw InputError("page bounds must be non-negative");
    if (n > 3)
        throw InputError("E2 pages are supported for n <= 3 (n = 3: p = 0 column only)");
    E2Page page;
    page.variant = variant;
    page.n = n;
    page.pmax = pmax;
    page.qmax = qmax;
    page.grid.assign(pmax + 1, std::vector<std::optional<std::uint64_t>>(qmax + 1, std::uint64_t{0}));

    const bool gl = variant == ArithmeticVariant::GL;
    for (std::size_t k = 0; k <= n && 3 * static_cast<int>(k) <= qmax; ++k) {
        const int q = 3 * static_cast<int>(k);
        std::vector<std::optional<std::uint64_t>> column(pmax + 1, std::uint64_t{0});
        if (n == 0) {
            column[0] = 1;
        } else if (n == 1) {
            if (!gl) {
                column[0] = 1; // SL(1,Z) is trivial
            } else {
                // GL(1,Z) = {+-1} acting on Lambda^k(Q) by (-1)^k.
                auto z2 = make_cyclic(2);
                const long long sign = k % 2 ? -1 : 1;
                auto mod = ModuleRep::finite(
                    z2, {RationalMatrix::identity(1), RationalMatrix::from_integers({{sign}})});
                auto h = bar_cohomology(mod, pmax, CoefficientRing::rationals());
                for (int p = 0; p <= pmax; ++p)
                    column[p] = p <= h.computed_degree ? std::optional<std::uint64_t>(h.dims[p]) : std::nullopt;
            }
        } else if (n == 2) {
            auto kind = gl ? ArithmeticKind::GL2Z : ArithmeticKind::SL2Z;
            auto mod = exterior_power_rep(ModuleRep::standard(ArithmeticGroupTag::standard(kind)), k);
            auto h = gl ? gl2z_cohomology(mod, pmax) : sl2z_cohomology(mod, pmax);
            for (int p = 0; p <= pmax; ++p)
                column[p] = h[p];
        } else {
            auto kind = gl ? ArithmeticKind::GL3Z : ArithmeticKind::SL3Z;
            auto mod = exterior_power_rep(ModuleRep::standard(ArithmeticGroupTag::elementary(kind)), k);
            column[0] = invariants(mod).cols();
            for (int p = 1; p <= pmax; ++p)
                column[p] = std::nullopt;
        }
        for (int p = 0; p <= pmax; ++p)
            page.grid[p][q] = column[p];
    }
    return page;
}

} // namespace xmod
