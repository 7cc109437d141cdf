#include "groupcoh/group_cohomology.hpp"

#include "common/error.hpp"
#include "common/parallel.hpp"

#include <boost/integer/common_factor.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

namespace xmod {

namespace {

std::int64_t to_int64(const BigInt& v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw InputError("module entries are too large for the bar complex");
    return static_cast<std::int64_t>(v);
}

struct IntegerModule {
    std::vector<std::vector<std::int64_t>> rho; // row-major d x d per element
    std::int64_t unit = 1;                      // image of the scalar 1
};

// Entries of every rho(g) as integers: scaled by the common denominator over
// Q (does not change ranks), reduced mod p over GF(p).
IntegerModule integer_entries(const ModuleRep& mod, const CoefficientRing& ring) {
    const auto& ms = mod.matrices();
    const std::size_t d = mod.dimension();
    IntegerModule im;
    auto& out = im.rho;
    out.assign(ms.size(), std::vector<std::int64_t>(d * d));
    if (ring.kind == CoefficientRing::Kind::Fp) {
        const BigInt p = ring.p;
        for (std::size_t g = 0; g < ms.size(); ++g)
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) {
                    const Rational& v = ms[g](a, b);
                    BigInt den = denominator(v) % p;
                    if (den == 0)
                        throw InputError("module entry " + v.str() + " is not defined over GF(" +
                                         std::to_string(ring.p) + ")");
                    // Fermat inverse of the denominator.
                    BigInt inv = powm(den, p - 2, p);
                    BigInt r = (numerator(v) % p) * inv % p;
                    if (r < 0)
                        r += p;
                    out[g][a * d + b] = static_cast<std::int64_t>(r);
                }
        return im;
    }
    BigInt lcm = 1;
    for (const auto& m : ms)
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
                lcm = boost::integer::lcm(lcm, BigInt(denominator(m(a, b))));
    for (std::size_t g = 0; g < ms.size(); ++g)
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
                out[g][a * d + b] = to_int64(numerator(ms[g](a, b)) * (lcm / denominator(ms[g](a, b))));
    im.unit = to_int64(lcm);
    return im;
}

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (b != 0 && r > std::numeric_limits<std::uint64_t>::max() / b)
            return std::numeric_limits<std::uint64_t>::max();
        r *= b;
    }
    return r;
}

void require_order(const RationalMatrix& m, unsigned order, const std::string& name) {
    for (unsigned k = 1; k < order; ++k)
        if (m.power(k).is_identity())
            throw InputError(name + " has order " + std::to_string(k) + ", expected " + std::to_string(order));
    if (!m.power(order).is_identity())
        throw InputError(name + " does not have order " + std::to_string(order));
}

struct AmalgamSpaces {
    RationalMatrix fix_s, fix_r, fix_c; // fix(S), fix(R), fix(S^2)
};

AmalgamSpaces amalgam_spaces(const ModuleRep& mod) {
    if (mod.is_finite() || !mod.tag())
        throw InputError("SL(2,Z) cohomology needs a module over an arithmetic group");
    const RationalMatrix& s = mod.generator_image("S");
    const RationalMatrix& r = mod.generator_image("R");
    // Orders as elements of the acting group; on the module S^4 = R^6 = 1 is
    // what the amalgam sequence needs.
    if (!s.power(4).is_identity())
        throw InputError("module image of S does not satisfy S^4 = 1");
    if (!r.power(6).is_identity())
        throw InputError("module image of R does not satisfy R^6 = 1");
    if (!(s.power(2) == r.power(3)))
        throw InputError("module images violate S^2 = R^3");
    const auto& tag = *mod.tag();
    require_order(tag.generator("S"), 4, "S");
    require_order(tag.generator("R"), 6, "R");
    if (!(tag.generator("S").power(2) == tag.generator("R").power(3)))
        throw InputError("generators violate S^2 = R^3");
    return {fixed_space(s), fixed_space(r), fixed_space(s.power(2))};
}

} // namespace

GroupCohomologyResult bar_cohomology(const ModuleRep& mod, int max_degree, CoefficientRing ring,
                                     const BarOptions& options) {
    if (!mod.is_finite())
        throw InputError("the bar complex needs a finite group");
    if (ring.kind == CoefficientRing::Kind::Z)
        throw InputError("bar cohomology is computed over Q or GF(p)");
    if (max_degree < 0)
        throw InputError("maximal degree must be non-negative");

    GroupCohomologyResult result;
    result.ring = ring;
    result.requested_degree = max_degree;

    const FiniteGroup& g = *mod.group();
    const std::uint64_t order = g.order();
    const std::size_t d = mod.dimension();
    const IntegerModule im = integer_entries(mod, ring);
    const auto& entries = im.rho;
    const std::int64_t unit = im.unit;
    const std::uint32_t modulus = ring.kind == CoefficientRing::Kind::Fp ? ring.p : 0;
    auto signed_unit = [&](bool negative) -> std::int64_t {
        if (modulus)
            return negative ? modulus - 1 : 1;
        return negative ? -unit : unit;
    };

    // delta^n : C^n -> C^(n+1); tuples are indexed with g_1 most significant.
    auto coboundary = [&](int n) {
        const std::uint64_t rows_tuples = ipow(order, n + 1);
        const std::uint64_t cols = ipow(order, n) * d;
        const unsigned threads = std::max(1u, options.threads);
        std::vector<std::vector<Triplet>> parts(threads);
        parallel_chunks(rows_tuples, threads, [&](unsigned t, std::size_t begin, std::size_t end) {
            std::vector<Elem> tuple(n + 1);
            auto& out = parts[t];
            for (std::uint64_t code = begin; code < end; ++code) {
                std::uint64_t c = code;
                for (int i = n; i >= 0; --i) {
                    tuple[i] = static_cast<Elem>(c % order);
                    c /= order;
                }
                auto encode = [&](auto&& at, int len) {
                    std::uint64_t v = 0;
                    for (int i = 0; i < len; ++i)
                        v = v * order + at(i);
                    return v;
                };
                const std::uint64_t tail = encode([&](int i) { return tuple[i + 1]; }, n);
                const std::uint64_t head = encode([&](int i) { return tuple[i]; }, n);
                for (std::size_t a = 0; a < d; ++a) {
                    const std::size_t row = code * d + a;
                    const auto& rho = entries[tuple[0]];
                    for (std::size_t b = 0; b < d; ++b)
                        if (rho[a * d + b] != 0)
                            out.push_back({row, tail * d + b, rho[a * d + b]});
                    for (int i = 1; i <= n; ++i) {
                        const std::uint64_t merged = encode(
                            [&](int k) {
                                if (k < i - 1)
                                    return tuple[k];
                                if (k == i - 1)
                                    return g.mul(tuple[i - 1], tuple[i]);
                                return tuple[k + 1];
                            },
                            n);
                        out.push_back({row, merged * d + a, signed_unit(i % 2 == 1)});
                    }
                    out.push_back({row, head * d + a, signed_unit((n + 1) % 2 == 1)});
                }
            }
        });
        std::vector<Triplet> all;
        for (auto& p : parts)
            all.insert(all.end(), p.begin(), p.end());
        if (modulus)
            for (auto& e : all)
                e.value %= modulus;
        return SparseIntMatrix::from_triplets(rows_tuples * d, cols, std::move(all));
    };

    std::map<int, std::size_t> ranks;
    auto rank_of = [&](int n) {
        if (auto it = ranks.find(n); it != ranks.end())
            return it->second;
        auto m = coboundary(n);
        const std::size_t r = modulus ? rank_mod_p(m, modulus) : smith_normal_form(m).rank;
        ranks.emplace(n, r);
        return r;
    };

    for (int n = 0; n <= max_degree; ++n) {
        const std::uint64_t rows = ipow(order, n + 1);
        if (rows == std::numeric_limits<std::uint64_t>::max() || rows * d > options.budget) {
            std::ostringstream os;
            os << "degree " << n << " needs a coboundary with " << order << "^" << n + 1 << " * " << d
               << " rows, over the budget of " << options.budget;
            result.stop_reason = os.str();
            break;
        }
        const std::size_t dim = ipow(order, n) * d;
        result.dims.push_back(dim - rank_of(n) - (n > 0 ? rank_of(n - 1) : 0));
        result.computed_degree = n;
    }
    return result;
}

std::vector<std::size_t> sl2z_cohomology(const ModuleRep& mod, int max_degree) {
    if (max_degree < 0)
        throw InputError("maximal degree must be non-negative");
    const auto sp = amalgam_spaces(mod);
    std::vector<std::size_t> dims(max_degree + 1, 0);
    dims[0] = intersection_dimension(sp.fix_s, sp.fix_r);
    if (max_degree >= 1)
        dims[1] = sp.fix_c.cols() - span_dimension({sp.fix_s, sp.fix_r});
    return dims;
}

std::vector<std::size_t> gl2z_cohomology(const ModuleRep& mod, int max_degree) {
    if (max_degree < 0)
        throw InputError("maximal degree must be non-negative");
    const auto sp = amalgam_spaces(mod);
    const auto& tag = *mod.tag();
    const RationalMatrix& jg = tag.generator("J");
    const RationalMatrix& sg = tag.generator("S");
    const RationalMatrix& rg = tag.generator("R");
    if (!jg.power(2).is_identity() || !(jg * sg * jg == *sg.inverse()) || !(jg * rg * jg == *rg.inverse()))
        throw InputError("J must be an involution inverting S and R by conjugation");
    const RationalMatrix& j = mod.generator_image("J");
    if (!j.power(2).is_identity())
        throw InputError("module image of J is not an involution");
    const RationalMatrix fix_j = fixed_space(j);

    // Over Q taking Z/2-invariants is exact, so the invariants of a quotient
    // U/W are (U cap fix J)/(W cap fix J).
    std::vector<std::size_t> dims(max_degree + 1, 0);
    const RationalMatrix id = RationalMatrix::identity(mod.dimension());
    dims[0] = vstack({mod.generator_image("S") - id, mod.generator_image("R") - id, j - id}).kernel_basis().cols();
    if (max_degree >= 1)
        dims[1] = intersection_dimension(sp.fix_c, fix_j) - intersection_dimension(hstack({sp.fix_s, sp.fix_r}), fix_j);
    return dims;
}

std::array<NamedMatrix, 3> soule_matrices() {
    return {NamedMatrix{"A", RationalMatrix::from_integers({{0, -1, 0}, {-1, 0, 0}, {0, 0, -1}})},
            NamedMatrix{"B", RationalMatrix::from_integers({{-1, 0, 0}, {0, 0, -1}, {0, -1, 0}})},
            NamedMatrix{"C", RationalMatrix::from_integers({{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}})}};
}

} // namespace xmod
