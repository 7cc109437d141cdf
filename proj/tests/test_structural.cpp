#include "common/error.hpp"
#include "random_reps.hpp"
#include "structural/structural.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>

using namespace xmod;

namespace {

GradedDims dims(int truncation, std::vector<std::pair<int, std::uint64_t>> nonzero) {
    auto g = GradedDims::zero(truncation);
    for (auto [q, d] : nonzero)
        g.dims[q] = d;
    return g;
}

// Counts monomials x_1^a_1 ... x_r^a_r of each total degree by enumeration,
// with a_i <= 1 for odd generators.
std::vector<std::uint64_t> monomial_count(const std::vector<int>& degrees, int truncation) {
    std::vector<std::uint64_t> out(truncation + 1, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int total) {
        if (i == degrees.size()) {
            ++out[total];
            return;
        }
        const int d = degrees[i];
        const int max_power = d % 2 ? 1 : truncation / d;
        for (int a = 0; a <= max_power && total + a * d <= truncation; ++a)
            rec(i + 1, total + a * d);
    };
    rec(0, 0);
    return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n)
        return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < k; ++i)
        r = r * (n - i) / (i + 1);
    return r;
}

CompactGroupSpec simple(char family, int rank, std::size_t n, std::size_t t) {
    CompactGroupSpec s;
    s.center_rank = n;
    s.cokernel = CompactGroupSpec::SimpleCokernel{family, rank};
    s.transgression_rank = t;
    return s;
}

} // namespace

TEST_CASE("free graded-commutative algebras") {
    CHECK(free_gca_dims(std::vector<int>{3}, 6) == dims(6, {{0, 1}, {3, 1}}));
    CHECK(free_gca_dims(std::vector<int>{3, 3}, 8) == dims(8, {{0, 1}, {3, 2}, {6, 1}}));
    CHECK(free_gca_dims(std::vector<int>{4, 6}, 12) ==
          dims(12, {{0, 1}, {4, 1}, {6, 1}, {8, 1}, {10, 1}, {12, 2}}));
    CHECK(free_gca_dims(std::vector<int>{}, 3) == GradedDims::unit(3));
    CHECK_THROWS_AS(free_gca_dims(std::vector<int>{0}, 3), InputError);
    CHECK_THROWS_AS(free_gca_dims(std::vector<int>{2}, -1), InputError);
}

TEST_CASE("free algebras agree with monomial enumeration") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> count(0, 5), degree(1, 8);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> gens(count(rng));
        for (auto& g : gens)
            g = degree(rng);
        CAPTURE(gens);
        CHECK(free_gca_dims(gens, 24).dims == monomial_count(gens, 24));
    }
}

TEST_CASE("free algebra growth") {
    // Only odd generators: finite total dimension 2^r.
    std::vector<int> odd{1, 3, 3, 5, 7};
    auto g = free_gca_dims(odd, 40);
    std::uint64_t total = 0;
    for (auto d : g.dims)
        total += d;
    CHECK(total == 32);
    // Any even generator: every multiple of its degree is hit.
    std::vector<int> mixed{3, 4, 5};
    auto h = free_gca_dims(mixed, 60);
    for (int q = 0; q <= 60; q += 4)
        CHECK(h.at(q) > 0);
}

TEST_CASE("torus kernel") {
    CHECK(kernel_torus_cohomology(0, 6) == GradedDims::unit(6));
    CHECK(kernel_torus_cohomology(1, 6) == dims(6, {{0, 1}, {3, 1}}));
    CHECK(kernel_torus_cohomology(2, 6) == dims(6, {{0, 1}, {3, 2}, {6, 1}}));
    for (std::size_t k = 0; k <= 6; ++k) {
        auto g = kernel_torus_cohomology(k, 21);
        for (int q = 0; q <= 21; ++q)
            CHECK(g.at(q) == (q % 3 ? 0 : binomial(k, q / 3)));
    }
}

TEST_CASE("Kuenneth products") {
    auto a = kernel_torus_cohomology(1, 9);
    CHECK(kunneth(a, GradedDims::unit(9)) == a);
    CHECK(kunneth(a, a) == kernel_torus_cohomology(2, 9));
    CHECK_THROWS_AS(kunneth(a, GradedDims::unit(8)), InputError);
}

TEST_CASE("finite cokernel") {
    auto z2 = make_cyclic(2);
    for (std::size_t k = 0; k <= 3; ++k)
        CHECK(finite_cokernel_cohomology(k, ModuleRep::trivial(z2, k), 12) == kernel_torus_cohomology(k, 12));
    auto sign = ModuleRep::finite(z2, {RationalMatrix::identity(1), RationalMatrix::from_integers({{-1}})});
    CHECK(finite_cokernel_cohomology(1, sign, 6) == GradedDims::unit(6));
    CHECK_THROWS_AS(finite_cokernel_cohomology(2, sign, 6), InputError);
    // The trivial group (a surjective boundary) gives the full exterior algebra.
    CHECK(finite_cokernel_cohomology(3, ModuleRep::trivial(make_cyclic(1), 3), 9) == kernel_torus_cohomology(3, 9));
}

TEST_CASE("finite cokernel on random representations") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        auto r = reps::random_rep(rng);
        CAPTURE(r.description);
        const std::size_t k = r.rep.dimension();
        auto g = finite_cokernel_cohomology(k, r.rep, 15);
        auto expected = reps::invariant_dims_by_characters(r.rep);
        for (int q = 0; q <= 15; ++q) {
            if (q % 3) {
                CHECK(g.at(q) == 0);
            } else {
                const std::size_t e = static_cast<std::size_t>(q / 3) <= k ? expected[q / 3] : 0;
                CHECK(g.at(q) == e);
            }
        }
        CHECK(g.at(0) == 1);
    }
}

TEST_CASE("exponent table") {
    CHECK(check_exponent_table() > 20);
    CHECK(lie_exponents('A', 2) == std::vector<int>{1, 2});
    CHECK(lie_exponents('D', 4) == std::vector<int>{1, 3, 3, 5});
    CHECK(lie_exponents('E', 8).size() == 8);
    CHECK(weyl_group_order('A', 2) == 6);
    CHECK(weyl_group_order('E', 8) == 696729600);
    CHECK(classifying_space_degrees('A', 2) == std::vector<int>{4, 6});
    CHECK(classifying_space_degrees('G', 2) == std::vector<int>{4, 12});
    CHECK_THROWS_AS(lie_exponents('E', 5), InputError);
    CHECK_THROWS_AS(lie_exponents('B', 1), InputError);
    CHECK_THROWS_AS(lie_exponents('X', 2), InputError);
    // Dimension check: sum(2 e_i + 1) = dim of the group, e.g. SU(3) has
    // dimension 8 and G2 dimension 14.
    auto dim = [](char f, int r) {
        int s = 0;
        for (int e : lie_exponents(f, r))
            s += 2 * e + 1;
        return s;
    };
    CHECK(dim('A', 2) == 8);
    CHECK(dim('G', 2) == 14);
    CHECK(dim('E', 8) == 248);
    CHECK(dim('D', 5) == 45);
}

TEST_CASE("compact cokernel") {
    // String group over SU(2): Q[y4]/(y4) = Q.
    CHECK(compact_cokernel_cohomology(simple('A', 1, 1, 1), 12) == GradedDims::unit(12));
    // Over SU(3): S(y6).
    CHECK(compact_cokernel_cohomology(simple('A', 2, 1, 1), 12) == dims(12, {{0, 1}, {6, 1}, {12, 1}}));
    // t = 0: the plain tensor product.
    for (char f : {'A', 'B', 'G'}) {
        const int r = f == 'A' ? 3 : 2;
        for (std::size_t n = 0; n <= 2; ++n) {
            auto got = compact_cokernel_cohomology(simple(f, r, n, 0), 20);
            auto expected = kunneth(free_gca_dims(classifying_space_degrees(f, r), 20), kernel_torus_cohomology(n, 20));
            CHECK(got == expected);
        }
    }
    CompactGroupSpec torus;
    torus.center_rank = 1;
    torus.cokernel = CompactGroupSpec::TorusCokernel{2};
    CHECK(compact_cokernel_cohomology(torus, 8) ==
          kunneth(free_gca_dims(std::vector<int>{2, 2}, 8), kernel_torus_cohomology(1, 8)));
    torus.transgression_rank = 1;
    CHECK_THROWS_AS(compact_cokernel_cohomology(torus, 8), InputError);

    CHECK_THROWS_AS(compact_cokernel_cohomology(simple('A', 2, 1, 2), 8), InputError); // t > n
    CHECK_THROWS_AS(compact_cokernel_cohomology(simple('A', 2, 2, 2), 8), InputError); // one degree-4 generator

    CompactGroupSpec finite;
    finite.center_rank = 2;
    finite.cokernel = CompactGroupSpec::FiniteCokernel{ModuleRep::trivial(make_cyclic(3), 2)};
    CHECK(compact_cokernel_cohomology(finite, 9) == kernel_torus_cohomology(2, 9));
    finite.transgression_rank = 1;
    CHECK_THROWS_AS(compact_cokernel_cohomology(finite, 9), InputError);
}

TEST_CASE("E2 pages") {
    auto support = [](ArithmeticVariant v, std::size_t n) { return e2_page(v, n, 4, 9).support(); };
    using S = std::vector<std::tuple<int, int, std::uint64_t>>;
    CHECK(support(ArithmeticVariant::SL, 0) == S{{0, 0, 1}});
    CHECK(support(ArithmeticVariant::SL, 1) == S{{0, 0, 1}, {0, 3, 1}});
    CHECK(support(ArithmeticVariant::GL, 1) == S{{0, 0, 1}});
    CHECK(support(ArithmeticVariant::SL, 2) == S{{0, 0, 1}, {0, 6, 1}});
    CHECK(support(ArithmeticVariant::GL, 2) == S{{0, 0, 1}});

    // n = 3: only the p = 0 column is computed.
    auto sl3 = e2_page(ArithmeticVariant::SL, 3, 2, 9);
    CHECK(sl3.support() == S{{0, 0, 1}, {0, 9, 1}});
    CHECK_FALSE(sl3.at(1, 0).has_value());
    auto gl3 = e2_page(ArithmeticVariant::GL, 3, 2, 9);
    CHECK(gl3.support() == S{{0, 0, 1}});

    // Zero off the rows q = 3k.
    for (auto v : {ArithmeticVariant::SL, ArithmeticVariant::GL})
        for (std::size_t n = 0; n <= 3; ++n) {
            auto page = e2_page(v, n, 3, 12);
            for (int p = 0; p <= 3; ++p)
                for (int q = 0; q <= 12; ++q)
                    if (q % 3)
                        CHECK(page.at(p, q) == std::optional<std::uint64_t>(0));
        }
    CHECK_THROWS_AS(e2_page(ArithmeticVariant::SL, 4, 1, 1), InputError);
}
