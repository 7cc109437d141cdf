#include "catch_amalgamated.hpp"

#include "common/error.hpp"
#include "group/finite_group.hpp"

#include <algorithm>

using namespace xmod;

TEST_CASE("cyclic groups") {
    auto one = make_cyclic(1);
    CHECK(one->order() == 1);

    auto z4 = make_cyclic(4);
    CHECK(z4->mul(1, 3) == 0);
    CHECK(z4->inv(1) == 3);
    CHECK(z4->element_order(2) == 2);
    CHECK(z4->exponent() == 4);

    CHECK_THROWS_AS(make_cyclic(0), InputError);
}

TEST_CASE("direct products") {
    auto z2 = make_cyclic(2);
    auto v4 = direct_product(*z2, *z2);
    CHECK(v4->order() == 4);
    CHECK(v4->exponent() == 2);

    auto one = make_cyclic(1);
    CHECK(direct_product(*one, *one)->order() == 1);

    // Z/2 x Z/3 is cyclic: it has an element of order 6.
    auto z6 = direct_product(*z2, *make_cyclic(3));
    CHECK(z6->order() == 6);
    std::vector<std::uint32_t> orders;
    for (Elem x = 0; x < 6; ++x)
        orders.push_back(z6->element_order(x));
    std::sort(orders.begin(), orders.end());
    CHECK(orders == std::vector<std::uint32_t>{1, 2, 3, 3, 6, 6});
}

TEST_CASE("table validation") {
    // Not associative: a Latin square with identity 0 of order 5 that is not a group.
    std::vector<Elem> bad = {0, 1, 2, 3, 4, //
                             1, 0, 3, 4, 2, //
                             2, 4, 0, 1, 3, //
                             3, 2, 4, 0, 1, //
                             4, 3, 1, 2, 0};
    CHECK_THROWS_AS(FiniteGroup::from_table(5, bad), InputError);
    CHECK_THROWS_AS(FiniteGroup::from_table(2, {1, 0, 0, 1}), InputError);
    CHECK_THROWS_AS(FiniteGroup::from_table(2, {0, 1, 1}), InputError);
}

TEST_CASE("symmetric and dihedral groups") {
    auto s3 = make_symmetric(3);
    CHECK(s3->order() == 6);
    CHECK_FALSE(s3->is_abelian());
    auto d4 = make_dihedral(4);
    CHECK(d4->order() == 8);
    CHECK_FALSE(d4->is_abelian());
    // r^2 is central
    for (Elem x = 0; x < 8; ++x)
        CHECK(d4->mul(2, x) == d4->mul(x, 2));
}

TEST_CASE("homomorphisms are checked") {
    auto z4 = make_cyclic(4), z2 = make_cyclic(2);
    CHECK_NOTHROW(GroupHom(z4, z2, {0, 1, 0, 1}));
    CHECK_THROWS_AS(GroupHom(z4, z2, {0, 1, 1, 0}), InputError);
    CHECK_THROWS_AS(GroupHom(z2, z4, {1, 0}), InputError);
}

TEST_CASE("kernels") {
    auto z4 = make_cyclic(4), z2 = make_cyclic(2);
    Subgroup k = kernel(GroupHom(z4, z2, {0, 1, 0, 1}));
    CHECK(k.group->order() == 2);
    CHECK(k.embedding.image() == std::vector<Elem>{0, 2});
    CHECK(k.embedding.is_injective());

    CHECK(kernel(GroupHom::identity(z4)).group->order() == 1);
    auto z6 = make_cyclic(6);
    CHECK(kernel(GroupHom::trivial(z6, make_cyclic(5))).group->order() == 6);
}

TEST_CASE("cokernels") {
    auto z4 = make_cyclic(4), z2 = make_cyclic(2), z3 = make_cyclic(3);
    CHECK(cokernel(GroupHom(z4, z2, {0, 1, 0, 1})).group->order() == 1);
    CHECK(cokernel(GroupHom::trivial(make_cyclic(1), z3)).group->order() == 3);
    Quotient q = cokernel(GroupHom(z2, z4, {0, 2}));
    CHECK(q.group->order() == 2);
    CHECK(q.projection.is_surjective());

    // A non-normal image: a transposition in S3.
    auto s3 = make_symmetric(3);
    Elem t = 0;
    for (Elem x = 1; x < 6; ++x)
        if (s3->element_order(x) == 2) {
            t = x;
            break;
        }
    CHECK_THROWS_AS(cokernel(GroupHom(z2, s3, {0, t})), InputError);
}

TEST_CASE("Lagrange counting for every hom between small cyclic groups") {
    for (std::uint32_t m = 1; m <= 8; ++m) {
        for (std::uint32_t n = 1; n <= 8; ++n) {
            auto a = make_cyclic(m), b = make_cyclic(n);
            for (Elem t = 0; t < n; ++t) {
                if ((static_cast<std::uint64_t>(t) * m) % n != 0)
                    continue;
                std::vector<Elem> map(m);
                for (Elem x = 0; x < m; ++x)
                    map[x] = static_cast<Elem>((static_cast<std::uint64_t>(t) * x) % n);
                GroupHom h(a, b, map);
                auto img = h.image().size();
                CHECK(m == kernel(h).group->order() * img);
                CHECK(n == img * cokernel(h).group->order());
            }
        }
    }
}

TEST_CASE("actions are checked") {
    auto z2 = make_cyclic(2), z3 = make_cyclic(3);
    CHECK_NOTHROW(GroupAction(z2, z3, {0, 1, 2, 0, 2, 1}));
    CHECK_FALSE(GroupAction(z2, z3, {0, 1, 2, 0, 2, 1}).is_trivial());
    // not an automorphism
    CHECK_THROWS_AS(GroupAction(z2, z3, {0, 1, 2, 0, 0, 0}), InputError);
    // identity does not act trivially
    CHECK_THROWS_AS(GroupAction(z2, z3, {0, 2, 1, 0, 2, 1}), InputError);
}
