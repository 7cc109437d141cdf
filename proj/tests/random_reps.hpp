#pragma once

// Random rational representations of small finite groups, and an independent
// character-theoretic count of invariants used as an oracle.

#include "groupcoh/module_rep.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace reps {

using xmod::ModuleRep;
using xmod::Rational;
using xmod::RationalMatrix;

// e_q of the eigenvalues of m through Newton's identities on tr(m^i).
inline std::vector<Rational> elementary_symmetric(const RationalMatrix& m) {
    const std::size_t d = m.rows();
    std::vector<Rational> p(d + 1), e(d + 1);
    RationalMatrix power = RationalMatrix::identity(d);
    for (std::size_t i = 1; i <= d; ++i) {
        power = power * m;
        for (std::size_t k = 0; k < d; ++k)
            p[i] += power(k, k);
    }
    e[0] = 1;
    for (std::size_t q = 1; q <= d; ++q) {
        Rational acc = 0;
        for (std::size_t i = 1; i <= q; ++i)
            acc += (i % 2 ? 1 : -1) * e[q - i] * p[i];
        e[q] = acc / q;
    }
    return e;
}

// dim Lambda^q(V)^C = (1/|C|) sum_c tr Lambda^q rho(c), and tr Lambda^q is
// e_q of the eigenvalues.
inline std::vector<std::size_t> invariant_dims_by_characters(const ModuleRep& rep) {
    const std::size_t d = rep.dimension();
    std::vector<Rational> sum(d + 1, Rational(0));
    for (const auto& m : rep.matrices()) {
        auto e = elementary_symmetric(m);
        for (std::size_t q = 0; q <= d; ++q)
            sum[q] += e[q];
    }
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q <= d; ++q) {
        Rational v = sum[q] / static_cast<long long>(rep.matrices().size());
        out.push_back(static_cast<std::size_t>(numerator(v)));
    }
    return out;
}

struct RandomRep {
    std::string description;
    ModuleRep rep;
};

inline RationalMatrix signed_permutation(const std::vector<std::uint32_t>& perm, const std::vector<int>& signs) {
    RationalMatrix m(perm.size(), perm.size());
    for (std::size_t x = 0; x < perm.size(); ++x)
        m(perm[x], x) = signs[x];
    return m;
}

// One of: a cyclic group generated by a random signed permutation matrix; a
// Klein four group acting by commuting diagonal sign matrices; a symmetric
// group permuting coordinates, optionally twisted by the sign character.
inline RandomRep random_rep(std::mt19937& rng) {
    std::uniform_int_distribution<int> kind_dist(0, 2), coin(0, 1);
    std::uniform_int_distribution<std::size_t> dim_dist(1, 4);
    const int kind = kind_dist(rng);
    std::size_t k = dim_dist(rng);
    if (kind == 0) {
        std::vector<std::uint32_t> perm(k);
        std::iota(perm.begin(), perm.end(), 0u);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<int> signs(k);
        for (auto& s : signs)
            s = coin(rng) ? 1 : -1;
        RationalMatrix g = signed_permutation(perm, signs);
        std::uint32_t order = 1;
        while (!g.power(order).is_identity())
            ++order;
        std::vector<xmod::Elem> gens{order > 1 ? 1u : 0u};
        std::vector<RationalMatrix> images{g};
        return {"Z/" + std::to_string(order) + " by a signed permutation on Q^" + std::to_string(k),
                ModuleRep::finite_from_generators(xmod::make_cyclic(order), gens, images)};
    }
    if (kind == 1) {
        auto c2 = xmod::make_cyclic(2);
        auto v4 = xmod::direct_product(*c2, *c2);
        std::vector<RationalMatrix> images;
        for (int g = 0; g < 2; ++g) {
            RationalMatrix m(k, k);
            for (std::size_t i = 0; i < k; ++i)
                m(i, i) = coin(rng) ? 1 : -1;
            images.push_back(m);
        }
        // (1,0) has index 2 and (0,1) index 1.
        std::vector<xmod::Elem> gens{2, 1};
        return {"Klein four group by diagonal signs on Q^" + std::to_string(k),
                ModuleRep::finite_from_generators(v4, gens, images)};
    }
    k = std::max<std::size_t>(k, 2);
    const bool twisted = coin(rng);
    auto g = xmod::make_symmetric(static_cast<std::uint32_t>(k));
    std::vector<std::uint32_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0u);
    std::vector<RationalMatrix> ms;
    do {
        int sign = 1;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (perm[i] > perm[j])
                    sign = -sign;
        RationalMatrix m(k, k);
        for (std::size_t x = 0; x < k; ++x)
            m(x, perm[x]) = twisted ? sign : 1;
        ms.push_back(m);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {std::string("S_") + std::to_string(k) + (twisted ? " by signed" : " by") + " permutations of Q^" +
                std::to_string(k),
            ModuleRep::finite(g, ms)};
}

} // namespace reps
