#include "group/finite_group.hpp"

#include "common/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace xmod {

namespace {

std::string str(const std::ostringstream& os) { return os.str(); }

} // namespace

FiniteGroup FiniteGroup::from_table(std::uint32_t order, std::vector<Elem> table) {
    if (order == 0)
        throw InputError("group order must be positive");
    const std::size_t n = order;
    if (table.size() != n * n) {
        std::ostringstream os;
        os << "multiplication table has " << table.size() << " entries, expected " << n * n;
        throw InputError(str(os));
    }
    for (Elem v : table)
        if (v >= order)
            throw InputError("multiplication table entry out of range");

    for (Elem x = 0; x < order; ++x) {
        if (table[x] != x || table[x * n] != x) {
            std::ostringstream os;
            os << "element 0 is not an identity (fails at " << x << ")";
            throw InputError(str(os));
        }
    }
    std::vector<Elem> inverse(n, order);
    for (Elem x = 0; x < order; ++x) {
        for (Elem y = 0; y < order; ++y) {
            if (table[x * n + y] == 0) {
                inverse[x] = y;
                break;
            }
        }
        if (inverse[x] == order || table[inverse[x] * n + x] != 0) {
            std::ostringstream os;
            os << "element " << x << " has no two-sided inverse";
            throw InputError(str(os));
        }
    }

    auto check = [&](Elem a, Elem b, Elem c) {
        if (table[table[a * n + b] * n + c] != table[a * n + table[b * n + c]]) {
            std::ostringstream os;
            os << "multiplication is not associative on (" << a << ", " << b << ", " << c << ")";
            throw InputError(str(os));
        }
    };
    if (order <= 64) {
        for (Elem a = 0; a < order; ++a)
            for (Elem b = 0; b < order; ++b)
                for (Elem c = 0; c < order; ++c)
                    check(a, b, c);
    } else {
        std::mt19937_64 rng(0x5eedu + order);
        std::uniform_int_distribution<Elem> pick(0, order - 1);
        for (int t = 0; t < 200000; ++t)
            check(pick(rng), pick(rng), pick(rng));
    }
    return FiniteGroup(order, std::move(table), std::move(inverse));
}

Elem FiniteGroup::power(Elem a, std::uint64_t k) const {
    Elem result = identity();
    Elem base = a;
    while (k) {
        if (k & 1u)
            result = mul(result, base);
        base = mul(base, base);
        k >>= 1u;
    }
    return result;
}

std::uint32_t FiniteGroup::element_order(Elem a) const {
    std::uint32_t k = 1;
    Elem x = a;
    while (x != identity()) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

bool FiniteGroup::is_abelian() const {
    for (Elem a = 0; a < order_; ++a)
        for (Elem b = a + 1; b < order_; ++b)
            if (mul(a, b) != mul(b, a))
                return false;
    return true;
}

std::uint32_t FiniteGroup::exponent() const {
    std::uint32_t e = 1;
    for (Elem a = 0; a < order_; ++a)
        e = std::lcm(e, element_order(a));
    return e;
}

GroupHom::GroupHom(GroupPtr source, GroupPtr target, std::vector<Elem> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
    const auto& s = *source_;
    const auto& t = *target_;
    if (map_.size() != s.order())
        throw InputError("homomorphism table length does not match source order");
    for (Elem v : map_)
        if (v >= t.order())
            throw InputError("homomorphism image out of range");
    for (Elem x = 0; x < s.order(); ++x) {
        for (Elem y = 0; y < s.order(); ++y) {
            if (map_[s.mul(x, y)] != t.mul(map_[x], map_[y])) {
                std::ostringstream os;
                os << "map is not a homomorphism: witness pair (" << x << ", " << y << ")";
                throw InputError(str(os));
            }
        }
    }
}

GroupHom GroupHom::identity(GroupPtr g) {
    std::vector<Elem> map(g->order());
    std::iota(map.begin(), map.end(), Elem{0});
    return GroupHom(g, g, std::move(map));
}

GroupHom GroupHom::trivial(GroupPtr source, GroupPtr target) {
    std::vector<Elem> map(source->order(), 0);
    return GroupHom(std::move(source), std::move(target), std::move(map));
}

bool GroupHom::is_injective() const {
    return std::count(map_.begin(), map_.end(), Elem{0}) == 1;
}

bool GroupHom::is_surjective() const { return image().size() == target_->order(); }

std::vector<Elem> GroupHom::image() const {
    std::vector<Elem> img(map_);
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    return img;
}

GroupHom GroupHom::after(const GroupHom& first) const {
    if (first.target_ptr() != source_ && !(first.target() == source()))
        throw InputError("composition of homomorphisms with mismatched groups");
    std::vector<Elem> map(first.source().order());
    for (Elem x = 0; x < map.size(); ++x)
        map[x] = map_[first(x)];
    return GroupHom(first.source_ptr(), target_, std::move(map));
}

GroupAction::GroupAction(GroupPtr actor, GroupPtr space, std::vector<Elem> table)
    : actor_(std::move(actor)), space_(std::move(space)), table_(std::move(table)) {
    const auto& h = *actor_;
    const auto& g = *space_;
    if (table_.size() != static_cast<std::size_t>(h.order()) * g.order())
        throw InputError("action table has wrong size");
    for (Elem v : table_)
        if (v >= g.order())
            throw InputError("action table entry out of range");
    for (Elem x = 0; x < g.order(); ++x)
        if ((*this)(x, 0) != x)
            throw InputError("identity of the acting group does not act trivially");
    for (Elem a = 0; a < h.order(); ++a) {
        std::vector<bool> hit(g.order(), false);
        for (Elem x = 0; x < g.order(); ++x) {
            for (Elem y = 0; y < g.order(); ++y) {
                if ((*this)(g.mul(x, y), a) != g.mul((*this)(x, a), (*this)(y, a))) {
                    std::ostringstream os;
                    os << "element " << a << " does not act by a homomorphism: witness (" << x
                       << ", " << y << ")";
                    throw InputError(str(os));
                }
            }
            hit[(*this)(x, a)] = true;
        }
        if (std::find(hit.begin(), hit.end(), false) != hit.end())
            throw InputError("an element does not act bijectively");
        for (Elem b = 0; b < h.order(); ++b) {
            for (Elem x = 0; x < g.order(); ++x) {
                if ((*this)((*this)(x, a), b) != (*this)(x, h.mul(a, b))) {
                    std::ostringstream os;
                    os << "not a right action: (g^" << a << ")^" << b << " != g^(" << a << "*" << b
                       << ") at g = " << x;
                    throw InputError(str(os));
                }
            }
        }
    }
}

GroupAction GroupAction::trivial(GroupPtr actor, GroupPtr space) {
    std::vector<Elem> table(static_cast<std::size_t>(actor->order()) * space->order());
    for (std::size_t k = 0; k < table.size(); ++k)
        table[k] = static_cast<Elem>(k % space->order());
    return GroupAction(std::move(actor), std::move(space), std::move(table));
}

bool GroupAction::is_trivial() const {
    for (std::size_t k = 0; k < table_.size(); ++k)
        if (table_[k] != k % space_->order())
            return false;
    return true;
}

GroupPtr make_cyclic(std::uint32_t n) {
    if (n == 0)
        throw InputError("cyclic group order must be positive");
    std::vector<Elem> table(static_cast<std::size_t>(n) * n);
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            table[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
    return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(n, std::move(table)));
}

GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const std::uint64_t na = a.order(), nb = b.order();
    const std::uint64_t n = na * nb;
    if (n > (1u << 16))
        throw InputError("direct product too large for a dense table");
    std::vector<Elem> table(n * n);
    for (std::uint64_t x = 0; x < n; ++x) {
        for (std::uint64_t y = 0; y < n; ++y) {
            Elem xa = static_cast<Elem>(x / nb), xb = static_cast<Elem>(x % nb);
            Elem ya = static_cast<Elem>(y / nb), yb = static_cast<Elem>(y % nb);
            table[x * n + y] = static_cast<Elem>(a.mul(xa, ya) * nb + b.mul(xb, yb));
        }
    }
    return std::make_shared<const FiniteGroup>(
        FiniteGroup::from_table(static_cast<std::uint32_t>(n), std::move(table)));
}

GroupPtr make_symmetric(std::uint32_t n) {
    if (n == 0 || n > 5)
        throw InputError("symmetric groups are supported for 1 <= n <= 5");
    std::vector<std::vector<std::uint32_t>> perms;
    std::vector<std::uint32_t> p(n);
    std::iota(p.begin(), p.end(), 0u);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<std::uint32_t>, Elem> index;
    for (Elem k = 0; k < perms.size(); ++k)
        index[perms[k]] = k;
    const std::size_t m = perms.size();
    std::vector<Elem> table(m * m);
    // (a*b)(x) = b(a(x)): apply a first, matching the right-action convention.
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            std::vector<std::uint32_t> c(n);
            for (std::uint32_t x = 0; x < n; ++x)
                c[x] = perms[b][perms[a][x]];
            table[a * m + b] = index.at(c);
        }
    }
    return std::make_shared<const FiniteGroup>(
        FiniteGroup::from_table(static_cast<std::uint32_t>(m), std::move(table)));
}

GroupPtr make_dihedral(std::uint32_t n) {
    if (n == 0)
        throw InputError("dihedral group needs n >= 1");
    const std::uint32_t m = 2 * n;
    std::vector<Elem> table(static_cast<std::size_t>(m) * m);
    // r^k s^e * r^l s^f = r^(k + (-1)^e l) s^(e+f)
    for (std::uint32_t x = 0; x < m; ++x) {
        for (std::uint32_t y = 0; y < m; ++y) {
            std::uint32_t k = x % n, e = x / n, l = y % n, f = y / n;
            std::uint32_t rot = e ? (k + n - l) % n : (k + l) % n;
            table[static_cast<std::size_t>(x) * m + y] = rot + n * ((e + f) % 2);
        }
    }
    return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(m, std::move(table)));
}

Subgroup make_subgroup(const GroupPtr& parent, std::vector<Elem> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (elements.empty() || elements.front() != 0)
        throw InputError("subgroup must contain the identity");
    std::vector<std::int64_t> local(parent->order(), -1);
    for (std::size_t k = 0; k < elements.size(); ++k)
        local[elements[k]] = static_cast<std::int64_t>(k);
    const std::size_t m = elements.size();
    std::vector<Elem> table(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            auto c = local[parent->mul(elements[a], elements[b])];
            if (c < 0)
                throw InputError("subset is not closed under multiplication");
            table[a * m + b] = static_cast<Elem>(c);
        }
    }
    auto sub = std::make_shared<const FiniteGroup>(
        FiniteGroup::from_table(static_cast<std::uint32_t>(m), std::move(table)));
    return Subgroup{sub, GroupHom(sub, parent, std::move(elements))};
}

bool is_normal_subset(const FiniteGroup& g, std::span<const Elem> subset) {
    std::vector<bool> in(g.order(), false);
    for (Elem x : subset)
        in[x] = true;
    for (Elem n : subset)
        for (Elem t = 0; t < g.order(); ++t)
            if (!in[g.conj(n, t)])
                return false;
    return true;
}

Subgroup kernel(const GroupHom& h) {
    std::vector<Elem> ker;
    for (Elem x = 0; x < h.source().order(); ++x)
        if (h(x) == 0)
            ker.push_back(x);
    return make_subgroup(h.source_ptr(), std::move(ker));
}

Quotient quotient(const GroupPtr& g, std::span<const Elem> normal_subgroup) {
    if (!is_normal_subset(*g, normal_subgroup))
        throw InputError("subgroup is not normal; quotient undefined");
    const std::uint32_t n = g->order();
    std::vector<std::int64_t> coset(n, -1);
    std::vector<Elem> reps;
    for (Elem x = 0; x < n; ++x) {
        if (coset[x] >= 0)
            continue;
        const auto id = static_cast<std::int64_t>(reps.size());
        reps.push_back(x);
        for (Elem k : normal_subgroup)
            coset[g->mul(x, k)] = id;
    }
    const std::size_t m = reps.size();
    std::vector<Elem> table(m * m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            table[a * m + b] = static_cast<Elem>(coset[g->mul(reps[a], reps[b])]);
    auto q = std::make_shared<const FiniteGroup>(
        FiniteGroup::from_table(static_cast<std::uint32_t>(m), std::move(table)));
    std::vector<Elem> proj(n);
    for (Elem x = 0; x < n; ++x)
        proj[x] = static_cast<Elem>(coset[x]);
    return Quotient{q, GroupHom(g, q, std::move(proj))};
}

Quotient cokernel(const GroupHom& h) {
    auto img = h.image();
    if (!is_normal_subset(h.target(), img))
        throw InputError("image of the homomorphism is not normal in its target");
    return quotient(h.target_ptr(), img);
}

} // namespace xmod
