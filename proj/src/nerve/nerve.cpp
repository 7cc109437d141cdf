#include "nerve/nerve.hpp"

#include "common/error.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

namespace xmod {

namespace {

constexpr int kMaxVertices = kMaxLevel + 1;

struct IndexTables {
    // edge[p][j][k], tri[p][j][k][l]
    std::vector<std::uint16_t> edge;
    std::vector<std::uint16_t> tri;

    IndexTables()
        : edge(static_cast<std::size_t>(kMaxVertices) * kMaxVertices * kMaxVertices),
          tri(static_cast<std::size_t>(kMaxVertices) * kMaxVertices * kMaxVertices * kMaxVertices) {
        for (int p = 0; p <= kMaxLevel; ++p) {
            std::uint16_t n = 0;
            for (int j = 0; j <= p; ++j)
                for (int k = j + 1; k <= p; ++k)
                    edge[(static_cast<std::size_t>(p) * kMaxVertices + j) * kMaxVertices + k] = n++;
            n = 0;
            for (int j = 0; j <= p; ++j)
                for (int k = j + 1; k <= p; ++k)
                    for (int l = k + 1; l <= p; ++l)
                        tri[((static_cast<std::size_t>(p) * kMaxVertices + j) * kMaxVertices + k) *
                                kMaxVertices +
                            l] = n++;
        }
    }
};

const IndexTables& tables() {
    static const IndexTables t;
    return t;
}

std::size_t pair_count(int p) { return static_cast<std::size_t>(p) * (p - 1) / 2; }

// Position of the triangle (0, j, k) among the g-digits; equals the index of
// the edge (j-1, k-1) in a (p-1)-simplex.
inline std::size_t gpos(int p, int j, int k) { return edge_index(p - 1, j - 1, k - 1); }

// Working storage for the A0-based coordinates of one simplex.
struct Local {
    Elem g0[kMaxVertices][kMaxVertices]; // g_{0jk}
    Elem e0[kMaxVertices];               // e_{0k}, e0[0] = identity
};

} // namespace

std::size_t edge_index(int p, int j, int k) {
    return tables().edge[(static_cast<std::size_t>(p) * kMaxVertices + j) * kMaxVertices + k];
}

std::size_t triangle_index(int p, int j, int k, int l) {
    return tables().tri[((static_cast<std::size_t>(p) * kMaxVertices + j) * kMaxVertices + k) *
                            kMaxVertices +
                        l];
}

Nerve::Nerve(CrossedModule cm)
    : cm_(std::move(cm)), ng_(cm_.g().order()), nh_(cm_.h().order()) {
    require_valid(cm_);
}

void Nerve::check_level(int p) const {
    if (p < 0 || p > kMaxLevel) {
        std::ostringstream os;
        os << "nerve level " << p << " outside supported range 0.." << kMaxLevel;
        throw InputError(os.str());
    }
}

BigInt Nerve::level_count(int p) const {
    check_level(p);
    BigInt n = 1;
    for (std::size_t k = 0; k < pair_count(p); ++k)
        n *= ng_;
    for (int k = 0; k < p; ++k)
        n *= nh_;
    return n;
}

std::optional<std::uint64_t> Nerve::level_size(int p) const {
    BigInt n = level_count(p);
    if (n > BigInt(std::numeric_limits<std::int64_t>::max()))
        return std::nullopt;
    return static_cast<std::uint64_t>(n);
}

NerveSimplex Nerve::labeling(const NormalizedCoordinates& x) const {
    const int p = x.level;
    check_level(p);
    if (x.g.size() != pair_count(p) || x.h.size() != static_cast<std::size_t>(p))
        throw InputError("normalized coordinates have the wrong length for their level");
    const auto& G = cm_.g();
    const auto& H = cm_.h();

    NerveSimplex s;
    s.level = p;
    s.edges.assign(pair_count(p + 1), 0);
    s.triangles.assign(p >= 2 ? static_cast<std::size_t>(p + 1) * p * (p - 1) / 6 : 0, {});

    auto g0 = [&](int j, int k) { return x.g[gpos(p, j, k)]; };
    for (int k = 1; k <= p; ++k)
        s.edges[edge_index(p, 0, k)] = x.h[k - 1];
    // e_jk = e_0j^-1 e_0k i(g_0jk)^-1 from the triangle (0, j, k).
    for (int j = 1; j <= p; ++j)
        for (int k = j + 1; k <= p; ++k)
            s.edges[edge_index(p, j, k)] =
                H.mul(H.mul(H.inv(x.h[j - 1]), x.h[k - 1]), H.inv(cm_.i(g0(j, k))));
    for (int j = 0; j <= p; ++j) {
        for (int k = j + 1; k <= p; ++k) {
            for (int l = k + 1; l <= p; ++l) {
                Elem g;
                if (j == 0) {
                    g = g0(k, l);
                } else {
                    // Tetrahedron (0, j, k, l) solved for the face opposite vertex 0.
                    Elem ekl = s.edges[edge_index(p, k, l)];
                    g = G.mul(G.mul(cm_.act(g0(j, k), ekl), g0(k, l)), G.inv(g0(j, l)));
                }
                Elem h = H.mul(s.edges[edge_index(p, j, k)], s.edges[edge_index(p, k, l)]);
                s.triangles[triangle_index(p, j, k, l)] = TwoArrow{g, h};
            }
        }
    }
    return s;
}

NormalizedCoordinates Nerve::coordinates(const NerveSimplex& s) const {
    const int p = s.level;
    NormalizedCoordinates x;
    x.level = p;
    x.h.resize(p);
    x.g.resize(pair_count(p));
    for (int k = 1; k <= p; ++k)
        x.h[k - 1] = s.edge(0, k);
    for (int j = 1; j <= p; ++j)
        for (int k = j + 1; k <= p; ++k)
            x.g[gpos(p, j, k)] = s.triangle(0, j, k).g;
    return x;
}

std::vector<std::string> Nerve::check(const NerveSimplex& s) const {
    const int p = s.level;
    const auto& G = cm_.g();
    const auto& H = cm_.h();
    std::vector<std::string> bad;
    for (int j = 0; j <= p; ++j) {
        for (int k = j + 1; k <= p; ++k) {
            for (int l = k + 1; l <= p; ++l) {
                const TwoArrow& a = s.triangle(j, k, l);
                if (a.h != H.mul(s.edge(j, k), s.edge(k, l))) {
                    std::ostringstream os;
                    os << "triangle (" << j << "," << k << "," << l << "): source is not f_jk f_kl";
                    bad.push_back(os.str());
                }
                if (s.edge(j, l) != H.mul(a.h, cm_.i(a.g))) {
                    std::ostringstream os;
                    os << "triangle (" << j << "," << k << "," << l << "): target is not f_jl";
                    bad.push_back(os.str());
                }
                for (int m = l + 1; m <= p; ++m) {
                    // (alpha_jkl * f_lm) . alpha_jlm = (f_jk * alpha_klm) . alpha_jkm
                    Elem lhs = s.triangle(j, l, m).g;
                    Elem rhs = G.mul(G.mul(cm_.act(G.inv(s.triangle(j, k, l).g), s.edge(l, m)),
                                           s.triangle(k, l, m).g),
                                     s.triangle(j, k, m).g);
                    if (lhs != rhs) {
                        std::ostringstream os;
                        os << "tetrahedron (" << j << "," << k << "," << l << "," << m
                           << ") does not commute";
                        bad.push_back(os.str());
                    }
                }
            }
        }
    }
    return bad;
}

NerveSimplex Nerve::pullback(const NerveSimplex& s, std::span<const int> vertex_map) const {
    const int m = static_cast<int>(vertex_map.size()) - 1;
    check_level(m);
    for (std::size_t k = 0; k < vertex_map.size(); ++k) {
        if (vertex_map[k] < 0 || vertex_map[k] > s.level ||
            (k > 0 && vertex_map[k] < vertex_map[k - 1]))
            throw InputError("vertex map must be weakly increasing into the simplex");
    }
    const auto& H = cm_.h();
    NerveSimplex r;
    r.level = m;
    r.edges.assign(pair_count(m + 1), 0);
    r.triangles.assign(m >= 2 ? static_cast<std::size_t>(m + 1) * m * (m - 1) / 6 : 0, {});
    for (int a = 0; a <= m; ++a)
        for (int b = a + 1; b <= m; ++b)
            r.edges[edge_index(m, a, b)] =
                vertex_map[a] == vertex_map[b] ? Elem{0} : s.edge(vertex_map[a], vertex_map[b]);
    for (int a = 0; a <= m; ++a) {
        for (int b = a + 1; b <= m; ++b) {
            for (int c = b + 1; c <= m; ++c) {
                int va = vertex_map[a], vb = vertex_map[b], vc = vertex_map[c];
                TwoArrow t;
                if (va != vb && vb != vc) {
                    t = s.triangle(va, vb, vc);
                } else {
                    t.g = 0;
                    t.h = H.mul(r.edges[edge_index(m, a, b)], r.edges[edge_index(m, b, c)]);
                }
                r.triangles[triangle_index(m, a, b, c)] = t;
            }
        }
    }
    return r;
}

NormalizedCoordinates Nerve::face(const NormalizedCoordinates& x, int i) const {
    const int p = x.level;
    if (p < 1 || i < 0 || i > p)
        throw InputError("face index out of range");
    std::vector<int> delta;
    for (int k = 0; k <= p; ++k)
        if (k != i)
            delta.push_back(k);
    return coordinates(pullback(labeling(x), delta));
}

NormalizedCoordinates Nerve::degeneracy(const NormalizedCoordinates& x, int i) const {
    const int p = x.level;
    if (i < 0 || i > p || p + 1 > kMaxLevel)
        throw InputError("degeneracy index out of range");
    std::vector<int> sigma;
    for (int k = 0; k <= p + 1; ++k)
        sigma.push_back(k <= i ? k : k - 1);
    return coordinates(pullback(labeling(x), sigma));
}

bool Nerve::is_degenerate(const NormalizedCoordinates& x) const {
    for (int i = 0; i < x.level; ++i)
        if (degeneracy(face(x, i), i) == x)
            return true;
    return false;
}

void Nerve::decode_digits(int p, std::uint64_t code, Elem* digits) const {
    const std::size_t ng = pair_count(p);
    for (int k = p - 1; k >= 0; --k) {
        digits[ng + k] = static_cast<Elem>(code % nh_);
        code /= nh_;
    }
    for (std::size_t k = ng; k-- > 0;) {
        digits[k] = static_cast<Elem>(code % ng_);
        code /= ng_;
    }
}

std::uint64_t Nerve::encode_digits(int p, const Elem* digits) const {
    const std::size_t ng = pair_count(p);
    std::uint64_t code = 0;
    for (std::size_t k = 0; k < ng; ++k)
        code = code * ng_ + digits[k];
    for (int k = 0; k < p; ++k)
        code = code * nh_ + digits[ng + k];
    return code;
}

std::uint64_t Nerve::encode(const NormalizedCoordinates& x) const {
    std::vector<Elem> d(x.g);
    d.insert(d.end(), x.h.begin(), x.h.end());
    return encode_digits(x.level, d.data());
}

NormalizedCoordinates Nerve::decode(int p, std::uint64_t code) const {
    std::vector<Elem> d(pair_count(p) + p);
    decode_digits(p, code, d.data());
    NormalizedCoordinates x;
    x.level = p;
    x.g.assign(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(pair_count(p)));
    x.h.assign(d.begin() + static_cast<std::ptrdiff_t>(pair_count(p)), d.end());
    return x;
}

namespace {

// Unpacks digits into the A0-based table; vertex 0's row is the identity.
void unpack(int p, const Elem* digits, Local& loc) {
    const std::size_t ng = pair_count(p);
    loc.e0[0] = 0;
    for (int k = 1; k <= p; ++k)
        loc.e0[k] = digits[ng + k - 1];
    for (int j = 1; j <= p; ++j)
        for (int k = j + 1; k <= p; ++k)
            loc.g0[j][k] = digits[gpos(p, j, k)];
}

} // namespace

// Re-bases the simplex on vertices base..p: writes the A0-based digits of the
// back face starting at vertex `base`.
static void rebase_digits(const CrossedModule& cm, int p, const Elem* digits, int base,
                          Elem* out) {
    const auto& G = cm.g();
    const auto& H = cm.h();
    Local loc;
    unpack(p, digits, loc);
    const int q = p - base;
    const std::size_t ngq = pair_count(q);
    if (base == 0) {
        std::copy(digits, digits + pair_count(p) + p, out);
        return;
    }
    // e_{base,k} for k > base
    Elem eb[kMaxVertices];
    for (int k = base + 1; k <= p; ++k)
        eb[k] = H.mul(H.mul(H.inv(loc.e0[base]), loc.e0[k]), H.inv(cm.i(loc.g0[base][k])));
    for (int k = 1; k <= q; ++k)
        out[ngq + k - 1] = eb[base + k];
    for (int k = base + 1; k <= p; ++k) {
        for (int l = k + 1; l <= p; ++l) {
            Elem ekl = H.mul(H.mul(H.inv(loc.e0[k]), loc.e0[l]), H.inv(cm.i(loc.g0[k][l])));
            Elem g = G.mul(G.mul(cm.act(loc.g0[base][k], ekl), loc.g0[k][l]),
                           G.inv(loc.g0[base][l]));
            out[gpos(q, k - base, l - base)] = g;
        }
    }
}

std::uint64_t Nerve::face_code(int p, std::uint64_t code, int i) const {
    Elem digits[kMaxVertices * kMaxVertices];
    Elem out[kMaxVertices * kMaxVertices];
    decode_digits(p, code, digits);
    if (p <= 1)
        return 0;
    if (i == 0) {
        rebase_digits(cm_, p, digits, 1, out);
        return encode_digits(p - 1, out);
    }
    const std::size_t ng = pair_count(p);
    const int q = p - 1;
    const std::size_t ngq = pair_count(q);
    auto up = [i](int a) { return a < i ? a : a + 1; };
    for (int k = 1; k <= q; ++k)
        out[ngq + k - 1] = digits[ng + up(k) - 1];
    for (int j = 1; j <= q; ++j)
        for (int k = j + 1; k <= q; ++k)
            out[gpos(q, j, k)] = digits[gpos(p, up(j), up(k))];
    return encode_digits(q, out);
}

void Nerve::faces_code(int p, std::uint64_t code, std::span<std::uint64_t> out) const {
    for (int i = 0; i <= p; ++i)
        out[i] = face_code(p, code, i);
}

std::uint64_t Nerve::degeneracy_code(int p, std::uint64_t code, int i) const {
    if (p + 1 > kMaxLevel || i < 0 || i > p)
        throw InputError("degeneracy index out of range");
    Elem digits[kMaxVertices * kMaxVertices];
    Elem out[kMaxVertices * kMaxVertices];
    decode_digits(p, code, digits);
    Local loc;
    unpack(p, digits, loc);
    const int q = p + 1;
    const std::size_t ngq = pair_count(q);
    auto down = [i](int a) { return a <= i ? a : a - 1; };
    for (int k = 1; k <= q; ++k)
        out[ngq + k - 1] = down(k) == 0 ? Elem{0} : loc.e0[down(k)];
    for (int j = 1; j <= q; ++j) {
        for (int k = j + 1; k <= q; ++k) {
            int a = down(j), b = down(k);
            out[gpos(q, j, k)] = (a == 0 || a == b) ? Elem{0} : loc.g0[a][b];
        }
    }
    return encode_digits(q, out);
}

bool Nerve::is_degenerate_code(int p, std::uint64_t code) const {
    // x = s_i y forces y = d_i x = d_{i+1} x.
    for (int i = 0; i < p; ++i) {
        std::uint64_t y = face_code(p, code, i);
        if (y == face_code(p, code, i + 1) && degeneracy_code(p - 1, y, i) == code)
            return true;
    }
    return false;
}

std::uint64_t Nerve::front_face_code(int p, std::uint64_t code, int k) const {
    Elem digits[kMaxVertices * kMaxVertices];
    Elem out[kMaxVertices * kMaxVertices];
    decode_digits(p, code, digits);
    const std::size_t ng = pair_count(p);
    const std::size_t ngk = pair_count(k);
    for (int a = 1; a <= k; ++a)
        out[ngk + a - 1] = digits[ng + a - 1];
    for (int a = 1; a <= k; ++a)
        for (int b = a + 1; b <= k; ++b)
            out[gpos(k, a, b)] = digits[gpos(p, a, b)];
    return encode_digits(k, out);
}

std::uint64_t Nerve::back_face_code(int p, std::uint64_t code, int k) const {
    Elem digits[kMaxVertices * kMaxVertices];
    Elem out[kMaxVertices * kMaxVertices];
    decode_digits(p, code, digits);
    rebase_digits(cm_, p, digits, k, out);
    return encode_digits(p - k, out);
}

NerveSimplex Nerve::from_chart(const TriangleChart& c) const {
    const auto& H = cm_.h();
    NormalizedCoordinates x;
    x.level = 2;
    x.g = {c.g};
    x.h = {H.mul(c.h, H.inv(c.f)), H.mul(c.h, cm_.i(c.g))};
    return labeling(x);
}

TriangleChart Nerve::to_triangle_chart(const NerveSimplex& s) const {
    if (s.level != 2)
        throw InputError("triangle chart needs a 2-simplex");
    const TwoArrow& a = s.triangle(0, 1, 2);
    return TriangleChart{a.g, a.h, s.edge(1, 2)};
}

NerveSimplex Nerve::from_chart(const TetrahedronChart& c) const {
    const auto& G = cm_.g();
    const auto& H = cm_.h();
    Elem e12 = H.mul(c.h0, H.inv(c.f01));
    Elem e13 = H.mul(c.h0, cm_.i(c.g0));
    Elem e01 = H.mul(c.h2, H.inv(e13));
    Elem e02 = H.mul(H.mul(e01, e12), cm_.i(c.g3));
    Elem e03 = H.mul(c.h2, cm_.i(c.g2));
    Elem g023 = G.mul(G.mul(cm_.act(G.inv(c.g3), c.f01), c.g0), c.g2);
    NormalizedCoordinates x;
    x.level = 3;
    x.g = {c.g3, c.g2, g023}; // (0,1,2), (0,1,3), (0,2,3)
    x.h = {e01, e02, e03};
    return labeling(x);
}

TetrahedronChart Nerve::to_tetrahedron_chart(const NerveSimplex& s) const {
    if (s.level != 3)
        throw InputError("tetrahedron chart needs a 3-simplex");
    const TwoArrow& a0 = s.triangle(1, 2, 3);
    const TwoArrow& a2 = s.triangle(0, 1, 3);
    return TetrahedronChart{a0.g, a2.g, s.triangle(0, 1, 2).g, a0.h, s.edge(2, 3), a2.h};
}

BigInt nondegenerate_count(const Nerve& nerve, int p) {
    BigInt total = 0;
    BigInt binom = 1; // C(p, k)
    for (int k = 0; k <= p; ++k) {
        if (k > 0)
            binom = binom * (p - k + 1) / k;
        BigInt term = binom * nerve.level_count(k);
        if ((p - k) % 2 == 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (auto x : v)
            h = (h ^ x) * 0x100000001b3ull + (h >> 29);
        return static_cast<std::size_t>(h);
    }
};

} // namespace

KanReport check_kan(const Nerve& nerve, int m, int j, std::uint64_t budget) {
    if (m < 1 || m > 4 || j < 0 || j > m)
        throw InputError("Kan check needs 1 <= m <= 4 and 0 <= j <= m");
    auto top = nerve.level_size(m);
    auto below = nerve.level_size(m - 1);
    if (!top || *top > budget || !below || *below > budget)
        throw BudgetExceeded("Kan check: level too large for the budget");

    std::vector<int> slots;
    for (int i = 0; i <= m; ++i)
        if (i != j)
            slots.push_back(i);

    // Fillers: group m-simplices by their horn.
    std::unordered_map<std::vector<std::uint64_t>, std::uint64_t, VecHash> fillers;
    std::vector<std::uint64_t> faces(m + 1), key(slots.size());
    for (std::uint64_t c = 0; c < *top; ++c) {
        nerve.faces_code(m, c, faces);
        for (std::size_t s = 0; s < slots.size(); ++s)
            key[s] = faces[slots[s]];
        ++fillers[key];
    }

    KanReport report;
    report.level = m;
    report.horn = j;
    report.min_fillers = std::numeric_limits<std::uint64_t>::max();

    if (m == 1) {
        // The horn is a single vertex; every edge fills it.
        report.horn_count = 1;
        report.min_fillers = report.max_fillers = *top;
    } else {
        // Faces of every (m-1)-simplex, and an index by each face position.
        const std::uint64_t nb = *below;
        std::vector<std::uint64_t> sub(nb * m);
        for (std::uint64_t c = 0; c < nb; ++c)
            nerve.faces_code(m - 1, c, std::span<std::uint64_t>(sub.data() + c * m, m));
        std::vector<std::multimap<std::uint64_t, std::uint64_t>> by_face(m);
        for (std::uint64_t c = 0; c < nb; ++c)
            for (int f = 0; f < m; ++f)
                by_face[f].emplace(sub[c * m + f], c);

        std::vector<std::uint64_t> chosen(slots.size());
        auto compatible = [&](std::size_t upto) {
            // d_a x_b = d_{b-1} x_a for slot indices a < b
            int b = slots[upto];
            for (std::size_t s = 0; s < upto; ++s) {
                int a = slots[s];
                if (sub[chosen[upto] * m + a] != sub[chosen[s] * m + (b - 1)])
                    return false;
            }
            return true;
        };
        auto recurse = [&](auto&& self, std::size_t depth) -> void {
            if (depth == slots.size()) {
                ++report.horn_count;
                auto it = fillers.find(chosen);
                std::uint64_t n = it == fillers.end() ? 0 : it->second;
                report.min_fillers = std::min(report.min_fillers, n);
                report.max_fillers = std::max(report.max_fillers, n);
                return;
            }
            if (depth == 0) {
                for (std::uint64_t c = 0; c < nb; ++c) {
                    chosen[0] = c;
                    self(self, 1);
                }
                return;
            }
            // Candidates must satisfy d_{a} x_b = d_{b-1} x_a with a = slots[0].
            int a = slots[0], b = slots[depth];
            std::uint64_t want = sub[chosen[0] * m + (b - 1)];
            auto [lo, hi] = by_face[a].equal_range(want);
            for (auto it = lo; it != hi; ++it) {
                chosen[depth] = it->second;
                if (compatible(depth))
                    self(self, depth + 1);
            }
        };
        recurse(recurse, 0);
    }
    if (report.horn_count == 0)
        report.min_fillers = 0;
    report.kan = report.min_fillers >= 1;
    report.unique = report.min_fillers == 1 && report.max_fillers == 1;
    return report;
}

} // namespace xmod
