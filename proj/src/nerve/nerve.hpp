#pragma once

#include "common/bigint.hpp"
#include "crossed/crossed_module.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace xmod {

/// Largest simplicial level the nerve code supports.
inline constexpr int kMaxLevel = 15;

/// Index of the edge (j, k), j < k, among the edges of a p-simplex in
/// lexicographic order.
std::size_t edge_index(int p, int j, int k);
/// Index of the triangle (j, k, l), j < k < l, in lexicographic order.
std::size_t triangle_index(int p, int j, int k, int l);

/// 2-arrow (g, h) of the 2-group G x| H: source h, target h * i(g).
struct TwoArrow {
    Elem g = 0;
    Elem h = 0;
    friend bool operator==(const TwoArrow&, const TwoArrow&) = default;
};

/// A p-simplex of the nerve as a full labeling: a 1-arrow f_jk in H on every
/// edge and a 2-arrow on every triangle (j, k, l). The 2-arrow goes from the
/// composite f_jk * f_kl to f_jl.
struct NerveSimplex {
    int level = 0;
    std::vector<Elem> edges;         // edge_index order
    std::vector<TwoArrow> triangles; // triangle_index order

    Elem edge(int j, int k) const { return edges[edge_index(level, j, k)]; }
    const TwoArrow& triangle(int j, int k, int l) const {
        return triangles[triangle_index(level, j, k, l)];
    }
    friend bool operator==(const NerveSimplex&, const NerveSimplex&) = default;
};

/// Free coordinates of a p-simplex: the G-labels of the triangles (0, j, k)
/// for 1 <= j < k <= p in lexicographic order, and the H-labels of the edges
/// (0, k) for 1 <= k <= p. Every tuple is a simplex, so a level is the full
/// product G^(p(p-1)/2) x H^p.
struct NormalizedCoordinates {
    int level = 0;
    std::vector<Elem> g;
    std::vector<Elem> h;
    friend bool operator==(const NormalizedCoordinates&, const NormalizedCoordinates&) = default;
};

/// Level-2 chart (g, h, f): 2-arrow (g, h) and f = f_12.
struct TriangleChart {
    Elem g = 0, h = 0, f = 0;
    friend bool operator==(const TriangleChart&, const TriangleChart&) = default;
};

/// Level-3 chart (g0, g2, g3, h0, f01, h2): alpha_0 = (g0, h0) on triangle
/// (1,2,3), alpha_2 = (g2, h2) on (0,1,3), alpha_3 = (g3, .) on (0,1,2), and
/// f01 the edge from vertex 2 to vertex 3.
struct TetrahedronChart {
    Elem g0 = 0, g2 = 0, g3 = 0, h0 = 0, f01 = 0, h2 = 0;
    friend bool operator==(const TetrahedronChart&, const TetrahedronChart&) = default;
};

/// Street nerve N_*[G -> H] of a finite crossed module.
///
/// Simplices are addressed either by NormalizedCoordinates or by a dense
/// integer code (mixed radix over the coordinates, g-part first, most
/// significant digit first). The code-based operations are the fast path
/// used when assembling cochain complexes.
class Nerve {
public:
    explicit Nerve(CrossedModule cm);

    const CrossedModule& crossed_module() const { return cm_; }

    /// |G|^(p(p-1)/2) * |H|^p, exact.
    BigInt level_count(int p) const;
    /// level_count(p) if it fits in 63 bits.
    std::optional<std::uint64_t> level_size(int p) const;

    // Full labelings.
    NerveSimplex labeling(const NormalizedCoordinates& x) const;
    NormalizedCoordinates coordinates(const NerveSimplex& s) const;
    /// Every violated constraint (triangle boundary or tetrahedron), empty if
    /// `s` is a simplex.
    std::vector<std::string> check(const NerveSimplex& s) const;
    /// Pullback along a weakly increasing vertex map [m] -> [p]; collapsed
    /// edges and triangles get identity labels.
    NerveSimplex pullback(const NerveSimplex& s, std::span<const int> vertex_map) const;

    /// i-th face by vertex deletion on the full labeling.
    NormalizedCoordinates face(const NormalizedCoordinates& x, int i) const;
    /// i-th degeneracy (vertex i doubled).
    NormalizedCoordinates degeneracy(const NormalizedCoordinates& x, int i) const;
    bool is_degenerate(const NormalizedCoordinates& x) const;

    // Code-based fast path.
    std::uint64_t encode(const NormalizedCoordinates& x) const;
    NormalizedCoordinates decode(int p, std::uint64_t code) const;
    std::uint64_t face_code(int p, std::uint64_t code, int i) const;
    std::uint64_t degeneracy_code(int p, std::uint64_t code, int i) const;
    bool is_degenerate_code(int p, std::uint64_t code) const;
    /// All p+1 faces of one simplex at once; `out` must have p+1 slots.
    void faces_code(int p, std::uint64_t code, std::span<std::uint64_t> out) const;
    /// Front face on vertices 0..k and back face on vertices k..p.
    std::uint64_t front_face_code(int p, std::uint64_t code, int k) const;
    std::uint64_t back_face_code(int p, std::uint64_t code, int k) const;

    // Low-dimensional charts.
    NerveSimplex from_chart(const TriangleChart& c) const;
    TriangleChart to_triangle_chart(const NerveSimplex& s) const;
    NerveSimplex from_chart(const TetrahedronChart& c) const;
    TetrahedronChart to_tetrahedron_chart(const NerveSimplex& s) const;

private:
    // Digits of a code: g-part (pairs (j,k), 1<=j<k<=p) then h-part (k = 1..p).
    void decode_digits(int p, std::uint64_t code, Elem* digits) const;
    std::uint64_t encode_digits(int p, const Elem* digits) const;
    void check_level(int p) const;

    CrossedModule cm_;
    std::uint32_t ng_;
    std::uint32_t nh_;
};

/// Number of p-simplices of the nerve that are not degenerate, by
/// inclusion-exclusion over the images of the degeneracies:
/// sum_k (-1)^(p-k) C(p, k) |N_k|.
BigInt nondegenerate_count(const Nerve& nerve, int p);

struct KanReport {
    int level = 0;
    int horn = 0;
    std::uint64_t horn_count = 0;
    std::uint64_t min_fillers = 0;
    std::uint64_t max_fillers = 0;
    bool kan = false;   // every horn has a filler
    bool unique = false; // every horn has exactly one filler
};

/// Enumerates every horn Lambda[m, j] -> N_* and counts its fillers.
/// Requires 1 <= m <= 4 and 0 <= j <= m; throws BudgetExceeded when the
/// simplices at level m exceed `budget`.
KanReport check_kan(const Nerve& nerve, int m, int j, std::uint64_t budget = 1ull << 24);

} // namespace xmod
