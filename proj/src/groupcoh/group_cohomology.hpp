#pragma once

#include "groupcoh/module_rep.hpp"
#include "homology/cochain.hpp"

#include <array>
#include <string>
#include <vector>

namespace xmod {

struct BarOptions {
    /// Largest number of rows of any coboundary matrix, |G|^(n+1) * dim.
    std::uint64_t budget = 1ull << 22;
    unsigned threads = 1;
};

struct GroupCohomologyResult {
    CoefficientRing ring;
    int requested_degree = 0;
    int computed_degree = -1;
    std::string stop_reason;
    std::vector<std::size_t> dims; // dims[n] = dim H^n
    bool complete() const { return computed_degree == requested_degree; }
};

/// H^n(G, M) for n <= max_degree from the inhomogeneous bar complex
/// C^n = maps(G^n, M), over Q or GF(p). The module entries must be
/// p-integral for GF(p). Stops early, with the partial result, once a
/// coboundary would exceed the budget.
GroupCohomologyResult bar_cohomology(const ModuleRep& mod, int max_degree, CoefficientRing ring,
                                     const BarOptions& options = {});

/// Rational cohomology of SL(2,Z) through the amalgam Z/4 *_{Z/2} Z/6:
/// H^0 = fix(S) cap fix(R), H^1 = fix(S^2) / (fix(S) + fix(R)), zero above.
/// The module must carry generators S and R with S^4 = R^6 = 1 and S^2 = R^3.
std::vector<std::size_t> sl2z_cohomology(const ModuleRep& mod, int max_degree);

/// Rational cohomology of GL(2,Z) = SL(2,Z) x| Z/2 as the J-invariant part of
/// the SL(2,Z) answer. The module must also carry J with J^2 = 1,
/// J S J = S^-1 and J R J = R^-1.
std::vector<std::size_t> gl2z_cohomology(const ModuleRep& mod, int max_degree);

/// The three 3x3 stabilizer matrices A, B, C of the SL(3,Z) cell complex.
std::array<NamedMatrix, 3> soule_matrices();

} // namespace xmod
