#pragma once

#include "group/finite_group.hpp"

#include <string>
#include <vector>

namespace xmod {

/// A crossed module i: G -> H with a right H-action on G, i.e. a strict 2-group.
///
/// The constructor only checks that the pieces fit together (matching groups);
/// the two crossed-module identities are checked by validate(), which reports
/// every failure instead of stopping at the first one.
class CrossedModule {
public:
    CrossedModule(GroupHom boundary, GroupAction action);

    /// [G -> H] with the trivial action.
    static CrossedModule with_trivial_action(GroupHom boundary);

    const FiniteGroup& g() const { return boundary_.source(); }
    const FiniteGroup& h() const { return boundary_.target(); }
    const GroupPtr& g_ptr() const { return boundary_.source_ptr(); }
    const GroupPtr& h_ptr() const { return boundary_.target_ptr(); }
    const GroupHom& boundary() const { return boundary_; }
    const GroupAction& action() const { return action_; }

    Elem i(Elem g) const { return boundary_(g); }
    Elem act(Elem g, Elem h) const { return action_(g, h); }

private:
    GroupHom boundary_;
    GroupAction action_;
};

struct Violation {
    std::string identity; // "equivariance" or "peiffer"
    Elem first = 0;
    Elem second = 0;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const CrossedModule& cm);

/// Throws InputError carrying the first witness if `cm` is not a crossed module.
void require_valid(const CrossedModule& cm);

/// Strict morphism (phi, psi): [G2 -> H2] -> [G1 -> H1].
class CrossedModuleMorphism {
public:
    /// Throws InputError if psi∘i2 != i1∘phi or phi is not action-compatible.
    CrossedModuleMorphism(CrossedModule source, CrossedModule target, GroupHom phi, GroupHom psi);

    static CrossedModuleMorphism identity(const CrossedModule& cm);

    const CrossedModule& source() const { return source_; }
    const CrossedModule& target() const { return target_; }
    const GroupHom& phi() const { return phi_; }
    const GroupHom& psi() const { return psi_; }

private:
    CrossedModule source_;
    CrossedModule target_;
    GroupHom phi_;
    GroupHom psi_;
};

struct MorphismKernel {
    CrossedModule kernel;              // G2 -> H2 x_{H1} G1
    CrossedModuleMorphism into_source; // (id, projection to H2)
};

/// Kernel of a morphism with surjective psi. The fiber product H2 x_{H1} G1 is
/// materialized as a subgroup of the direct product H2 x G1, indexed as in
/// direct_product(). Throws InputError if psi is not surjective.
MorphismKernel kernel_of_morphism(const CrossedModuleMorphism& m);

/// [G -> H] -> [1 -> H/i(G)].
CrossedModuleMorphism cokernel_projection(const CrossedModule& cm);

struct HomotopyInvariants {
    Quotient pi_low; // coker(i), pi_1 of the realization
    Subgroup pi_high; // ker(i), pi_2 of the realization
};

HomotopyInvariants homotopy_invariants(const CrossedModule& cm);

/// True iff the induced maps on ker(i) and coker(i) are isomorphisms.
bool is_equivalence(const CrossedModuleMorphism& m);

/// The canonical morphism [ker(i) -> 1] -> [G -> i(G)] from the fiber of the
/// cokernel projection, returned together with both endpoints.
CrossedModuleMorphism kernel_inclusion_into_image(const CrossedModule& cm);

/// [G1 x G2 -> H1 x H2] with componentwise boundary and action.
CrossedModule product(const CrossedModule& a, const CrossedModule& b);

} // namespace xmod
