#include "crossed/crossed_module.hpp"

#include "common/error.hpp"

#include <sstream>

namespace xmod {

CrossedModule::CrossedModule(GroupHom boundary, GroupAction action)
    : boundary_(std::move(boundary)), action_(std::move(action)) {
    if (!(action_.actor() == boundary_.target()) || !(action_.space() == boundary_.source()))
        throw InputError("action does not match the groups of the boundary map");
}

CrossedModule CrossedModule::with_trivial_action(GroupHom boundary) {
    auto action = GroupAction::trivial(boundary.target_ptr(), boundary.source_ptr());
    return CrossedModule(std::move(boundary), std::move(action));
}

ValidationReport validate(const CrossedModule& cm) {
    ValidationReport report;
    const auto& g = cm.g();
    const auto& h = cm.h();
    for (Elem x = 0; x < g.order(); ++x) {
        for (Elem a = 0; a < h.order(); ++a) {
            Elem lhs = cm.i(cm.act(x, a));
            Elem rhs = h.conj(cm.i(x), a);
            if (lhs != rhs) {
                std::ostringstream os;
                os << "i(g^h) = " << lhs << " but h^-1 i(g) h = " << rhs;
                report.violations.push_back({"equivariance", x, a, os.str()});
            }
        }
    }
    for (Elem x = 0; x < g.order(); ++x) {
        for (Elem y = 0; y < g.order(); ++y) {
            Elem lhs = cm.act(x, cm.i(y));
            Elem rhs = g.conj(x, y);
            if (lhs != rhs) {
                std::ostringstream os;
                os << "x^i(y) = " << lhs << " but y^-1 x y = " << rhs;
                report.violations.push_back({"peiffer", x, y, os.str()});
            }
        }
    }
    return report;
}

void require_valid(const CrossedModule& cm) {
    auto report = validate(cm);
    if (!report.ok()) {
        const auto& v = report.violations.front();
        std::ostringstream os;
        os << "not a crossed module: " << v.identity << " fails at (" << v.first << ", "
           << v.second << "): " << v.detail;
        throw InputError(os.str());
    }
}

CrossedModuleMorphism::CrossedModuleMorphism(CrossedModule source, CrossedModule target,
                                             GroupHom phi, GroupHom psi)
    : source_(std::move(source)), target_(std::move(target)), phi_(std::move(phi)),
      psi_(std::move(psi)) {
    if (!(phi_.source() == source_.g()) || !(phi_.target() == target_.g()) ||
        !(psi_.source() == source_.h()) || !(psi_.target() == target_.h()))
        throw InputError("morphism components do not match the crossed modules");
    for (Elem x = 0; x < source_.g().order(); ++x) {
        if (psi_(source_.i(x)) != target_.i(phi_(x))) {
            std::ostringstream os;
            os << "psi∘i2 != i1∘phi at g = " << x;
            throw InputError(os.str());
        }
        for (Elem a = 0; a < source_.h().order(); ++a) {
            if (target_.act(phi_(x), psi_(a)) != phi_(source_.act(x, a))) {
                std::ostringstream os;
                os << "phi(g)^psi(h) != phi(g^h) at (g, h) = (" << x << ", " << a << ")";
                throw InputError(os.str());
            }
        }
    }
}

CrossedModuleMorphism CrossedModuleMorphism::identity(const CrossedModule& cm) {
    return CrossedModuleMorphism(cm, cm, GroupHom::identity(cm.g_ptr()),
                                 GroupHom::identity(cm.h_ptr()));
}

MorphismKernel kernel_of_morphism(const CrossedModuleMorphism& m) {
    if (!m.psi().is_surjective())
        throw InputError("kernel of a crossed-module morphism requires surjective psi");
    const auto& src = m.source();
    const auto& tgt = m.target();
    const std::uint32_t n_g1 = tgt.g().order();

    auto ambient = direct_product(src.h(), tgt.g()); // (h2, g1) -> h2 * |G1| + g1
    std::vector<Elem> fiber;
    for (Elem h2 = 0; h2 < src.h().order(); ++h2)
        for (Elem g1 = 0; g1 < n_g1; ++g1)
            if (m.psi()(h2) == tgt.i(g1))
                fiber.push_back(h2 * n_g1 + g1);
    Subgroup fp = make_subgroup(ambient, fiber);

    // Local index of each fiber-product element, for building the boundary table.
    std::vector<Elem> local(ambient->order(), 0);
    const auto emb = fp.embedding.table();
    for (Elem k = 0; k < emb.size(); ++k)
        local[emb[k]] = k;

    std::vector<Elem> boundary(src.g().order());
    for (Elem x = 0; x < src.g().order(); ++x)
        boundary[x] = local[src.i(x) * n_g1 + m.phi()(x)];

    const std::uint32_t n_fp = fp.group->order();
    std::vector<Elem> action(static_cast<std::size_t>(n_fp) * src.g().order());
    for (Elem k = 0; k < n_fp; ++k) {
        Elem h2 = emb[k] / n_g1;
        for (Elem x = 0; x < src.g().order(); ++x)
            action[static_cast<std::size_t>(k) * src.g().order() + x] = src.act(x, h2);
    }

    CrossedModule ker(GroupHom(src.g_ptr(), fp.group, std::move(boundary)),
                      GroupAction(fp.group, src.g_ptr(), std::move(action)));
    require_valid(ker);

    std::vector<Elem> to_h2(n_fp);
    for (Elem k = 0; k < n_fp; ++k)
        to_h2[k] = emb[k] / n_g1;
    GroupHom proj(fp.group, src.h_ptr(), std::move(to_h2));
    CrossedModuleMorphism into(ker, src, GroupHom::identity(src.g_ptr()), std::move(proj));
    return MorphismKernel{std::move(ker), std::move(into)};
}

CrossedModuleMorphism cokernel_projection(const CrossedModule& cm) {
    Quotient q = cokernel(cm.boundary());
    auto one = make_cyclic(1);
    CrossedModule target = CrossedModule::with_trivial_action(GroupHom::trivial(one, q.group));
    return CrossedModuleMorphism(cm, std::move(target), GroupHom::trivial(cm.g_ptr(), one),
                                 q.projection);
}

HomotopyInvariants homotopy_invariants(const CrossedModule& cm) {
    return HomotopyInvariants{cokernel(cm.boundary()), kernel(cm.boundary())};
}

namespace {

// The induced map between two subgroup/quotient pieces, as a plain table.
bool bijective_on_kernels(const CrossedModuleMorphism& m) {
    Subgroup k2 = kernel(m.source().boundary());
    Subgroup k1 = kernel(m.target().boundary());
    if (k1.group->order() != k2.group->order())
        return false;
    std::vector<bool> hit(m.target().g().order(), false);
    for (Elem x : k2.embedding.table()) {
        Elem y = m.phi()(x);
        if (hit[y])
            return false;
        hit[y] = true;
    }
    return true;
}

bool bijective_on_cokernels(const CrossedModuleMorphism& m) {
    Quotient c2 = cokernel(m.source().boundary());
    Quotient c1 = cokernel(m.target().boundary());
    if (c1.group->order() != c2.group->order())
        return false;
    std::vector<std::int64_t> induced(c2.group->order(), -1);
    for (Elem a = 0; a < m.source().h().order(); ++a) {
        Elem from = c2.projection(a);
        auto to = static_cast<std::int64_t>(c1.projection(m.psi()(a)));
        if (induced[from] >= 0 && induced[from] != to)
            throw InvariantViolation("induced map on cokernels is not well defined");
        induced[from] = to;
    }
    std::vector<bool> hit(c1.group->order(), false);
    for (auto v : induced) {
        if (hit[static_cast<std::size_t>(v)])
            return false;
        hit[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

} // namespace

bool is_equivalence(const CrossedModuleMorphism& m) {
    return bijective_on_kernels(m) && bijective_on_cokernels(m);
}

CrossedModuleMorphism kernel_inclusion_into_image(const CrossedModule& cm) {
    Subgroup ker = kernel(cm.boundary());
    Subgroup img = make_subgroup(cm.h_ptr(), cm.boundary().image());

    std::vector<Elem> local_img(cm.h().order(), 0);
    for (Elem k = 0; k < img.group->order(); ++k)
        local_img[img.embedding(k)] = k;

    std::vector<Elem> onto(cm.g().order());
    for (Elem x = 0; x < cm.g().order(); ++x)
        onto[x] = local_img[cm.i(x)];
    std::vector<Elem> act(static_cast<std::size_t>(img.group->order()) * cm.g().order());
    for (Elem k = 0; k < img.group->order(); ++k)
        for (Elem x = 0; x < cm.g().order(); ++x)
            act[static_cast<std::size_t>(k) * cm.g().order() + x] = cm.act(x, img.embedding(k));
    CrossedModule to_image(GroupHom(cm.g_ptr(), img.group, std::move(onto)),
                           GroupAction(img.group, cm.g_ptr(), std::move(act)));

    auto one = make_cyclic(1);
    CrossedModule from_kernel =
        CrossedModule::with_trivial_action(GroupHom::trivial(ker.group, one));
    return CrossedModuleMorphism(std::move(from_kernel), std::move(to_image), ker.embedding,
                                 GroupHom::trivial(one, img.group));
}

CrossedModule product(const CrossedModule& a, const CrossedModule& b) {
    auto g = direct_product(a.g(), b.g());
    auto h = direct_product(a.h(), b.h());
    const std::uint32_t gb = b.g().order(), hb = b.h().order();
    std::vector<Elem> bnd(g->order());
    for (Elem x = 0; x < g->order(); ++x)
        bnd[x] = a.i(x / gb) * hb + b.i(x % gb);
    std::vector<Elem> act(static_cast<std::size_t>(h->order()) * g->order());
    for (Elem y = 0; y < h->order(); ++y)
        for (Elem x = 0; x < g->order(); ++x)
            act[static_cast<std::size_t>(y) * g->order() + x] =
                a.act(x / gb, y / hb) * gb + b.act(x % gb, y % hb);
    return CrossedModule(GroupHom(g, h, std::move(bnd)), GroupAction(h, g, std::move(act)));
}

} // namespace xmod
