#include "groupcoh/module_rep.hpp"

#include "common/error.hpp"

#include <deque>

namespace xmod {

namespace {

RationalMatrix diag_reflection(std::size_t n) {
    RationalMatrix d = RationalMatrix::identity(n);
    d(0, 0) = -1;
    return d;
}

bool is_gl(ArithmeticKind kind) { return kind == ArithmeticKind::GL2Z || kind == ArithmeticKind::GL3Z; }

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<std::size_t>> sorted_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    subsets(n, k, 0, cur, out);
    return out;
}

} // namespace

std::string to_string(ArithmeticKind kind) {
    switch (kind) {
    case ArithmeticKind::SL2Z:
        return "SL2Z";
    case ArithmeticKind::GL2Z:
        return "GL2Z";
    case ArithmeticKind::SL3Z:
        return "SL3Z-partial";
    case ArithmeticKind::GL3Z:
        return "GL3Z-partial";
    }
    return "?";
}

std::optional<ArithmeticKind> parse_arithmetic_kind(const std::string& name) {
    for (auto k : {ArithmeticKind::SL2Z, ArithmeticKind::GL2Z, ArithmeticKind::SL3Z, ArithmeticKind::GL3Z})
        if (to_string(k) == name)
            return k;
    return std::nullopt;
}

std::size_t matrix_size(ArithmeticKind kind) {
    return kind == ArithmeticKind::SL2Z || kind == ArithmeticKind::GL2Z ? 2 : 3;
}

ArithmeticGroupTag ArithmeticGroupTag::standard(ArithmeticKind kind) {
    if (matrix_size(kind) == 3)
        return elementary(kind);
    ArithmeticGroupTag tag{kind, {}};
    tag.generators.push_back({"S", RationalMatrix::from_integers({{0, -1}, {1, 0}})});
    tag.generators.push_back({"R", RationalMatrix::from_integers({{0, -1}, {1, 1}})});
    if (is_gl(kind))
        tag.generators.push_back({"J", RationalMatrix::from_integers({{0, 1}, {1, 0}})});
    return tag;
}

ArithmeticGroupTag ArithmeticGroupTag::elementary(ArithmeticKind kind) {
    const std::size_t n = matrix_size(kind);
    ArithmeticGroupTag tag{kind, {}};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
                continue;
            RationalMatrix e = RationalMatrix::identity(n);
            e(i, j) = 1;
            tag.generators.push_back({"E" + std::to_string(i + 1) + std::to_string(j + 1), e});
        }
    if (is_gl(kind))
        tag.generators.push_back({"D", diag_reflection(n)});
    return tag;
}

void ArithmeticGroupTag::check() const {
    const std::size_t n = matrix_size(kind);
    if (generators.empty())
        throw InputError(to_string(kind) + ": no generators");
    for (const auto& g : generators) {
        if (g.matrix.rows() != n || g.matrix.cols() != n)
            throw InputError(to_string(kind) + " generator " + g.name + " is not " + std::to_string(n) + "x" +
                             std::to_string(n));
        if (!g.matrix.is_integral())
            throw InputError(to_string(kind) + " generator " + g.name + " is not integral");
        const Rational det = g.matrix.determinant();
        if (!(det == 1 || (is_gl(kind) && det == -1)))
            throw InputError(to_string(kind) + " generator " + g.name + " has determinant " + det.str());
    }
}

const RationalMatrix& ArithmeticGroupTag::generator(const std::string& name) const {
    for (const auto& g : generators)
        if (g.name == name)
            return g.matrix;
    throw InputError(to_string(kind) + " has no generator named " + name);
}

ModuleRep ModuleRep::finite(GroupPtr group, std::vector<RationalMatrix> matrices) {
    if (!group)
        throw InputError("module over a missing group");
    const std::uint32_t n = group->order();
    if (matrices.size() != n)
        throw InputError("module needs one matrix per group element");
    const std::size_t d = matrices[0].rows();
    for (const auto& m : matrices)
        if (m.rows() != d || m.cols() != d)
            throw InputError("module matrices must all be square of the same size");
    if (!matrices[0].is_identity())
        throw InputError("the identity element must act by the identity matrix");
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            if (!(matrices[a] * matrices[b] == matrices[group->mul(a, b)]))
                throw InputError("not a representation: rho(" + std::to_string(a) + ") rho(" + std::to_string(b) +
                                 ") != rho(" + std::to_string(group->mul(a, b)) + ")");
    ModuleRep rep;
    rep.group_ = std::move(group);
    rep.dimension_ = d;
    rep.matrices_ = std::move(matrices);
    return rep;
}

ModuleRep ModuleRep::finite_from_generators(GroupPtr group, std::span<const Elem> generators,
                                            std::span<const RationalMatrix> images) {
    if (!group)
        throw InputError("module over a missing group");
    if (generators.size() != images.size())
        throw InputError("one image per generator is required");
    std::size_t d = images.empty() ? 0 : images[0].rows();
    const std::uint32_t n = group->order();
    std::vector<std::optional<RationalMatrix>> rho(n);
    rho[0] = RationalMatrix::identity(d);
    std::deque<Elem> queue{0};
    while (!queue.empty()) {
        const Elem x = queue.front();
        queue.pop_front();
        for (std::size_t k = 0; k < generators.size(); ++k) {
            if (generators[k] >= n)
                throw InputError("generator index out of range");
            const Elem y = group->mul(x, generators[k]);
            RationalMatrix m = *rho[x] * images[k];
            if (!rho[y]) {
                rho[y] = std::move(m);
                queue.push_back(y);
            } else if (!(*rho[y] == m)) {
                throw InputError("generator images violate a relation at element " + std::to_string(y));
            }
        }
    }
    std::vector<RationalMatrix> all;
    for (Elem g = 0; g < n; ++g) {
        if (!rho[g])
            throw InputError("the listed generators do not generate the group");
        all.push_back(std::move(*rho[g]));
    }
    return finite(std::move(group), std::move(all));
}

ModuleRep ModuleRep::trivial(GroupPtr group, std::size_t dimension) {
    if (!group)
        throw InputError("module over a missing group");
    return finite(group, std::vector<RationalMatrix>(group->order(), RationalMatrix::identity(dimension)));
}

ModuleRep ModuleRep::arithmetic(ArithmeticGroupTag tag, std::vector<RationalMatrix> images) {
    tag.check();
    if (images.size() != tag.generators.size())
        throw InputError("one module matrix per " + to_string(tag.kind) + " generator is required");
    const std::size_t d = images[0].rows();
    for (std::size_t k = 0; k < images.size(); ++k) {
        if (images[k].rows() != d || images[k].cols() != d)
            throw InputError("module matrices must all be square of the same size");
        if (!images[k].inverse())
            throw InputError("image of generator " + tag.generators[k].name + " is not invertible");
    }
    ModuleRep rep;
    rep.tag_ = std::move(tag);
    rep.dimension_ = d;
    rep.matrices_ = std::move(images);
    return rep;
}

ModuleRep ModuleRep::standard(ArithmeticGroupTag tag) {
    std::vector<RationalMatrix> images;
    for (const auto& g : tag.generators)
        images.push_back(g.matrix);
    return arithmetic(std::move(tag), std::move(images));
}

const RationalMatrix& ModuleRep::matrix(Elem g) const {
    if (!is_finite())
        throw InputError("element matrices exist only for finite groups");
    if (g >= matrices_.size())
        throw InputError("group element out of range");
    return matrices_[g];
}

const RationalMatrix& ModuleRep::generator_image(const std::string& name) const {
    if (!tag_)
        throw InputError("named generators exist only for arithmetic groups");
    for (std::size_t k = 0; k < tag_->generators.size(); ++k)
        if (tag_->generators[k].name == name)
            return matrices_[k];
    throw InputError(to_string(tag_->kind) + " has no generator named " + name);
}

RationalMatrix exterior_power(const RationalMatrix& m, std::size_t k) {
    if (m.rows() != m.cols())
        throw InputError("exterior power of a non-square matrix");
    if (k > m.rows())
        throw InputError("exterior power degree exceeds the dimension");
    const auto basis = sorted_subsets(m.rows(), k);
    RationalMatrix out(basis.size(), basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            out(i, j) = k == 0 ? Rational(1) : m.submatrix(basis[i], basis[j]).determinant();
    return out;
}

ModuleRep exterior_power_rep(const ModuleRep& mod, std::size_t k) {
    if (k > mod.dimension())
        throw InputError("exterior power degree exceeds the module dimension");
    std::vector<RationalMatrix> images;
    for (const auto& m : mod.matrices())
        images.push_back(exterior_power(m, k));
    if (mod.is_finite())
        return ModuleRep::finite(mod.group(), std::move(images));
    return ModuleRep::arithmetic(*mod.tag(), std::move(images));
}

RationalMatrix fixed_space(const RationalMatrix& m) {
    return (m - RationalMatrix::identity(m.rows())).kernel_basis();
}

RationalMatrix invariants(const ModuleRep& mod, std::span<const int> character) {
    const auto& ms = mod.matrices();
    if (!character.empty() && character.size() != ms.size())
        throw InputError("character needs one sign per module matrix");
    const std::size_t d = mod.dimension();
    std::vector<RationalMatrix> blocks;
    for (std::size_t k = 0; k < ms.size(); ++k) {
        const int chi = character.empty() ? 1 : character[k];
        if (chi != 1 && chi != -1)
            throw InputError("character values must be +1 or -1");
        blocks.push_back(ms[k] - RationalMatrix::identity(d).scaled(chi));
    }
    if (blocks.empty())
        return RationalMatrix::identity(d);
    return vstack(blocks).kernel_basis();
}

} // namespace xmod
