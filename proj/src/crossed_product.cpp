#include "moritakit/crossed_product.hpp"

#include <cmath>

namespace moritakit {

namespace {

void check_same_action(const CrossedElement& a, const CrossedElement& b) {
    if (a.action.group != b.action.group || a.action.algebra != b.action.algebra)
        throw ArgumentError("crossed elements belong to different actions");
}

void check_components(const CrossedElement& a) {
    if (static_cast<int>(a.components.size()) != a.group_order())
        throw DimensionError("crossed element: one component per group element required");
}

}  // namespace

CrossedElement crossed_zero(const AlgebraAction& action) {
    if (!action.group || !action.algebra) throw ArgumentError("crossed_zero: incomplete action");
    const Index n = action.algebra->ambient_dim();
    CrossedElement out{action, {}};
    out.components.assign(static_cast<std::size_t>(action.group->order()), Matrix::Zero(n, n));
    return out;
}

CrossedElement cp_unit(const AlgebraAction& action) {
    CrossedElement out = crossed_zero(action);
    const Matrix& unit = action.algebra->unit();
    if (frobenius(unit) == 0.0) throw PreconditionError("cp_unit: algebra has no unit");
    out.components[static_cast<std::size_t>(action.group->identity)] = unit;
    return out;
}

CrossedElement cp_add(const CrossedElement& a, const CrossedElement& b) {
    check_same_action(a, b);
    check_components(a);
    check_components(b);
    CrossedElement out = a;
    for (std::size_t g = 0; g < out.components.size(); ++g) out.components[g] += b.components[g];
    return out;
}

CrossedElement cp_scale(const Complex& lambda, const CrossedElement& a) {
    check_components(a);
    CrossedElement out = a;
    for (auto& c : out.components) c *= lambda;
    return out;
}

CrossedElement cp_mul(const CrossedElement& a, const CrossedElement& b) {
    check_same_action(a, b);
    check_components(a);
    check_components(b);
    const FiniteGroup& grp = *a.action.group;
    CrossedElement out = crossed_zero(a.action);
    for (int g = 0; g < grp.order(); ++g) {
        Matrix sum = out.components[static_cast<std::size_t>(g)];
        for (int gp = 0; gp < grp.order(); ++gp) {
            int rest = grp.mul(grp.inv(gp), g);
            sum += a.components[static_cast<std::size_t>(gp)] *
                   apply_matrix(a.action, gp, b.components[static_cast<std::size_t>(rest)]);
        }
        out.components[static_cast<std::size_t>(g)] = sum;
    }
    return out;
}

CrossedElement cp_star(const CrossedElement& a) {
    check_components(a);
    const FiniteGroup& grp = *a.action.group;
    CrossedElement out = crossed_zero(a.action);
    for (int g = 0; g < grp.order(); ++g) {
        Matrix adj = a.components[static_cast<std::size_t>(grp.inv(g))].adjoint();
        out.components[static_cast<std::size_t>(g)] = apply_matrix(a.action, g, adj);
    }
    return out;
}

CrossedElement cp_star_untwisted(const CrossedElement& a) {
    check_components(a);
    const FiniteGroup& grp = *a.action.group;
    CrossedElement out = crossed_zero(a.action);
    for (int g = 0; g < grp.order(); ++g)
        out.components[static_cast<std::size_t>(g)] =
            a.components[static_cast<std::size_t>(grp.inv(g))].adjoint();
    return out;
}

CrossedElement y_element(const AlgebraAction& action, const AlgebraElement& a, int g) {
    if (a.algebra != action.algebra)
        throw ArgumentError("y_element: element does not belong to the acted-on algebra");
    return y_element(action, a.matrix, g);
}

CrossedElement y_element(const AlgebraAction& action, const Matrix& a, int g) {
    if (g < 0 || g >= action.group->order()) throw ArgumentError("y_element: index out of range");
    if (a.rows() != action.algebra->ambient_dim() || a.cols() != action.algebra->ambient_dim())
        throw DimensionError("y_element: shape mismatch with ambient dimension");
    CrossedElement out = crossed_zero(action);
    out.components[static_cast<std::size_t>(g)] = a;
    return out;
}

double cp_frobenius(const CrossedElement& a) {
    check_components(a);
    double sum = 0.0;
    for (const Matrix& c : a.components) sum += c.squaredNorm();
    return std::sqrt(sum);
}

double cp_distance(const CrossedElement& a, const CrossedElement& b) {
    check_same_action(a, b);
    double sum = 0.0;
    for (std::size_t g = 0; g < a.components.size(); ++g)
        sum += (a.components[g] - b.components[g]).squaredNorm();
    return std::sqrt(sum);
}

Vector cp_flatten(const CrossedElement& a) {
    check_components(a);
    const Index n = a.action.algebra->ambient_dim();
    Vector out(static_cast<Index>(a.components.size()) * n * n);
    for (std::size_t g = 0; g < a.components.size(); ++g)
        out.segment(static_cast<Index>(g) * n * n, n * n) = flatten(a.components[g]);
    return out;
}

Matrix regular_representation(const CrossedElement& a, const Tolerance& tol) {
    check_components(a);
    const FiniteGroup& grp = *a.action.group;
    const Index n = a.action.algebra->ambient_dim();
    const int ord = grp.order();
    Matrix rho = Matrix::Zero(static_cast<Index>(ord) * n, static_cast<Index>(ord) * n);
    for (int h = 0; h < ord; ++h) {
        for (int hp = 0; hp < ord; ++hp) {
            int g = grp.mul(h, grp.inv(hp));
            Matrix block =
                apply_matrix(a.action, grp.inv(h), a.components[static_cast<std::size_t>(g)], tol);
            rho.block(static_cast<Index>(h) * n, static_cast<Index>(hp) * n, n, n) = block;
        }
    }
    return rho;
}

}  // namespace moritakit
