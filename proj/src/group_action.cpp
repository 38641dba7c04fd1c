#include "moritakit/group_action.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace moritakit {

GroupReport verify_group(const FiniteGroup& g) {
    const int n = g.order();
    if (n <= 0) return {false, "empty multiplication table"};
    for (const auto& row : g.table)
        if (static_cast<int>(row.size()) != n)
            throw DimensionError("verify_group: table is not square");

    for (int i = 0; i < n; ++i) {
        std::vector<bool> seen_row(static_cast<std::size_t>(n), false);
        std::vector<bool> seen_col(static_cast<std::size_t>(n), false);
        for (int j = 0; j < n; ++j) {
            int r = g.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            int c = g.table[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            if (r < 0 || r >= n || c < 0 || c >= n)
                return {false, "table entry out of range at (" + std::to_string(i) + "," +
                                   std::to_string(j) + ")"};
            if (seen_row[static_cast<std::size_t>(r)])
                return {false, "row " + std::to_string(i) + " is not a permutation"};
            if (seen_col[static_cast<std::size_t>(c)])
                return {false, "column " + std::to_string(i) + " is not a permutation"};
            seen_row[static_cast<std::size_t>(r)] = true;
            seen_col[static_cast<std::size_t>(c)] = true;
        }
    }

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    return {false, "associativity fails at triple (" + std::to_string(a) + "," +
                                       std::to_string(b) + "," + std::to_string(c) + ")"};

    if (g.identity < 0 || g.identity >= n) return {false, "identity index out of range"};
    for (int a = 0; a < n; ++a) {
        if (g.mul(g.identity, a) != a || g.mul(a, g.identity) != a)
            return {false, "identity law fails at element " + std::to_string(a)};
    }
    if (static_cast<int>(g.inverse.size()) != n) return {false, "inverse list size mismatch"};
    for (int a = 0; a < n; ++a) {
        int ia = g.inverse[static_cast<std::size_t>(a)];
        if (ia < 0 || ia >= n || g.mul(a, ia) != g.identity || g.mul(ia, a) != g.identity)
            return {false, "inverse inconsistent at element " + std::to_string(a)};
    }
    return {true, ""};
}

FiniteGroup group_from_table(std::vector<std::vector<int>> table) {
    FiniteGroup g;
    g.table = std::move(table);
    const int n = g.order();
    if (n <= 0) throw ValidationError("group table is empty");
    for (const auto& row : g.table)
        if (static_cast<int>(row.size()) != n) throw ValidationError("group table is not square");

    int identity = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            ok = g.mul(e, a) == a && g.mul(a, e) == a;
        if (ok) {
            identity = e;
            break;
        }
    }
    if (identity < 0) throw ValidationError("group table has no identity element");
    g.identity = identity;
    g.inverse.assign(static_cast<std::size_t>(n), -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (g.mul(a, b) == identity && g.mul(b, a) == identity) {
                g.inverse[static_cast<std::size_t>(a)] = b;
                break;
            }
        }
        if (g.inverse[static_cast<std::size_t>(a)] < 0)
            throw ValidationError("group element " + std::to_string(a) + " has no inverse");
    }
    GroupReport report = verify_group(g);
    if (!report.pass) throw ValidationError("group table invalid: " + report.message);
    return g;
}

namespace groups {

FiniteGroup trivial() { return group_from_table({{0}}); }

FiniteGroup cyclic(int n) {
    if (n <= 0) throw ArgumentError("cyclic: order must be positive");
    std::vector<std::vector<int>> table(static_cast<std::size_t>(n),
                                        std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % n;
    return group_from_table(std::move(table));
}

FiniteGroup klein_four() {
    // Elements as bit pairs {00, 01, 10, 11}, product = xor.
    std::vector<std::vector<int>> table(4, std::vector<int>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = i ^ j;
    return group_from_table(std::move(table));
}

FiniteGroup symmetric3() {
    // Permutations of {0,1,2} in lexicographic order of one-line notation.
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    auto index_of = [&](const int p[3]) {
        for (int k = 0; k < 6; ++k)
            if (perms[k][0] == p[0] && perms[k][1] == p[1] && perms[k][2] == p[2]) return k;
        return -1;
    };
    std::vector<std::vector<int>> table(6, std::vector<int>(6));
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            int comp[3];
            for (int x = 0; x < 3; ++x) comp[x] = perms[i][perms[j][x]];  // (p_i after p_j)(x)
            table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = index_of(comp);
        }
    }
    return group_from_table(std::move(table));
}

FiniteGroup by_name(const std::string& name) {
    if (name == "C1") return trivial();
    if (name == "C2") return cyclic(2);
    if (name == "C3") return cyclic(3);
    if (name == "C4") return cyclic(4);
    if (name == "V4") return klein_four();
    if (name == "S3") return symmetric3();
    throw ValidationError("unknown group name: " + name);
}

}  // namespace groups

namespace {

void check_action_shapes(const AlgebraAction& act) {
    if (!act.group || !act.algebra) throw ArgumentError("action missing group or algebra");
    const Index d = act.algebra->dim();
    if (static_cast<int>(act.maps.size()) != act.group->order())
        throw DimensionError("action: one coordinate map per group element required");
    for (const auto& m : act.maps)
        if (m.rows() != d || m.cols() != d)
            throw DimensionError("action: coordinate map shape mismatch with basis size");
}

}  // namespace

ActionReport verify_action(const AlgebraAction& act, const Tolerance& tol) {
    check_action_shapes(act);
    ActionReport report;
    const FiniteGroup& g = *act.group;
    const StarAlgebra& alg = *act.algebra;
    const Index d = alg.dim();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);

    report.identity_residual = max_abs(act.maps[static_cast<std::size_t>(g.identity)] - id);
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            report.homomorphism_residual = std::max(
                report.homomorphism_residual,
                max_abs(act.maps[static_cast<std::size_t>(a)] * act.maps[static_cast<std::size_t>(b)] -
                        act.maps[static_cast<std::size_t>(g.mul(a, b))]));

    for (int gi = 0; gi < g.order(); ++gi) {
        for (Index i = 0; i < d; ++i) {
            const Matrix& bi = alg.basis()[static_cast<std::size_t>(i)];
            Matrix gbi = apply_matrix(act, gi, bi, tol);
            // involutive: g(b*) = (g b)*; residuals relative to operand scale
            // so verification is invariant under basis rescaling
            Matrix gbstar = apply_matrix(act, gi, bi.adjoint(), tol);
            report.involutivity_residual =
                std::max(report.involutivity_residual,
                         frobenius(gbstar - gbi.adjoint()) / std::max(1.0, frobenius(bi)));
            for (Index j = 0; j < d; ++j) {
                const Matrix& bj = alg.basis()[static_cast<std::size_t>(j)];
                Matrix prod = bi * bj;
                Matrix lhs = apply_matrix(act, gi, prod, tol);
                Matrix rhs = gbi * apply_matrix(act, gi, bj, tol);
                report.multiplicativity_residual =
                    std::max(report.multiplicativity_residual,
                             frobenius(lhs - rhs) / std::max(1.0, frobenius(prod)));
            }
        }
        report.unitality_residual =
            std::max(report.unitality_residual,
                     frobenius(apply_matrix(act, gi, alg.unit(), tol) - alg.unit()) /
                         std::max(1.0, frobenius(alg.unit())));
        if (gi != g.identity &&
            operator_norm(act.maps[static_cast<std::size_t>(gi)] - id) <= tol.eps_rank)
            report.degenerate_elements.push_back(gi);
    }

    report.pass = report.identity_residual <= tol.eps_eq &&
                  report.homomorphism_residual <= tol.eps_eq &&
                  report.multiplicativity_residual <= tol.eps_eq &&
                  report.unitality_residual <= tol.eps_eq &&
                  report.involutivity_residual <= tol.eps_eq && report.degenerate_elements.empty();
    if (!report.pass) {
        if (!report.degenerate_elements.empty())
            report.message = "degenerate: element " + std::to_string(report.degenerate_elements.front()) +
                             " acts as the identity";
        else
            report.message = "automorphism axioms violated";
    }
    return report;
}

Matrix apply_matrix(const AlgebraAction& act, int g, const Matrix& m, const Tolerance& tol) {
    check_action_shapes(act);
    if (g < 0 || g >= act.group->order()) throw ArgumentError("apply: group index out of range");
    Vector coords = act.algebra->coordinates_of(m, tol);
    return act.algebra->from_coordinates(act.maps[static_cast<std::size_t>(g)] * coords);
}

AlgebraElement apply(const AlgebraAction& act, int g, const AlgebraElement& a, const Tolerance& tol) {
    if (a.algebra != act.algebra)
        throw ArgumentError("apply: element does not belong to the acted-on algebra");
    return AlgebraElement{act.algebra, apply_matrix(act, g, a.matrix, tol)};
}

StarAlgebraPtr fixed_point_algebra(const AlgebraAction& act, const Tolerance& tol) {
    check_action_shapes(act);
    const Index d = act.algebra->dim();
    const int n = act.group->order();
    Eigen::MatrixXcd stacked(static_cast<Index>(n) * d, d);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
    for (int g = 0; g < n; ++g)
        stacked.block(static_cast<Index>(g) * d, 0, d, d) = act.maps[static_cast<std::size_t>(g)] - id;
    Eigen::MatrixXcd null = nullspace(stacked, tol);

    std::vector<Matrix> basis;
    basis.reserve(static_cast<std::size_t>(null.cols()));
    for (Index k = 0; k < null.cols(); ++k)
        basis.push_back(act.algebra->from_coordinates(null.col(k)));
    return std::make_shared<StarAlgebra>(act.algebra->ambient_dim(), std::move(basis),
                                         act.algebra->unit());
}

}  // namespace moritakit
