#include "moritakit/models.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>

#include "moritakit/morita.hpp"

namespace moritakit {

void validate_set_action(const SetAction& sa, const FiniteGroup& group) {
    if (sa.points <= 0) throw ArgumentError("set action: no points");
    if (static_cast<int>(sa.perms.size()) != group.order())
        throw ArgumentError("set action: one permutation per group element required");
    for (const auto& p : sa.perms) {
        if (static_cast<int>(p.size()) != sa.points)
            throw ArgumentError("set action: permutation length mismatch");
        std::vector<bool> seen(static_cast<std::size_t>(sa.points), false);
        for (int img : p) {
            if (img < 0 || img >= sa.points || seen[static_cast<std::size_t>(img)])
                throw ArgumentError("set action: map is not a permutation");
            seen[static_cast<std::size_t>(img)] = true;
        }
    }
    for (int y = 0; y < sa.points; ++y)
        if (sa.perms[static_cast<std::size_t>(group.identity)][static_cast<std::size_t>(y)] != y)
            throw ArgumentError("set action: identity element does not act trivially");
    for (int g = 0; g < group.order(); ++g)
        for (int h = 0; h < group.order(); ++h)
            for (int y = 0; y < sa.points; ++y) {
                int lhs = sa.perms[static_cast<std::size_t>(g)]
                                  [static_cast<std::size_t>(sa.perms[static_cast<std::size_t>(h)]
                                                                    [static_cast<std::size_t>(y)])];
                int rhs = sa.perms[static_cast<std::size_t>(group.mul(g, h))][static_cast<std::size_t>(y)];
                if (lhs != rhs)
                    throw ArgumentError("set action: permutations are not compatible with the group");
            }
}

SetCovering covering_from_set_action(const SetAction& sa, FiniteGroupPtr group,
                                     const Tolerance& tol) {
    if (!group) throw ArgumentError("covering_from_set_action: null group");
    validate_set_action(sa, *group);
    const Index n = sa.points;

    std::vector<Matrix> basis;
    basis.reserve(static_cast<std::size_t>(n));
    for (Index y = 0; y < n; ++y) {
        Matrix e = Matrix::Zero(n, n);
        e(y, y) = 1.0;
        basis.push_back(std::move(e));
    }
    auto algebra = std::make_shared<StarAlgebra>(n, std::move(basis), Matrix::Identity(n, n));

    std::vector<Eigen::MatrixXcd> maps;
    maps.reserve(sa.perms.size());
    for (const auto& p : sa.perms) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
        for (int y = 0; y < sa.points; ++y)
            m(p[static_cast<std::size_t>(y)], y) = 1.0;  // g . e_y = e_{g(y)}
        maps.push_back(std::move(m));
    }
    AlgebraAction action{group, algebra, std::move(maps)};

    // Orbits give the base basis and the ground truth.
    std::vector<int> orbit(static_cast<std::size_t>(sa.points), -1);
    Index orbit_count = 0;
    for (int y = 0; y < sa.points; ++y) {
        if (orbit[static_cast<std::size_t>(y)] >= 0) continue;
        for (int g = 0; g < group->order(); ++g)
            orbit[static_cast<std::size_t>(sa.perms[static_cast<std::size_t>(g)][static_cast<std::size_t>(y)])] =
                static_cast<int>(orbit_count);
        ++orbit_count;
    }
    std::vector<Matrix> base_basis(static_cast<std::size_t>(orbit_count), Matrix::Zero(n, n));
    for (int y = 0; y < sa.points; ++y)
        base_basis[static_cast<std::size_t>(orbit[static_cast<std::size_t>(y)])](y, y) = 1.0;
    auto base = std::make_shared<StarAlgebra>(n, std::move(base_basis), Matrix::Identity(n, n));

    bool free = true;
    for (int g = 0; g < group->order() && free; ++g) {
        if (g == group->identity) continue;
        for (int y = 0; y < sa.points; ++y)
            if (sa.perms[static_cast<std::size_t>(g)][static_cast<std::size_t>(y)] == y) {
                free = false;
                break;
            }
    }

    SetCovering out;
    out.covering = CoveringCandidate{std::move(action), std::move(base)};
    out.set_action = sa;
    out.free = free;
    out.orbit_count = orbit_count;
    (void)tol;
    return out;
}

SetAction direct_sum(const SetAction& a, const SetAction& b) {
    if (a.perms.size() != b.perms.size())
        throw ArgumentError("direct_sum: blocks live over different groups");
    SetAction out;
    out.points = a.points + b.points;
    out.perms.resize(a.perms.size());
    for (std::size_t g = 0; g < a.perms.size(); ++g) {
        out.perms[g].resize(static_cast<std::size_t>(out.points));
        for (int y = 0; y < a.points; ++y)
            out.perms[g][static_cast<std::size_t>(y)] = a.perms[g][static_cast<std::size_t>(y)];
        for (int y = 0; y < b.points; ++y)
            out.perms[g][static_cast<std::size_t>(a.points + y)] =
                a.points + b.perms[g][static_cast<std::size_t>(y)];
    }
    return out;
}

InnerMatrixModel inner_matrix_model(Index n, FiniteGroupPtr group,
                                    const std::vector<Matrix>& unitaries, const Tolerance& tol) {
    if (!group) throw ArgumentError("inner_matrix_model: null group");
    if (n <= 0) throw ArgumentError("inner_matrix_model: dimension must be positive");
    if (static_cast<int>(unitaries.size()) != group->order())
        throw ArgumentError("inner_matrix_model: one unitary per group element required");
    for (const Matrix& u : unitaries) {
        if (u.rows() != n || u.cols() != n)
            throw DimensionError("inner_matrix_model: unitary shape mismatch");
        if (max_abs(u * u.adjoint() - Matrix::Identity(n, n)) > tol.eps_eq * 10)
            throw ArgumentError("inner_matrix_model: matrix is not unitary");
    }

    std::vector<Matrix> basis;
    basis.reserve(static_cast<std::size_t>(n * n));
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            Matrix e = Matrix::Zero(n, n);
            e(i, j) = 1.0;
            basis.push_back(std::move(e));
        }
    auto algebra = std::make_shared<StarAlgebra>(n, std::move(basis), Matrix::Identity(n, n));

    // Coordinate matrix of Ad(u) in the matrix-unit basis: column (i,j)
    // holds the entries of u E_ij u*.
    std::vector<Eigen::MatrixXcd> maps;
    for (const Matrix& u : unitaries) {
        Eigen::MatrixXcd m(n * n, n * n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) {
                Matrix conj = u.col(i) * u.col(j).adjoint();  // u E_ij u*
                Index col = i * n + j;
                for (Index k = 0; k < n; ++k)
                    for (Index l = 0; l < n; ++l) m(k * n + l, col) = conj(k, l);
            }
        maps.push_back(std::move(m));
    }
    AlgebraAction action{group, algebra, std::move(maps)};

    // Ad must be a homomorphism even when the unitaries themselves compose
    // only up to phase.
    for (int g = 0; g < group->order(); ++g)
        for (int h = 0; h < group->order(); ++h) {
            double dev = max_abs(action.maps[static_cast<std::size_t>(g)] *
                                     action.maps[static_cast<std::size_t>(h)] -
                                 action.maps[static_cast<std::size_t>(group->mul(g, h))]);
            if (dev > tol.eps_eq * 100)
                throw ArgumentError("inner_matrix_model: Ad is not a group homomorphism");
        }

    InnerMatrixModel out;
    out.action_report = verify_action(action, tol);
    if (!out.action_report.degenerate_elements.empty()) {
        out.accepted = false;
        out.reason = "degenerate: unitary for element " +
                     std::to_string(out.action_report.degenerate_elements.front()) + " is central";
        return out;
    }
    if (!out.action_report.pass) {
        out.accepted = false;
        out.reason = out.action_report.message;
        return out;
    }
    out.accepted = true;
    out.covering = make_covering(std::move(action), tol);
    return out;
}

std::vector<Matrix> wta_subalgebra(const CoveringCandidate& bigcover,
                                   const std::vector<Matrix>& ideal_basis_of_base,
                                   const Tolerance& tol) {
    if (!is_ideal(ideal_basis_of_base, *bigcover.base, tol))
        throw PreconditionError("wta_subalgebra: candidate basis is not an ideal of the base");
    const StarAlgebra& alg = *bigcover.action.algebra;
    const Index d = alg.dim();
    const Index n = alg.ambient_dim();

    Eigen::MatrixXcd ideal_span = orthonormal_span(ideal_basis_of_base, tol);
    auto project_out = [&](const Matrix& m) -> Vector {
        Vector flat = flatten(m);
        if (ideal_span.cols() == 0) return flat;
        return flat - ideal_span * (ideal_span.adjoint() * flat);
    };

    // Membership constraints: <b_i, a>_transfer must lie in the ideal span
    // for every basis element b_i; linear in the coordinates of a.
    Eigen::MatrixXcd constraints(d * n * n, d);
    for (Index i = 0; i < d; ++i)
        for (Index k = 0; k < d; ++k) {
            Matrix pairing = transfer_inner_matrix(bigcover, alg.basis()[static_cast<std::size_t>(i)],
                                                   alg.basis()[static_cast<std::size_t>(k)], tol);
            constraints.block(i * n * n, k, n * n, 1) = project_out(pairing);
        }

    Eigen::MatrixXcd null = nullspace(constraints, tol);
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(null.cols()));
    for (Index c = 0; c < null.cols(); ++c) out.push_back(alg.from_coordinates(null.col(c)));
    return out;
}

Corner make_corner(const CoveringCandidate& cand, const std::vector<Matrix>& ideal_basis,
                   const Tolerance& tol) {
    const StarAlgebra& alg = *cand.action.algebra;
    const Index n = alg.ambient_dim();
    if (ideal_basis.empty()) throw ArgumentError("make_corner: empty ideal basis");
    for (const Matrix& x : ideal_basis)
        if (x.rows() != n || x.cols() != n)
            throw DimensionError("make_corner: ideal basis shape mismatch");

    // Support projection of the ideal from the range of sum x x*.
    Matrix gram = Matrix::Zero(n, n);
    for (const Matrix& x : ideal_basis) gram += x * x.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
    const double cutoff = tol.eps_rank * std::max(1.0, es.eigenvalues().maxCoeff());
    Matrix support = Matrix::Zero(n, n);
    for (Index k = 0; k < n; ++k)
        if (es.eigenvalues()(k) > cutoff)
            support += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();

    // Corner spanned by triple products x a y.
    std::vector<Matrix> products;
    for (const Matrix& x : ideal_basis)
        for (const Matrix& a : alg.basis())
            for (const Matrix& y : ideal_basis) products.push_back(x * a * y);
    Eigen::MatrixXcd span = orthonormal_span(products, tol);
    std::vector<Matrix> corner_basis;
    corner_basis.reserve(static_cast<std::size_t>(span.cols()));
    for (Index c = 0; c < span.cols(); ++c)
        corner_basis.push_back(unflatten(span.col(c), n, n));
    if (corner_basis.empty()) throw ArgumentError("make_corner: corner span is zero");

    auto corner_alg = std::make_shared<StarAlgebra>(n, std::move(corner_basis), support);

    // Restricted action on corner coordinates.
    std::vector<Eigen::MatrixXcd> maps;
    const Index cd = corner_alg->dim();
    for (int g = 0; g < cand.action.group->order(); ++g) {
        Eigen::MatrixXcd m(cd, cd);
        for (Index k = 0; k < cd; ++k) {
            Matrix moved = apply_matrix(cand.action, g, corner_alg->basis()[static_cast<std::size_t>(k)], tol);
            m.col(k) = corner_alg->coordinates_of(moved, tol);
        }
        maps.push_back(std::move(m));
    }

    Corner out;
    out.support = support;
    out.action = AlgebraAction{cand.action.group, corner_alg, std::move(maps)};
    out.algebra = corner_alg;
    return out;
}

CompactificationReport verify_compactification_covering(const CoveringCandidate& b_cover,
                                                        const std::vector<Matrix>& a_basis,
                                                        const Tolerance& tol, int samples,
                                                        unsigned long long seed) {
    CompactificationReport report;
    const StarAlgebra& base = *b_cover.base;
    if (frobenius(b_cover.action.algebra->unit()) <= tol.eps_eq ||
        frobenius(base.unit()) <= tol.eps_eq)
        throw PreconditionError("verify_compactification_covering: algebras must be unital");
    if (!is_ideal(a_basis, base, tol))
        throw PreconditionError("verify_compactification_covering: candidate is not an ideal");

    report.ideal_rank = subspace_rank(a_basis, tol);
    report.ideal_essential = is_essential_ideal(a_basis, base, tol);
    if (report.ideal_essential) {
        report.trivial_compactification = report.ideal_rank == base.dim();
    } else {
        report.nonessential_caveat = true;
        report.message = "ideal is not essential; finite-dimensional collapse does not apply";
    }

    report.unital = certify_unital_covering(b_cover, tol, samples, seed);

    std::vector<Matrix> recovered = wta_subalgebra(b_cover, a_basis, tol);
    report.recomputed_dim = static_cast<Index>(recovered.size());
    report.expected_crossed =
        static_cast<Index>(b_cover.action.group->order()) * report.recomputed_dim;

    if (!recovered.empty()) {
        MoritaContext ctx = make_morita_context(b_cover);
        std::vector<Matrix> base_vals;
        std::vector<Matrix> crossed_vals;
        for (const Matrix& x : recovered)
            for (const Matrix& y : recovered) {
                base_vals.push_back(transfer_inner_matrix(b_cover, x, y, tol));
                AlgebraElement xe{b_cover.action.algebra, x};
                AlgebraElement ye{b_cover.action.algebra, y};
                crossed_vals.push_back(Matrix(cp_flatten(inner_cp(ctx, xe, ye, tol))));
            }
        report.fullness_rank_base = subspace_rank(base_vals, tol);
        report.fullness_rank_crossed = subspace_rank(crossed_vals, tol);
    }

    report.pass = report.unital.certified && report.unital.galois_frame.feasible &&
                  report.fullness_rank_base == report.ideal_rank &&
                  report.fullness_rank_crossed == report.expected_crossed;
    return report;
}

GeneralCoveringReport verify_general_covering(const CoveringCandidate& cand, const IdealFamily& fam,
                                              const Tolerance& tol, int samples,
                                              unsigned long long seed) {
    if (fam.ideals.empty()) throw ArgumentError("verify_general_covering: empty ideal family");
    GeneralCoveringReport report;
    report.base_dim = cand.base->dim();

    std::vector<Matrix> all;
    for (const auto& ideal : fam.ideals)
        for (const Matrix& x : ideal) all.push_back(x);
    report.union_rank = all.empty() ? 0 : subspace_rank(all, tol);
    report.union_spans_base = report.union_rank == report.base_dim;

    for (const auto& ideal : fam.ideals) {
        if (!is_ideal(ideal, *cand.base, tol))
            throw PreconditionError("verify_general_covering: family member is not an ideal");
        Corner corner = make_corner(cand, ideal, tol);
        CoveringCandidate corner_cover = make_covering(corner.action, tol);
        report.corners.push_back(
            verify_compactification_covering(corner_cover, ideal, tol, samples, seed));
    }

    report.pass = report.union_spans_base &&
                  std::all_of(report.corners.begin(), report.corners.end(),
                              [](const CompactificationReport& c) { return c.pass; });
    return report;
}

}  // namespace moritakit
