#include "moritakit/star_algebra.hpp"

#include <cmath>
#include <utility>

namespace moritakit {

StarAlgebra::StarAlgebra(Index ambient_dim, std::vector<Matrix> basis, Matrix unit)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)), unit_(std::move(unit)) {
    if (ambient_dim_ <= 0) throw DimensionError("StarAlgebra: ambient dimension must be positive");
    if (basis_.empty()) throw ArgumentError("StarAlgebra: empty basis");
    for (const Matrix& b : basis_) {
        ensure_finite(b, "StarAlgebra basis element");
        if (b.rows() != ambient_dim_ || b.cols() != ambient_dim_)
            throw DimensionError("StarAlgebra: basis element shape mismatch with ambient_dim");
    }
    ensure_finite(unit_, "StarAlgebra unit");
    if (unit_.rows() != ambient_dim_ || unit_.cols() != ambient_dim_)
        throw DimensionError("StarAlgebra: unit shape mismatch with ambient_dim");

    basis_flat_.resize(ambient_dim_ * ambient_dim_, static_cast<Index>(basis_.size()));
    for (std::size_t k = 0; k < basis_.size(); ++k)
        basis_flat_.col(static_cast<Index>(k)) = flatten(basis_[k]);
    ortho_ = orthonormal_span(basis_, Tolerance{});
    coord_solver_.compute(basis_flat_);
}

Matrix StarAlgebra::project(const Matrix& m) const {
    if (m.rows() != ambient_dim_ || m.cols() != ambient_dim_)
        throw DimensionError("StarAlgebra::project: shape mismatch");
    Vector flat = flatten(m);
    Vector proj = ortho_ * (ortho_.adjoint() * flat);
    return unflatten(proj, ambient_dim_, ambient_dim_);
}

double StarAlgebra::membership_residual(const Matrix& m) const {
    Matrix diff = m - project(m);
    return frobenius(diff) / std::max(1.0, frobenius(m));
}

bool StarAlgebra::contains(const Matrix& m, const Tolerance& tol) const {
    return membership_residual(m) <= tol.eps_eq;
}

Vector StarAlgebra::coordinates_of(const Matrix& m, const Tolerance& tol) const {
    const double res = membership_residual(m);
    if (res > tol.eps_eq)
        throw MembershipError("matrix lies outside the algebra span (residual " +
                              std::to_string(res) + ")");
    return coord_solver_.solve(flatten(m));
}

Matrix StarAlgebra::from_coordinates(const Vector& coords) const {
    if (coords.size() != dim()) throw DimensionError("from_coordinates: coefficient count mismatch");
    Vector flat = basis_flat_ * coords;
    return unflatten(flat, ambient_dim_, ambient_dim_);
}

AlgebraElement make_element(StarAlgebraPtr algebra, Matrix m, const Tolerance& tol) {
    if (!algebra) throw ArgumentError("make_element: null algebra");
    ensure_finite(m, "element");
    if (m.rows() != algebra->ambient_dim() || m.cols() != algebra->ambient_dim())
        throw DimensionError("make_element: shape mismatch with ambient dimension");
    const double res = algebra->membership_residual(m);
    if (res > tol.eps_eq)
        throw MembershipError("element outside algebra span (residual " + std::to_string(res) + ")");
    return AlgebraElement{std::move(algebra), std::move(m)};
}

Vector coordinates(const AlgebraElement& a, const Tolerance& tol) {
    if (!a.algebra) throw ArgumentError("coordinates: element has no algebra");
    return a.algebra->coordinates_of(a.matrix, tol);
}

Matrix random_unit_element(const StarAlgebra& algebra, Rng& rng) {
    Matrix m = algebra.from_coordinates(rng.vector(algebra.dim()));
    const double n = frobenius(m);
    if (n > 0.0) m /= n;
    return m;
}

StructureReport verify_star_algebra(const StarAlgebra& candidate, const Tolerance& tol) {
    StructureReport report;
    report.dim = candidate.dim();
    report.independence_rank = subspace_rank(candidate.basis(), tol);

    const auto& basis = candidate.basis();
    for (Index i = 0; i < candidate.dim(); ++i) {
        for (Index j = 0; j < candidate.dim(); ++j) {
            Matrix prod = basis[static_cast<std::size_t>(i)] * basis[static_cast<std::size_t>(j)];
            double res = candidate.membership_residual(prod);
            report.product_residuals.push_back({i, j, res});
            report.worst_product_residual = std::max(report.worst_product_residual, res);
        }
        double star_res = candidate.membership_residual(basis[static_cast<std::size_t>(i)].adjoint());
        report.adjoint_residuals.push_back(star_res);
        report.worst_adjoint_residual = std::max(report.worst_adjoint_residual, star_res);
    }

    report.unit_membership_residual = candidate.membership_residual(candidate.unit());
    for (const Matrix& b : basis) {
        const double scale = std::max(1.0, frobenius(b));
        report.unit_law_residual =
            std::max({report.unit_law_residual, frobenius(candidate.unit() * b - b) / scale,
                      frobenius(b * candidate.unit() - b) / scale});
    }

    report.pass = report.independence_rank == report.dim &&
                  report.worst_product_residual <= tol.eps_eq &&
                  report.worst_adjoint_residual <= tol.eps_eq &&
                  report.unit_membership_residual <= tol.eps_eq &&
                  report.unit_law_residual <= tol.eps_eq;
    return report;
}

bool is_ideal(const std::vector<Matrix>& candidate_basis, const StarAlgebra& ambient,
              const Tolerance& tol) {
    if (candidate_basis.empty()) return true;  // zero ideal
    for (const Matrix& x : candidate_basis) {
        if (x.rows() != ambient.ambient_dim() || x.cols() != ambient.ambient_dim())
            throw DimensionError("is_ideal: candidate shape mismatch with ambient dimension");
    }
    Eigen::MatrixXcd span = orthonormal_span(candidate_basis, tol);
    if (span.cols() == 0) return true;
    auto in_candidate = [&](const Matrix& m) {
        Vector flat = flatten(m);
        Vector proj = span * (span.adjoint() * flat);
        return (flat - proj).norm() <= tol.eps_eq * std::max(1.0, flat.norm());
    };

    for (const Matrix& x : candidate_basis) {
        if (!ambient.contains(x, tol)) return false;
        if (!in_candidate(x.adjoint())) return false;
        for (const Matrix& a : ambient.basis()) {
            if (!in_candidate(a * x)) return false;
            if (!in_candidate(x * a)) return false;
        }
    }
    return true;
}

bool is_essential_ideal(const std::vector<Matrix>& ideal_basis, const StarAlgebra& ambient,
                        const Tolerance& tol) {
    if (!is_ideal(ideal_basis, ambient, tol))
        throw PreconditionError("is_essential_ideal: candidate is not an ideal");
    std::vector<Matrix> nonzero;
    for (const Matrix& x : ideal_basis)
        if (frobenius(x) > tol.eps_eq) nonzero.push_back(x);
    if (nonzero.empty()) return false;  // everything annihilates the zero ideal

    // Left annihilator inside the ambient span: coefficients c with
    // (sum_i c_i b_i) x_j = 0 for every ideal basis x_j.
    const Index n = ambient.ambient_dim();
    const Index d = ambient.dim();
    Eigen::MatrixXcd constraints(n * n * static_cast<Index>(nonzero.size()), d);
    for (std::size_t j = 0; j < nonzero.size(); ++j) {
        for (Index i = 0; i < d; ++i) {
            Matrix prod = ambient.basis()[static_cast<std::size_t>(i)] * nonzero[j];
            constraints.block(static_cast<Index>(j) * n * n, i, n * n, 1) = flatten(prod);
        }
    }
    Eigen::MatrixXcd null = nullspace(constraints, tol);
    return null.cols() == 0;
}

}  // namespace moritakit
