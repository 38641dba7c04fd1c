#pragma once

#include <memory>
#include <vector>

#include "moritakit/linalg.hpp"

namespace moritakit {

/// A *-closed unital subspace of an ambient matrix algebra, given by a basis.
/// The unit must act as identity on the span but may differ from the ambient
/// identity (corners and ideals regarded as algebras).
class StarAlgebra {
  public:
    StarAlgebra(Index ambient_dim, std::vector<Matrix> basis, Matrix unit);

    Index ambient_dim() const { return ambient_dim_; }
    Index dim() const { return static_cast<Index>(basis_.size()); }
    const std::vector<Matrix>& basis() const { return basis_; }
    const Matrix& unit() const { return unit_; }

    /// Orthonormal (Frobenius) basis of the span, as flat column vectors.
    const Eigen::MatrixXcd& orthonormal_flat() const { return ortho_; }

    /// Orthogonal projection of m onto the span.
    Matrix project(const Matrix& m) const;

    /// Relative distance |m - proj(m)| / max(1, |m|) in Frobenius norm.
    double membership_residual(const Matrix& m) const;

    bool contains(const Matrix& m, const Tolerance& tol = {}) const;

    /// Coefficients of m in the stored basis; MembershipError when m is not
    /// in the span within eps_eq.
    Vector coordinates_of(const Matrix& m, const Tolerance& tol = {}) const;

    /// Matrix with the given basis coefficients.
    Matrix from_coordinates(const Vector& coords) const;

  private:
    Index ambient_dim_;
    std::vector<Matrix> basis_;
    Matrix unit_;
    Eigen::MatrixXcd ortho_;        // orthonormal span, flattened columns
    Eigen::MatrixXcd basis_flat_;   // raw basis, flattened columns
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> coord_solver_;
};

using StarAlgebraPtr = std::shared_ptr<const StarAlgebra>;

/// An element of a star algebra, stored as its ambient matrix.
struct AlgebraElement {
    StarAlgebraPtr algebra;
    Matrix matrix;
};

AlgebraElement make_element(StarAlgebraPtr algebra, Matrix m, const Tolerance& tol = {});

/// Random span element scaled to unit Frobenius norm, so sampled residuals
/// are invariant under rescaling of the stored basis.
Matrix random_unit_element(const StarAlgebra& algebra, Rng& rng);

/// Unique basis coefficients of a.matrix; MembershipError outside the span.
Vector coordinates(const AlgebraElement& a, const Tolerance& tol = {});

/// One closure / membership residual per checked invariant.
struct StructureReport {
    struct PairResidual {
        Index i = 0;
        Index j = 0;
        double value = 0.0;
    };
    Index independence_rank = 0;
    Index dim = 0;
    std::vector<PairResidual> product_residuals;  // span closure of basis products
    std::vector<double> adjoint_residuals;        // span closure of basis adjoints
    double unit_membership_residual = 0.0;
    double unit_law_residual = 0.0;  // max |unit*b - b|, |b*unit - b| over basis
    double worst_product_residual = 0.0;
    double worst_adjoint_residual = 0.0;
    bool pass = false;
};

/// Checks linear independence, product/adjoint closure, and the unit laws.
StructureReport verify_star_algebra(const StarAlgebra& candidate, const Tolerance& tol = {});

/// True iff span(candidate) is a *-closed two-sided ideal of the ambient
/// algebra's span. Candidate matrices must match the ambient dimension.
bool is_ideal(const std::vector<Matrix>& candidate_basis, const StarAlgebra& ambient,
              const Tolerance& tol = {});

/// True iff no nonzero element of the ambient span left-annihilates the
/// whole ideal. PreconditionError when is_ideal fails.
bool is_essential_ideal(const std::vector<Matrix>& ideal_basis, const StarAlgebra& ambient,
                        const Tolerance& tol = {});

}  // namespace moritakit
