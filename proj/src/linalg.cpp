#include "moritakit/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <string>

namespace moritakit {

void Tolerance::validate() const {
    for (double v : {eps_eq, eps_psd, eps_rank, eps_solve}) {
        if (!(v > 0.0 && v < 1.0))
            throw ArgumentError("tolerance fields must lie strictly in (0, 1)");
    }
}

Tolerance Tolerance::from_eps_eq(double t) {
    Tolerance tol;
    tol.eps_eq = t;
    tol.eps_psd = 10.0 * t;
    tol.eps_rank = 10.0 * t;
    tol.eps_solve = 100.0 * t;
    tol.validate();
    return tol;
}

void ensure_finite(const Matrix& m, const char* what) {
    if (m.size() == 0) throw DimensionError(std::string(what) + ": empty matrix");
    if (!m.allFinite()) throw ArgumentError(std::string(what) + ": non-finite entries");
}

double max_abs(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

double frobenius(const Matrix& m) { return m.norm(); }

double operator_norm(const Matrix& m) {
    if (m.size() == 0) throw DimensionError("operator_norm: empty matrix");
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

namespace {

// Hermitization (m + m*)/2 when m is within eps_eq of Hermitian.
bool hermitize(const Matrix& m, const Tolerance& tol, Matrix& out) {
    if (m.rows() != m.cols()) throw DimensionError("hermitize: matrix not square");
    const double scale = std::max(1.0, max_abs(m));
    const double dev = max_abs(m - m.adjoint());
    if (dev > tol.eps_eq * scale) return false;
    out = 0.5 * (m + m.adjoint());
    return true;
}

}  // namespace

bool is_positive_semidefinite(const Matrix& m, const Tolerance& tol) {
    Matrix h;
    if (!hermitize(m, tol, h)) return false;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol.eps_psd;
}

double psd_defect(const Matrix& m, const Tolerance& tol) {
    Matrix h;
    if (!hermitize(m, tol, h)) return std::numeric_limits<double>::infinity();
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return std::max(0.0, -es.eigenvalues().minCoeff());
}

namespace {

Eigen::MatrixXcd stack_columns(const std::vector<Matrix>& vectors) {
    if (vectors.empty()) return Eigen::MatrixXcd(0, 0);
    const Index rows = vectors.front().rows();
    const Index cols = vectors.front().cols();
    Eigen::MatrixXcd stacked(rows * cols, static_cast<Index>(vectors.size()));
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        const Matrix& m = vectors[k];
        if (m.rows() != rows || m.cols() != cols)
            throw DimensionError("matrix family members have mismatched shapes");
        stacked.col(static_cast<Index>(k)) = flatten(m);
    }
    return stacked;
}

}  // namespace

Index subspace_rank(const std::vector<Matrix>& vectors, const Tolerance& tol) {
    Eigen::MatrixXcd stacked = stack_columns(vectors);
    if (stacked.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0.0) return 0;
    const double cutoff = tol.eps_rank * sv(0);
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    return rank;
}

Eigen::MatrixXcd orthonormal_span(const std::vector<Matrix>& vectors, const Tolerance& tol) {
    Eigen::MatrixXcd stacked = stack_columns(vectors);
    if (stacked.size() == 0) return Eigen::MatrixXcd(stacked.rows(), 0);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0.0) return Eigen::MatrixXcd(stacked.rows(), 0);
    const double cutoff = tol.eps_rank * sv(0);
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    return svd.matrixU().leftCols(rank);
}

LeastSquaresSolution least_squares_solve(const std::vector<Matrix>& columns,
                                         const Matrix& target,
                                         const Tolerance&) {
    if (columns.empty()) throw ArgumentError("least_squares_solve: no columns");
    const Index rows = columns.front().rows();
    const Index cols = columns.front().cols();
    if (target.rows() != rows || target.cols() != cols)
        throw DimensionError("least_squares_solve: target shape mismatch");
    Eigen::MatrixXcd a = stack_columns(columns);
    return least_squares_solve_flat(a, flatten(target));
}

LeastSquaresSolution least_squares_solve_flat(const Eigen::MatrixXcd& a,
                                              const Eigen::VectorXcd& b) {
    if (a.rows() != b.size()) throw DimensionError("least_squares_solve: system shape mismatch");
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(a);
    Eigen::VectorXcd c = cod.solve(b);
    LeastSquaresSolution sol;
    sol.coefficients.assign(c.data(), c.data() + c.size());
    sol.residual = (a * c - b).norm();
    return sol;
}

Eigen::MatrixXcd nullspace(const Eigen::MatrixXcd& a, const Tolerance& tol) {
    if (a.size() == 0) throw DimensionError("nullspace: empty matrix");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double largest = sv.size() > 0 ? sv(0) : 0.0;
    const double cutoff = tol.eps_rank * std::max(largest, 1.0);
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    return svd.matrixV().rightCols(a.cols() - rank);
}

Matrix principal_sqrt(const Matrix& m, const Tolerance& tol) {
    Matrix h;
    if (!hermitize(m, tol, h)) throw ArgumentError("principal_sqrt: matrix not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Eigen::VectorXd ev = es.eigenvalues();
    if (ev.minCoeff() < -tol.eps_psd) throw ArgumentError("principal_sqrt: matrix not PSD");
    Eigen::VectorXd roots = ev.cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace moritakit
