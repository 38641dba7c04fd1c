#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include "moritakit/errors.hpp"

namespace moritakit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Numerical slack used by every verification routine.
///
/// eps_rank is a *relative* factor: a singular value counts toward the rank
/// when it exceeds eps_rank times the largest singular value.
struct Tolerance {
    double eps_eq = 1e-10;    // entrywise / residual equality slack
    double eps_psd = 1e-9;    // eigenvalue floor for positivity
    double eps_rank = 1e-9;   // relative singular-value cutoff
    double eps_solve = 1e-8;  // residual acceptance for linear solves

    /// All fields must lie strictly in (0, 1).
    void validate() const;

    /// Tolerance with eps_eq = t and the remaining fields scaled by the
    /// default ratios (useful for CLI overrides).
    static Tolerance from_eps_eq(double t);
};

/// Throws DimensionError if m has no entries, ArgumentError on NaN/inf.
void ensure_finite(const Matrix& m, const char* what = "matrix");

double max_abs(const Matrix& m);
double frobenius(const Matrix& m);

/// Largest singular value. Empty matrix -> DimensionError.
double operator_norm(const Matrix& m);

/// True iff m is Hermitian within eps_eq (scaled by max(1, |m|_max)) and the
/// eigenvalues of (m + m*)/2 are all >= -eps_psd. Non-square -> DimensionError.
bool is_positive_semidefinite(const Matrix& m, const Tolerance& tol = {});

/// Signed positivity defect: max(0, -lambda_min) of the hermitized matrix,
/// or +inf when m is not even approximately Hermitian.
double psd_defect(const Matrix& m, const Tolerance& tol = {});

/// Numerical rank of the flattened family; all matrices must share a shape.
Index subspace_rank(const std::vector<Matrix>& vectors, const Tolerance& tol = {});

/// Columns of the returned matrix form an orthonormal basis (in the
/// Frobenius inner product) of the span of the flattened family.
Eigen::MatrixXcd orthonormal_span(const std::vector<Matrix>& vectors, const Tolerance& tol = {});

struct LeastSquaresSolution {
    std::vector<Complex> coefficients;
    double residual = 0.0;
};

/// Minimizes |sum_i c_i * columns[i] - target|_F; returns the minimum-norm
/// minimizer and the achieved residual.
LeastSquaresSolution least_squares_solve(const std::vector<Matrix>& columns,
                                         const Matrix& target,
                                         const Tolerance& tol = {});

/// Minimum-norm least-squares solve of a pre-flattened system A c = b.
LeastSquaresSolution least_squares_solve_flat(const Eigen::MatrixXcd& a,
                                              const Eigen::VectorXcd& b);

/// Orthonormal basis of the (right) nullspace of a, with relative singular
/// value cutoff eps_rank. Columns are the nullspace vectors.
Eigen::MatrixXcd nullspace(const Eigen::MatrixXcd& a, const Tolerance& tol = {});

/// Principal square root of a PSD matrix via Hermitian eigendecomposition;
/// eigenvalues below -eps_psd -> ArgumentError, small negatives are clamped.
Matrix principal_sqrt(const Matrix& m, const Tolerance& tol = {});

inline Vector flatten(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix unflatten(const Vector& v, Index rows, Index cols) {
    return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

/// Deterministic sampling source; all verification randomness flows
/// through this so reports are reproducible for a recorded seed.
class Rng {
  public:
    explicit Rng(unsigned long long seed) : engine_(seed) {}

    Complex scalar() {
        double re = normal_(engine_);
        double im = normal_(engine_);
        return Complex(re, im);
    }

    Vector vector(Index n) {
        Vector v(n);
        for (Index i = 0; i < n; ++i) v[i] = scalar();
        return v;
    }

    Matrix matrix(Index rows, Index cols) {
        Matrix m(rows, cols);
        for (Index i = 0; i < rows; ++i)
            for (Index j = 0; j < cols; ++j) m(i, j) = scalar();
        return m;
    }

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace moritakit
