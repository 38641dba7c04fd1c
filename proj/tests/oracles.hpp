#pragma once

// Test-only oracles, independent of the library implementation paths they
// check: closed-form 2x2 spectra and a brute-force Frobenius projector.

#include <array>
#include <cmath>
#include <complex>

#include "moritakit/linalg.hpp"

namespace oracles {

using moritakit::Complex;
using moritakit::Matrix;

// Singular values of a 2x2 matrix from the eigenvalues of m* m via the
// quadratic formula.
inline std::array<double, 2> svd_2x2(const Matrix& m) {
    Matrix g = m.adjoint() * m;
    const double tr = g(0, 0).real() + g(1, 1).real();
    const double det = (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)).real();
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
    const double hi = 0.5 * (tr + disc);
    const double lo = 0.5 * (tr - disc);
    return {std::sqrt(std::max(0.0, hi)), std::sqrt(std::max(0.0, lo))};
}

// Eigenvalues of a Hermitian 2x2 matrix by the quadratic formula.
inline std::array<double, 2> herm_eigs_2x2(const Matrix& m) {
    const double tr = m(0, 0).real() + m(1, 1).real();
    const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
    return {0.5 * (tr - disc), 0.5 * (tr + disc)};
}

inline Matrix unit(int i, int j, int n = 2) {
    Matrix e = Matrix::Zero(n, n);
    e(i, j) = 1.0;
    return e;
}

}  // namespace oracles
