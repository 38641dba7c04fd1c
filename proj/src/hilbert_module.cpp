#include "moritakit/hilbert_module.hpp"

#include <cmath>
#include <limits>

#include "moritakit/morita.hpp"

namespace moritakit {

CoveringCandidate make_covering(AlgebraAction action, const Tolerance& tol) {
    StarAlgebraPtr base = fixed_point_algebra(action, tol);
    return CoveringCandidate{std::move(action), std::move(base)};
}

double fixed_point_gap(const CoveringCandidate& cand, const Tolerance& tol) {
    StarAlgebraPtr fixed = fixed_point_algebra(cand.action, tol);
    double gap = 0.0;
    for (const Matrix& b : cand.base->basis())
        gap = std::max(gap, fixed->membership_residual(b));
    for (const Matrix& b : fixed->basis())
        gap = std::max(gap, cand.base->membership_residual(b));
    return gap;
}

Matrix transfer_inner_matrix(const CoveringCandidate& cand, const Matrix& a, const Matrix& b,
                             const Tolerance& tol) {
    const AlgebraAction& act = cand.action;
    Matrix sum = Matrix::Zero(act.algebra->ambient_dim(), act.algebra->ambient_dim());
    Matrix prod = a.adjoint() * b;
    for (int g = 0; g < act.group->order(); ++g) sum += apply_matrix(act, g, prod, tol);
    return sum;
}

AlgebraElement transfer_inner(const CoveringCandidate& cand, const AlgebraElement& a,
                              const AlgebraElement& b, const Tolerance& tol) {
    if (a.algebra != cand.action.algebra || b.algebra != cand.action.algebra)
        throw ArgumentError("transfer_inner: arguments must live in the acted-on algebra");
    Matrix value = transfer_inner_matrix(cand, a.matrix, b.matrix, tol);
    return make_element(cand.base, std::move(value), tol);
}

double hilbert_norm(const CoveringCandidate& cand, const AlgebraElement& x, const Tolerance& tol) {
    Matrix gram = transfer_inner_matrix(cand, x.matrix, x.matrix, tol);
    return std::sqrt(operator_norm(gram));
}

HilbertReport verify_hilbert_axioms(const CoveringCandidate& cand, int samples,
                                    const Tolerance& tol, unsigned long long seed) {
    HilbertReport report;
    report.samples = samples;
    const StarAlgebra& alg = *cand.action.algebra;
    const StarAlgebra& base = *cand.base;
    Rng rng(seed);

    report.nondegeneracy_margin = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        Matrix x = random_unit_element(alg, rng);
        Matrix y = random_unit_element(alg, rng);
        Matrix a = random_unit_element(base, rng);

        Matrix xx = transfer_inner_matrix(cand, x, x, tol);
        report.psd_residual = std::max(report.psd_residual, psd_defect(xx, tol));
        if (frobenius(x) > tol.eps_eq)
            report.nondegeneracy_margin =
                std::min(report.nondegeneracy_margin, operator_norm(xx) / frobenius(x));

        Matrix xy = transfer_inner_matrix(cand, x, y, tol);
        Matrix yx = transfer_inner_matrix(cand, y, x, tol);
        report.symmetry_residual =
            std::max(report.symmetry_residual, frobenius(xy - yx.adjoint()));

        Matrix lhs = transfer_inner_matrix(cand, x, y * a, tol);
        report.right_linearity_residual =
            std::max(report.right_linearity_residual, frobenius(lhs - xy * a));

        for (int g = 0; g < cand.action.group->order(); ++g)
            report.invariance_residual = std::max(
                report.invariance_residual, frobenius(apply_matrix(cand.action, g, xy, tol) - xy));
    }

    report.pass = report.psd_residual <= tol.eps_psd &&
                  report.nondegeneracy_margin > tol.eps_psd &&
                  report.symmetry_residual <= tol.eps_eq &&
                  report.right_linearity_residual <= tol.eps_eq &&
                  report.invariance_residual <= tol.eps_eq;
    return report;
}

namespace {

FrameWitness witness_from_coefficients(const CoveringCandidate& cand,
                                       const std::vector<Complex>& coeffs, double residual,
                                       const Tolerance& tol) {
    FrameWitness out;
    out.residual = residual;
    out.feasible = residual <= tol.eps_solve;
    if (!out.feasible) return out;
    const StarAlgebra& alg = *cand.action.algebra;
    const Index d = alg.dim();
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
            Complex c = coeffs[static_cast<std::size_t>(i * d + j)];
            if (std::abs(c) <= 1e-14) continue;
            out.a_list.push_back(AlgebraElement{cand.action.algebra,
                                                c * alg.basis()[static_cast<std::size_t>(i)]});
            out.b_list.push_back(
                AlgebraElement{cand.action.algebra, alg.basis()[static_cast<std::size_t>(j)]});
        }
    }
    return out;
}

}  // namespace

FrameWitness find_frame(const CoveringCandidate& cand, const Tolerance& tol) {
    MoritaContext ctx = make_morita_context(cand);
    const StarAlgebra& alg = *cand.action.algebra;
    const Index d = alg.dim();
    const Index n = alg.ambient_dim();
    const Index rows = static_cast<Index>(cand.action.group->order()) * n * n;

    Eigen::MatrixXcd system(rows, d * d);
    for (Index i = 0; i < d; ++i) {
        AlgebraElement ei{cand.action.algebra, alg.basis()[static_cast<std::size_t>(i)]};
        for (Index j = 0; j < d; ++j) {
            AlgebraElement ej_star{cand.action.algebra,
                                   alg.basis()[static_cast<std::size_t>(j)].adjoint()};
            system.col(i * d + j) = cp_flatten(phi(ctx, ei, ej_star, tol));
        }
    }
    Vector target = cp_flatten(cp_unit(cand.action));
    LeastSquaresSolution sol = least_squares_solve_flat(system, target);
    return witness_from_coefficients(cand, sol.coefficients, sol.residual, tol);
}

FrameWitness find_module_frame(const CoveringCandidate& cand, const Tolerance& tol) {
    const StarAlgebra& alg = *cand.action.algebra;
    const Index d = alg.dim();
    const Index n = alg.ambient_dim();

    // sum_{ij} c_ij  e_i <e_j, e_k> = e_k for every basis element e_k.
    Eigen::MatrixXcd system(d * n * n, d * d);
    Vector target(d * n * n);
    for (Index k = 0; k < d; ++k) {
        const Matrix& ek = alg.basis()[static_cast<std::size_t>(k)];
        target.segment(k * n * n, n * n) = flatten(ek);
        for (Index j = 0; j < d; ++j) {
            Matrix gram = transfer_inner_matrix(cand, alg.basis()[static_cast<std::size_t>(j)], ek, tol);
            for (Index i = 0; i < d; ++i) {
                Matrix term = alg.basis()[static_cast<std::size_t>(i)] * gram;
                system.block(k * n * n, i * d + j, n * n, 1) = flatten(term);
            }
        }
    }
    LeastSquaresSolution sol = least_squares_solve_flat(system, target);
    return witness_from_coefficients(cand, sol.coefficients, sol.residual, tol);
}

UnitalCoveringCertificate certify_unital_covering(const CoveringCandidate& cand,
                                                  const Tolerance& tol, int samples,
                                                  unsigned long long seed) {
    if (frobenius(cand.action.algebra->unit()) <= tol.eps_eq)
        throw PreconditionError("certify_unital_covering: acted-on algebra is not unital");
    UnitalCoveringCertificate cert;
    cert.action = verify_action(cand.action, tol);
    cert.fixed_point_residual = fixed_point_gap(cand, tol);
    cert.hilbert = verify_hilbert_axioms(cand, samples, tol, seed);
    cert.module_frame = find_module_frame(cand, tol);
    cert.galois_frame = find_frame(cand, tol);
    cert.frames_disagree = cert.module_frame.feasible != cert.galois_frame.feasible;
    cert.certified = cert.action.pass && cert.fixed_point_residual <= tol.eps_eq &&
                     cert.hilbert.pass && cert.module_frame.feasible;
    return cert;
}

}  // namespace moritakit
