#include "moritakit/morita.hpp"

#include <algorithm>
#include <cmath>

namespace moritakit {

MoritaContext make_morita_context(CoveringCandidate covering) {
    if (!covering.action.group || !covering.action.algebra || !covering.base)
        throw ArgumentError("make_morita_context: incomplete covering candidate");
    return MoritaContext{std::move(covering)};
}

AlgebraElement act_left(const CrossedElement& a, const AlgebraElement& x, const Tolerance& tol) {
    if (x.algebra != a.action.algebra)
        throw ArgumentError("act_left: module element not in the acted-on algebra");
    const AlgebraAction& act = a.action;
    Matrix sum = Matrix::Zero(x.matrix.rows(), x.matrix.cols());
    for (int g = 0; g < act.group->order(); ++g)
        sum += a.components[static_cast<std::size_t>(g)] * apply_matrix(act, g, x.matrix, tol);
    return AlgebraElement{x.algebra, std::move(sum)};
}

AlgebraElement act_right(const AlgebraElement& x, const CrossedElement& a, const Tolerance& tol) {
    if (x.algebra != a.action.algebra)
        throw ArgumentError("act_right: module element not in the acted-on algebra");
    const AlgebraAction& act = a.action;
    Matrix sum = Matrix::Zero(x.matrix.rows(), x.matrix.cols());
    for (int g = 0; g < act.group->order(); ++g)
        sum += apply_matrix(act, act.group->inv(g),
                            x.matrix * a.components[static_cast<std::size_t>(g)], tol);
    return AlgebraElement{x.algebra, std::move(sum)};
}

CrossedElement phi(const MoritaContext& ctx, const AlgebraElement& x, const AlgebraElement& y,
                   const Tolerance& tol) {
    const AlgebraAction& act = ctx.action();
    if (x.algebra != act.algebra || y.algebra != act.algebra)
        throw ArgumentError("phi: arguments must live in the acted-on algebra");
    CrossedElement out = crossed_zero(act);
    for (int g = 0; g < act.group->order(); ++g)
        out.components[static_cast<std::size_t>(g)] = x.matrix * apply_matrix(act, g, y.matrix, tol);
    return out;
}

AlgebraElement psi(const MoritaContext& ctx, const AlgebraElement& x, const AlgebraElement& y,
                   const Tolerance& tol) {
    const AlgebraAction& act = ctx.action();
    if (x.algebra != act.algebra || y.algebra != act.algebra)
        throw ArgumentError("psi: arguments must live in the acted-on algebra");
    Matrix sum = Matrix::Zero(act.algebra->ambient_dim(), act.algebra->ambient_dim());
    Matrix prod = x.matrix * y.matrix;
    for (int g = 0; g < act.group->order(); ++g) sum += apply_matrix(act, g, prod, tol);
    return make_element(ctx.covering.base, std::move(sum), tol);
}

CrossedElement inner_cp(const MoritaContext& ctx, const AlgebraElement& x, const AlgebraElement& y,
                        const Tolerance& tol) {
    AlgebraElement y_star{y.algebra, y.matrix.adjoint()};
    return phi(ctx, x, y_star, tol);
}

AlgebraElement inner_base(const MoritaContext& ctx, const AlgebraElement& x,
                          const AlgebraElement& y, const Tolerance& tol) {
    AlgebraElement x_star{x.algebra, x.matrix.adjoint()};
    return psi(ctx, x_star, y, tol);
}

ContextReport verify_morita_context(const MoritaContext& ctx, int samples, const Tolerance& tol,
                                    unsigned long long seed) {
    ContextReport report;
    report.samples = samples;
    const StarAlgebra& alg = *ctx.action().algebra;
    Rng rng(seed);

    for (int s = 0; s < samples; ++s) {
        AlgebraElement x{ctx.action().algebra, random_unit_element(alg, rng)};
        AlgebraElement y{ctx.action().algebra, random_unit_element(alg, rng)};
        AlgebraElement z{ctx.action().algebra, random_unit_element(alg, rng)};

        // phi(x (x) y) z = x psi(y (x) z)
        Matrix lhs = act_left(phi(ctx, x, y, tol), z, tol).matrix;
        Matrix rhs = x.matrix * psi(ctx, y, z, tol).matrix;
        report.left_identity_residual = std::max(report.left_identity_residual, frobenius(lhs - rhs));

        // x phi(y (x) z) = psi(x (x) y) z
        lhs = act_right(x, phi(ctx, y, z, tol), tol).matrix;
        rhs = psi(ctx, x, y, tol).matrix * z.matrix;
        report.right_identity_residual =
            std::max(report.right_identity_residual, frobenius(lhs - rhs));
    }
    report.pass = report.left_identity_residual <= tol.eps_eq &&
                  report.right_identity_residual <= tol.eps_eq;
    return report;
}

namespace {

// Translates a frame along each group element and checks the reconstruction
// lands on the single-component elements it should, then measures the span
// of those reconstructions across basis pairs.
void translated_frame_checks(const MoritaContext& ctx, const FrameWitness& frame,
                             const Tolerance& tol, EquivalenceCertificate& cert) {
    const AlgebraAction& act = ctx.action();
    const StarAlgebra& alg = *act.algebra;
    const int ord = act.group->order();

    double worst = 0.0;
    std::vector<Matrix> reconstructions;
    for (int g = 0; g < ord; ++g) {
        // sum_j <g a_j, b_j>_cp must be the unit concentrated at g.
        CrossedElement lhs = crossed_zero(act);
        for (std::size_t j = 0; j < frame.size(); ++j) {
            AlgebraElement ga = apply(act, g, frame.a_list[j], tol);
            lhs = cp_add(lhs, inner_cp(ctx, ga, frame.b_list[j], tol));
        }
        CrossedElement expected = y_element(act, alg.unit(), g);
        worst = std::max(worst, cp_distance(lhs, expected));

        // Sandwiched variants reconstruct x (g y*) at position g; collect
        // them across basis pairs for the span check.
        for (const Matrix& x : alg.basis()) {
            for (const Matrix& y : alg.basis()) {
                CrossedElement w = crossed_zero(act);
                for (std::size_t j = 0; j < frame.size(); ++j) {
                    Matrix u = x * apply_matrix(act, g, frame.a_list[j].matrix, tol);
                    Matrix v = y * frame.b_list[j].matrix;
                    AlgebraElement ue{act.algebra, std::move(u)};
                    AlgebraElement ve{act.algebra, std::move(v)};
                    w = cp_add(w, inner_cp(ctx, ue, ve, tol));
                }
                Matrix direct = x * apply_matrix(act, g, y.adjoint(), tol);
                worst = std::max(worst, cp_distance(w, y_element(act, direct, g)) /
                                            std::max(1.0, frobenius(direct)));
                reconstructions.push_back(cp_flatten(w));
            }
        }
    }
    cert.translate_frame_residual = worst;

    std::vector<Matrix> as_columns;
    as_columns.reserve(reconstructions.size());
    for (Matrix& r : reconstructions) as_columns.push_back(std::move(r));
    cert.y_span_rank = subspace_rank(as_columns, tol);
}

}  // namespace

EquivalenceCertificate certify_strong_morita(const MoritaContext& ctx, const Tolerance& tol,
                                             int samples, unsigned long long seed) {
    EquivalenceCertificate cert;
    const AlgebraAction& act = ctx.action();
    const StarAlgebra& alg = *act.algebra;
    const StarAlgebra& base = *ctx.covering.base;
    const Index d = alg.dim();
    const int ord = act.group->order();

    cert.context = verify_morita_context(ctx, samples, tol, seed);
    cert.dim_base = base.dim();
    cert.dim_crossed = ctx.dim_crossed();

    // Equivalence-bimodule axiom (a) and positivity, over random samples.
    Rng rng(seed + 1);
    for (int s = 0; s < samples; ++s) {
        AlgebraElement x{act.algebra, random_unit_element(alg, rng)};
        AlgebraElement y{act.algebra, random_unit_element(alg, rng)};
        AlgebraElement z{act.algebra, random_unit_element(alg, rng)};

        Matrix lhs = act_left(inner_cp(ctx, x, y, tol), z, tol).matrix;
        Matrix rhs = x.matrix * inner_base(ctx, y, z, tol).matrix;
        cert.axiom_a_residual = std::max(cert.axiom_a_residual, frobenius(lhs - rhs));

        cert.psd_residual_base =
            std::max(cert.psd_residual_base, psd_defect(inner_base(ctx, x, x, tol).matrix, tol));
        cert.psd_residual_crossed = std::max(
            cert.psd_residual_crossed,
            psd_defect(regular_representation(inner_cp(ctx, x, x, tol), tol), tol));
    }

    // Fullness of both inner products over basis pairs.
    {
        std::vector<Matrix> base_values;
        std::vector<Matrix> crossed_values;
        for (Index i = 0; i < d; ++i) {
            AlgebraElement bi{act.algebra, alg.basis()[static_cast<std::size_t>(i)]};
            for (Index j = 0; j < d; ++j) {
                AlgebraElement bj{act.algebra, alg.basis()[static_cast<std::size_t>(j)]};
                base_values.push_back(inner_base(ctx, bi, bj, tol).matrix);
                crossed_values.push_back(Matrix(cp_flatten(inner_cp(ctx, bi, bj, tol))));
            }
        }
        cert.fullness_rank_base = subspace_rank(base_values, tol);
        cert.fullness_rank_crossed = subspace_rank(crossed_values, tol);
    }

    cert.frame = find_frame(ctx.covering, tol);
    cert.module_frame = find_module_frame(ctx.covering, tol);

    // Positive decomposition a = (1/|G|) <sqrt a, sqrt a> for positive
    // combinations of base basis elements.
    {
        std::vector<Matrix> positives;
        for (Index i = 0; i < base.dim(); ++i) {
            const Matrix& bi = base.basis()[static_cast<std::size_t>(i)];
            positives.push_back(bi.adjoint() * bi);
            for (Index j = i + 1; j < base.dim(); ++j) {
                Matrix sum = bi + base.basis()[static_cast<std::size_t>(j)];
                positives.push_back(sum.adjoint() * sum);
            }
        }
        // The decomposition identity is homogeneous; normalize so the
        // residual does not depend on the basis scale.
        for (Matrix& a : positives) {
            const double n = frobenius(a);
            if (n > 1.0) a /= n;
        }
        for (const Matrix& a : positives) {
            Matrix root = principal_sqrt(a, tol);
            AlgebraElement x{act.algebra, root};
            Matrix recovered =
                inner_base(ctx, x, x, tol).matrix / static_cast<double>(ord);
            cert.positive_decomposition_residual =
                std::max(cert.positive_decomposition_residual, frobenius(recovered - a));
        }
    }

    if (cert.frame.feasible) translated_frame_checks(ctx, cert.frame, tol, cert);

    const double check_tol = 10.0 * tol.eps_psd;
    auto flag = [&](bool ok, const std::string& why) {
        if (!ok) cert.reasons.push_back(why);
    };
    flag(cert.context.pass, "context identities violated");
    flag(cert.axiom_a_residual <= check_tol, "bimodule axiom (a) violated");
    flag(cert.fullness_rank_base == cert.dim_base, "base inner product not full");
    flag(cert.fullness_rank_crossed == cert.dim_crossed, "crossed inner product not full");
    flag(cert.frame.feasible, "no crossed-product reconstruction frame");
    flag(cert.psd_residual_base <= check_tol, "base inner product not positive");
    flag(cert.psd_residual_crossed <= check_tol, "crossed inner product not positive");
    flag(cert.positive_decomposition_residual <= check_tol, "positive decomposition failed");
    if (cert.frame.feasible) {
        flag(cert.translate_frame_residual <= check_tol, "translated frame reconstruction failed");
        flag(cert.y_span_rank == cert.dim_crossed, "single-component span not full");
    }
    cert.verdict = cert.reasons.empty();
    return cert;
}

}  // namespace moritakit
