#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "moritakit/models.hpp"
#include "moritakit/morita.hpp"
#include "oracles.hpp"

using namespace moritakit;

namespace {

SetCovering swap_model() {
    SetAction sa;
    sa.points = 2;
    sa.perms = {{0, 1}, {1, 0}};
    return covering_from_set_action(sa, std::make_shared<const FiniteGroup>(groups::cyclic(2)));
}

SetCovering branched_model() {
    SetAction sa;
    sa.points = 3;
    sa.perms = {{0, 1, 2}, {1, 0, 2}};
    return covering_from_set_action(sa, std::make_shared<const FiniteGroup>(groups::cyclic(2)));
}

SetCovering trivial_model() {
    SetAction sa;
    sa.points = 2;
    sa.perms = {{0, 1}};
    return covering_from_set_action(sa, std::make_shared<const FiniteGroup>(groups::trivial()));
}

}  // namespace

TEST_CASE("module actions on the swap model") {
    CoveringCandidate cand = swap_model().covering;
    CrossedElement unit = cp_unit(cand.action);
    AlgebraElement e11{cand.action.algebra, oracles::unit(0, 0)};
    AlgebraElement e22{cand.action.algebra, oracles::unit(1, 1)};

    CHECK(frobenius(act_left(unit, e11).matrix - e11.matrix) < 1e-14);
    CHECK(frobenius(act_right(e11, unit).matrix - e11.matrix) < 1e-14);

    CrossedElement shift = y_element(cand.action, Matrix::Identity(2, 2), 1);
    CHECK(frobenius(act_left(shift, e11).matrix - oracles::unit(1, 1)) < 1e-14);
    CHECK(frobenius(act_right(e11, shift).matrix - oracles::unit(1, 1)) < 1e-14);

    CrossedElement e11_at_e = y_element(cand.action, oracles::unit(0, 0), 0);
    CHECK(frobenius(act_left(e11_at_e, e22).matrix) < 1e-14);

    AlgebraElement zero{cand.action.algebra, Matrix::Zero(2, 2)};
    CHECK(frobenius(act_right(zero, shift).matrix) < 1e-14);
}

TEST_CASE("module axioms on random data") {
    CoveringCandidate cand = swap_model().covering;
    Rng rng(51);
    auto random_crossed = [&]() {
        CrossedElement x = crossed_zero(cand.action);
        for (auto& c : x.components)
            c = cand.action.algebra->from_coordinates(rng.vector(2));
        return x;
    };
    for (int t = 0; t < 10; ++t) {
        CrossedElement a = random_crossed();
        CrossedElement b = random_crossed();
        AlgebraElement x{cand.action.algebra, cand.action.algebra->from_coordinates(rng.vector(2))};

        Matrix lhs = act_left(cp_mul(a, b), x).matrix;
        Matrix rhs = act_left(a, act_left(b, x)).matrix;
        CHECK(frobenius(lhs - rhs) < 1e-12);

        lhs = act_right(act_right(x, a), b).matrix;
        rhs = act_right(x, cp_mul(a, b)).matrix;
        CHECK(frobenius(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("phi values") {
    SetCovering model = swap_model();
    MoritaContext ctx = make_morita_context(model.covering);
    AlgebraElement one{model.covering.action.algebra, Matrix::Identity(2, 2)};
    AlgebraElement e11{model.covering.action.algebra, oracles::unit(0, 0)};
    AlgebraElement e22{model.covering.action.algebra, oracles::unit(1, 1)};

    // phi(1,1): every component is the unit.
    CrossedElement all_ones = phi(ctx, one, one);
    CHECK(frobenius(all_ones.components[0] - Matrix::Identity(2, 2)) < 1e-14);
    CHECK(frobenius(all_ones.components[1] - Matrix::Identity(2, 2)) < 1e-14);

    CrossedElement p = phi(ctx, e11, e11);
    CHECK(frobenius(p.components[0] - oracles::unit(0, 0)) < 1e-14);
    CHECK(frobenius(p.components[1]) < 1e-14);

    p = phi(ctx, e11, e22);
    CHECK(frobenius(p.components[0]) < 1e-14);
    CHECK(frobenius(p.components[1] - oracles::unit(0, 0)) < 1e-14);
}

TEST_CASE("psi values") {
    SetCovering model = swap_model();
    MoritaContext ctx = make_morita_context(model.covering);
    AlgebraElement one{model.covering.action.algebra, Matrix::Identity(2, 2)};
    AlgebraElement e11{model.covering.action.algebra, oracles::unit(0, 0)};
    AlgebraElement e22{model.covering.action.algebra, oracles::unit(1, 1)};

    CHECK(frobenius(psi(ctx, one, one).matrix - 2.0 * Matrix::Identity(2, 2)) < 1e-14);
    CHECK(frobenius(psi(ctx, e11, e11).matrix - Matrix::Identity(2, 2)) < 1e-14);
    CHECK(frobenius(psi(ctx, e11, e22).matrix) < 1e-14);
}

TEST_CASE("phi is balanced over the base") {
    SetCovering model = swap_model();
    MoritaContext ctx = make_morita_context(model.covering);
    Rng rng(52);
    for (int t = 0; t < 10; ++t) {
        AlgebraElement x{model.covering.action.algebra,
                         model.covering.action.algebra->from_coordinates(rng.vector(2))};
        AlgebraElement y{model.covering.action.algebra,
                         model.covering.action.algebra->from_coordinates(rng.vector(2))};
        Matrix a = model.covering.base->from_coordinates(rng.vector(model.covering.base->dim()));
        AlgebraElement xa{model.covering.action.algebra, Matrix(x.matrix * a)};
        AlgebraElement ay{model.covering.action.algebra, Matrix(a * y.matrix)};
        CHECK(cp_distance(phi(ctx, xa, y), phi(ctx, x, ay)) < 1e-12);
    }
}

TEST_CASE("inner products") {
    SetCovering model = swap_model();
    CoveringCandidate& cand = model.covering;
    MoritaContext ctx = make_morita_context(cand);
    Rng rng(53);

    // inner_base coincides with the transfer inner product.
    for (int t = 0; t < 100; ++t) {
        AlgebraElement x{cand.action.algebra, cand.action.algebra->from_coordinates(rng.vector(2))};
        AlgebraElement y{cand.action.algebra, cand.action.algebra->from_coordinates(rng.vector(2))};
        CHECK(frobenius(inner_base(ctx, x, y).matrix - transfer_inner(cand, x, y).matrix) <=
              1e-10);
    }

    AlgebraElement one{cand.action.algebra, Matrix::Identity(2, 2)};
    CrossedElement ones = inner_cp(ctx, one, one);
    Matrix rho = regular_representation(ones);
    CHECK(psd_defect(rho) <= 1e-12);
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(0.5 * (rho + rho.adjoint())));
    // Spectrum {0,0,|G|,|G|}: computed directly from the 4x4 block matrix.
    CHECK(es.eigenvalues()(0) == doctest::Approx(0.0));
    CHECK(es.eigenvalues()(1) == doctest::Approx(0.0));
    CHECK(es.eigenvalues()(2) == doctest::Approx(2.0));
    CHECK(es.eigenvalues()(3) == doctest::Approx(2.0));

    AlgebraElement zero{cand.action.algebra, Matrix::Zero(2, 2)};
    AlgebraElement y{cand.action.algebra, oracles::unit(1, 1)};
    CHECK(frobenius(inner_base(ctx, zero, y).matrix) == doctest::Approx(0.0));
}

TEST_CASE("verify_morita_context") {
    ContextReport report = verify_morita_context(make_morita_context(swap_model().covering), 64);
    CHECK(report.pass);
    CHECK(report.max_residual() <= 1e-12);

    report = verify_morita_context(make_morita_context(trivial_model().covering), 16);
    CHECK(report.pass);

    // Sign-corrupted phi: the left identity fails by a full unit.
    MoritaContext ctx = make_morita_context(swap_model().covering);
    AlgebraElement one{ctx.action().algebra, Matrix::Identity(2, 2)};
    Matrix lhs = act_left(cp_scale(Complex(-1.0), phi(ctx, one, one)), one).matrix;
    Matrix rhs = one.matrix * psi(ctx, one, one).matrix;
    CHECK(frobenius(lhs - rhs) >= 1.0);
}

TEST_CASE("certify_strong_morita on the swap model") {
    EquivalenceCertificate cert =
        certify_strong_morita(make_morita_context(swap_model().covering));
    CHECK(cert.verdict);
    CHECK(cert.reasons.empty());
    CHECK(cert.fullness_rank_base == 1);
    CHECK(cert.dim_base == 1);
    CHECK(cert.fullness_rank_crossed == 4);
    CHECK(cert.dim_crossed == 4);
    CHECK(cert.frame.feasible);
    CHECK(cert.translate_frame_residual <= 1e-10);
    CHECK(cert.y_span_rank == 4);
}

TEST_CASE("certify_strong_morita on the branched model") {
    EquivalenceCertificate cert =
        certify_strong_morita(make_morita_context(branched_model().covering));
    CHECK_FALSE(cert.verdict);
    CHECK(cert.fullness_rank_crossed == 5);
    CHECK(cert.dim_crossed == 6);
    CHECK(cert.fullness_rank_base == cert.dim_base);  // base fullness still holds
    CHECK_FALSE(cert.frame.feasible);
    CHECK(cert.module_frame.feasible);
}

TEST_CASE("certify_strong_morita on the trivial model") {
    EquivalenceCertificate cert =
        certify_strong_morita(make_morita_context(trivial_model().covering));
    CHECK(cert.verdict);
    CHECK(cert.fullness_rank_base == 2);
    CHECK(cert.fullness_rank_crossed == 2);
}

TEST_CASE("mixed associativity across models") {
    Tolerance tol;
    for (SetCovering model : {trivial_model(), swap_model(), branched_model()}) {
        ContextReport report = verify_morita_context(make_morita_context(model.covering), 32);
        CHECK(report.max_residual() <= 10 * tol.eps_eq);
    }
}

TEST_CASE("verdict invariant under basis rescaling") {
    for (bool branched : {false, true}) {
        SetCovering model = branched ? branched_model() : swap_model();
        const StarAlgebra& alg = *model.covering.action.algebra;
        std::vector<Matrix> scaled;
        for (const Matrix& b : alg.basis()) scaled.push_back(1e3 * b);
        auto scaled_alg =
            std::make_shared<StarAlgebra>(alg.ambient_dim(), scaled, alg.unit());
        AlgebraAction action{model.covering.action.group, scaled_alg, model.covering.action.maps};
        CoveringCandidate cand{action, model.covering.base};

        EquivalenceCertificate cert = certify_strong_morita(make_morita_context(cand));
        CHECK(cert.verdict == !branched);
    }
}
