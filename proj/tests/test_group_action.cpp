#include <doctest.h>

#include "moritakit/group_action.hpp"
#include "moritakit/models.hpp"
#include "oracles.hpp"

using namespace moritakit;

namespace {

AlgebraAction swap_action() {
    auto alg = std::make_shared<StarAlgebra>(
        2, std::vector<Matrix>{oracles::unit(0, 0), oracles::unit(1, 1)}, Matrix::Identity(2, 2));
    auto grp = std::make_shared<const FiniteGroup>(groups::cyclic(2));
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
    Eigen::MatrixXcd swap(2, 2);
    swap << 0.0, 1.0, 1.0, 0.0;
    return AlgebraAction{grp, alg, {id, swap}};
}

AlgebraAction conjugation_action() {
    // Ad(diag(1,-1)) on the full 2x2 matrix algebra.
    std::vector<Matrix> basis = {oracles::unit(0, 0), oracles::unit(0, 1), oracles::unit(1, 0),
                                 oracles::unit(1, 1)};
    auto alg = std::make_shared<StarAlgebra>(2, basis, Matrix::Identity(2, 2));
    auto grp = std::make_shared<const FiniteGroup>(groups::cyclic(2));
    Matrix u = Matrix::Zero(2, 2);
    u(0, 0) = 1.0;
    u(1, 1) = -1.0;
    Eigen::MatrixXcd coords(4, 4);
    for (Index k = 0; k < 4; ++k) {
        Matrix moved = u * basis[static_cast<std::size_t>(k)] * u.adjoint();
        coords.col(k) = alg->coordinates_of(moved);
    }
    return AlgebraAction{grp, alg, {Eigen::MatrixXcd::Identity(4, 4), coords}};
}

}  // namespace

TEST_CASE("verify_group") {
    CHECK(verify_group(groups::trivial()).pass);
    CHECK(verify_group(groups::cyclic(2)).pass);
    CHECK(verify_group(groups::cyclic(4)).pass);
    CHECK(verify_group(groups::klein_four()).pass);
    CHECK(verify_group(groups::symmetric3()).pass);

    FiniteGroup bad;
    bad.table = {{0, 1}, {0, 1}};
    bad.identity = 0;
    bad.inverse = {0, 1};
    GroupReport report = verify_group(bad);
    CHECK_FALSE(report.pass);
    CHECK(report.message.find("permutation") != std::string::npos);

    CHECK_THROWS_AS(groups::by_name("Q8"), ValidationError);
}

TEST_CASE("verify_action") {
    Tolerance tol;
    CHECK(verify_action(swap_action(), tol).pass);
    CHECK(verify_action(conjugation_action(), tol).pass);

    // Trivial group: non-degeneracy is vacuous.
    auto alg = std::make_shared<StarAlgebra>(
        2, std::vector<Matrix>{oracles::unit(0, 0), oracles::unit(1, 1)}, Matrix::Identity(2, 2));
    auto triv = std::make_shared<const FiniteGroup>(groups::trivial());
    AlgebraAction trivial{triv, alg, {Eigen::MatrixXcd::Identity(2, 2)}};
    CHECK(verify_action(trivial, tol).pass);

    // Z/2 acting identically: degenerate.
    auto c2 = std::make_shared<const FiniteGroup>(groups::cyclic(2));
    AlgebraAction degen{c2, alg,
                        {Eigen::MatrixXcd::Identity(2, 2), Eigen::MatrixXcd::Identity(2, 2)}};
    ActionReport report = verify_action(degen, tol);
    CHECK_FALSE(report.pass);
    CHECK(report.degenerate_elements == std::vector<int>{1});
}

TEST_CASE("apply") {
    AlgebraAction swp = swap_action();
    AlgebraElement e11{swp.algebra, oracles::unit(0, 0)};
    CHECK(frobenius(apply(swp, 1, e11).matrix - oracles::unit(1, 1)) < 1e-14);
    CHECK(frobenius(apply(swp, 0, e11).matrix - e11.matrix) < 1e-14);

    AlgebraAction conj = conjugation_action();
    AlgebraElement e12{conj.algebra, oracles::unit(0, 1)};
    CHECK(frobenius(apply(conj, 1, e12).matrix + oracles::unit(0, 1)) < 1e-14);

    CHECK_THROWS_AS(apply(swp, 5, e11), ArgumentError);
}

TEST_CASE("fixed_point_algebra") {
    Tolerance tol;

    // Trivial group: the whole algebra.
    auto alg = std::make_shared<StarAlgebra>(
        2, std::vector<Matrix>{oracles::unit(0, 0), oracles::unit(1, 1)}, Matrix::Identity(2, 2));
    auto triv = std::make_shared<const FiniteGroup>(groups::trivial());
    AlgebraAction trivial{triv, alg, {Eigen::MatrixXcd::Identity(2, 2)}};
    CHECK(fixed_point_algebra(trivial)->dim() == 2);

    // Swap: constants only.
    StarAlgebraPtr fixed = fixed_point_algebra(swap_action());
    CHECK(fixed->dim() == 1);
    CHECK(fixed->contains(Matrix::Identity(2, 2), tol));
    CHECK(verify_star_algebra(*fixed, tol).pass);

    // Conjugation by diag(1,-1): the diagonal subalgebra.
    fixed = fixed_point_algebra(conjugation_action());
    CHECK(fixed->dim() == 2);
    CHECK(fixed->contains(oracles::unit(0, 0), tol));
    CHECK(fixed->contains(oracles::unit(1, 1), tol));
    CHECK_FALSE(fixed->contains(oracles::unit(0, 1), tol));
    CHECK(verify_star_algebra(*fixed, tol).pass);
}

TEST_CASE("action properties on random elements") {
    Rng rng(21);
    for (AlgebraAction act : {swap_action(), conjugation_action()}) {
        const FiniteGroup& grp = *act.group;
        for (int t = 0; t < 10; ++t) {
            AlgebraElement a{act.algebra, act.algebra->from_coordinates(rng.vector(act.algebra->dim()))};
            AlgebraElement b{act.algebra, act.algebra->from_coordinates(rng.vector(act.algebra->dim()))};
            for (int g = 0; g < grp.order(); ++g) {
                for (int h = 0; h < grp.order(); ++h) {
                    Matrix lhs = apply(act, g, apply(act, h, a)).matrix;
                    Matrix rhs = apply(act, grp.mul(g, h), a).matrix;
                    CHECK(frobenius(lhs - rhs) <= 10 * Tolerance{}.eps_eq);
                }
                Matrix prod = apply_matrix(act, g, Matrix(a.matrix * b.matrix));
                Matrix split = apply(act, g, a).matrix * apply(act, g, b).matrix;
                CHECK(frobenius(prod - split) <= 10 * Tolerance{}.eps_eq);
                Matrix star = apply_matrix(act, g, Matrix(a.matrix.adjoint()));
                CHECK(frobenius(star - apply(act, g, a).matrix.adjoint()) <= 10 * Tolerance{}.eps_eq);
            }
        }
    }
}

TEST_CASE("regular action has one-dimensional fixed algebra") {
    for (const char* name : {"C2", "C3", "C4", "V4", "S3"}) {
        FiniteGroup g = groups::by_name(name);
        SetAction sa;
        sa.points = g.order();
        for (int a = 0; a < g.order(); ++a) {
            std::vector<int> p(static_cast<std::size_t>(g.order()));
            for (int y = 0; y < g.order(); ++y) p[static_cast<std::size_t>(y)] = g.mul(a, y);
            sa.perms.push_back(std::move(p));
        }
        SetCovering model =
            covering_from_set_action(sa, std::make_shared<const FiniteGroup>(g));
        CHECK(fixed_point_algebra(model.covering.action)->dim() == 1);
    }
}
