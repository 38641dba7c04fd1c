#include <doctest.h>

#include "moritakit/star_algebra.hpp"
#include "oracles.hpp"

using namespace moritakit;

namespace {

StarAlgebraPtr diagonal2() {
    return std::make_shared<StarAlgebra>(
        2, std::vector<Matrix>{oracles::unit(0, 0), oracles::unit(1, 1)}, Matrix::Identity(2, 2));
}

StarAlgebraPtr full2() {
    return std::make_shared<StarAlgebra>(
        2,
        std::vector<Matrix>{oracles::unit(0, 0), oracles::unit(0, 1), oracles::unit(1, 0),
                            oracles::unit(1, 1)},
        Matrix::Identity(2, 2));
}

}  // namespace

TEST_CASE("verify_star_algebra") {
    CHECK(verify_star_algebra(*diagonal2()).pass);
    CHECK(verify_star_algebra(*full2()).pass);

    // A nilpotent line is neither *-closed nor unital.
    StarAlgebra nil(2, {oracles::unit(0, 1)}, oracles::unit(0, 1));
    StructureReport report = verify_star_algebra(nil);
    CHECK_FALSE(report.pass);
    CHECK(report.worst_adjoint_residual > 0.5);
}

TEST_CASE("coordinates") {
    auto diag = diagonal2();
    AlgebraElement unit{diag, Matrix::Identity(2, 2)};
    Vector c = coordinates(unit);
    CHECK(std::abs(c[0] - Complex(1.0)) < 1e-12);
    CHECK(std::abs(c[1] - Complex(1.0)) < 1e-12);

    AlgebraElement e11{diag, oracles::unit(0, 0)};
    c = coordinates(e11);
    CHECK(std::abs(c[0] - Complex(1.0)) < 1e-12);
    CHECK(std::abs(c[1]) < 1e-12);

    AlgebraElement off{diag, oracles::unit(0, 1)};
    CHECK_THROWS_AS(coordinates(off), MembershipError);
}

TEST_CASE("is_ideal") {
    auto diag = diagonal2();
    CHECK(is_ideal({oracles::unit(0, 0)}, *diag));

    // E21 E11 = E21 escapes span{E11}: by direct multiplication.
    Matrix prod = oracles::unit(1, 0) * oracles::unit(0, 0);
    CHECK(frobenius(prod - oracles::unit(1, 0)) == doctest::Approx(0.0));
    CHECK_FALSE(is_ideal({oracles::unit(0, 0)}, *full2()));

    CHECK(is_ideal(full2()->basis(), *full2()));
    CHECK_THROWS_AS(is_ideal({Matrix::Zero(3, 3)}, *diag), DimensionError);
}

TEST_CASE("is_essential_ideal") {
    auto diag = diagonal2();
    // E22 E11 = 0: the block ideal has a nonzero annihilator.
    CHECK(frobenius(oracles::unit(1, 1) * oracles::unit(0, 0)) == doctest::Approx(0.0));
    CHECK_FALSE(is_essential_ideal({oracles::unit(0, 0)}, *diag));

    CHECK(is_essential_ideal(diag->basis(), *diag));
    CHECK_FALSE(is_essential_ideal({}, *diag));
    CHECK_FALSE(is_essential_ideal({Matrix::Zero(2, 2)}, *diag));

    CHECK_THROWS_AS(is_essential_ideal({oracles::unit(0, 0)}, *full2()), PreconditionError);
}

TEST_CASE("span closed under product and adjoint for random elements") {
    Rng rng(3);
    for (StarAlgebraPtr alg : {diagonal2(), full2()}) {
        for (int t = 0; t < 10; ++t) {
            Matrix a = alg->from_coordinates(rng.vector(alg->dim()));
            Matrix b = alg->from_coordinates(rng.vector(alg->dim()));
            CHECK(alg->contains(a * b));
            CHECK(alg->contains(a.adjoint()));
        }
    }
}

TEST_CASE("essential ideals exhaust the algebra at finite dimension") {
    // Documented collapse: essential => the ideal spans the whole algebra.
    auto diag = diagonal2();
    auto f2 = full2();
    struct Case {
        StarAlgebraPtr ambient;
        std::vector<Matrix> ideal;
    };
    std::vector<Case> cases = {
        {diag, {oracles::unit(0, 0)}},
        {diag, diag->basis()},
        {f2, f2->basis()},
        {f2, {}},
    };
    Tolerance tol;
    for (const auto& c : cases) {
        if (!is_ideal(c.ideal, *c.ambient, tol)) continue;
        if (is_essential_ideal(c.ideal, *c.ambient, tol))
            CHECK(subspace_rank(c.ideal, tol) == c.ambient->dim());
    }
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(StarAlgebra(2, {Matrix::Zero(3, 3)}, Matrix::Identity(2, 2)), DimensionError);
    CHECK_THROWS_AS(StarAlgebra(2, {}, Matrix::Identity(2, 2)), ArgumentError);
    CHECK_THROWS_AS(make_element(diagonal2(), oracles::unit(0, 1)), MembershipError);
}
