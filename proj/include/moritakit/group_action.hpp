#pragma once

#include <memory>
#include <string>
#include <vector>

#include "moritakit/star_algebra.hpp"

namespace moritakit {

/// Finite group given by its multiplication table of element indices.
struct FiniteGroup {
    std::vector<std::vector<int>> table;  // table[i][j] = index of g_i * g_j
    int identity = 0;
    std::vector<int> inverse;

    int order() const { return static_cast<int>(table.size()); }
    int mul(int a, int b) const { return table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
    int inv(int a) const { return inverse[static_cast<std::size_t>(a)]; }
};

using FiniteGroupPtr = std::shared_ptr<const FiniteGroup>;

struct GroupReport {
    bool pass = false;
    std::string message;  // names the first violated invariant
};

/// Latin-square, associativity, identity and inverse consistency.
GroupReport verify_group(const FiniteGroup& g);

/// Builds a group from a bare table, locating identity and inverses.
/// ValidationError when the table is not a group.
FiniteGroup group_from_table(std::vector<std::vector<int>> table);

namespace groups {
FiniteGroup trivial();
FiniteGroup cyclic(int n);
FiniteGroup klein_four();
FiniteGroup symmetric3();
/// Accepts C1, C2, C3, C4, V4, S3.
FiniteGroup by_name(const std::string& name);
}  // namespace groups

/// Action of a finite group on a star algebra, one linear map on algebra
/// coordinates per group element. Permutation actions and outer
/// automorphisms are both expressible this way.
struct AlgebraAction {
    FiniteGroupPtr group;
    StarAlgebraPtr algebra;
    std::vector<Eigen::MatrixXcd> maps;  // dim x dim, one per group element
};

struct ActionReport {
    double identity_residual = 0.0;        // map(e) vs id
    double homomorphism_residual = 0.0;    // map(g) map(h) vs map(gh)
    double multiplicativity_residual = 0.0;
    double unitality_residual = 0.0;
    double involutivity_residual = 0.0;
    std::vector<int> degenerate_elements;  // nontrivial g acting as identity
    bool pass = false;
    std::string message;
};

/// Checks the homomorphism, *-automorphism, and non-degeneracy axioms.
ActionReport verify_action(const AlgebraAction& act, const Tolerance& tol = {});

/// g applied to an element of the acted-on algebra.
AlgebraElement apply(const AlgebraAction& act, int g, const AlgebraElement& a,
                     const Tolerance& tol = {});

/// Raw-matrix variant; m must lie in the algebra span.
Matrix apply_matrix(const AlgebraAction& act, int g, const Matrix& m, const Tolerance& tol = {});

/// Subalgebra of elements fixed by every group element, as the nullspace of
/// the stacked (map(g) - id). Unit is the acted-on algebra's unit.
StarAlgebraPtr fixed_point_algebra(const AlgebraAction& act, const Tolerance& tol = {});

}  // namespace moritakit
