#pragma once

#include "moritakit/group_action.hpp"

namespace moritakit {

/// Element of the crossed product of the acted-on algebra by the group: a
/// map from group elements to algebra elements, with twisted convolution
/// product and twisted involution.
struct CrossedElement {
    AlgebraAction action;
    std::vector<Matrix> components;  // one ambient matrix per group element

    int group_order() const { return action.group->order(); }
};

CrossedElement crossed_zero(const AlgebraAction& action);

/// Unit: the algebra unit at the neutral element, zero elsewhere.
CrossedElement cp_unit(const AlgebraAction& action);

CrossedElement cp_add(const CrossedElement& a, const CrossedElement& b);
CrossedElement cp_scale(const Complex& lambda, const CrossedElement& a);

/// Twisted convolution: (a b)(g) = sum_{g'} a(g') g'(b(g'^{-1} g)).
CrossedElement cp_mul(const CrossedElement& a, const CrossedElement& b);

/// Involution a*(g) = g((a(g^{-1}))*). This is the convention under which
/// cp_star is an involutive anti-automorphism of cp_mul and the regular
/// representation is *-preserving.
CrossedElement cp_star(const CrossedElement& a);

/// Untwisted variant a*(g) = (a(g^{-1}))*, kept behind this separate entry
/// point for comparison; reports flag where the two conventions disagree.
CrossedElement cp_star_untwisted(const CrossedElement& a);

/// Single-component element: a at position g, zero elsewhere.
CrossedElement y_element(const AlgebraAction& action, const AlgebraElement& a, int g);
CrossedElement y_element(const AlgebraAction& action, const Matrix& a, int g);

/// Frobenius-style norm: sqrt of the sum of squared component norms.
double cp_frobenius(const CrossedElement& a);

double cp_distance(const CrossedElement& a, const CrossedElement& b);

/// Stacks all components into one flat vector (group-index major).
Vector cp_flatten(const CrossedElement& a);

/// Faithful block-matrix representation of size (|G| n) x (|G| n): block
/// (h, h') holds h^{-1}(a(h h'^{-1})) as an ambient matrix. Linear,
/// multiplicative, *-preserving and injective; the operator norm under this
/// representation is the C*-norm of the crossed product.
Matrix regular_representation(const CrossedElement& a, const Tolerance& tol = {});

}  // namespace moritakit
