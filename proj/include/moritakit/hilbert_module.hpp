#pragma once

#include "moritakit/group_action.hpp"
#include "moritakit/version.hpp"

namespace moritakit {

/// A triple (base, acted-on algebra, group): the base must coincide with the
/// fixed-point algebra of the action.
struct CoveringCandidate {
    AlgebraAction action;
    StarAlgebraPtr base;
};

/// Builds the candidate with base = fixed_point_algebra(action).
CoveringCandidate make_covering(AlgebraAction action, const Tolerance& tol = {});

/// Largest deviation of base from the fixed-point algebra of the action:
/// max over both containments of the orthogonal-complement leak.
double fixed_point_gap(const CoveringCandidate& cand, const Tolerance& tol = {});

/// Pairing <a, b> = sum_g g(a* b); takes values in the base algebra.
AlgebraElement transfer_inner(const CoveringCandidate& cand, const AlgebraElement& a,
                              const AlgebraElement& b, const Tolerance& tol = {});
Matrix transfer_inner_matrix(const CoveringCandidate& cand, const Matrix& a, const Matrix& b,
                             const Tolerance& tol = {});

/// |<x, x>|^(1/2) under the operator norm.
double hilbert_norm(const CoveringCandidate& cand, const AlgebraElement& x,
                    const Tolerance& tol = {});

struct HilbertReport {
    double psd_residual = 0.0;            // (a) worst positivity defect of <x,x>
    double nondegeneracy_margin = 0.0;    // (b) min |<x,x>| over unit-scale samples
    double symmetry_residual = 0.0;       // (c) <x,y> vs <y,x>*
    double right_linearity_residual = 0.0;  // (d) <x, y a> vs <x,y> a
    double invariance_residual = 0.0;     // g<x,y> vs <x,y>
    int samples = 0;
    bool pass = false;
};

/// Inner-product axioms over deterministic pseudo-random samples.
HilbertReport verify_hilbert_axioms(const CoveringCandidate& cand, int samples,
                                    const Tolerance& tol = {},
                                    unsigned long long seed = kDefaultSeed);

/// Pairs solving a reconstruction identity, or the infeasibility residual
/// when no exact solution exists. Infeasibility is a value, not an error.
struct FrameWitness {
    bool feasible = false;
    double residual = 0.0;
    std::vector<AlgebraElement> a_list;
    std::vector<AlgebraElement> b_list;

    std::size_t size() const { return a_list.size(); }
};

/// Solves 1_{crossed} = sum_j phi(a_j (x) b_j*) over the tensor basis of the
/// acted-on algebra. Success is equivalent to surjectivity of phi.
FrameWitness find_frame(const CoveringCandidate& cand, const Tolerance& tol = {});

/// Solves sum_j x_j <x_j, x> = x for all x: a module reconstruction frame,
/// certifying finite generation + projectivity of the Hilbert module.
FrameWitness find_module_frame(const CoveringCandidate& cand, const Tolerance& tol = {});

/// Full unital-covering certificate. The module-frame clause (finitely
/// generated projective Hilbert module) and the crossed-product frame
/// clause are recorded separately: they disagree on branched models.
struct UnitalCoveringCertificate {
    ActionReport action;
    double fixed_point_residual = 0.0;
    HilbertReport hilbert;
    FrameWitness module_frame;
    FrameWitness galois_frame;
    bool frames_disagree = false;
    bool certified = false;  // action + fixed-point + Hilbert axioms + module frame
};

UnitalCoveringCertificate certify_unital_covering(const CoveringCandidate& cand,
                                                  const Tolerance& tol = {},
                                                  int samples = 32,
                                                  unsigned long long seed = kDefaultSeed);

}  // namespace moritakit
