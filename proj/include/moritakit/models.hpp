#pragma once

#include "moritakit/hilbert_module.hpp"

namespace moritakit {

/// Finite set with one permutation per group element.
struct SetAction {
    int points = 0;
    std::vector<std::vector<int>> perms;  // perms[g][y] = image of y under g
};

/// perm(e) = id and perm(g) o perm(h) = perm(gh); ArgumentError otherwise.
void validate_set_action(const SetAction& sa, const FiniteGroup& group);

/// Candidate plus the generator's ground truth. Freeness is never inferred
/// by the certifier; it is what certificates are scored against.
struct SetCovering {
    CoveringCandidate covering;
    SetAction set_action;
    bool free = false;
    Index orbit_count = 0;
};

/// Functions on the set as a diagonal algebra, permutation action, base =
/// functions constant on orbits.
SetCovering covering_from_set_action(const SetAction& sa, FiniteGroupPtr group,
                                     const Tolerance& tol = {});

/// Blocks concatenated; both arguments must share the group.
SetAction direct_sum(const SetAction& a, const SetAction& b);

/// Full matrix algebra with conjugation action. Degeneracy (central
/// unitaries) is a rejection value, not an exception.
struct InnerMatrixModel {
    bool accepted = false;
    std::string reason;
    CoveringCandidate covering;
    ActionReport action_report;
};

InnerMatrixModel inner_matrix_model(Index n, FiniteGroupPtr group,
                                    const std::vector<Matrix>& unitaries,
                                    const Tolerance& tol = {});

/// Family of ideal bases inside the base algebra.
struct IdealFamily {
    std::vector<std::vector<Matrix>> ideals;
};

/// Largest subspace of the acted-on algebra whose transfer pairings against
/// every element land in the span of the given ideal of the base.
std::vector<Matrix> wta_subalgebra(const CoveringCandidate& bigcover,
                                   const std::vector<Matrix>& ideal_basis_of_base,
                                   const Tolerance& tol = {});

/// Corner ideal_basis * algebra * ideal_basis with its support projection as
/// unit and the restricted action.
struct Corner {
    StarAlgebraPtr algebra;
    Matrix support;  // unit of the corner
    AlgebraAction action;
};

Corner make_corner(const CoveringCandidate& cand, const std::vector<Matrix>& ideal_basis,
                   const Tolerance& tol = {});

struct CompactificationReport {
    bool ideal_essential = false;
    /// At finite dimension an essential ideal is the whole algebra; set
    /// whenever that collapse forces A = B.
    bool trivial_compactification = false;
    /// Set when the ideal is not essential; checks still run.
    bool nonessential_caveat = false;
    UnitalCoveringCertificate unital;
    Index recomputed_dim = 0;        // dim of the wta-recovered subalgebra
    Index ideal_rank = 0;            // dim of the given ideal span
    Index fullness_rank_base = 0;    // <recovered, recovered>_base vs ideal_rank
    Index fullness_rank_crossed = 0; // <recovered, recovered>_cp vs |G| * recovered_dim
    Index expected_crossed = 0;
    bool pass = false;
    std::string message;
};

/// Checks the compactification clauses: essential-ideal status, the unital
/// covering certificate, and the recovered subalgebra with its fullness.
CompactificationReport verify_compactification_covering(const CoveringCandidate& b_cover,
                                                        const std::vector<Matrix>& a_basis,
                                                        const Tolerance& tol = {},
                                                        int samples = 32,
                                                        unsigned long long seed = kDefaultSeed);

struct GeneralCoveringReport {
    Index union_rank = 0;
    Index base_dim = 0;
    bool union_spans_base = false;
    std::vector<CompactificationReport> corners;
    bool pass = false;
};

/// Checks that the ideals jointly span the base and that every corner
/// triple is a covering with compactification.
GeneralCoveringReport verify_general_covering(const CoveringCandidate& cand,
                                              const IdealFamily& fam,
                                              const Tolerance& tol = {},
                                              int samples = 32,
                                              unsigned long long seed = kDefaultSeed);

}  // namespace moritakit
