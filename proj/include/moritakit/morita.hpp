#pragma once

#include "moritakit/crossed_product.hpp"
#include "moritakit/hilbert_module.hpp"

namespace moritakit {

/// The sextuple (crossed product, base, bimodule, bimodule, phi, psi) built
/// from one covering candidate; both bimodules coincide with the acted-on
/// algebra as vector spaces.
struct MoritaContext {
    CoveringCandidate covering;

    const AlgebraAction& action() const { return covering.action; }
    Index dim_crossed() const {
        return static_cast<Index>(covering.action.group->order()) * covering.action.algebra->dim();
    }
};

MoritaContext make_morita_context(CoveringCandidate covering);

/// Left action of the crossed product: a x = sum_g a(g) (g x).
AlgebraElement act_left(const CrossedElement& a, const AlgebraElement& x,
                        const Tolerance& tol = {});

/// Right action: x a = sum_g g^{-1}(x a(g)).
AlgebraElement act_right(const AlgebraElement& x, const CrossedElement& a,
                         const Tolerance& tol = {});

/// phi(x (x) y)(g) = x (g y), valued in the crossed product.
CrossedElement phi(const MoritaContext& ctx, const AlgebraElement& x, const AlgebraElement& y,
                   const Tolerance& tol = {});

/// psi(x (x) y) = sum_g g(x y), valued in the base algebra.
AlgebraElement psi(const MoritaContext& ctx, const AlgebraElement& x, const AlgebraElement& y,
                   const Tolerance& tol = {});

/// <x, y>_{crossed} = phi(x (x) y*).
CrossedElement inner_cp(const MoritaContext& ctx, const AlgebraElement& x,
                        const AlgebraElement& y, const Tolerance& tol = {});

/// <x, y>_{base} = psi(x* (x) y); coincides with transfer_inner.
AlgebraElement inner_base(const MoritaContext& ctx, const AlgebraElement& x,
                          const AlgebraElement& y, const Tolerance& tol = {});

struct ContextReport {
    double left_identity_residual = 0.0;   // phi(x,y) z vs x psi(y,z)
    double right_identity_residual = 0.0;  // x phi(y,z) vs psi(x,y) z
    int samples = 0;
    bool pass = false;

    double max_residual() const {
        return left_identity_residual > right_identity_residual ? left_identity_residual
                                                                : right_identity_residual;
    }
};

/// Mixed associativity of the context over deterministic random triples.
ContextReport verify_morita_context(const MoritaContext& ctx, int samples,
                                    const Tolerance& tol = {},
                                    unsigned long long seed = kDefaultSeed);

/// Everything certify_strong_morita measured, plus the verdict.
struct EquivalenceCertificate {
    ContextReport context;
    double axiom_a_residual = 0.0;  // <x,y>_cp z vs x <y,z>_base
    Index fullness_rank_base = 0;
    Index dim_base = 0;
    Index fullness_rank_crossed = 0;
    Index dim_crossed = 0;
    FrameWitness frame;          // crossed-product reconstruction frame
    FrameWitness module_frame;   // Hilbert-module (projectivity) frame
    double psd_residual_base = 0.0;
    double psd_residual_crossed = 0.0;
    double positive_decomposition_residual = 0.0;  // a vs (1/|G|)<sqrt a, sqrt a>
    double translate_frame_residual = -1.0;  // frame translated to each group element; -1 when no frame
    Index y_span_rank = 0;                   // span of translated-frame reconstructions
    bool verdict = false;
    std::vector<std::string> reasons;  // empty when verdict holds
};

/// Assembles the strong-equivalence certificate: context identities, the
/// bimodule inner-product axiom, fullness of both inner products, frame
/// search, positive decompositions, and the translated-frame span check.
EquivalenceCertificate certify_strong_morita(const MoritaContext& ctx, const Tolerance& tol = {},
                                             int samples = 64,
                                             unsigned long long seed = kDefaultSeed);

}  // namespace moritakit
