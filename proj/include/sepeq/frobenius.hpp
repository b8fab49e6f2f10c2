// Frobenius structure: nondegenerate functionals, dual bases, Nakayama
// automorphisms, twisted bimodules and twisted-Frobenius checks, Frobenius
// extensions with dual bases, the induced context, and the endomorphism-ring
// extension checks.

#pragma once

#include "sepeq/context.hpp"

namespace sepeq {

struct FrobeniusStructure {
    AlgebraRef algebra;
    Matrix functional;  // 1 x dim
    Matrix gram;        // gram[i][j] = lambda(e_i e_j), invertible
    std::vector<std::pair<Matrix, Matrix>> dual_bases;  // pairs (x_i, y_i), coordinate columns
    AlgebraMap nakayama;  // alpha with lambda(ab) = lambda(b alpha(a))
};

/// Builds the Frobenius structure carried by a functional, or nothing when
/// the induced form is degenerate.  The dual-basis and Nakayama laws are
/// verified exactly on every basis element before returning.
std::optional<FrobeniusStructure> frobenius_structure(const AlgebraRef& a, const Matrix& functional);

/// The bimodule isomorphism between the regular bimodule and the linear dual
/// twisted by the Nakayama automorphism on the left.
IsoSearchResult nakayama_bimodule_check(const FrobeniusStructure& fs, const SearchOptions& opts = {});

struct SymmetricSearch {
    Tri verdict = Tri::unknown;
    std::optional<Matrix> functional;  // symmetrizing nondegenerate form (1 x dim)
    bool exhaustive = false;
};

/// Searches the subspace of symmetric associative forms for a nondegenerate
/// member; refutations are only reported when the sweep was complete.
SymmetricSearch is_symmetric(const AlgebraRef& a, const SearchOptions& opts = {});

struct InnerSearch {
    Tri verdict = Tri::unknown;
    std::optional<Matrix> conjugator;  // invertible u with u alpha(a) = a u
    bool exhaustive = false;
};

InnerSearch is_inner_automorphism(const AlgebraMap& alpha, const SearchOptions& opts = {});

/// Composes both actions with automorphisms: a.m = alpha(a) m, m.b = m beta(b).
BimoduleRef twist_bimodule(const BimoduleRef& m, const AlgebraMap& left_twist,
                           const AlgebraMap& right_twist);

/// Twisted-Frobenius test: right dual isomorphic to the left dual twisted by
/// (beta, alpha).  alpha must be an automorphism of the left algebra of P,
/// beta of the right algebra.
Verdict check_twisted_frobenius(const BimoduleRef& p, const AlgebraMap& alpha, const AlgebraMap& beta,
                                const SearchOptions& opts = {});
/// Untwisted case.
Verdict check_frobenius_bimodule(const BimoduleRef& p, const SearchOptions& opts = {});

/// Extension data: an inclusion iota : B -> A, a conditional expectation
/// E : A -> B with E iota = id, and dual bases {x_i}, {y_i} in A.
struct FrobeniusExtensionData {
    AlgebraMap inclusion;
    Matrix e_map;  // dim B x dim A
    std::vector<std::pair<Matrix, Matrix>> dual_bases;
};

/// Verifies the extension laws exactly, and decides the separable and split
/// sub-properties as linear feasibility.
Verdict verify_frobenius_extension(const FrobeniusExtensionData& data);

/// The raw context carried by extension data (P = _A A _B, Q = _B A _A,
/// nu = multiplication, mu = E after multiplication); no separability or
/// splitting is demanded.
Context extension_context_of(const FrobeniusExtensionData& data);

/// The context (P = A over (A,B), Q = A over (B,A), nu = multiplication,
/// mu = E after multiplication) carried by a separable split Frobenius
/// extension, with both adjunction units.
struct ExtensionContext {
    Context context;
    AdjunctionUnit unit_pq;  // the class of 1 (x) 1 in Q (x) P
    AdjunctionUnit unit_qp;  // the dual bases tensor in P (x) Q
    Verdict symmetric;       // verified symmetric separable equivalence
};

ExtensionContext context_from_frobenius_extension(const FrobeniusExtensionData& data);

/// Checks that A embeds in End P_B (realized as the mu-ring) as a split,
/// separable Frobenius extension with nu as Frobenius homomorphism and the
/// interleaved dual-bases tensor.
Verdict check_endomorphism_extension(const Context& ctx, const AdjunctionUnit& unit_pq,
                                     const AdjunctionUnit& unit_qp);

}  // namespace sepeq
