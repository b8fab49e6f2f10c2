// Module-level decision procedures: finite projectivity with explicit
// splittings, generator tests via trace ideals, module isomorphism search,
// the natural map into an endomorphism ring, and endomorphism rings as
// validated algebras.

#pragma once

#include "sepeq/bimodule.hpp"

namespace sepeq {

enum class Side : std::uint8_t { left, right };

enum class Tri : std::uint8_t { yes, no, unknown };

std::string tri_str(Tri t);

/// Knobs for the nondegenerate-combination searches.  Exhaustive sweeps are
/// complete over Q (grid of size degree+1 per variable) and over F_p (all
/// residue tuples); when a sweep would exceed max_exhaustive the search
/// falls back to seeded random trials and may report unknown.
struct SearchOptions {
    std::uint64_t seed = 20240701;
    std::uint64_t max_exhaustive = 1ull << 17;
    int random_trials = 64;
};

struct CombinationSearch {
    Tri verdict = Tri::unknown;
    std::optional<Matrix> coefficients;  // r x 1, combination with invertible value
    bool exhaustive = false;             // the sweep covered the whole decision grid
};

/// Seeks coefficients c with sum_t c_t basis[t] invertible.  Complete (yes or
/// proven no) whenever the sweep fits under max_exhaustive.
CombinationSearch find_invertible_combination(const std::vector<Matrix>& basis, const FieldSpec& f,
                                              const SearchOptions& opts = {});

struct ProjectivityCertificate {
    Matrix cover;    // free cover matrix: dim P x (dim P * dim algebra)
    Matrix section;  // equivariant section with cover * section = identity
};

struct ProjectivityResult {
    bool projective = false;
    std::optional<ProjectivityCertificate> certificate;
    std::string fingerprint;  // infeasibility data when not projective
};

/// The free cover matrix (dim P) x (dim P * dim algebra) sending the slot-i
/// generator to basis vector i.
Matrix free_cover(const Bimodule& p, Side side);
/// Whether the given matrix is an equivariant section of the free cover.
bool section_splits_cover(const Bimodule& p, Side side, const Matrix& section);

/// Finite projectivity of the one-sided restriction of P, by linear
/// feasibility of an equivariant section of the free cover that sends
/// generator i to basis vector i.
ProjectivityResult is_finite_projective(const Bimodule& p, Side side);

struct GeneratorResult {
    bool generator = false;
    Matrix trace_ideal_basis;  // columns spanning the closed trace ideal
};

/// Generator test: spans images of all module maps into the algebra, closes
/// to a two-sided ideal, and checks whether the ideal contains 1.
GeneratorResult is_generator(const Bimodule& p, Side side);

struct HomSpace {
    std::vector<Matrix> basis;  // concrete maps target.dim x source.dim
};

/// Basis of bimodule maps M -> N (intertwining both actions).
HomSpace hom_space(const Bimodule& m, const Bimodule& n);

struct IsoSearchResult {
    Tri verdict = Tri::unknown;
    std::optional<Matrix> iso;          // invertible intertwiner
    std::optional<Matrix> iso_inverse;  // its exact inverse
    bool exhaustive = false;
    std::string detail;
};

/// Three-valued isomorphism test for bimodules over the same algebra pair.
/// "no" is only reported when proven (dimension mismatch, empty hom space,
/// or a complete sweep of the hom space).
IsoSearchResult module_iso_exists(const Bimodule& m, const Bimodule& n, const SearchOptions& opts = {});

struct EndRing {
    AlgebraRef algebra;         // endomorphism ring as a validated algebra
    std::vector<Matrix> basis;  // concrete endomorphisms, one per algebra basis vector
    Matrix basis_columns;       // vec'd basis, for membership solves
    Matrix coords_of(const Matrix& endo) const;
    Matrix concrete_of(const Matrix& coords) const;
};

/// Ring of one-side-equivariant endomorphisms under composition
/// (E_s E_t means "apply E_t, then E_s").
EndRing end_ring(const BimoduleRef& p, Side side);

struct NaturalMapReport {
    bool degenerate = false;     // zero module: everything annihilates
    Matrix lambda;               // end-ring coordinates of a -> L(a), (dim End) x (dim A)
    Matrix kernel_basis;         // basis of ker lambda in A
    bool injective = false;
    std::optional<EndRing> end;  // absent in the degenerate case
};

/// The natural map A -> End P_B (side = right) or A -> End _BQ style maps,
/// with the kernel computed exactly.
NaturalMapReport natural_map_lambda(const AlgebraRef& a, const BimoduleRef& p);

}  // namespace sepeq
