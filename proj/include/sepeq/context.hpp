// Contexts (P, Q, nu, mu) linking two algebras, and the decision procedures
// for the divisibility and equivalence predicates they support: separability
// elements, adjunction units and their triangular identities, splitting
// transport, the mu-multiplication ring, endomorphism-ring isomorphisms, and
// biseparability.  Every existence question is posed as one exact linear
// system; witnesses are canonical (free variables zeroed) and re-validated.

#pragma once

#include "sepeq/modops.hpp"

namespace sepeq {

enum class Status : std::uint8_t { verified, refuted, unknown, not_applicable, degenerate };
std::string status_str(Status s);

struct Witness {
    std::string name;
    Matrix value;
};

struct Verdict {
    std::string predicate;
    Status status = Status::unknown;
    std::vector<Witness> witnesses;
    std::string detail;  // refutation fingerprint or reason
    std::vector<Verdict> subchecks;

    bool verified() const { return status == Status::verified; }
    const Matrix* witness(const std::string& name) const;
    void add_witness(std::string name, Matrix value);
};

enum class ContextSide : std::uint8_t { a_over_b, b_over_a };
enum class AdjunctionOrder : std::uint8_t { pq, qp };  // which functor is the left adjoint

/// The tuple (P, Q, nu [, mu]) with its two tensor quotients precomputed.
/// nu : P (x)_B Q -> A and mu : Q (x)_A P -> B are validated bimodule maps
/// into the regular bimodules.
class Context {
public:
    static Context make(AlgebraRef A, AlgebraRef B, BimoduleRef P, BimoduleRef Q, const Matrix& nu,
                        const std::optional<Matrix>& mu);

    const AlgebraRef& A() const { return a_; }
    const AlgebraRef& B() const { return b_; }
    const BimoduleRef& P() const { return p_; }
    const BimoduleRef& Q() const { return q_; }
    const TensorSpace& PQ() const { return *pq_; }
    const TensorSpace& QP() const { return *qp_; }
    const BimoduleRef& regular_A() const { return reg_a_; }
    const BimoduleRef& regular_B() const { return reg_b_; }
    const BimoduleMap& nu() const { return *nu_; }
    bool has_mu() const { return mu_.has_value(); }
    const BimoduleMap& mu() const;

    bool degenerate() const { return p_->dim() == 0 || q_->dim() == 0; }
    const FieldSpec& field() const { return a_->field(); }

private:
    Context() = default;
    AlgebraRef a_, b_;
    BimoduleRef p_, q_;
    std::shared_ptr<const TensorSpace> pq_, qp_;
    BimoduleRef reg_a_, reg_b_;
    std::shared_ptr<const BimoduleMap> nu_;
    std::optional<BimoduleMap> mu_;
};

struct SeparabilityElement {
    ContextSide side;
    Matrix coords;  // in the canonical tensor-quotient basis
};

struct AdjunctionUnit {
    AdjunctionOrder order;
    Matrix coords;  // (Q x P quotient) for pq, (P x Q quotient) for qp
    bool central = false;  // Eq-style centrality, asserted post hoc
};

struct SplittingSearch {
    std::optional<BimoduleMap> section;
    std::string fingerprint;
};

/// Section s with f(s(v)) = v, equivariant on both sides; absence is a
/// verdict, not an error.
SplittingSearch find_bimodule_splitting(const BimoduleMap& f);

struct SeparabilitySearch {
    std::optional<SeparabilityElement> element;
    std::string fingerprint;
};

/// Central element of the tensor quotient mapping to 1 under the counit.
SeparabilitySearch find_separability_element(const Context& ctx, ContextSide side);

/// The splitting a -> a.e determined by a separability element.
BimoduleMap splitting_from_element(const Context& ctx, const SeparabilityElement& e);
/// The separability element s(1) carried by a splitting of the counit.
SeparabilityElement element_from_splitting(const Context& ctx, ContextSide side, const BimoduleMap& s);

struct AdjunctionSearch {
    std::optional<AdjunctionUnit> unit;
    std::string fingerprint;
};

/// The two triangular identities for the chosen order as one stacked linear
/// system (lhs, rhs) over the tensor-quotient coordinates: a column u is a
/// unit exactly when lhs * u = rhs.
std::pair<Matrix, Matrix> adjunction_system(const Context& ctx, AdjunctionOrder order);

/// Whether coords satisfies both triangular identities for the order.
bool satisfies_adjunction_identities(const Context& ctx, AdjunctionOrder order, const Matrix& coords);
/// Whether coords lies in the center of the relevant tensor quotient.
bool unit_is_central(const Context& ctx, AdjunctionOrder order, const Matrix& coords);
/// Whether coords is a separability element: central and mapped to 1.
bool is_separability_element(const Context& ctx, ContextSide side, const Matrix& coords);

/// Solves the two triangular identities for the chosen order; centrality of
/// the found unit is then checked (never imposed) and recorded.
AdjunctionSearch find_adjunction_unit(const Context& ctx, AdjunctionOrder order);

/// Materializes the hom-space bijection induced by a pq-unit on a left
/// B-module M and a left A-module N and checks both composites exactly.
Verdict verify_adjunction_bijection(const Context& ctx, const AdjunctionUnit& unit, const BimoduleRef& m,
                                    const BimoduleRef& n);

/// Moves a splitting of any bimodule map phi : P (x) Q -> A to a splitting
/// of nu, using a pq-unit.  Throws if phi_section does not split phi.
BimoduleMap transport_splitting(const Context& ctx, const AdjunctionUnit& unit, const BimoduleMap& phi,
                                const BimoduleMap& phi_section);

struct DualIso {
    HomBimodule dual;      // Hom(_A P, _A A) with its (B, A)-structure
    BimoduleMap forward;   // Q -> dual, q -> nu(- (x) q)
    BimoduleMap backward;  // dual -> Q, g -> sum q'_i g(p'_i)
};

/// The bimodule isomorphism Q ~ Hom(_A P, _A A), with verified inverse.
DualIso dual_iso_Q(const Context& ctx, const AdjunctionUnit& unit);

/// Ring structure (p (x) q)(p' (x) q') = p mu(q (x) p') (x) q' on the P (x) Q
/// quotient; associative always, unital exactly in the symmetric case.
struct MuRing {
    FieldSpec field;
    std::size_t dim = 0;
    std::vector<Scalar> constants;  // (s*dim + t)*dim + k
    bool associative = false;

    const Scalar& c(std::size_t s, std::size_t t, std::size_t k) const {
        return constants[(s * dim + t) * dim + k];
    }
    Matrix mul(const Matrix& x, const Matrix& y) const;
    Matrix left_mult(const Matrix& x) const;   // matrix of y -> x.y
    Matrix right_mult(const Matrix& x) const;  // matrix of y -> y.x
    std::optional<Matrix> find_unit() const;  // two-sided unit, when it exists
    /// Validated algebra presentation once a unit is known.
    AlgebraRef to_algebra(const Matrix& unit, const std::string& name) const;
};

MuRing build_mu_ring(const Context& ctx);

struct RingIsoResult {
    Verdict verdict;
    std::optional<AlgebraRef> mu_ring_algebra;  // P (x) Q with mu-multiplication
    std::optional<AlgebraRef> end_algebra;      // End P_B
};

/// Verified unital ring isomorphism End P_B ~ P (x)_B Q; requires both
/// adjunction units.
RingIsoResult ring_iso_end(const Context& ctx, const AdjunctionUnit& unit_pq, const AdjunctionUnit& unit_qp);

/// An evaluation map together with the dual and tensor quotient it lives on.
struct EvaluationData {
    HomBimodule dual;
    TensorSpace tensor;
    BimoduleMap eval;
};

/// e1 : P (x)_B Hom(_A P, _A A) -> A, evaluation on the left dual.
EvaluationData evaluation_onto_A(const BimoduleRef& p);
/// e2 : Hom(P_B, B_B) (x)_A P -> B, evaluation on the right dual.
EvaluationData evaluation_onto_B(const BimoduleRef& p);

/// Split-epi test for the evaluation P (x)_B Hom(_A P, _A A) -> A.
Verdict check_p_separable(const BimoduleRef& p);
/// Both evaluation maps split.
Verdict check_biseparable(const BimoduleRef& p);

Verdict check_separably_divides(const Context& ctx);
Verdict check_separable_equivalence(const Context& ctx);
Verdict check_symmetric_equivalence(const Context& ctx);

/// Factorizations nu = e1 (id (x) h), mu = e2 (g (x) id) and the induced
/// splittings of the evaluation maps; requires separable equivalence.
Verdict biseparable_from_context(const Context& ctx);

/// The context carried by a bimodule whose two duals are isomorphic: the
/// partner is Hom(P_B, B_B), mu is the evaluation onto B, and nu is the
/// evaluation onto A composed with the given right-to-left dual isomorphism
/// (a matrix in the canonical dual bases).  This is how an equivalence is
/// upgraded to a symmetric one without changing P.
Context context_from_dual_pair(const BimoduleRef& p, const Matrix& right_to_left_dual_iso);

}  // namespace sepeq
