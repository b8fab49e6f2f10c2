// Bimodules as commuting pairs of matrix representations, together with the
// closed constructions everything else is built from: tensor products over a
// middle algebra (with canonical quotient bases), the three duals, and
// centers.  Right actions are stored as antihomomorphisms:
// R(bb') = R(b') R(b), matching right-module composition order.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sepeq/algebra.hpp"

namespace sepeq {

class Bimodule;
using BimoduleRef = std::shared_ptr<const Bimodule>;

class Bimodule {
public:
    /// Validates the representation laws: a -> L(a) a unital homomorphism,
    /// b -> R(b) a unital antihomomorphism, and all L(a) R(b) = R(b) L(a).
    static BimoduleRef validate(std::string name, AlgebraRef left_alg, AlgebraRef right_alg,
                                std::size_t dim, std::vector<Matrix> left_action,
                                std::vector<Matrix> right_action);

    const std::string& name() const { return name_; }
    const AlgebraRef& left_alg() const { return left_alg_; }
    const AlgebraRef& right_alg() const { return right_alg_; }
    std::size_t dim() const { return dim_; }

    const Matrix& left_basis_action(std::size_t i) const { return left_action_[i]; }
    const Matrix& right_basis_action(std::size_t j) const { return right_action_[j]; }

    /// L(a) for a coordinate column a over the left algebra.
    Matrix left_act(const Matrix& a) const;
    /// R(b) for a coordinate column b over the right algebra.
    Matrix right_act(const Matrix& b) const;

    const FieldSpec& field() const { return left_alg_->field(); }

private:
    Bimodule() = default;

    std::string name_;
    AlgebraRef left_alg_, right_alg_;
    std::size_t dim_ = 0;
    std::vector<Matrix> left_action_, right_action_;
};

/// Map of bimodules over the same algebra pair; the matrix intertwines both
/// actions (verified at construction).
class BimoduleMap {
public:
    BimoduleMap(BimoduleRef source, BimoduleRef target, Matrix matrix);

    const BimoduleRef& source() const { return source_; }
    const BimoduleRef& target() const { return target_; }
    const Matrix& matrix() const { return matrix_; }

    Matrix apply(const Matrix& v) const { return matrix_ * v; }
    BimoduleMap compose(const BimoduleMap& inner) const;  // this after inner

    static BimoduleMap identity(BimoduleRef m);

private:
    BimoduleRef source_, target_;
    Matrix matrix_;  // target.dim x source.dim
};

/// P tensor_C Q presented as a quotient of the pure-tensor space.  Pure
/// coordinates are ordered lexicographically ((i,j) -> i*dim(Q)+j); relation
/// rows are generated from middle-algebra basis elements in fixed order; the
/// canonical quotient basis consists of the pure coordinates surviving RREF
/// pivot elimination of the relation matrix.
class TensorSpace {
public:
    TensorSpace(BimoduleRef left_factor, BimoduleRef right_factor);

    const BimoduleRef& left_factor() const { return p_; }
    const BimoduleRef& right_factor() const { return q_; }
    const AlgebraRef& middle() const { return p_->right_alg(); }

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t relation_rank() const { return relation_rank_; }
    std::size_t dim() const { return basis_coords_.size(); }
    /// Ambient (pure-tensor) coordinates forming the canonical basis.
    const std::vector<std::size_t>& basis_coords() const { return basis_coords_; }

    const Matrix& projector() const { return projector_; }  // dim x ambient
    const Matrix& section() const { return section_; }      // ambient x dim

    /// Class of the pure tensor (basis_i of P) x (basis_j of Q).
    Matrix pure(std::size_t i, std::size_t j) const;
    /// Class of p x q for coordinate columns p, q.
    Matrix pure_of(const Matrix& p, const Matrix& q) const;

    /// The induced (left_alg(P), right_alg(Q))-bimodule on the quotient.
    const BimoduleRef& result() const { return result_; }

private:
    BimoduleRef p_, q_;
    std::size_t ambient_dim_ = 0;
    std::size_t relation_rank_ = 0;
    std::vector<std::size_t> basis_coords_;
    Matrix projector_, section_;
    BimoduleRef result_;
};

enum class DualKind : std::uint8_t { right_dual, left_dual, linear_dual };

/// One of the three duals of a bimodule P over (A, B), carried as a concrete
/// basis of equivariant maps plus the induced (B, A)-bimodule structure.
///   right dual  Hom(P_B, B_B):  (b.f.a)(p) = b f(ap)
///   left  dual  Hom(_AP, _AA):  (b.g.a)(p) = g(pb) a
///   linear dual P* = Hom(P, k): (b.f.a)(p) = f(apb)
class HomBimodule {
public:
    HomBimodule(DualKind kind, BimoduleRef base);

    DualKind kind() const { return kind_; }
    const BimoduleRef& base() const { return base_; }
    std::size_t dim() const { return basis_.size(); }
    /// Concrete matrix of the t-th basis map (right: dimB x dimP, left:
    /// dimA x dimP, linear: 1 x dimP).
    const Matrix& basis_map(std::size_t t) const { return basis_[t]; }

    /// Coordinates of a concrete equivariant map in this basis.
    Matrix coords_of(const Matrix& concrete) const;
    Matrix concrete_of(const Matrix& coords) const;

    const BimoduleRef& result() const { return result_; }

private:
    DualKind kind_;
    BimoduleRef base_;
    std::vector<Matrix> basis_;
    Matrix basis_columns_;  // vec'd basis maps as columns, for membership solves
    BimoduleRef result_;
};

HomBimodule hom_right_dual(BimoduleRef p);
HomBimodule hom_left_dual(BimoduleRef p);
HomBimodule linear_dual(BimoduleRef p);

/// Basis (dim x k columns) of the center {w : aw = wa} of a bimodule over
/// (A, A).
Matrix center(const Bimodule& w);

// Stock bimodules.

/// A as an (A, A)-bimodule by left/right multiplication.
BimoduleRef regular_bimodule(AlgebraRef a);
/// _A A _B with the right action through an inclusion iota: B -> A.
BimoduleRef bimodule_from_inclusion_left(const AlgebraMap& iota);
/// _B A _A, left action through iota.
BimoduleRef bimodule_from_inclusion_right(const AlgebraMap& iota);
/// Left module over A as a bimodule over (A, k); actions of k are scalar.
BimoduleRef left_module(AlgebraRef a, AlgebraRef ground, std::string name,
                        std::vector<Matrix> left_action);
BimoduleRef right_module(AlgebraRef ground, AlgebraRef a, std::string name,
                         std::vector<Matrix> right_action);

}  // namespace sepeq
