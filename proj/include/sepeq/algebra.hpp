// Finite-dimensional unital associative algebras presented by structure
// constants over a fixed ordered basis.  Constructors validate associativity
// and the unit axioms exhaustively; coordinates are always relative to the
// stored basis so that witnesses replay bit-exactly.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sepeq/matrix.hpp"

namespace sepeq {

class Algebra;
using AlgebraRef = std::shared_ptr<const Algebra>;

class Algebra {
public:
    /// Validates raw structure-constant data.  mult is indexed [i][j][k]:
    /// e_i e_j = sum_k mult[i][j][k] e_k.  Throws ValidationError naming the
    /// first failing axiom instance.
    static AlgebraRef validate(std::string name, const FieldSpec& field, std::size_t dim,
                               std::vector<std::vector<std::vector<Scalar>>> mult,
                               std::vector<Scalar> unit);

    const std::string& name() const { return name_; }
    const FieldSpec& field() const { return field_; }
    std::size_t dim() const { return dim_; }

    const Scalar& structure_const(std::size_t i, std::size_t j, std::size_t k) const {
        return mult_[(i * dim_ + j) * dim_ + k];
    }

    /// Unit as a dim x 1 coordinate column.
    const Matrix& unit() const { return unit_; }
    Matrix basis_vector(std::size_t i) const;

    /// Coordinates of x*y for coordinate columns x, y.
    Matrix mul(const Matrix& x, const Matrix& y) const;
    /// L(x): the dim x dim matrix of left multiplication by x.
    Matrix left_mult(const Matrix& x) const;
    /// R(x): right multiplication by x.
    Matrix right_mult(const Matrix& x) const;
    const Matrix& left_mult_basis(std::size_t i) const { return left_basis_[i]; }
    const Matrix& right_mult_basis(std::size_t i) const { return right_basis_[i]; }

    /// Structural identity: same field, dimension, constants and unit.
    bool same_presentation(const Algebra& other) const;

    std::string describe() const;

private:
    Algebra() = default;

    std::string name_;
    FieldSpec field_;
    std::size_t dim_ = 0;
    std::vector<Scalar> mult_;  // (i*dim + j)*dim + k
    Matrix unit_;
    std::vector<Matrix> left_basis_, right_basis_;
};

/// Element of a fixed algebra; thin wrapper over a coordinate column.
class AlgebraElement {
public:
    AlgebraElement(AlgebraRef parent, Matrix coeffs);

    const AlgebraRef& parent() const { return parent_; }
    const Matrix& coeffs() const { return coeffs_; }

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator*(const AlgebraElement& o) const;
    AlgebraElement scaled(const Scalar& s) const;
    bool operator==(const AlgebraElement& o) const;

private:
    AlgebraRef parent_;
    Matrix coeffs_;  // dim x 1
};

enum class MapFlavor : std::uint8_t { homomorphism, antihomomorphism };

/// Unit-preserving linear map between algebras that preserves (or reverses)
/// multiplication; verified on all basis pairs at construction.
class AlgebraMap {
public:
    AlgebraMap(AlgebraRef source, AlgebraRef target, Matrix matrix,
               MapFlavor flavor = MapFlavor::homomorphism);

    const AlgebraRef& source() const { return source_; }
    const AlgebraRef& target() const { return target_; }
    const Matrix& matrix() const { return matrix_; }
    MapFlavor flavor() const { return flavor_; }

    Matrix apply(const Matrix& coords) const { return matrix_ * coords; }
    bool is_injective() const;
    bool is_bijective() const;

    static AlgebraMap identity(AlgebraRef a);
    /// Composition this∘other (other first).
    AlgebraMap compose(const AlgebraMap& other) const;
    std::optional<AlgebraMap> inverse_map() const;

private:
    AlgebraRef source_, target_;
    Matrix matrix_;  // target.dim x source.dim
    MapFlavor flavor_;
};

// Constructors for the stock algebras.  Basis orderings are fixed and
// documented so that certificate coordinates are reproducible.

/// The ground field itself as a 1-dimensional algebra.
AlgebraRef ground_field_algebra(const FieldSpec& f, const std::string& name = "k");

/// Full matrix algebra; basis = elementary matrices E_ij ordered row-major,
/// so basis index n*i + j carries E_ij and E_ij E_kl = delta_jk E_il.
AlgebraRef matrix_algebra(std::size_t n, const FieldSpec& f);

/// Group algebra from a Cayley table (table[i][j] = index of g_i g_j).
/// The table is checked to be a group: identity, inverses, associativity.
AlgebraRef group_algebra(const std::vector<std::vector<std::size_t>>& cayley_table,
                         const FieldSpec& f, const std::string& name = "group algebra");

/// Cyclic group C_n (basis g^0 .. g^{n-1}).
AlgebraRef cyclic_group_algebra(std::size_t n, const FieldSpec& f);

/// k[X]/(X^n), basis 1, X, ..., X^{n-1}.
AlgebraRef truncated_polynomial(std::size_t n, const FieldSpec& f);

/// Four-dimensional algebra with basis {1, g, x, gx}, relations g^2 = 1,
/// x^2 = 0, xg = -gx.  Requires characteristic != 2.
AlgebraRef sweedler_algebra(const FieldSpec& f);

/// Opposite algebra: the multiplication table transposed in (i, j).
AlgebraRef opposite(const AlgebraRef& a);

struct TrivialExtensionResult {
    AlgebraRef algebra;          // A + A* with (a,f)(b,g) = (ab, a.g + f.b)
    Matrix trace_functional;     // 1 x 2dim: (a,f) -> f(1); symmetric nondegenerate form
};

/// Trivial extension A x A*; basis = A-basis then dual basis, in order.
TrivialExtensionResult trivial_extension(const AlgebraRef& a);

}  // namespace sepeq
