// Dense exact matrices over Q or F_p, with the deterministic elimination
// routines (leftmost pivot, free variables zeroed) that every feasibility
// check in this library reduces to.  Values are immutable in spirit: all
// operations return fresh matrices, so concurrent read-only use is safe.

#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "sepeq/field.hpp"

namespace sepeq {

class Matrix {
public:
    Matrix() : field_(FieldSpec::rationals()) {}
    Matrix(const FieldSpec& f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f)) {}

    static Matrix identity(const FieldSpec& f, std::size_t n);
    /// Builds from integer literals; convenient in tests and fixtures.
    static Matrix of_ints(const FieldSpec& f, std::initializer_list<std::initializer_list<long long>> rows);
    static Matrix row_vector(const FieldSpec& f, std::initializer_list<long long> entries);
    static Matrix column_vector(const FieldSpec& f, std::initializer_list<long long> entries);

    const FieldSpec& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Scalar& at(std::size_t r, std::size_t c) const;
    Scalar& at(std::size_t r, std::size_t c);

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;  // matrix product
    Matrix scaled(const Scalar& s) const;
    Matrix operator-() const { return scaled(-Scalar::one(field_)); }

    Matrix transpose() const;
    Matrix row(std::size_t r) const;
    Matrix col(std::size_t c) const;

    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }
    bool is_zero() const;
    bool is_identity() const;
    bool is_square() const { return rows_ == cols_; }

    /// Row-major flattening to a (rows*cols)x1 column; inverse of unvec.
    Matrix vec() const;
    static Matrix unvec(const Matrix& v, std::size_t rows, std::size_t cols);

    std::string str() const;  // human-readable, for reports and failures

private:
    FieldSpec field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;  // row-major
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
/// Kronecker product; with row-major vec, vec(A X B) = kron(A, B^T) vec(X).
Matrix kron(const Matrix& a, const Matrix& b);

struct RrefResult {
    Matrix matrix;
    std::vector<std::size_t> pivots;  // pivot columns, increasing
    std::size_t rank = 0;
};

/// Reduced row echelon form; exact, deterministic (topmost nonzero entry of
/// the leftmost eligible column is the pivot).
RrefResult rref(const Matrix& m);

struct LinearSolution {
    Matrix particular;    // cols(M) x 1, free variables set to 0
    Matrix kernel_basis;  // cols(M) x k, one column per free variable, in column order
};

/// Solves M x = b exactly.  Empty optional when inconsistent.
std::optional<LinearSolution> solve(const Matrix& m, const Matrix& b);

/// Basis of ker M as columns (cols(M) x k), from the RREF convention.
Matrix kernel(const Matrix& m);

/// Coefficients expressing v as a column combination of M, when possible.
std::optional<Matrix> column_space_membership(const Matrix& m, const Matrix& v);

/// Inverse of a square matrix; empty when singular.
std::optional<Matrix> inverse(const Matrix& m);

std::optional<Scalar> determinant(const Matrix& m);  // empty only for non-square

/// Incremental assembly of one joint linear system A x = b over a fixed
/// unknown count; every feasibility predicate funnels through this.
class LinearSystem {
public:
    LinearSystem(const FieldSpec& f, std::size_t unknowns) : field_(f), unknowns_(unknowns) {}

    /// Appends the block "coeffs * x = rhs" (rhs defaults to zero rows).
    void require(const Matrix& coeffs, const Matrix& rhs);
    void require_zero(const Matrix& coeffs);

    std::size_t unknowns() const { return unknowns_; }
    std::size_t equations() const { return lhs_.rows(); }

    std::optional<LinearSolution> solve() const;
    Matrix solution_space() const;  // kernel of the homogeneous part (rhs must be all zero)

    /// Dimensions-and-rank summary used in refutation fingerprints.
    std::string fingerprint() const;

private:
    FieldSpec field_;
    std::size_t unknowns_;
    Matrix lhs_;  // grows by vstack
    Matrix rhs_;
};

}  // namespace sepeq
