#include "sepeq/matrix.hpp"

#include <sstream>

namespace sepeq {

namespace {

void check_field(const Matrix& a, const Matrix& b) {
    if (a.field() != b.field())
        throw ValidationError("Matrix: mixed fields " + a.field().str() + " and " + b.field().str());
}

}  // namespace

Matrix Matrix::identity(const FieldSpec& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

Matrix Matrix::of_ints(const FieldSpec& f, std::initializer_list<std::initializer_list<long long>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix m(f, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw ValidationError("Matrix: ragged literal");
        std::size_t j = 0;
        for (long long v : row) m.at(i, j++) = Scalar::of(v, f);
        ++i;
    }
    return m;
}

Matrix Matrix::row_vector(const FieldSpec& f, std::initializer_list<long long> entries) {
    Matrix m(f, 1, entries.size());
    std::size_t j = 0;
    for (long long v : entries) m.at(0, j++) = Scalar::of(v, f);
    return m;
}

Matrix Matrix::column_vector(const FieldSpec& f, std::initializer_list<long long> entries) {
    Matrix m(f, entries.size(), 1);
    std::size_t i = 0;
    for (long long v : entries) m.at(i++, 0) = Scalar::of(v, f);
    return m;
}

const Scalar& Matrix::at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw ValidationError("Matrix: index out of range");
    return data_[r * cols_ + c];
}

Scalar& Matrix::at(std::size_t r, std::size_t c) {
    if (r >= rows_ || c >= cols_) throw ValidationError("Matrix: index out of range");
    return data_[r * cols_ + c];
}

Matrix Matrix::operator+(const Matrix& o) const {
    check_field(*this, o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ValidationError("Matrix: shape mismatch in +");
    Matrix m(field_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] + o.data_[i];
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
    check_field(*this, o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ValidationError("Matrix: shape mismatch in -");
    Matrix m(field_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] - o.data_[i];
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    check_field(*this, o);
    if (cols_ != o.rows_) throw ValidationError("Matrix: shape mismatch in *");
    Matrix m(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = data_[i * cols_ + k];
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Scalar& b = o.data_[k * o.cols_ + j];
                if (!b.is_zero()) m.data_[i * o.cols_ + j] += a * b;
            }
        }
    return m;
}

Matrix Matrix::scaled(const Scalar& s) const {
    Matrix m(field_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] * s;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

Matrix Matrix::row(std::size_t r) const {
    Matrix m(field_, 1, cols_);
    for (std::size_t j = 0; j < cols_; ++j) m.at(0, j) = at(r, j);
    return m;
}

Matrix Matrix::col(std::size_t c) const {
    Matrix m(field_, rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) m.at(i, 0) = at(i, c);
    return m;
}

bool Matrix::operator==(const Matrix& o) const {
    if (field_ != o.field_ || rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < data_.size(); ++i)
        if (data_[i] != o.data_[i]) return false;
    return true;
}

bool Matrix::is_zero() const {
    for (const auto& s : data_)
        if (!s.is_zero()) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
        }
    return true;
}

Matrix Matrix::vec() const {
    Matrix v(field_, rows_ * cols_, 1);
    for (std::size_t i = 0; i < data_.size(); ++i) v.data_[i] = data_[i];
    return v;
}

Matrix Matrix::unvec(const Matrix& v, std::size_t rows, std::size_t cols) {
    if (v.cols() != 1 || v.rows() != rows * cols) throw ValidationError("Matrix: unvec shape mismatch");
    Matrix m(v.field(), rows, cols);
    for (std::size_t i = 0; i < rows * cols; ++i) m.data_[i] = v.data_[i];
    return m;
}

std::string Matrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).str();
    }
    os << "]";
    return os.str();
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    check_field(a, b);
    if (a.rows() != b.rows()) throw ValidationError("Matrix: hstack row mismatch");
    Matrix m(a.field(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
    }
    return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    check_field(a, b);
    if (a.cols() != b.cols()) throw ValidationError("Matrix: vstack column mismatch");
    Matrix m(a.field(), a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(a.rows() + i, j) = b.at(i, j);
    return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    check_field(a, b);
    Matrix m(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Scalar& s = a.at(i, j);
            if (s.is_zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    m.at(i * b.rows() + k, j * b.cols() + l) = s * b.at(k, l);
        }
    return m;
}

RrefResult rref(const Matrix& m) {
    RrefResult out;
    Matrix a = m;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t pivot = a.rows();
        for (std::size_t i = r; i < a.rows(); ++i)
            if (!a.at(i, c).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot == a.rows()) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(r, j), a.at(pivot, j));
        Scalar inv = a.at(r, c).inverse();
        for (std::size_t j = c; j < a.cols(); ++j) a.at(r, j) = a.at(r, j) * inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r) continue;
            Scalar f = a.at(i, c);
            if (f.is_zero()) continue;
            for (std::size_t j = c; j < a.cols(); ++j) a.at(i, j) = a.at(i, j) - f * a.at(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    out.matrix = std::move(a);
    return out;
}

std::optional<LinearSolution> solve(const Matrix& m, const Matrix& b) {
    if (b.cols() != 1 || b.rows() != m.rows())
        throw ValidationError("solve: right-hand side must be rows(M) x 1");
    RrefResult rr = rref(hstack(m, b));
    const std::size_t n = m.cols();
    // A pivot in the appended column marks inconsistency.
    for (std::size_t p : rr.pivots)
        if (p == n) return std::nullopt;
    LinearSolution sol;
    sol.particular = Matrix(m.field(), n, 1);
    for (std::size_t t = 0; t < rr.pivots.size(); ++t)
        sol.particular.at(rr.pivots[t], 0) = rr.matrix.at(t, n);
    // Kernel from the same RREF, restricted to the original columns.
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : rr.pivots)
        if (p < n) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    sol.kernel_basis = Matrix(m.field(), n, free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::size_t fc = free_cols[k];
        sol.kernel_basis.at(fc, k) = Scalar::one(m.field());
        for (std::size_t t = 0; t < rr.pivots.size(); ++t)
            sol.kernel_basis.at(rr.pivots[t], k) = -rr.matrix.at(t, fc);
    }
    return sol;
}

Matrix kernel(const Matrix& m) {
    RrefResult rr = rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : rr.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Matrix basis(m.field(), n, free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        basis.at(free_cols[k], k) = Scalar::one(m.field());
        for (std::size_t t = 0; t < rr.pivots.size(); ++t)
            basis.at(rr.pivots[t], k) = -rr.matrix.at(t, free_cols[k]);
    }
    return basis;
}

std::optional<Matrix> column_space_membership(const Matrix& m, const Matrix& v) {
    auto sol = solve(m, v);
    if (!sol) return std::nullopt;
    return sol->particular;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (!m.is_square()) throw ValidationError("inverse: matrix not square");
    RrefResult rr = rref(hstack(m, Matrix::identity(m.field(), m.rows())));
    if (rr.rank < m.rows()) return std::nullopt;
    for (std::size_t p : rr.pivots)
        if (p >= m.cols()) return std::nullopt;
    Matrix inv(m.field(), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) inv.at(i, j) = rr.matrix.at(i, m.cols() + j);
    return inv;
}

std::optional<Scalar> determinant(const Matrix& m) {
    if (!m.is_square()) return std::nullopt;
    // Fraction-free style elimination is unnecessary at these sizes; plain
    // exact Gaussian elimination with row swaps tracks the sign.
    Matrix a = m;
    Scalar det = Scalar::one(m.field());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        std::size_t pivot = a.rows();
        for (std::size_t i = c; i < a.rows(); ++i)
            if (!a.at(i, c).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot == a.rows()) return Scalar::zero(m.field());
        if (pivot != c) {
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(c, j), a.at(pivot, j));
            det = -det;
        }
        det = det * a.at(c, c);
        Scalar inv = a.at(c, c).inverse();
        for (std::size_t i = c + 1; i < a.rows(); ++i) {
            Scalar f = a.at(i, c) * inv;
            if (f.is_zero()) continue;
            for (std::size_t j = c; j < a.cols(); ++j) a.at(i, j) = a.at(i, j) - f * a.at(c, j);
        }
    }
    return det;
}

void LinearSystem::require(const Matrix& coeffs, const Matrix& rhs) {
    if (coeffs.cols() != unknowns_) throw ValidationError("LinearSystem: coefficient width mismatch");
    if (rhs.cols() != 1 || rhs.rows() != coeffs.rows())
        throw ValidationError("LinearSystem: right-hand side shape mismatch");
    if (lhs_.rows() == 0 && lhs_.cols() == 0) {
        lhs_ = coeffs;
        rhs_ = rhs;
    } else {
        lhs_ = vstack(lhs_, coeffs);
        rhs_ = vstack(rhs_, rhs);
    }
}

void LinearSystem::require_zero(const Matrix& coeffs) {
    require(coeffs, Matrix(field_, coeffs.rows(), 1));
}

std::optional<LinearSolution> LinearSystem::solve() const {
    if (lhs_.rows() == 0) {
        LinearSolution sol;
        sol.particular = Matrix(field_, unknowns_, 1);
        sol.kernel_basis = Matrix::identity(field_, unknowns_);
        return sol;
    }
    return sepeq::solve(lhs_, rhs_);
}

Matrix LinearSystem::solution_space() const {
    if (!rhs_.is_zero()) throw ValidationError("LinearSystem: solution_space needs homogeneous system");
    if (lhs_.rows() == 0) return Matrix::identity(field_, unknowns_);
    return kernel(lhs_);
}

std::string LinearSystem::fingerprint() const {
    std::ostringstream os;
    os << equations() << " equations, " << unknowns_ << " unknowns";
    if (lhs_.rows() > 0) {
        RrefResult a = rref(lhs_);
        RrefResult b = rref(hstack(lhs_, rhs_));
        os << ", rank " << a.rank << ", augmented rank " << b.rank;
    }
    return os.str();
}

}  // namespace sepeq
