#include "sepeq/algebra.hpp"

#include <sstream>

namespace sepeq {

AlgebraRef Algebra::validate(std::string name, const FieldSpec& field, std::size_t dim,
                             std::vector<std::vector<std::vector<Scalar>>> mult,
                             std::vector<Scalar> unit) {
    if (dim == 0) throw ValidationError("algebra '" + name + "': dimension must be >= 1");
    if (mult.size() != dim) throw ValidationError("algebra '" + name + "': mult table has wrong row count");
    auto a = std::shared_ptr<Algebra>(new Algebra());
    a->name_ = std::move(name);
    a->field_ = field;
    a->dim_ = dim;
    a->mult_.reserve(dim * dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (mult[i].size() != dim)
            throw ValidationError("algebra '" + a->name_ + "': mult table row " + std::to_string(i) +
                                  " has wrong length");
        for (std::size_t j = 0; j < dim; ++j) {
            if (mult[i][j].size() != dim)
                throw ValidationError("algebra '" + a->name_ + "': product vector at (" + std::to_string(i) +
                                      "," + std::to_string(j) + ") has wrong length");
            for (std::size_t k = 0; k < dim; ++k) {
                if (mult[i][j][k].field() != field)
                    throw ValidationError("algebra '" + a->name_ + "': structure constant field mismatch");
                a->mult_.push_back(mult[i][j][k]);
            }
        }
    }
    if (unit.size() != dim) throw ValidationError("algebra '" + a->name_ + "': unit vector has wrong length");
    a->unit_ = Matrix(field, dim, 1);
    for (std::size_t i = 0; i < dim; ++i) a->unit_.at(i, 0) = unit[i];

    a->left_basis_.reserve(dim);
    a->right_basis_.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        Matrix L(field, dim, dim), R(field, dim, dim);
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k < dim; ++k) {
                L.at(k, j) = a->structure_const(i, j, k);  // e_i e_j
                R.at(k, j) = a->structure_const(j, i, k);  // e_j e_i
            }
        a->left_basis_.push_back(std::move(L));
        a->right_basis_.push_back(std::move(R));
    }

    // Unit axiom on every basis vector.
    for (std::size_t i = 0; i < dim; ++i) {
        Matrix ei = a->basis_vector(i);
        if (a->mul(a->unit_, ei) != ei || a->mul(ei, a->unit_) != ei)
            throw ValidationError("algebra '" + a->name_ + "': unit axiom fails at basis index i=" +
                                  std::to_string(i));
    }
    // Associativity on every basis triple.
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            Matrix eij = a->mul(a->basis_vector(i), a->basis_vector(j));
            for (std::size_t k = 0; k < dim; ++k) {
                Matrix lhs = a->mul(eij, a->basis_vector(k));
                Matrix rhs = a->mul(a->basis_vector(i), a->mul(a->basis_vector(j), a->basis_vector(k)));
                if (lhs != rhs)
                    throw ValidationError("algebra '" + a->name_ + "': associativity fails at (i,j,k)=(" +
                                          std::to_string(i) + "," + std::to_string(j) + "," +
                                          std::to_string(k) + ")");
            }
        }
    return a;
}

Matrix Algebra::basis_vector(std::size_t i) const {
    Matrix v(field_, dim_, 1);
    v.at(i, 0) = Scalar::one(field_);
    return v;
}

Matrix Algebra::mul(const Matrix& x, const Matrix& y) const {
    if (x.rows() != dim_ || y.rows() != dim_ || x.cols() != 1 || y.cols() != 1)
        throw ValidationError("algebra '" + name_ + "': element shape mismatch");
    Matrix out(field_, dim_, 1);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (x.at(i, 0).is_zero()) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            Scalar c = x.at(i, 0) * y.at(j, 0);
            if (c.is_zero()) continue;
            for (std::size_t k = 0; k < dim_; ++k)
                out.at(k, 0) += c * structure_const(i, j, k);
        }
    }
    return out;
}

Matrix Algebra::left_mult(const Matrix& x) const {
    Matrix out(field_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        if (!x.at(i, 0).is_zero()) out = out + left_basis_[i].scaled(x.at(i, 0));
    return out;
}

Matrix Algebra::right_mult(const Matrix& x) const {
    Matrix out(field_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        if (!x.at(i, 0).is_zero()) out = out + right_basis_[i].scaled(x.at(i, 0));
    return out;
}

bool Algebra::same_presentation(const Algebra& other) const {
    if (field_ != other.field_ || dim_ != other.dim_ || unit_ != other.unit_) return false;
    for (std::size_t t = 0; t < mult_.size(); ++t)
        if (mult_[t] != other.mult_[t]) return false;
    return true;
}

std::string Algebra::describe() const {
    std::ostringstream os;
    os << name_ << ": dim " << dim_ << " over " << field_.str();
    return os.str();
}

AlgebraElement::AlgebraElement(AlgebraRef parent, Matrix coeffs)
    : parent_(std::move(parent)), coeffs_(std::move(coeffs)) {
    if (coeffs_.rows() != parent_->dim() || coeffs_.cols() != 1)
        throw ValidationError("AlgebraElement: coefficient count != algebra dimension");
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    return AlgebraElement(parent_, coeffs_ + o.coeffs_);
}
AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
    return AlgebraElement(parent_, coeffs_ - o.coeffs_);
}
AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
    return AlgebraElement(parent_, parent_->mul(coeffs_, o.coeffs_));
}
AlgebraElement AlgebraElement::scaled(const Scalar& s) const {
    return AlgebraElement(parent_, coeffs_.scaled(s));
}
bool AlgebraElement::operator==(const AlgebraElement& o) const { return coeffs_ == o.coeffs_; }

AlgebraMap::AlgebraMap(AlgebraRef source, AlgebraRef target, Matrix matrix, MapFlavor flavor)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)), flavor_(flavor) {
    if (matrix_.rows() != target_->dim() || matrix_.cols() != source_->dim())
        throw ValidationError("AlgebraMap: matrix shape must be target.dim x source.dim");
    if (matrix_ * source_->unit() != target_->unit())
        throw ValidationError("AlgebraMap: unit not preserved");
    for (std::size_t i = 0; i < source_->dim(); ++i)
        for (std::size_t j = 0; j < source_->dim(); ++j) {
            Matrix lhs = matrix_ * source_->mul(source_->basis_vector(i), source_->basis_vector(j));
            Matrix fi = matrix_ * source_->basis_vector(i);
            Matrix fj = matrix_ * source_->basis_vector(j);
            Matrix rhs = flavor_ == MapFlavor::homomorphism ? target_->mul(fi, fj) : target_->mul(fj, fi);
            if (lhs != rhs)
                throw ValidationError("AlgebraMap: multiplicativity fails at basis pair (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
        }
}

bool AlgebraMap::is_injective() const { return kernel(matrix_).cols() == 0; }

bool AlgebraMap::is_bijective() const {
    return source_->dim() == target_->dim() && is_injective();
}

AlgebraMap AlgebraMap::identity(AlgebraRef a) {
    Matrix id = Matrix::identity(a->field(), a->dim());
    return AlgebraMap(a, a, id);
}

AlgebraMap AlgebraMap::compose(const AlgebraMap& other) const {
    if (!other.target_->same_presentation(*source_))
        throw ValidationError("AlgebraMap: composition domain mismatch");
    MapFlavor f = (flavor_ == other.flavor_) ? MapFlavor::homomorphism : MapFlavor::antihomomorphism;
    return AlgebraMap(other.source_, target_, matrix_ * other.matrix_, f);
}

std::optional<AlgebraMap> AlgebraMap::inverse_map() const {
    if (!is_bijective()) return std::nullopt;
    auto inv = inverse(matrix_);
    if (!inv) return std::nullopt;
    return AlgebraMap(target_, source_, *inv, flavor_);
}

namespace {

std::vector<std::vector<std::vector<Scalar>>> empty_table(const FieldSpec& f, std::size_t n) {
    return std::vector<std::vector<std::vector<Scalar>>>(
        n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar::zero(f))));
}

}  // namespace

AlgebraRef ground_field_algebra(const FieldSpec& f, const std::string& name) {
    auto mult = empty_table(f, 1);
    mult[0][0][0] = Scalar::one(f);
    return Algebra::validate(name, f, 1, mult, {Scalar::one(f)});
}

AlgebraRef matrix_algebra(std::size_t n, const FieldSpec& f) {
    if (n == 0) throw ValidationError("matrix_algebra: n must be >= 1");
    std::size_t dim = n * n;
    auto mult = empty_table(f, dim);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    if (j == k) mult[i * n + j][k * n + l][i * n + l] = Scalar::one(f);
    std::vector<Scalar> unit(dim, Scalar::zero(f));
    for (std::size_t i = 0; i < n; ++i) unit[i * n + i] = Scalar::one(f);
    return Algebra::validate("M" + std::to_string(n), f, dim, mult, unit);
}

AlgebraRef group_algebra(const std::vector<std::vector<std::size_t>>& table, const FieldSpec& f,
                         const std::string& name) {
    std::size_t n = table.size();
    if (n == 0) throw ValidationError("group_algebra: empty table");
    for (std::size_t i = 0; i < n; ++i) {
        if (table[i].size() != n) throw ValidationError("group_algebra: table is not square");
        for (std::size_t j = 0; j < n; ++j)
            if (table[i][j] >= n)
                throw ValidationError("group_algebra: entry out of range at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
    }
    // Identity element.
    std::size_t id = n;
    for (std::size_t e = 0; e < n; ++e) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) ok = table[e][i] == i && table[i][e] == i;
        if (ok) {
            id = e;
            break;
        }
    }
    if (id == n) throw ValidationError("group_algebra: table has no identity element");
    // Inverses.
    for (std::size_t i = 0; i < n; ++i) {
        bool has_inverse = false;
        for (std::size_t j = 0; j < n && !has_inverse; ++j)
            has_inverse = table[i][j] == id && table[j][i] == id;
        if (!has_inverse)
            throw ValidationError("group_algebra: element " + std::to_string(i) + " has no inverse");
    }
    // Associativity of the table.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (table[table[i][j]][k] != table[i][table[j][k]])
                    throw ValidationError("group_algebra: associativity fails at (" + std::to_string(i) +
                                          "," + std::to_string(j) + "," + std::to_string(k) + ")");

    auto mult = empty_table(f, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) mult[i][j][table[i][j]] = Scalar::one(f);
    std::vector<Scalar> unit(n, Scalar::zero(f));
    unit[id] = Scalar::one(f);
    return Algebra::validate(name, f, n, mult, unit);
}

AlgebraRef cyclic_group_algebra(std::size_t n, const FieldSpec& f) {
    if (n == 0) throw ValidationError("cyclic_group_algebra: n must be >= 1");
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) table[i][j] = (i + j) % n;
    return group_algebra(table, f, "k[C" + std::to_string(n) + "]");
}

AlgebraRef truncated_polynomial(std::size_t n, const FieldSpec& f) {
    if (n == 0) throw ValidationError("truncated_polynomial: n must be >= 1");
    auto mult = empty_table(f, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i + j < n) mult[i][j][i + j] = Scalar::one(f);
    std::vector<Scalar> unit(n, Scalar::zero(f));
    unit[0] = Scalar::one(f);
    return Algebra::validate("k[X]/(X^" + std::to_string(n) + ")", f, n, mult, unit);
}

AlgebraRef sweedler_algebra(const FieldSpec& f) {
    if (f.characteristic() == 2)
        throw ValidationError("sweedler_algebra: characteristic 2 is excluded");
    const Scalar one = Scalar::one(f), neg = -Scalar::one(f);
    auto mult = empty_table(f, 4);
    // Basis order: 1, g, x, gx.
    auto set = [&](std::size_t i, std::size_t j, std::size_t k, const Scalar& c) { mult[i][j][k] = c; };
    for (std::size_t j = 0; j < 4; ++j) {
        set(0, j, j, one);           // 1 * e_j
        if (j != 0) set(j, 0, j, one);  // e_j * 1
    }
    set(1, 1, 0, one);   // g g = 1
    set(1, 2, 3, one);   // g x = gx
    set(1, 3, 2, one);   // g gx = x
    set(2, 1, 3, neg);   // x g = -gx
    // x x = 0, x gx = 0
    set(3, 1, 2, neg);   // gx g = -x
    // gx x = 0, gx gx = 0
    std::vector<Scalar> unit = {one, Scalar::zero(f), Scalar::zero(f), Scalar::zero(f)};
    return Algebra::validate("sweedler", f, 4, mult, unit);
}

AlgebraRef opposite(const AlgebraRef& a) {
    std::size_t n = a->dim();
    auto mult = empty_table(a->field(), n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) mult[i][j][k] = a->structure_const(j, i, k);
    std::vector<Scalar> unit(n, Scalar::zero(a->field()));
    for (std::size_t i = 0; i < n; ++i) unit[i] = a->unit().at(i, 0);
    return Algebra::validate(a->name() + "^op", a->field(), n, mult, unit);
}

TrivialExtensionResult trivial_extension(const AlgebraRef& a) {
    const FieldSpec& f = a->field();
    std::size_t n = a->dim();
    std::size_t dim = 2 * n;
    auto mult = empty_table(f, dim);
    // Basis: u_i = (e_i, 0) for i < n, then v_j = (0, e_j^*).
    // u_i u_j = (e_i e_j, 0);
    // u_i v_j = sum_l c[l][i][j] v_l   (since (e_i . e_j^*)(e_l) = e_j^*(e_l e_i));
    // v_j u_i = sum_l c[i][l][j] v_l   (since (e_j^* . e_i)(e_l) = e_j^*(e_i e_l));
    // v v = 0.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                mult[i][j][k] = a->structure_const(i, j, k);
                mult[i][n + j][n + k] = a->structure_const(k, i, j);
                mult[n + j][i][n + k] = a->structure_const(i, k, j);
            }
    std::vector<Scalar> unit(dim, Scalar::zero(f));
    for (std::size_t i = 0; i < n; ++i) unit[i] = a->unit().at(i, 0);
    TrivialExtensionResult out;
    out.algebra = Algebra::validate("T(" + a->name() + ")", f, dim, mult, unit);
    // The pairing functional (a, phi) -> phi(1_A).
    out.trace_functional = Matrix(f, 1, dim);
    for (std::size_t j = 0; j < n; ++j) out.trace_functional.at(0, n + j) = a->unit().at(j, 0);
    return out;
}

}  // namespace sepeq
