#include "sepeq/bimodule.hpp"

namespace sepeq {

BimoduleRef Bimodule::validate(std::string name, AlgebraRef left_alg, AlgebraRef right_alg,
                               std::size_t dim, std::vector<Matrix> left_action,
                               std::vector<Matrix> right_action) {
    auto m = std::shared_ptr<Bimodule>(new Bimodule());
    m->name_ = std::move(name);
    m->left_alg_ = std::move(left_alg);
    m->right_alg_ = std::move(right_alg);
    m->dim_ = dim;
    m->left_action_ = std::move(left_action);
    m->right_action_ = std::move(right_action);

    const Algebra& A = *m->left_alg_;
    const Algebra& B = *m->right_alg_;
    if (m->left_action_.size() != A.dim())
        throw ValidationError("bimodule '" + m->name_ + "': left action count != dim of " + A.name());
    if (m->right_action_.size() != B.dim())
        throw ValidationError("bimodule '" + m->name_ + "': right action count != dim of " + B.name());
    for (const Matrix& l : m->left_action_)
        if (l.rows() != dim || l.cols() != dim || l.field() != A.field())
            throw ValidationError("bimodule '" + m->name_ + "': left action matrix shape/field mismatch");
    for (const Matrix& r : m->right_action_)
        if (r.rows() != dim || r.cols() != dim || r.field() != A.field())
            throw ValidationError("bimodule '" + m->name_ + "': right action matrix shape/field mismatch");
    if (A.field() != B.field())
        throw ValidationError("bimodule '" + m->name_ + "': algebras over different fields");

    if (!m->left_act(A.unit()).is_identity())
        throw ValidationError("bimodule '" + m->name_ + "': left action of the unit is not the identity");
    if (!m->right_act(B.unit()).is_identity())
        throw ValidationError("bimodule '" + m->name_ + "': right action of the unit is not the identity");

    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = 0; j < A.dim(); ++j) {
            Matrix prod = m->left_act(A.mul(A.basis_vector(i), A.basis_vector(j)));
            if (prod != m->left_action_[i] * m->left_action_[j])
                throw ValidationError("bimodule '" + m->name_ + "': left action is not a homomorphism at (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
        }
    for (std::size_t i = 0; i < B.dim(); ++i)
        for (std::size_t j = 0; j < B.dim(); ++j) {
            Matrix prod = m->right_act(B.mul(B.basis_vector(i), B.basis_vector(j)));
            if (prod != m->right_action_[j] * m->right_action_[i])
                throw ValidationError("bimodule '" + m->name_ +
                                      "': right action is not an antihomomorphism at (" + std::to_string(i) +
                                      "," + std::to_string(j) + ")");
        }
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = 0; j < B.dim(); ++j)
            if (m->left_action_[i] * m->right_action_[j] != m->right_action_[j] * m->left_action_[i])
                throw ValidationError("bimodule '" + m->name_ + "': actions do not commute at (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
    return m;
}

Matrix Bimodule::left_act(const Matrix& a) const {
    Matrix out(field(), dim_, dim_);
    for (std::size_t i = 0; i < left_action_.size(); ++i)
        if (!a.at(i, 0).is_zero()) out = out + left_action_[i].scaled(a.at(i, 0));
    return out;
}

Matrix Bimodule::right_act(const Matrix& b) const {
    Matrix out(field(), dim_, dim_);
    for (std::size_t j = 0; j < right_action_.size(); ++j)
        if (!b.at(j, 0).is_zero()) out = out + right_action_[j].scaled(b.at(j, 0));
    return out;
}

BimoduleMap::BimoduleMap(BimoduleRef source, BimoduleRef target, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (!source_->left_alg()->same_presentation(*target_->left_alg()) ||
        !source_->right_alg()->same_presentation(*target_->right_alg()))
        throw ValidationError("BimoduleMap: source and target are over different algebra pairs");
    if (matrix_.rows() != target_->dim() || matrix_.cols() != source_->dim())
        throw ValidationError("BimoduleMap: matrix shape must be target.dim x source.dim");
    const Algebra& A = *source_->left_alg();
    const Algebra& B = *source_->right_alg();
    for (std::size_t i = 0; i < A.dim(); ++i)
        if (matrix_ * source_->left_basis_action(i) != target_->left_basis_action(i) * matrix_)
            throw ValidationError("BimoduleMap: fails left equivariance at basis index " + std::to_string(i));
    for (std::size_t j = 0; j < B.dim(); ++j)
        if (matrix_ * source_->right_basis_action(j) != target_->right_basis_action(j) * matrix_)
            throw ValidationError("BimoduleMap: fails right equivariance at basis index " + std::to_string(j));
}

BimoduleMap BimoduleMap::compose(const BimoduleMap& inner) const {
    if (inner.target_->dim() != source_->dim())
        throw ValidationError("BimoduleMap: composition dimension mismatch");
    return BimoduleMap(inner.source_, target_, matrix_ * inner.matrix_);
}

BimoduleMap BimoduleMap::identity(BimoduleRef m) {
    Matrix id = Matrix::identity(m->field(), m->dim());
    return BimoduleMap(m, m, id);
}

TensorSpace::TensorSpace(BimoduleRef left_factor, BimoduleRef right_factor)
    : p_(std::move(left_factor)), q_(std::move(right_factor)) {
    if (!p_->right_alg()->same_presentation(*q_->left_alg()))
        throw ValidationError("tensor_over: middle algebras disagree (" + p_->right_alg()->name() +
                              " vs " + q_->left_alg()->name() + ")");
    const FieldSpec& f = p_->field();
    const Algebra& C = *p_->right_alg();
    const std::size_t dp = p_->dim(), dq = q_->dim();
    ambient_dim_ = dp * dq;

    // Relation rows (p_i . c_l) x q_j - p_i x (c_l . q_j), ordered by (i, l, j).
    Matrix relations(f, dp * C.dim() * dq, ambient_dim_);
    std::size_t row = 0;
    for (std::size_t i = 0; i < dp; ++i)
        for (std::size_t l = 0; l < C.dim(); ++l) {
            const Matrix& rp = p_->right_basis_action(l);
            const Matrix& lq = q_->left_basis_action(l);
            for (std::size_t j = 0; j < dq; ++j) {
                for (std::size_t u = 0; u < dp; ++u)
                    relations.at(row, u * dq + j) += rp.at(u, i);
                for (std::size_t v = 0; v < dq; ++v)
                    relations.at(row, i * dq + v) -= lq.at(v, j);
                ++row;
            }
        }

    RrefResult rr = rref(relations);
    relation_rank_ = rr.rank;
    std::vector<bool> is_pivot(ambient_dim_, false);
    for (std::size_t p : rr.pivots) is_pivot[p] = true;
    for (std::size_t c = 0; c < ambient_dim_; ++c)
        if (!is_pivot[c]) basis_coords_.push_back(c);

    const std::size_t qdim = basis_coords_.size();
    // Row t of the RREF reads e_{pivot_t} = -sum over surviving coords.
    projector_ = Matrix(f, qdim, ambient_dim_);
    for (std::size_t s = 0; s < qdim; ++s) projector_.at(s, basis_coords_[s]) = Scalar::one(f);
    for (std::size_t t = 0; t < rr.pivots.size(); ++t)
        for (std::size_t s = 0; s < qdim; ++s)
            projector_.at(s, rr.pivots[t]) = -rr.matrix.at(t, basis_coords_[s]);
    section_ = Matrix(f, ambient_dim_, qdim);
    for (std::size_t s = 0; s < qdim; ++s) section_.at(basis_coords_[s], s) = Scalar::one(f);

    // Induced actions: act on a representative, project back.
    const Algebra& A = *p_->left_alg();
    const Algebra& B = *q_->right_alg();
    std::vector<Matrix> left_action, right_action;
    left_action.reserve(A.dim());
    right_action.reserve(B.dim());
    Matrix iq = Matrix::identity(f, dq), ip = Matrix::identity(f, dp);
    for (std::size_t i = 0; i < A.dim(); ++i)
        left_action.push_back(projector_ * kron(p_->left_basis_action(i), iq) * section_);
    for (std::size_t j = 0; j < B.dim(); ++j)
        right_action.push_back(projector_ * kron(ip, q_->right_basis_action(j)) * section_);
    result_ = Bimodule::validate(p_->name() + "(x)" + q_->name(), p_->left_alg(), q_->right_alg(), qdim,
                                 std::move(left_action), std::move(right_action));

    // Every generating relation must die in the quotient.
    if (!(projector_ * relations.transpose()).is_zero())
        throw ValidationError("tensor_over: projector does not kill the relation subspace");
}

Matrix TensorSpace::pure(std::size_t i, std::size_t j) const {
    if (i >= p_->dim() || j >= q_->dim()) throw ValidationError("TensorSpace: pure index out of range");
    return projector_.col(i * q_->dim() + j);
}

Matrix TensorSpace::pure_of(const Matrix& p, const Matrix& q) const {
    if (p.rows() != p_->dim() || q.rows() != q_->dim() || p.cols() != 1 || q.cols() != 1)
        throw ValidationError("TensorSpace: pure_of shape mismatch");
    return projector_ * kron(p, q);
}

namespace {

// Equation blocks for an unknown matrix F (rows x cols, row-major vec):
// coefficient of the constraint F*M = N*F, i.e. kron(I, M^T) - kron(N, I).
Matrix intertwine_rows(const Matrix& m, const Matrix& n, std::size_t rows, std::size_t cols) {
    const FieldSpec& f = m.field();
    return kron(Matrix::identity(f, rows), m.transpose()) - kron(n, Matrix::identity(f, cols));
}

}  // namespace

HomBimodule::HomBimodule(DualKind kind, BimoduleRef base) : kind_(kind), base_(std::move(base)) {
    const FieldSpec& f = base_->field();
    const AlgebraRef& A = base_->left_alg();
    const AlgebraRef& B = base_->right_alg();
    const std::size_t dp = base_->dim();

    std::size_t map_rows = 0;
    switch (kind_) {
        case DualKind::right_dual: map_rows = B->dim(); break;
        case DualKind::left_dual: map_rows = A->dim(); break;
        case DualKind::linear_dual: map_rows = 1; break;
    }

    // Basis of the equivariant-map solution space.
    if (kind_ == DualKind::linear_dual) {
        for (std::size_t i = 0; i < dp; ++i) {
            Matrix e(f, 1, dp);
            e.at(0, i) = Scalar::one(f);
            basis_.push_back(e);
        }
    } else {
        LinearSystem sys(f, map_rows * dp);
        if (kind_ == DualKind::right_dual) {
            for (std::size_t j = 0; j < B->dim(); ++j)
                sys.require_zero(intertwine_rows(base_->right_basis_action(j), B->right_mult_basis(j),
                                                 map_rows, dp));
        } else {
            for (std::size_t i = 0; i < A->dim(); ++i)
                sys.require_zero(intertwine_rows(base_->left_basis_action(i), A->left_mult_basis(i),
                                                 map_rows, dp));
        }
        Matrix space = sys.solution_space();
        for (std::size_t t = 0; t < space.cols(); ++t)
            basis_.push_back(Matrix::unvec(space.col(t), map_rows, dp));
    }

    basis_columns_ = Matrix(f, map_rows * dp, basis_.size());
    for (std::size_t t = 0; t < basis_.size(); ++t) {
        Matrix v = basis_[t].vec();
        for (std::size_t r = 0; r < v.rows(); ++r) basis_columns_.at(r, t) = v.at(r, 0);
    }

    // Induced (B, A)-actions, expressed in the computed basis.
    auto act_left = [&](std::size_t j, const Matrix& F) {  // action of B-basis e_j
        switch (kind_) {
            case DualKind::right_dual: return B->left_mult_basis(j) * F;   // b f(.)
            case DualKind::left_dual: return F * base_->right_basis_action(j);   // f(. b)
            case DualKind::linear_dual: return F * base_->right_basis_action(j);
        }
        throw ValidationError("HomBimodule: unreachable");
    };
    auto act_right = [&](std::size_t i, const Matrix& F) {  // action of A-basis e_i
        switch (kind_) {
            case DualKind::right_dual: return F * base_->left_basis_action(i);   // f(a .)
            case DualKind::left_dual: return A->right_mult_basis(i) * F;         // f(.) a
            case DualKind::linear_dual: return F * base_->left_basis_action(i);
        }
        throw ValidationError("HomBimodule: unreachable");
    };

    std::vector<Matrix> left_action, right_action;
    for (std::size_t j = 0; j < B->dim(); ++j) {
        Matrix act(f, basis_.size(), basis_.size());
        for (std::size_t t = 0; t < basis_.size(); ++t) {
            Matrix c = coords_of(act_left(j, basis_[t]));
            for (std::size_t u = 0; u < basis_.size(); ++u) act.at(u, t) = c.at(u, 0);
        }
        left_action.push_back(std::move(act));
    }
    for (std::size_t i = 0; i < A->dim(); ++i) {
        Matrix act(f, basis_.size(), basis_.size());
        for (std::size_t t = 0; t < basis_.size(); ++t) {
            Matrix c = coords_of(act_right(i, basis_[t]));
            for (std::size_t u = 0; u < basis_.size(); ++u) act.at(u, t) = c.at(u, 0);
        }
        right_action.push_back(std::move(act));
    }

    const char* tag = kind_ == DualKind::right_dual ? "^rd" : kind_ == DualKind::left_dual ? "^ld" : "^*";
    result_ = Bimodule::validate(base_->name() + tag, B, A, basis_.size(), std::move(left_action),
                                 std::move(right_action));
}

Matrix HomBimodule::coords_of(const Matrix& concrete) const {
    auto c = column_space_membership(basis_columns_, concrete.vec());
    if (!c) throw ValidationError("HomBimodule: map is not in the equivariant span");
    return *c;
}

Matrix HomBimodule::concrete_of(const Matrix& coords) const {
    if (coords.rows() != basis_.size() || coords.cols() != 1)
        throw ValidationError("HomBimodule: coordinate shape mismatch");
    std::size_t map_rows = basis_.empty() ? 0 : basis_[0].rows();
    std::size_t map_cols = basis_.empty() ? 0 : basis_[0].cols();
    Matrix out(base_->field(), map_rows, map_cols);
    for (std::size_t t = 0; t < basis_.size(); ++t) out = out + basis_[t].scaled(coords.at(t, 0));
    return out;
}

HomBimodule hom_right_dual(BimoduleRef p) { return HomBimodule(DualKind::right_dual, std::move(p)); }
HomBimodule hom_left_dual(BimoduleRef p) { return HomBimodule(DualKind::left_dual, std::move(p)); }
HomBimodule linear_dual(BimoduleRef p) { return HomBimodule(DualKind::linear_dual, std::move(p)); }

Matrix center(const Bimodule& w) {
    if (!w.left_alg()->same_presentation(*w.right_alg()))
        throw ValidationError("center: bimodule is not over a single algebra");
    LinearSystem sys(w.field(), w.dim());
    for (std::size_t i = 0; i < w.left_alg()->dim(); ++i)
        sys.require_zero(w.left_basis_action(i) - w.right_basis_action(i));
    return sys.solution_space();
}

BimoduleRef regular_bimodule(AlgebraRef a) {
    std::vector<Matrix> left, right;
    for (std::size_t i = 0; i < a->dim(); ++i) {
        left.push_back(a->left_mult_basis(i));
        right.push_back(a->right_mult_basis(i));
    }
    return Bimodule::validate(a->name(), a, a, a->dim(), std::move(left), std::move(right));
}

BimoduleRef bimodule_from_inclusion_left(const AlgebraMap& iota) {
    AlgebraRef B = iota.source(), A = iota.target();
    std::vector<Matrix> left, right;
    for (std::size_t i = 0; i < A->dim(); ++i) left.push_back(A->left_mult_basis(i));
    for (std::size_t j = 0; j < B->dim(); ++j)
        right.push_back(A->right_mult(iota.apply(B->basis_vector(j))));
    return Bimodule::validate("_" + A->name() + " " + A->name() + " _" + B->name(), A, B, A->dim(),
                              std::move(left), std::move(right));
}

BimoduleRef bimodule_from_inclusion_right(const AlgebraMap& iota) {
    AlgebraRef B = iota.source(), A = iota.target();
    std::vector<Matrix> left, right;
    for (std::size_t j = 0; j < B->dim(); ++j)
        left.push_back(A->left_mult(iota.apply(B->basis_vector(j))));
    for (std::size_t i = 0; i < A->dim(); ++i) right.push_back(A->right_mult_basis(i));
    return Bimodule::validate("_" + B->name() + " " + A->name() + " _" + A->name(), B, A, A->dim(),
                              std::move(left), std::move(right));
}

BimoduleRef left_module(AlgebraRef a, AlgebraRef ground, std::string name,
                        std::vector<Matrix> left_action) {
    std::size_t dim = left_action.empty() ? 0 : left_action[0].rows();
    std::vector<Matrix> right = {Matrix::identity(a->field(), dim)};
    if (ground->dim() != 1) throw ValidationError("left_module: ground algebra must be 1-dimensional");
    return Bimodule::validate(std::move(name), std::move(a), std::move(ground), dim,
                              std::move(left_action), std::move(right));
}

BimoduleRef right_module(AlgebraRef ground, AlgebraRef a, std::string name,
                         std::vector<Matrix> right_action) {
    std::size_t dim = right_action.empty() ? 0 : right_action[0].rows();
    std::vector<Matrix> left = {Matrix::identity(a->field(), dim)};
    if (ground->dim() != 1) throw ValidationError("right_module: ground algebra must be 1-dimensional");
    return Bimodule::validate(std::move(name), std::move(ground), std::move(a), dim, std::move(left),
                              std::move(right_action));
}

}  // namespace sepeq
