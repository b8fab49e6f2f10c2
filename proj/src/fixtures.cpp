#include "sepeq/fixtures.hpp"

namespace sepeq {

FrobeniusExtensionData c2_extension_data(const FieldSpec& f) {
    auto b = ground_field_algebra(f);
    auto a = cyclic_group_algebra(2, f);
    AlgebraMap iota(b, a, a->unit());
    Matrix e(f, 1, 2);
    e.at(0, 0) = Scalar::one(f);  // coefficient of 1
    std::vector<std::pair<Matrix, Matrix>> db = {{a->basis_vector(0), a->basis_vector(0)},
                                                 {a->basis_vector(1), a->basis_vector(1)}};
    return FrobeniusExtensionData{std::move(iota), std::move(e), std::move(db)};
}

FrobeniusExtensionData m2_extension_data(const FieldSpec& f) {
    if (f.characteristic() == 2)
        throw ValidationError("m2_extension_data: needs 2 invertible (E is the halved trace)");
    auto b = ground_field_algebra(f);
    auto a = matrix_algebra(2, f);
    AlgebraMap iota(b, a, a->unit());
    // E(x) = tr(x)/2 so that E restricts to the identity on k.1; the
    // dual-basis law then forces the pairs (2 E_ij, E_ji).
    Scalar half = Scalar::one(f) / Scalar::of(2, f);
    Matrix e(f, 1, 4);
    e.at(0, 0) = half;
    e.at(0, 3) = half;
    std::vector<std::pair<Matrix, Matrix>> db;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            db.emplace_back(a->basis_vector(2 * i + j).scaled(Scalar::of(2, f)),
                            a->basis_vector(2 * j + i));
    return FrobeniusExtensionData{std::move(iota), std::move(e), std::move(db)};
}

FrobeniusExtensionData kx2_extension_data(const FieldSpec& f) {
    auto b = ground_field_algebra(f);
    auto a = truncated_polynomial(2, f);
    AlgebraMap iota(b, a, a->unit());
    Matrix e(f, 1, 2);
    e.at(0, 1) = Scalar::one(f);  // coefficient of X
    std::vector<std::pair<Matrix, Matrix>> db = {{a->basis_vector(0), a->basis_vector(1)},
                                                 {a->basis_vector(1), a->basis_vector(0)}};
    return FrobeniusExtensionData{std::move(iota), std::move(e), std::move(db)};
}

BimoduleRef m2_column_bimodule(const FieldSpec& f) {
    auto m2 = matrix_algebra(2, f);
    auto k = ground_field_algebra(f);
    std::vector<Matrix> left, right;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            Matrix e(f, 2, 2);
            e.at(i, j) = Scalar::one(f);
            left.push_back(e);
        }
    right.push_back(Matrix::identity(f, 2));
    return Bimodule::validate("columns", m2, k, 2, std::move(left), std::move(right));
}

BimoduleRef m2_row_bimodule(const FieldSpec& f) {
    auto m2 = matrix_algebra(2, f);
    auto k = ground_field_algebra(f);
    std::vector<Matrix> left, right;
    left.push_back(Matrix::identity(f, 2));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            Matrix e(f, 2, 2);
            e.at(j, i) = Scalar::one(f);  // (v E_ij)_j = v_i
            right.push_back(e);
        }
    return Bimodule::validate("rows", k, m2, 2, std::move(left), std::move(right));
}

Context m2_column_row_context(const FieldSpec& f) {
    auto m2 = matrix_algebra(2, f);
    auto k = ground_field_algebra(f);
    auto p = m2_column_bimodule(f);
    auto q = m2_row_bimodule(f);
    TensorSpace pq(p, q), qp(q, p);

    // nu(col_i (x) row_j) = E_ij on pure tensors.
    Matrix nu_pure(f, 4, 4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) nu_pure.at(2 * i + j, 2 * i + j) = Scalar::one(f);
    // mu(row_a (x) col_b) = delta_ab.
    Matrix mu_pure(f, 1, 4);
    mu_pure.at(0, 0) = Scalar::one(f);
    mu_pure.at(0, 3) = Scalar::one(f);
    return Context::make(m2, k, p, q, nu_pure * pq.section(), mu_pure * qp.section());
}

Matrix sweedler_gx_functional(const FieldSpec& f) {
    Matrix lambda(f, 1, 4);
    lambda.at(0, 3) = Scalar::one(f);
    return lambda;
}

Matrix kx2_x_functional(const FieldSpec& f) {
    Matrix lambda(f, 1, 2);
    lambda.at(0, 1) = Scalar::one(f);
    return lambda;
}

}  // namespace sepeq
