#include <doctest.h>

#include "sepeq/bimodule.hpp"

using namespace sepeq;

namespace {

const FieldSpec QQ = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F3 = FieldSpec::prime(3);

// Column space k^n as an (M_n(k), k)-bimodule.
BimoduleRef column_bimodule(const AlgebraRef& mn, const AlgebraRef& ground, std::size_t n) {
    std::vector<Matrix> left, right;
    const FieldSpec& f = mn->field();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Matrix e(f, n, n);
            e.at(i, j) = Scalar::one(f);
            left.push_back(e);
        }
    right.push_back(Matrix::identity(f, n));
    return Bimodule::validate("col", mn, ground, n, std::move(left), std::move(right));
}

// Row space as a (k, M_n(k))-bimodule.
BimoduleRef row_bimodule(const AlgebraRef& ground, const AlgebraRef& mn, std::size_t n) {
    std::vector<Matrix> left, right;
    const FieldSpec& f = mn->field();
    left.push_back(Matrix::identity(f, n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Matrix e(f, n, n);
            e.at(j, i) = Scalar::one(f);  // (v E_ij)_j = v_i
            right.push_back(e);
        }
    return Bimodule::validate("row", ground, mn, n, std::move(left), std::move(right));
}

// Independent construction of dim(P tensor_C Q): spans the relation subspace
// from ALL middle-algebra elements (exhaustive over F_p), not just basis ones.
std::size_t brute_force_tensor_dim(const Bimodule& p, const Bimodule& q) {
    const FieldSpec& f = p.field();
    REQUIRE_FALSE(f.is_rationals());
    const Algebra& c = *p.right_alg();
    std::size_t total = 1;
    for (std::size_t i = 0; i < c.dim(); ++i) total *= f.p;
    Matrix rows(f, 0, p.dim() * q.dim());
    for (std::size_t code = 0; code < total; ++code) {
        Matrix elt(f, c.dim(), 1);
        std::size_t rem = code;
        for (std::size_t i = 0; i < c.dim(); ++i) {
            elt.at(i, 0) = Scalar::of(static_cast<long long>(rem % f.p), f);
            rem /= f.p;
        }
        Matrix rp = p.right_act(elt), lq = q.left_act(elt);
        for (std::size_t i = 0; i < p.dim(); ++i)
            for (std::size_t j = 0; j < q.dim(); ++j) {
                Matrix row(f, 1, p.dim() * q.dim());
                for (std::size_t u = 0; u < p.dim(); ++u) row.at(0, u * q.dim() + j) += rp.at(u, i);
                for (std::size_t v = 0; v < q.dim(); ++v) row.at(0, i * q.dim() + v) -= lq.at(v, j);
                rows = vstack(rows, row);
            }
    }
    return p.dim() * q.dim() - rref(rows).rank;
}

}  // namespace

TEST_CASE("bimodule validation catches broken actions") {
    auto c2 = cyclic_group_algebra(2, QQ);
    auto reg = regular_bimodule(c2);
    CHECK(reg->dim() == 2);
    // Left action that is not a homomorphism: send g to a non-involution.
    std::vector<Matrix> left = {Matrix::identity(QQ, 2), Matrix::of_ints(QQ, {{1, 0}, {1, 1}})};
    std::vector<Matrix> right = {Matrix::identity(QQ, 2), c2->right_mult_basis(1)};
    CHECK_THROWS_WITH_AS(Bimodule::validate("bad", c2, c2, 2, left, right),
                         doctest::Contains("not a homomorphism"), ValidationError);
}

TEST_CASE("tensor over the regular algebra collapses to the algebra") {
    auto c2 = cyclic_group_algebra(2, QQ);
    auto reg = regular_bimodule(c2);
    TensorSpace t(reg, reg);
    CHECK(t.ambient_dim() == 4);
    CHECK(t.relation_rank() == 2);
    CHECK(t.dim() == 2);
    CHECK((t.projector() * t.section()).is_identity());
    // The induced bimodule is isomorphic to A: multiplication intertwines.
    // class(a (x) b) has the same image as a*b under the multiplication map.
    Matrix mult(QQ, 2, t.dim());
    for (std::size_t s = 0; s < t.dim(); ++s) {
        std::size_t coord = t.basis_coords()[s];
        Matrix prod = c2->mul(c2->basis_vector(coord / 2), c2->basis_vector(coord % 2));
        for (std::size_t k = 0; k < 2; ++k) mult.at(k, s) = prod.at(k, 0);
    }
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            Matrix via_quotient = mult * t.pure(i, j);
            CHECK(via_quotient == c2->mul(c2->basis_vector(i), c2->basis_vector(j)));
        }
}

TEST_CASE("tensor over the ground field has no relations") {
    auto k = ground_field_algebra(QQ);
    auto c2 = cyclic_group_algebra(2, QQ);
    AlgebraMap incl(k, c2, c2->unit());
    auto p = bimodule_from_inclusion_left(incl);   // _A A _k
    auto q = bimodule_from_inclusion_right(incl);  // _k A _A
    TensorSpace t(p, q);
    CHECK(t.dim() == 4);
    CHECK(t.relation_rank() == 0);
}

TEST_CASE("row tensor column over M2 is one-dimensional") {
    auto m2 = matrix_algebra(2, QQ);
    auto k = ground_field_algebra(QQ);
    auto q = row_bimodule(k, m2, 2);
    auto p = column_bimodule(m2, k, 2);
    TensorSpace t(q, p);  // Q tensor_{M2} P
    CHECK(t.ambient_dim() == 4);
    CHECK(t.relation_rank() == 3);
    CHECK(t.dim() == 1);
}

TEST_CASE("tensor dimension agrees with the all-elements relation span") {
    for (const FieldSpec& f : {F2, F3}) {
        auto c2 = cyclic_group_algebra(2, f);
        auto reg = regular_bimodule(c2);
        TensorSpace t(reg, reg);
        CHECK(t.dim() == brute_force_tensor_dim(*reg, *reg));

        auto kx2 = truncated_polynomial(2, f);
        auto reg2 = regular_bimodule(kx2);
        TensorSpace t2(reg2, reg2);
        CHECK(t2.dim() == brute_force_tensor_dim(*reg2, *reg2));

        auto kx3 = truncated_polynomial(3, f);
        auto reg3 = regular_bimodule(kx3);
        TensorSpace t3(reg3, reg3);
        CHECK(t3.dim() == brute_force_tensor_dim(*reg3, *reg3));
    }
}

TEST_CASE("middle-algebra mismatch is rejected") {
    auto c2 = cyclic_group_algebra(2, QQ);
    auto kx2 = truncated_polynomial(2, QQ);
    CHECK_THROWS_WITH_AS(TensorSpace(regular_bimodule(c2), regular_bimodule(kx2)),
                         doctest::Contains("middle algebras disagree"), ValidationError);
}

TEST_CASE("duals of stock bimodules") {
    SUBCASE("right dual of the ground field over itself") {
        auto k = ground_field_algebra(QQ);
        auto reg = regular_bimodule(k);
        HomBimodule d = hom_right_dual(reg);
        CHECK(d.dim() == 1);
    }
    SUBCASE("right dual of columns is two-dimensional") {
        auto m2 = matrix_algebra(2, QQ);
        auto k = ground_field_algebra(QQ);
        HomBimodule d = hom_right_dual(column_bimodule(m2, k, 2));
        CHECK(d.dim() == 2);
        CHECK(d.result()->left_alg()->same_presentation(*k));
        CHECK(d.result()->right_alg()->same_presentation(*m2));
    }
    SUBCASE("linear dual always has the same dimension") {
        auto h4 = sweedler_algebra(QQ);
        CHECK(linear_dual(regular_bimodule(h4)).dim() == 4);
        auto c2 = cyclic_group_algebra(2, QQ);
        CHECK(linear_dual(regular_bimodule(c2)).dim() == 2);
    }
}

TEST_CASE("centers") {
    SUBCASE("center of the regular M2 bimodule is the scalars") {
        auto m2 = matrix_algebra(2, QQ);
        Matrix c = center(*regular_bimodule(m2));
        REQUIRE(c.cols() == 1);
        // Spanned by the identity matrix E00 + E11.
        Matrix unit = m2->unit();
        CHECK((c.col(0) == unit || c.col(0) == unit.scaled(-Scalar::one(QQ))));
    }
    SUBCASE("center of a commutative regular bimodule is everything") {
        auto c2 = cyclic_group_algebra(2, QQ);
        CHECK(center(*regular_bimodule(c2)).cols() == 2);
    }
    SUBCASE("center of A tensor_k A for A = k[C2]") {
        auto k = ground_field_algebra(QQ);
        auto c2 = cyclic_group_algebra(2, QQ);
        AlgebraMap incl(k, c2, c2->unit());
        TensorSpace t(bimodule_from_inclusion_left(incl), bimodule_from_inclusion_right(incl));
        Matrix c = center(*t.result());
        CHECK(c.cols() == 2);
        // 1(x)1 + g(x)g is central: coordinates (1,0,0,1) in the pure basis.
        Matrix candidate = t.pure(0, 0) + t.pure(1, 1);
        CHECK(column_space_membership(c, candidate).has_value());
    }
    SUBCASE("mismatched algebras are rejected") {
        auto m2 = matrix_algebra(2, QQ);
        auto k = ground_field_algebra(QQ);
        CHECK_THROWS_AS(center(*column_bimodule(m2, k, 2)), ValidationError);
    }
}

TEST_CASE("bimodule maps validate equivariance") {
    auto c2 = cyclic_group_algebra(2, QQ);
    auto reg = regular_bimodule(c2);
    CHECK_NOTHROW(BimoduleMap::identity(reg));
    CHECK_NOTHROW(BimoduleMap(reg, reg, c2->left_mult(c2->basis_vector(1))));  // central g
    auto h4 = sweedler_algebra(QQ);
    auto regh = regular_bimodule(h4);
    // Left multiplication by g is not an (A,A)-bimodule map for Sweedler.
    CHECK_THROWS_AS(BimoduleMap(regh, regh, h4->left_mult(h4->basis_vector(1))), ValidationError);
}
