#include <doctest.h>

#include "sepeq/algebra.hpp"

using namespace sepeq;

namespace {

const FieldSpec QQ = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);

std::vector<std::vector<std::vector<Scalar>>> zero_table(const FieldSpec& f, std::size_t n) {
    return std::vector<std::vector<std::vector<Scalar>>>(
        n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar::zero(f))));
}

}  // namespace

TEST_CASE("ground field validates") {
    auto k = ground_field_algebra(QQ);
    CHECK(k->dim() == 1);
    CHECK(k->mul(k->unit(), k->unit()) == k->unit());
}

TEST_CASE("validation reports the failing axiom instance") {
    SUBCASE("broken unit action") {
        // e1 e1 = e0 but e1 * unit = 0: the unit axiom must fail at i=1.
        auto mult = zero_table(QQ, 2);
        mult[0][0][0] = Scalar::one(QQ);
        mult[1][1][0] = Scalar::one(QQ);
        std::vector<Scalar> unit = {Scalar::one(QQ), Scalar::zero(QQ)};
        CHECK_THROWS_WITH_AS(Algebra::validate("broken", QQ, 2, mult, unit),
                             doctest::Contains("unit axiom fails at basis index i=1"), ValidationError);
    }
    SUBCASE("broken associativity") {
        // Unit acts correctly but (e1 e1) e1 = 0 while e1 (e1 e1) = e0.
        auto mult = zero_table(QQ, 3);
        for (std::size_t j = 0; j < 3; ++j) {
            mult[0][j][j] = Scalar::one(QQ);
            mult[j][0][j] = Scalar::one(QQ);
        }
        mult[1][1][2] = Scalar::one(QQ);  // e1 e1 = e2
        mult[1][2][0] = Scalar::one(QQ);  // e1 e2 = e0
        std::vector<Scalar> unit = {Scalar::one(QQ), Scalar::zero(QQ), Scalar::zero(QQ)};
        CHECK_THROWS_WITH_AS(Algebra::validate("skew", QQ, 3, mult, unit),
                             doctest::Contains("associativity fails at (i,j,k)=(1,1,1)"), ValidationError);
    }
}

TEST_CASE("matrix algebras") {
    CHECK(matrix_algebra(1, QQ)->dim() == 1);
    auto m2 = matrix_algebra(2, QQ);
    CHECK(m2->dim() == 4);
    // E01 E10 = E00 (row-major basis indices 1, 2, 0).
    CHECK(m2->mul(m2->basis_vector(1), m2->basis_vector(2)) == m2->basis_vector(0));
    CHECK(m2->mul(m2->basis_vector(1), m2->basis_vector(1)).is_zero());
    auto m2f2 = matrix_algebra(2, F2);
    CHECK(m2f2->mul(m2f2->basis_vector(1), m2f2->basis_vector(2)) == m2f2->basis_vector(0));
}

TEST_CASE("group algebras and truncated polynomials") {
    auto c2 = cyclic_group_algebra(2, QQ);
    CHECK(c2->dim() == 2);
    CHECK(c2->mul(c2->basis_vector(1), c2->basis_vector(1)) == c2->basis_vector(0));  // g^2 = 1

    auto kx2 = truncated_polynomial(2, QQ);
    CHECK(kx2->mul(kx2->basis_vector(1), kx2->basis_vector(1)).is_zero());  // X^2 = 0

    auto c2f2 = cyclic_group_algebra(2, F2);
    Matrix one_plus_g = c2f2->basis_vector(0) + c2f2->basis_vector(1);
    CHECK(c2f2->mul(one_plus_g, one_plus_g).is_zero());  // (1+g)^2 = 0 in char 2

    SUBCASE("invalid group tables are rejected") {
        CHECK_THROWS_WITH_AS(group_algebra({{0, 1}, {1, 1}}, QQ), doctest::Contains("inverse"),
                             ValidationError);
        CHECK_THROWS_WITH_AS(group_algebra({{1, 0}, {1, 0}}, QQ), doctest::Contains("identity"),
                             ValidationError);
    }
}

TEST_CASE("sweedler algebra relations") {
    auto h4 = sweedler_algebra(QQ);
    Matrix g = h4->basis_vector(1), x = h4->basis_vector(2), gx = h4->basis_vector(3);
    CHECK(h4->mul(g, x) == gx);
    CHECK(h4->mul(x, g) == -gx);
    CHECK(h4->mul(gx, gx).is_zero());
    CHECK(h4->mul(x, x).is_zero());
    CHECK(h4->mul(g, g) == h4->basis_vector(0));
    CHECK_THROWS_AS(sweedler_algebra(F2), ValidationError);
}

TEST_CASE("opposite algebra") {
    auto c2 = cyclic_group_algebra(2, QQ);  // commutative
    CHECK(opposite(c2)->same_presentation(*c2));
    auto h4 = sweedler_algebra(QQ);
    auto h4op = opposite(h4);
    CHECK_FALSE(h4op->same_presentation(*h4));
    CHECK(opposite(h4op)->same_presentation(*h4));
    // The identity is an antihomomorphism A -> A^op.
    AlgebraMap anti(h4, h4op, Matrix::identity(QQ, 4), MapFlavor::antihomomorphism);
    CHECK(anti.is_bijective());
}

TEST_CASE("trivial extension") {
    SUBCASE("of the ground field is the dual numbers") {
        auto t = trivial_extension(ground_field_algebra(QQ));
        CHECK(t.algebra->same_presentation(*truncated_polynomial(2, QQ)));
        CHECK(t.trace_functional == Matrix::row_vector(QQ, {0, 1}));
    }
    SUBCASE("doubles the dimension and keeps A closed") {
        auto m2 = matrix_algebra(2, QQ);
        auto t = trivial_extension(m2);
        CHECK(t.algebra->dim() == 8);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) {
                Matrix prod = t.algebra->mul(t.algebra->basis_vector(i), t.algebra->basis_vector(j));
                for (std::size_t k = 4; k < 8; ++k) CHECK(prod.at(k, 0).is_zero());
            }
        // The embedded copy of A multiplies by the original constants.
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                for (std::size_t k = 0; k < 4; ++k)
                    CHECK(t.algebra->structure_const(i, j, k) == m2->structure_const(i, j, k));
    }
}

TEST_CASE("algebra maps validate multiplicativity") {
    auto c2 = cyclic_group_algebra(2, QQ);
    CHECK_NOTHROW(AlgebraMap::identity(c2));
    // g -> -g is the sign automorphism of k[C2].
    Matrix sign = Matrix::of_ints(QQ, {{1, 0}, {0, -1}});
    AlgebraMap aut(c2, c2, sign);
    CHECK(aut.is_bijective());
    // g -> g + 1 is not multiplicative.
    Matrix bad = Matrix::of_ints(QQ, {{1, 1}, {0, 1}});
    CHECK_THROWS_AS(AlgebraMap(c2, c2, bad), ValidationError);
}
