#include <doctest.h>

#include "sepeq/modops.hpp"

using namespace sepeq;

namespace {

const FieldSpec QQ = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);

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

BimoduleRef row_bimodule(const AlgebraRef& ground, const AlgebraRef& mn, std::size_t n) {
    std::vector<Matrix> left, right;
    const FieldSpec& f = mn->field();
    left.push_back(Matrix::identity(f, n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Matrix e(f, n, n);
            e.at(j, i) = Scalar::one(f);
            right.push_back(e);
        }
    return Bimodule::validate("row", ground, mn, n, std::move(left), std::move(right));
}

// A as a left module over itself, viewed over (A, k).
BimoduleRef left_regular_module(const AlgebraRef& a, const AlgebraRef& ground) {
    std::vector<Matrix> left, right;
    for (std::size_t i = 0; i < a->dim(); ++i) left.push_back(a->left_mult_basis(i));
    right.push_back(Matrix::identity(a->field(), a->dim()));
    return Bimodule::validate("_A A", a, ground, a->dim(), std::move(left), std::move(right));
}

// Trivial k[C2]-module of the given dimension (g acts as identity).
BimoduleRef trivial_c2_module(const AlgebraRef& c2, const AlgebraRef& ground, std::size_t dim) {
    std::vector<Matrix> left(2, Matrix::identity(c2->field(), dim));
    std::vector<Matrix> right = {Matrix::identity(c2->field(), dim)};
    return Bimodule::validate("triv" + std::to_string(dim), c2, ground, dim, std::move(left),
                              std::move(right));
}

// Exhaustive oracle: does ANY matrix over F2 split the free cover
// equivariantly?  Independent of the feasibility-solver path.
bool brute_force_projective_f2(const Bimodule& p, Side side) {
    REQUIRE(p.field() == F2);
    const AlgebraRef& alg = side == Side::right ? p.right_alg() : p.left_alg();
    const std::size_t m = p.dim(), n = alg->dim();
    const std::size_t cover_dim = m * n;
    const std::size_t bits = cover_dim * m;
    REQUIRE(bits <= 20);

    Matrix cover(F2, m, cover_dim);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t u = 0; u < n; ++u) {
            Matrix img = side == Side::right ? p.right_basis_action(u).col(i)
                                             : p.left_basis_action(u).col(i);
            for (std::size_t k = 0; k < m; ++k) cover.at(k, i * n + u) = img.at(k, 0);
        }

    for (std::size_t code = 0; code < (std::size_t{1} << bits); ++code) {
        Matrix s(F2, cover_dim, m);
        for (std::size_t t = 0; t < bits; ++t)
            if (code & (std::size_t{1} << t))
                s.at(t / m, t % m) = Scalar::one(F2);
        if (!(cover * s).is_identity()) continue;
        bool equivariant = true;
        for (std::size_t u = 0; u < n && equivariant; ++u) {
            Matrix act_p = side == Side::right ? p.right_basis_action(u) : p.left_basis_action(u);
            Matrix act_f = kron(Matrix::identity(F2, m), side == Side::right ? alg->right_mult_basis(u)
                                                                             : alg->left_mult_basis(u));
            equivariant = s * act_p == act_f * s;
        }
        if (equivariant) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("finite projectivity of stock modules") {
    SUBCASE("regular module is projective with an identity-like section") {
        auto c2 = cyclic_group_algebra(2, QQ);
        auto reg = regular_bimodule(c2);
        auto res = is_finite_projective(*reg, Side::right);
        REQUIRE(res.projective);
        CHECK((res.certificate->cover * res.certificate->section).is_identity());
    }
    SUBCASE("columns over the ground field are projective") {
        auto m2 = matrix_algebra(2, QQ);
        auto k = ground_field_algebra(QQ);
        auto col = column_bimodule(m2, k, 2);
        CHECK(is_finite_projective(*col, Side::right).projective);
        CHECK(is_finite_projective(*col, Side::left).projective);
    }
    SUBCASE("the trivial F2[C2]-module is not projective") {
        auto c2 = cyclic_group_algebra(2, F2);
        auto k = ground_field_algebra(F2);
        auto triv = trivial_c2_module(c2, k, 1);
        auto res = is_finite_projective(*triv, Side::left);
        CHECK_FALSE(res.projective);
        CHECK(res.fingerprint.find("rank") != std::string::npos);
    }
}

TEST_CASE("finite projectivity agrees with the exhaustive F2 oracle") {
    auto c2 = cyclic_group_algebra(2, F2);
    auto k = ground_field_algebra(F2);
    std::vector<std::pair<BimoduleRef, Side>> instances = {
        {regular_bimodule(c2), Side::right},
        {regular_bimodule(c2), Side::left},
        {trivial_c2_module(c2, k, 1), Side::left},
        {column_bimodule(matrix_algebra(2, F2), k, 2), Side::left},
    };
    for (const auto& [p, side] : instances) {
        CAPTURE(p->name());
        CHECK(is_finite_projective(*p, side).projective == brute_force_projective_f2(*p, side));
    }
}

TEST_CASE("generator tests") {
    SUBCASE("regular module generates") {
        auto c2 = cyclic_group_algebra(2, QQ);
        auto rep = is_generator(*regular_bimodule(c2), Side::right);
        CHECK(rep.generator);
        CHECK(rep.trace_ideal_basis.cols() == 2);
    }
    SUBCASE("columns generate M2 with full trace ideal") {
        auto m2 = matrix_algebra(2, QQ);
        auto k = ground_field_algebra(QQ);
        auto rep = is_generator(*column_bimodule(m2, k, 2), Side::left);
        CHECK(rep.generator);
        CHECK(rep.trace_ideal_basis.cols() == 4);
    }
    SUBCASE("zero module does not generate") {
        auto c2 = cyclic_group_algebra(2, QQ);
        auto k = ground_field_algebra(QQ);
        std::vector<Matrix> left(2, Matrix(QQ, 0, 0));
        std::vector<Matrix> right = {Matrix(QQ, 0, 0)};
        auto zero = Bimodule::validate("zero", c2, k, 0, std::move(left), std::move(right));
        auto rep = is_generator(*zero, Side::left);
        CHECK_FALSE(rep.generator);
        CHECK(rep.trace_ideal_basis.cols() == 0);
    }
}

TEST_CASE("module isomorphism search") {
    SUBCASE("a module is isomorphic to itself by a verified invertible map") {
        auto c2 = cyclic_group_algebra(2, QQ);
        auto reg = regular_bimodule(c2);
        auto res = module_iso_exists(*reg, *reg);
        REQUIRE(res.verdict == Tri::yes);
        CHECK((*res.iso * *res.iso_inverse).is_identity());
    }
    SUBCASE("row bimodule is the right dual of columns") {
        auto m2 = matrix_algebra(2, QQ);
        auto k = ground_field_algebra(QQ);
        HomBimodule d = hom_right_dual(column_bimodule(m2, k, 2));
        auto res = module_iso_exists(*d.result(), *row_bimodule(k, m2, 2));
        CHECK(res.verdict == Tri::yes);
    }
    SUBCASE("trivial vs regular F2[C2]-module, settled exhaustively") {
        auto c2 = cyclic_group_algebra(2, F2);
        auto k = ground_field_algebra(F2);
        auto res = module_iso_exists(*trivial_c2_module(c2, k, 2), *left_regular_module(c2, k));
        CHECK(res.verdict == Tri::no);
        CHECK(res.exhaustive);
    }
    SUBCASE("dimension mismatch is an immediate refutation") {
        auto c2 = cyclic_group_algebra(2, QQ);
        auto k = ground_field_algebra(QQ);
        auto res = module_iso_exists(*trivial_c2_module(c2, k, 1), *trivial_c2_module(c2, k, 2));
        CHECK(res.verdict == Tri::no);
    }
}

TEST_CASE("natural map into the endomorphism ring") {
    SUBCASE("ground field over itself") {
        auto k = ground_field_algebra(QQ);
        auto rep = natural_map_lambda(k, regular_bimodule(k));
        CHECK(rep.injective);
        CHECK_FALSE(rep.degenerate);
    }
    SUBCASE("M2 acts bijectively on its column space") {
        auto m2 = matrix_algebra(2, QQ);
        auto k = ground_field_algebra(QQ);
        auto rep = natural_map_lambda(m2, column_bimodule(m2, k, 2));
        CHECK(rep.injective);
        REQUIRE(rep.end.has_value());
        CHECK(rep.end->algebra->dim() == 4);           // End of columns over k is M2
        CHECK(rref(rep.lambda).rank == 4);             // bijective onto it
    }
    SUBCASE("zero module is degenerate") {
        auto c2 = cyclic_group_algebra(2, QQ);
        auto k = ground_field_algebra(QQ);
        std::vector<Matrix> left(2, Matrix(QQ, 0, 0));
        std::vector<Matrix> right = {Matrix(QQ, 0, 0)};
        auto zero = Bimodule::validate("zero", c2, k, 0, std::move(left), std::move(right));
        auto rep = natural_map_lambda(c2, zero);
        CHECK(rep.degenerate);
        CHECK_FALSE(rep.injective);
        CHECK(rep.kernel_basis.cols() == 2);  // everything annihilates
    }
}

TEST_CASE("generators have injective natural maps") {
    // Checked across a small corpus of modules over several algebras.
    std::vector<std::pair<AlgebraRef, AlgebraRef>> algebras;
    algebras.push_back({cyclic_group_algebra(2, QQ), ground_field_algebra(QQ)});
    algebras.push_back({cyclic_group_algebra(2, F2), ground_field_algebra(F2)});
    algebras.push_back({truncated_polynomial(3, QQ), ground_field_algebra(QQ)});
    algebras.push_back({matrix_algebra(2, QQ), ground_field_algebra(QQ)});
    for (const auto& [a, k] : algebras) {
        auto mod = left_regular_module(a, k);
        auto gen = is_generator(*mod, Side::left);
        auto rep = natural_map_lambda(a, mod);
        if (gen.generator) CHECK(rep.injective);
    }
}

TEST_CASE("end ring of the regular module recovers the algebra dimension") {
    auto c2 = cyclic_group_algebra(2, QQ);
    auto end = end_ring(regular_bimodule(c2), Side::right);
    CHECK(end.algebra->dim() == 2);
    auto h4 = sweedler_algebra(QQ);
    auto endh = end_ring(regular_bimodule(h4), Side::right);
    CHECK(endh.algebra->dim() == 4);
}
