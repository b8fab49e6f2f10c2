#include "sepeq/modops.hpp"

#include <random>
#include <sstream>

namespace sepeq {

std::string tri_str(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        case Tri::unknown: return "unknown";
    }
    return "?";
}

namespace {

Matrix intertwine_rows(const Matrix& m, const Matrix& n, std::size_t rows, std::size_t cols) {
    const FieldSpec& f = m.field();
    return kron(Matrix::identity(f, rows), m.transpose()) - kron(n, Matrix::identity(f, cols));
}

// Independent columns of m, chosen at the RREF pivot positions.
Matrix column_space_basis(const Matrix& m) {
    RrefResult rr = rref(m);
    Matrix basis(m.field(), m.rows(), rr.pivots.size());
    for (std::size_t t = 0; t < rr.pivots.size(); ++t)
        for (std::size_t i = 0; i < m.rows(); ++i) basis.at(i, t) = m.at(i, rr.pivots[t]);
    return basis;
}

Matrix combine(const std::vector<Matrix>& basis, const Matrix& coeffs) {
    Matrix out(basis[0].field(), basis[0].rows(), basis[0].cols());
    for (std::size_t t = 0; t < basis.size(); ++t)
        if (!coeffs.at(t, 0).is_zero()) out = out + basis[t].scaled(coeffs.at(t, 0));
    return out;
}

}  // namespace

CombinationSearch find_invertible_combination(const std::vector<Matrix>& basis, const FieldSpec& f,
                                              const SearchOptions& opts) {
    CombinationSearch out;
    const std::size_t r = basis.size();
    if (r == 0) {
        out.verdict = Tri::no;
        out.exhaustive = true;
        return out;
    }
    const std::size_t d = basis[0].rows();
    if (d == 0) {  // zero-dimensional spaces: the empty map is invertible
        out.verdict = Tri::yes;
        out.exhaustive = true;
        out.coefficients = Matrix(f, r, 1);
        return out;
    }

    // Values per coordinate in the complete sweep: det is a polynomial of
    // degree <= d in each coefficient, so a grid of d+1 rational points per
    // variable decides; over F_p all residues are swept.
    const std::uint64_t values = f.is_rationals() ? static_cast<std::uint64_t>(d) + 1 : f.p;
    bool fits = true;
    std::uint64_t total = 1;
    for (std::size_t t = 0; t < r && fits; ++t) {
        if (total > opts.max_exhaustive / values + 1) fits = false;
        total *= values;
        if (total > opts.max_exhaustive) fits = false;
    }

    auto invertible = [&](const Matrix& coeffs) -> bool {
        auto det = determinant(combine(basis, coeffs));
        return det && !det->is_zero();
    };

    if (fits) {
        std::vector<std::uint64_t> odo(r, 0);
        while (true) {
            Matrix coeffs(f, r, 1);
            for (std::size_t t = 0; t < r; ++t)
                coeffs.at(t, 0) = Scalar::of(static_cast<long long>(odo[t]), f);
            if (invertible(coeffs)) {
                out.verdict = Tri::yes;
                out.coefficients = coeffs;
                out.exhaustive = true;
                return out;
            }
            std::size_t k = 0;
            while (k < r && ++odo[k] == values) odo[k++] = 0;
            if (k == r) break;
        }
        out.verdict = Tri::no;
        out.exhaustive = true;
        return out;
    }

    std::mt19937_64 rng(opts.seed);
    for (int trial = 0; trial < opts.random_trials; ++trial) {
        Matrix coeffs(f, r, 1);
        for (std::size_t t = 0; t < r; ++t) {
            std::uint64_t v = f.is_rationals() ? rng() % 65537 : rng() % f.p;
            coeffs.at(t, 0) = Scalar::of(static_cast<long long>(v), f);
        }
        if (invertible(coeffs)) {
            out.verdict = Tri::yes;
            out.coefficients = coeffs;
            return out;
        }
    }
    out.verdict = Tri::unknown;
    return out;
}

Matrix free_cover(const Bimodule& p, Side side) {
    const FieldSpec& f = p.field();
    const AlgebraRef& alg = side == Side::right ? p.right_alg() : p.left_alg();
    const std::size_t m = p.dim(), n = alg->dim();
    // Slot i carries a copy of the algebra; the unit in slot i maps to basis
    // vector i.
    Matrix cover(f, m, m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t u = 0; u < n; ++u) {
            Matrix img = side == Side::right ? p.right_basis_action(u).col(i)
                                             : p.left_basis_action(u).col(i);
            for (std::size_t k = 0; k < m; ++k) cover.at(k, i * n + u) = img.at(k, 0);
        }
    return cover;
}

bool section_splits_cover(const Bimodule& p, Side side, const Matrix& section) {
    const FieldSpec& f = p.field();
    const AlgebraRef& alg = side == Side::right ? p.right_alg() : p.left_alg();
    const std::size_t m = p.dim(), n = alg->dim();
    if (section.rows() != m * n || section.cols() != m) return false;
    if (!(free_cover(p, side) * section).is_identity()) return false;
    for (std::size_t u = 0; u < n; ++u) {
        Matrix act_p = side == Side::right ? p.right_basis_action(u) : p.left_basis_action(u);
        Matrix act_f = kron(Matrix::identity(f, m),
                            side == Side::right ? alg->right_mult_basis(u) : alg->left_mult_basis(u));
        if (section * act_p != act_f * section) return false;
    }
    return true;
}

ProjectivityResult is_finite_projective(const Bimodule& p, Side side) {
    ProjectivityResult out;
    const FieldSpec& f = p.field();
    const AlgebraRef& alg = side == Side::right ? p.right_alg() : p.left_alg();
    const std::size_t m = p.dim(), n = alg->dim();
    const std::size_t cover_dim = m * n;

    Matrix cover = free_cover(p, side);

    LinearSystem sys(f, cover_dim * m);
    for (std::size_t u = 0; u < n; ++u) {
        Matrix act_p = side == Side::right ? p.right_basis_action(u) : p.left_basis_action(u);
        Matrix act_f = kron(Matrix::identity(f, m),
                            side == Side::right ? alg->right_mult_basis(u) : alg->left_mult_basis(u));
        sys.require_zero(intertwine_rows(act_p, act_f, cover_dim, m));
    }
    // cover * section = identity:  vec(cover * S) = kron(cover, I) vec(S).
    sys.require(kron(cover, Matrix::identity(f, m)), Matrix::identity(f, m).vec());

    auto sol = sys.solve();
    if (!sol) {
        out.projective = false;
        out.fingerprint = sys.fingerprint();
        return out;
    }
    out.projective = true;
    out.certificate = ProjectivityCertificate{cover, Matrix::unvec(sol->particular, cover_dim, m)};
    return out;
}

GeneratorResult is_generator(const Bimodule& p, Side side) {
    GeneratorResult out;
    const FieldSpec& f = p.field();
    const AlgebraRef& alg = side == Side::right ? p.right_alg() : p.left_alg();
    const std::size_t m = p.dim(), n = alg->dim();

    // All module maps P -> algebra for the chosen side.
    LinearSystem sys(f, n * m);
    for (std::size_t u = 0; u < n; ++u) {
        if (side == Side::right)
            sys.require_zero(intertwine_rows(p.right_basis_action(u), alg->right_mult_basis(u), n, m));
        else
            sys.require_zero(intertwine_rows(p.left_basis_action(u), alg->left_mult_basis(u), n, m));
    }
    Matrix maps = sys.solution_space();

    // Span of all images f_t(p_i).
    Matrix images(f, n, maps.cols() * m);
    for (std::size_t t = 0; t < maps.cols(); ++t) {
        Matrix F = Matrix::unvec(maps.col(t), n, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < n; ++k) images.at(k, t * m + i) = F.at(k, i);
    }
    Matrix span = column_space_basis(images);

    // Close under two-sided multiplication until the dimension stabilizes.
    while (true) {
        Matrix enlarged = span;
        for (std::size_t t = 0; t < span.cols(); ++t)
            for (std::size_t u = 0; u < n; ++u) {
                enlarged = hstack(enlarged, alg->left_mult_basis(u) * span.col(t));
                enlarged = hstack(enlarged, alg->right_mult_basis(u) * span.col(t));
            }
        Matrix closed = column_space_basis(enlarged);
        if (closed.cols() == span.cols()) break;
        span = closed;
    }

    out.trace_ideal_basis = span;
    out.generator = m > 0 && column_space_membership(span, alg->unit()).has_value();
    return out;
}

HomSpace hom_space(const Bimodule& m, const Bimodule& n) {
    if (!m.left_alg()->same_presentation(*n.left_alg()) ||
        !m.right_alg()->same_presentation(*n.right_alg()))
        throw ValidationError("hom_space: bimodules over different algebra pairs");
    const FieldSpec& f = m.field();
    LinearSystem sys(f, n.dim() * m.dim());
    for (std::size_t i = 0; i < m.left_alg()->dim(); ++i)
        sys.require_zero(intertwine_rows(m.left_basis_action(i), n.left_basis_action(i), n.dim(), m.dim()));
    for (std::size_t j = 0; j < m.right_alg()->dim(); ++j)
        sys.require_zero(intertwine_rows(m.right_basis_action(j), n.right_basis_action(j), n.dim(), m.dim()));
    Matrix space = sys.solution_space();
    HomSpace out;
    for (std::size_t t = 0; t < space.cols(); ++t)
        out.basis.push_back(Matrix::unvec(space.col(t), n.dim(), m.dim()));
    return out;
}

IsoSearchResult module_iso_exists(const Bimodule& m, const Bimodule& n, const SearchOptions& opts) {
    IsoSearchResult out;
    if (m.dim() != n.dim()) {
        out.verdict = Tri::no;
        out.exhaustive = true;
        out.detail = "dimension mismatch (" + std::to_string(m.dim()) + " vs " + std::to_string(n.dim()) + ")";
        return out;
    }
    if (m.dim() == 0) {
        out.verdict = Tri::yes;
        out.exhaustive = true;
        out.iso = Matrix(m.field(), 0, 0);
        out.iso_inverse = Matrix(m.field(), 0, 0);
        return out;
    }
    HomSpace homs = hom_space(m, n);
    if (homs.basis.empty()) {
        out.verdict = Tri::no;
        out.exhaustive = true;
        out.detail = "hom space is zero";
        return out;
    }
    CombinationSearch search = find_invertible_combination(homs.basis, m.field(), opts);
    out.verdict = search.verdict;
    out.exhaustive = search.exhaustive;
    if (search.verdict == Tri::yes) {
        Matrix iso(m.field(), n.dim(), m.dim());
        for (std::size_t t = 0; t < homs.basis.size(); ++t)
            if (!search.coefficients->at(t, 0).is_zero())
                iso = iso + homs.basis[t].scaled(search.coefficients->at(t, 0));
        out.iso_inverse = inverse(iso);
        out.iso = std::move(iso);
    } else {
        out.detail = "hom space dimension " + std::to_string(homs.basis.size()) +
                     (search.exhaustive ? ", no invertible combination exists"
                                        : ", randomized search inconclusive");
    }
    return out;
}

Matrix EndRing::coords_of(const Matrix& endo) const {
    auto c = column_space_membership(basis_columns, endo.vec());
    if (!c) throw ValidationError("EndRing: endomorphism is not in the equivariant span");
    return *c;
}

Matrix EndRing::concrete_of(const Matrix& coords) const {
    Matrix out(basis_columns.field(), basis[0].rows(), basis[0].cols());
    for (std::size_t t = 0; t < basis.size(); ++t) out = out + basis[t].scaled(coords.at(t, 0));
    return out;
}

EndRing end_ring(const BimoduleRef& p, Side side) {
    const FieldSpec& f = p->field();
    const std::size_t m = p->dim();
    if (m == 0) throw ValidationError("end_ring: zero module has no unital endomorphism ring");
    const AlgebraRef& alg = side == Side::right ? p->right_alg() : p->left_alg();

    LinearSystem sys(f, m * m);
    for (std::size_t u = 0; u < alg->dim(); ++u) {
        const Matrix& act = side == Side::right ? p->right_basis_action(u) : p->left_basis_action(u);
        sys.require_zero(intertwine_rows(act, act, m, m));
    }
    Matrix space = sys.solution_space();

    EndRing out;
    for (std::size_t t = 0; t < space.cols(); ++t) out.basis.push_back(Matrix::unvec(space.col(t), m, m));
    out.basis_columns = space;

    const std::size_t s = out.basis.size();
    std::vector<std::vector<std::vector<Scalar>>> mult(
        s, std::vector<std::vector<Scalar>>(s, std::vector<Scalar>(s, Scalar::zero(f))));
    for (std::size_t a = 0; a < s; ++a)
        for (std::size_t b = 0; b < s; ++b) {
            Matrix c = out.coords_of(out.basis[a] * out.basis[b]);
            for (std::size_t k = 0; k < s; ++k) mult[a][b][k] = c.at(k, 0);
        }
    Matrix unit_coords = out.coords_of(Matrix::identity(f, m));
    std::vector<Scalar> unit(s, Scalar::zero(f));
    for (std::size_t k = 0; k < s; ++k) unit[k] = unit_coords.at(k, 0);
    std::string name = side == Side::right ? "End(" + p->name() + "_" + p->right_alg()->name() + ")"
                                           : "End(_" + p->left_alg()->name() + " " + p->name() + ")";
    out.algebra = Algebra::validate(name, f, s, mult, unit);
    return out;
}

NaturalMapReport natural_map_lambda(const AlgebraRef& a, const BimoduleRef& p) {
    NaturalMapReport out;
    const FieldSpec& f = a->field();
    if (p->dim() == 0) {
        out.degenerate = true;
        out.lambda = Matrix(f, 0, a->dim());
        out.kernel_basis = Matrix::identity(f, a->dim());
        out.injective = false;
        return out;
    }
    EndRing end = end_ring(p, Side::right);
    out.lambda = Matrix(f, end.basis.size(), a->dim());
    for (std::size_t i = 0; i < a->dim(); ++i) {
        Matrix c = end.coords_of(p->left_basis_action(i));
        for (std::size_t t = 0; t < end.basis.size(); ++t) out.lambda.at(t, i) = c.at(t, 0);
    }
    out.kernel_basis = kernel(out.lambda);
    out.injective = out.kernel_basis.cols() == 0;
    out.end = std::move(end);
    return out;
}

}  // namespace sepeq
