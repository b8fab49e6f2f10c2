#include "sepeq/context.hpp"

#include <sstream>

namespace sepeq {

std::string status_str(Status s) {
    switch (s) {
        case Status::verified: return "verified";
        case Status::refuted: return "refuted";
        case Status::unknown: return "unknown";
        case Status::not_applicable: return "not_applicable";
        case Status::degenerate: return "degenerate";
    }
    return "?";
}

const Matrix* Verdict::witness(const std::string& name) const {
    for (const auto& w : witnesses)
        if (w.name == name) return &w.value;
    return nullptr;
}

void Verdict::add_witness(std::string name, Matrix value) {
    witnesses.push_back(Witness{std::move(name), std::move(value)});
}

const BimoduleMap& Context::mu() const {
    if (!mu_) throw ValidationError("context: mu is not present");
    return *mu_;
}

Context Context::make(AlgebraRef A, AlgebraRef B, BimoduleRef P, BimoduleRef Q, const Matrix& nu,
                      const std::optional<Matrix>& mu) {
    if (!P->left_alg()->same_presentation(*A) || !P->right_alg()->same_presentation(*B))
        throw ValidationError("context: P is not an (A, B)-bimodule");
    if (!Q->left_alg()->same_presentation(*B) || !Q->right_alg()->same_presentation(*A))
        throw ValidationError("context: Q is not a (B, A)-bimodule");
    Context ctx;
    ctx.a_ = A;
    ctx.b_ = B;
    ctx.p_ = P;
    ctx.q_ = Q;
    ctx.pq_ = std::make_shared<TensorSpace>(P, Q);
    ctx.qp_ = std::make_shared<TensorSpace>(Q, P);
    ctx.reg_a_ = regular_bimodule(A);
    ctx.reg_b_ = regular_bimodule(B);
    // The BimoduleMap constructor re-validates the bimodule-map laws.
    ctx.nu_ = std::make_shared<BimoduleMap>(ctx.pq_->result(), ctx.reg_a_, nu);
    if (mu) ctx.mu_.emplace(ctx.qp_->result(), ctx.reg_b_, *mu);
    return ctx;
}

namespace {

// Representative of a tensor-quotient element as a (dim left) x (dim right)
// coefficient grid over pure tensors.
Matrix representative(const TensorSpace& t, const Matrix& coords) {
    return Matrix::unvec(t.section() * coords, t.left_factor()->dim(), t.right_factor()->dim());
}

struct CounitData {
    const TensorSpace* tensor;   // quotient carrying the element
    const BimoduleMap* counit;   // map onto the regular bimodule
    AlgebraRef target;           // the algebra divided into
};

CounitData counit_for(const Context& ctx, ContextSide side) {
    if (side == ContextSide::a_over_b) return {&ctx.PQ(), &ctx.nu(), ctx.A()};
    return {&ctx.QP(), &ctx.mu(), ctx.B()};
}

}  // namespace

SplittingSearch find_bimodule_splitting(const BimoduleMap& f) {
    const BimoduleRef& w = f.source();
    const BimoduleRef& v = f.target();
    const FieldSpec& field = w->field();
    const std::size_t rows = w->dim(), cols = v->dim();

    LinearSystem sys(field, rows * cols);
    auto intertwine = [&](const Matrix& act_v, const Matrix& act_w) {
        // S * act_v = act_w * S  for the unknown S (rows x cols).
        return kron(Matrix::identity(field, rows), act_v.transpose()) -
               kron(act_w, Matrix::identity(field, cols));
    };
    for (std::size_t i = 0; i < w->left_alg()->dim(); ++i)
        sys.require_zero(intertwine(v->left_basis_action(i), w->left_basis_action(i)));
    for (std::size_t j = 0; j < w->right_alg()->dim(); ++j)
        sys.require_zero(intertwine(v->right_basis_action(j), w->right_basis_action(j)));
    sys.require(kron(f.matrix(), Matrix::identity(field, cols)), Matrix::identity(field, cols).vec());

    SplittingSearch out;
    auto sol = sys.solve();
    if (!sol) {
        out.fingerprint = sys.fingerprint();
        return out;
    }
    out.section = BimoduleMap(v, w, Matrix::unvec(sol->particular, rows, cols));
    return out;
}

SeparabilitySearch find_separability_element(const Context& ctx, ContextSide side) {
    CounitData data = counit_for(ctx, side);
    const FieldSpec& f = ctx.field();
    Matrix centre = center(*data.tensor->result());

    // Affine condition: counit(centre . x) = 1.
    LinearSystem sys(f, centre.cols());
    sys.require(data.counit->matrix() * centre, data.target->unit());

    SeparabilitySearch out;
    auto sol = sys.solve();
    if (!sol) {
        std::ostringstream os;
        os << "center dimension " << centre.cols() << "; " << sys.fingerprint();
        out.fingerprint = os.str();
        return out;
    }
    out.element = SeparabilityElement{side, centre * sol->particular};
    return out;
}

BimoduleMap splitting_from_element(const Context& ctx, const SeparabilityElement& e) {
    CounitData data = counit_for(ctx, e.side);
    const FieldSpec& f = ctx.field();
    const Bimodule& t = *data.tensor->result();
    Matrix s(f, t.dim(), data.target->dim());
    for (std::size_t i = 0; i < data.target->dim(); ++i) {
        Matrix col = t.left_basis_action(i) * e.coords;
        for (std::size_t r = 0; r < t.dim(); ++r) s.at(r, i) = col.at(r, 0);
    }
    BimoduleMap split(e.side == ContextSide::a_over_b ? ctx.regular_A() : ctx.regular_B(),
                      data.tensor->result(), s);
    if (data.counit->matrix() * s != Matrix::identity(f, data.target->dim()))
        throw ValidationError("splitting_from_element: element does not split the counit");
    return split;
}

SeparabilityElement element_from_splitting(const Context& ctx, ContextSide side, const BimoduleMap& s) {
    CounitData data = counit_for(ctx, side);
    Matrix coords = s.matrix() * data.target->unit();
    SeparabilityElement e{side, coords};
    // Centrality follows from s being a bimodule map; re-check anyway.
    const Bimodule& t = *data.tensor->result();
    for (std::size_t i = 0; i < data.target->dim(); ++i)
        if (t.left_basis_action(i) * coords != t.right_basis_action(i) * coords)
            throw ValidationError("element_from_splitting: image of 1 is not central");
    if (data.counit->matrix() * coords != data.target->unit())
        throw ValidationError("element_from_splitting: image of 1 does not map to 1");
    return e;
}

std::pair<Matrix, Matrix> adjunction_system(const Context& ctx, AdjunctionOrder order) {
    const FieldSpec& f = ctx.field();
    const std::size_t dp = ctx.P()->dim(), dq = ctx.Q()->dim();

    if (order == AdjunctionOrder::pq) {
        // Unknown u in Q (x) P; counit nu.  Identities:
        //   (1) sum nu(p_j (x) q'_a) p'_b = p_j   for every basis p_j
        //   (2) sum q'_a nu(p'_b (x) q_c) = q_c   for every basis q_c
        const TensorSpace& qp = ctx.QP();
        const std::size_t t = qp.dim();

        std::vector<Matrix> left_by(dp * dq);   // L_P(nu(p_j (x) q_a))
        std::vector<Matrix> right_by(dp * dq);  // R_Q(nu(p_b (x) q_c))
        for (std::size_t j = 0; j < dp; ++j)
            for (std::size_t a = 0; a < dq; ++a) {
                Matrix x = ctx.nu().matrix() * ctx.PQ().pure(j, a);
                left_by[j * dq + a] = ctx.P()->left_act(x);
                right_by[j * dq + a] = ctx.Q()->right_act(x);
            }
        std::vector<Matrix> reps(t);
        for (std::size_t s = 0; s < t; ++s) reps[s] = representative(qp, Matrix::identity(f, t).col(s));

        Matrix lhs(f, dp * dp + dq * dq, t), rhs(f, dp * dp + dq * dq, 1);
        for (std::size_t j = 0; j < dp; ++j) {
            for (std::size_t s = 0; s < t; ++s) {
                Matrix acc(f, dp, 1);
                for (std::size_t a = 0; a < dq; ++a)
                    for (std::size_t b = 0; b < dp; ++b)
                        if (!reps[s].at(a, b).is_zero())
                            acc = acc + left_by[j * dq + a].col(b).scaled(reps[s].at(a, b));
                for (std::size_t r = 0; r < dp; ++r) lhs.at(j * dp + r, s) = acc.at(r, 0);
            }
            rhs.at(j * dp + j, 0) = Scalar::one(f);
        }
        const std::size_t off = dp * dp;
        for (std::size_t c = 0; c < dq; ++c) {
            for (std::size_t s = 0; s < t; ++s) {
                Matrix acc(f, dq, 1);
                for (std::size_t a = 0; a < dq; ++a)
                    for (std::size_t b = 0; b < dp; ++b)
                        if (!reps[s].at(a, b).is_zero())
                            acc = acc + right_by[b * dq + c].col(a).scaled(reps[s].at(a, b));
                for (std::size_t r = 0; r < dq; ++r) lhs.at(off + c * dq + r, s) = acc.at(r, 0);
            }
            rhs.at(off + c * dq + c, 0) = Scalar::one(f);
        }
        return {lhs, rhs};
    }

    // Order (Q, P): unknown v in P (x) Q; counit mu.  Identities:
    //   (3) sum mu(q_c (x) p_a) q_b = q_c
    //   (4) sum p_a mu(q_b (x) p_d) = p_d
    const TensorSpace& pq = ctx.PQ();
    const std::size_t t = pq.dim();
    std::vector<Matrix> left_by(dq * dp);   // L_Q(mu(q_c (x) p_a))
    std::vector<Matrix> right_by(dq * dp);  // R_P(mu(q_b (x) p_d))
    for (std::size_t c = 0; c < dq; ++c)
        for (std::size_t a = 0; a < dp; ++a) {
            Matrix x = ctx.mu().matrix() * ctx.QP().pure(c, a);
            left_by[c * dp + a] = ctx.Q()->left_act(x);
            right_by[c * dp + a] = ctx.P()->right_act(x);
        }
    std::vector<Matrix> reps(t);
    for (std::size_t s = 0; s < t; ++s) reps[s] = representative(pq, Matrix::identity(f, t).col(s));

    Matrix lhs(f, dq * dq + dp * dp, t), rhs(f, dq * dq + dp * dp, 1);
    for (std::size_t c = 0; c < dq; ++c) {
        for (std::size_t s = 0; s < t; ++s) {
            Matrix acc(f, dq, 1);
            for (std::size_t a = 0; a < dp; ++a)
                for (std::size_t b = 0; b < dq; ++b)
                    if (!reps[s].at(a, b).is_zero())
                        acc = acc + left_by[c * dp + a].col(b).scaled(reps[s].at(a, b));
            for (std::size_t r = 0; r < dq; ++r) lhs.at(c * dq + r, s) = acc.at(r, 0);
        }
        rhs.at(c * dq + c, 0) = Scalar::one(f);
    }
    const std::size_t off = dq * dq;
    for (std::size_t d = 0; d < dp; ++d) {
        for (std::size_t s = 0; s < t; ++s) {
            Matrix acc(f, dp, 1);
            for (std::size_t a = 0; a < dp; ++a)
                for (std::size_t b = 0; b < dq; ++b)
                    if (!reps[s].at(a, b).is_zero())
                        acc = acc + right_by[b * dp + d].col(a).scaled(reps[s].at(a, b));
            for (std::size_t r = 0; r < dp; ++r) lhs.at(off + d * dp + r, s) = acc.at(r, 0);
        }
        rhs.at(off + d * dp + d, 0) = Scalar::one(f);
    }
    return {lhs, rhs};
}

bool satisfies_adjunction_identities(const Context& ctx, AdjunctionOrder order, const Matrix& coords) {
    auto [lhs, rhs] = adjunction_system(ctx, order);
    return lhs * coords == rhs;
}

bool unit_is_central(const Context& ctx, AdjunctionOrder order, const Matrix& coords) {
    const Bimodule& t = order == AdjunctionOrder::pq ? *ctx.QP().result() : *ctx.PQ().result();
    const AlgebraRef& alg = order == AdjunctionOrder::pq ? ctx.B() : ctx.A();
    for (std::size_t i = 0; i < alg->dim(); ++i)
        if (t.left_basis_action(i) * coords != t.right_basis_action(i) * coords) return false;
    return true;
}

bool is_separability_element(const Context& ctx, ContextSide side, const Matrix& coords) {
    CounitData data = counit_for(ctx, side);
    const Bimodule& t = *data.tensor->result();
    for (std::size_t i = 0; i < data.target->dim(); ++i)
        if (t.left_basis_action(i) * coords != t.right_basis_action(i) * coords) return false;
    return data.counit->matrix() * coords == data.target->unit();
}

AdjunctionSearch find_adjunction_unit(const Context& ctx, AdjunctionOrder order) {
    AdjunctionSearch out;
    auto [lhs, rhs] = adjunction_system(ctx, order);
    LinearSystem sys(ctx.field(), lhs.cols());
    sys.require(lhs, rhs);
    auto sol = sys.solve();
    if (!sol) {
        out.fingerprint = sys.fingerprint();
        return out;
    }
    AdjunctionUnit unit{order, sol->particular, false};
    unit.central = unit_is_central(ctx, order, unit.coords);
    out.unit = std::move(unit);
    return out;
}

Verdict verify_adjunction_bijection(const Context& ctx, const AdjunctionUnit& unit, const BimoduleRef& m,
                                    const BimoduleRef& n) {
    if (unit.order != AdjunctionOrder::pq)
        throw ValidationError("verify_adjunction_bijection: needs the (P, Q)-order unit");
    if (!m->left_alg()->same_presentation(*ctx.B()) || !n->left_alg()->same_presentation(*ctx.A()))
        throw ValidationError("verify_adjunction_bijection: M must be a left B-module, N a left A-module");
    const FieldSpec& f = ctx.field();
    Verdict v;
    v.predicate = "adjunction_bijection";

    TensorSpace pm(ctx.P(), m);  // left A-module
    TensorSpace qn(ctx.Q(), n);  // left B-module
    HomSpace x = hom_space(*pm.result(), *n);
    HomSpace y = hom_space(*m, *qn.result());

    Matrix u_rep = representative(ctx.QP(), unit.coords);  // dq x dp grid

    auto columns = [&](const HomSpace& h, std::size_t rows, std::size_t cols) {
        Matrix out(f, rows * cols, h.basis.size());
        for (std::size_t t = 0; t < h.basis.size(); ++t) {
            Matrix v2 = h.basis[t].vec();
            for (std::size_t r = 0; r < v2.rows(); ++r) out.at(r, t) = v2.at(r, 0);
        }
        return out;
    };
    Matrix ycols = columns(y, qn.dim(), m->dim());
    Matrix xcols = columns(x, n->dim(), pm.dim());

    // Phi: f -> (m -> sum q'_a (x) f(p'_b (x) m)).
    Matrix phi(f, y.basis.size(), x.basis.size());
    for (std::size_t t = 0; t < x.basis.size(); ++t) {
        const Matrix& fmap = x.basis[t];
        Matrix g(f, qn.dim(), m->dim());
        for (std::size_t c = 0; c < m->dim(); ++c) {
            Matrix acc(f, qn.dim(), 1);
            for (std::size_t a = 0; a < ctx.Q()->dim(); ++a)
                for (std::size_t b = 0; b < ctx.P()->dim(); ++b) {
                    if (u_rep.at(a, b).is_zero()) continue;
                    Matrix img = fmap * pm.pure(b, c);  // value in N
                    Matrix qa(f, ctx.Q()->dim(), 1);
                    qa.at(a, 0) = Scalar::one(f);
                    acc = acc + qn.pure_of(qa, img).scaled(u_rep.at(a, b));
                }
            for (std::size_t r = 0; r < qn.dim(); ++r) g.at(r, c) = acc.at(r, 0);
        }
        auto coords = column_space_membership(ycols, g.vec());
        if (!coords) throw ValidationError("verify_adjunction_bijection: Phi image leaves the hom space");
        for (std::size_t r = 0; r < y.basis.size(); ++r) phi.at(r, t) = coords->at(r, 0);
    }

    // Psi: g -> (p (x) m -> (nu (x) id)(p (x) g(m))).
    Matrix psi(f, x.basis.size(), y.basis.size());
    for (std::size_t t = 0; t < y.basis.size(); ++t) {
        const Matrix& gmap = y.basis[t];
        Matrix fmap(f, n->dim(), pm.dim());
        for (std::size_t s = 0; s < pm.dim(); ++s) {
            Matrix rep = representative(pm, Matrix::identity(f, pm.dim()).col(s));
            Matrix acc(f, n->dim(), 1);
            for (std::size_t b = 0; b < ctx.P()->dim(); ++b)
                for (std::size_t c = 0; c < m->dim(); ++c) {
                    if (rep.at(b, c).is_zero()) continue;
                    Matrix z = Matrix::unvec(qn.section() * gmap.col(c), ctx.Q()->dim(), n->dim());
                    for (std::size_t a = 0; a < ctx.Q()->dim(); ++a)
                        for (std::size_t w = 0; w < n->dim(); ++w) {
                            if (z.at(a, w).is_zero()) continue;
                            Matrix act = n->left_act(ctx.nu().matrix() * ctx.PQ().pure(b, a));
                            acc = acc + act.col(w).scaled(rep.at(b, c) * z.at(a, w));
                        }
                }
            for (std::size_t r = 0; r < n->dim(); ++r) fmap.at(r, s) = acc.at(r, 0);
        }
        auto coords = column_space_membership(xcols, fmap.vec());
        if (!coords) throw ValidationError("verify_adjunction_bijection: Psi image leaves the hom space");
        for (std::size_t r = 0; r < x.basis.size(); ++r) psi.at(r, t) = coords->at(r, 0);
    }

    bool ok = (psi * phi).is_identity() && (phi * psi).is_identity();
    v.status = ok ? Status::verified : Status::refuted;
    v.add_witness("phi", phi);
    v.add_witness("psi", psi);
    if (!ok) v.detail = "composites differ from the identity";
    return v;
}

BimoduleMap transport_splitting(const Context& ctx, const AdjunctionUnit& unit, const BimoduleMap& phi,
                                const BimoduleMap& phi_section) {
    if (unit.order != AdjunctionOrder::pq)
        throw ValidationError("transport_splitting: needs the (P, Q)-order unit");
    const FieldSpec& f = ctx.field();
    if (!(phi.matrix() * phi_section.matrix()).is_identity())
        throw ValidationError("transport_splitting: given section does not split phi");

    // g : Q -> Q, q_c -> sum u[a,b] q_a . phi(p_b (x) q_c).
    Matrix u_rep = representative(ctx.QP(), unit.coords);
    const std::size_t dq = ctx.Q()->dim(), dp = ctx.P()->dim();
    Matrix g(f, dq, dq);
    for (std::size_t c = 0; c < dq; ++c) {
        Matrix acc(f, dq, 1);
        for (std::size_t a = 0; a < dq; ++a)
            for (std::size_t b = 0; b < dp; ++b) {
                if (u_rep.at(a, b).is_zero()) continue;
                Matrix x = phi.matrix() * ctx.PQ().pure(b, c);
                acc = acc + (ctx.Q()->right_act(x).col(a)).scaled(u_rep.at(a, b));
            }
        for (std::size_t r = 0; r < dq; ++r) g.at(r, c) = acc.at(r, 0);
    }

    // (P (x) g) on the quotient, then the section of phi.
    Matrix pg = ctx.PQ().projector() * kron(Matrix::identity(f, dp), g) * ctx.PQ().section();
    Matrix s = pg * phi_section.matrix();
    BimoduleMap out(ctx.regular_A(), ctx.PQ().result(), s);
    if (!(ctx.nu().matrix() * s).is_identity())
        throw ValidationError("transport_splitting: transported map fails to split nu");
    return out;
}

DualIso dual_iso_Q(const Context& ctx, const AdjunctionUnit& unit) {
    if (unit.order != AdjunctionOrder::pq)
        throw ValidationError("dual_iso_Q: needs the (P, Q)-order unit");
    const FieldSpec& f = ctx.field();
    HomBimodule dual = hom_left_dual(ctx.P());
    const std::size_t dq = ctx.Q()->dim(), dp = ctx.P()->dim(), da = ctx.A()->dim();

    Matrix theta(f, dual.dim(), dq);
    for (std::size_t c = 0; c < dq; ++c) {
        Matrix concrete(f, da, dp);
        for (std::size_t b = 0; b < dp; ++b) {
            Matrix x = ctx.nu().matrix() * ctx.PQ().pure(b, c);
            for (std::size_t r = 0; r < da; ++r) concrete.at(r, b) = x.at(r, 0);
        }
        Matrix coords = dual.coords_of(concrete);
        for (std::size_t r = 0; r < dual.dim(); ++r) theta.at(r, c) = coords.at(r, 0);
    }

    Matrix u_rep = representative(ctx.QP(), unit.coords);
    Matrix tau(f, dq, dual.dim());
    for (std::size_t t = 0; t < dual.dim(); ++t) {
        Matrix acc(f, dq, 1);
        const Matrix& g = dual.basis_map(t);
        for (std::size_t a = 0; a < dq; ++a)
            for (std::size_t b = 0; b < dp; ++b) {
                if (u_rep.at(a, b).is_zero()) continue;
                acc = acc + (ctx.Q()->right_act(g.col(b)).col(a)).scaled(u_rep.at(a, b));
            }
        for (std::size_t r = 0; r < dq; ++r) tau.at(r, t) = acc.at(r, 0);
    }

    if (!(tau * theta).is_identity() || !(theta * tau).is_identity())
        throw ValidationError("dual_iso_Q: the two maps are not mutually inverse");
    BimoduleMap forward(ctx.Q(), dual.result(), theta);
    BimoduleMap backward(dual.result(), ctx.Q(), tau);
    return DualIso{std::move(dual), std::move(forward), std::move(backward)};
}

Matrix MuRing::mul(const Matrix& x, const Matrix& y) const {
    Matrix out(field, dim, 1);
    for (std::size_t s = 0; s < dim; ++s) {
        if (x.at(s, 0).is_zero()) continue;
        for (std::size_t t = 0; t < dim; ++t) {
            Scalar coeff = x.at(s, 0) * y.at(t, 0);
            if (coeff.is_zero()) continue;
            for (std::size_t k = 0; k < dim; ++k) out.at(k, 0) += coeff * c(s, t, k);
        }
    }
    return out;
}

Matrix MuRing::left_mult(const Matrix& x) const {
    Matrix out(field, dim, dim);
    for (std::size_t s = 0; s < dim; ++s) {
        if (x.at(s, 0).is_zero()) continue;
        for (std::size_t u = 0; u < dim; ++u)
            for (std::size_t k = 0; k < dim; ++k) out.at(k, u) += x.at(s, 0) * c(s, u, k);
    }
    return out;
}

Matrix MuRing::right_mult(const Matrix& x) const {
    Matrix out(field, dim, dim);
    for (std::size_t s = 0; s < dim; ++s) {
        if (x.at(s, 0).is_zero()) continue;
        for (std::size_t u = 0; u < dim; ++u)
            for (std::size_t k = 0; k < dim; ++k) out.at(k, u) += x.at(s, 0) * c(u, s, k);
    }
    return out;
}

std::optional<Matrix> MuRing::find_unit() const {
    LinearSystem sys(field, dim);
    for (std::size_t s = 0; s < dim; ++s) {
        Matrix left(field, dim, dim), right(field, dim, dim);
        for (std::size_t k = 0; k < dim; ++k)
            for (std::size_t u = 0; u < dim; ++u) {
                left.at(k, u) = c(u, s, k);   // (e_u . w_s) coefficient of w_k
                right.at(k, u) = c(s, u, k);  // (w_s . e_u)
            }
        Matrix target = Matrix::identity(field, dim).col(s);
        sys.require(left, target);
        sys.require(right, target);
    }
    auto sol = sys.solve();
    if (!sol) return std::nullopt;
    return sol->particular;
}

AlgebraRef MuRing::to_algebra(const Matrix& unit, const std::string& name) const {
    std::vector<std::vector<std::vector<Scalar>>> mult(
        dim, std::vector<std::vector<Scalar>>(dim, std::vector<Scalar>(dim, Scalar::zero(field))));
    for (std::size_t s = 0; s < dim; ++s)
        for (std::size_t t = 0; t < dim; ++t)
            for (std::size_t k = 0; k < dim; ++k) mult[s][t][k] = c(s, t, k);
    std::vector<Scalar> u(dim, Scalar::zero(field));
    for (std::size_t k = 0; k < dim; ++k) u[k] = unit.at(k, 0);
    return Algebra::validate(name, field, dim, mult, u);
}

MuRing build_mu_ring(const Context& ctx) {
    const FieldSpec& f = ctx.field();
    const TensorSpace& pq = ctx.PQ();
    const std::size_t t = pq.dim(), dp = ctx.P()->dim(), dq = ctx.Q()->dim();

    MuRing ring;
    ring.field = f;
    ring.dim = t;
    ring.constants.assign(t * t * t, Scalar::zero(f));

    std::vector<Matrix> right_by(dq * dp);  // R_P(mu(q_j (x) p_k))
    for (std::size_t j = 0; j < dq; ++j)
        for (std::size_t k = 0; k < dp; ++k)
            right_by[j * dp + k] = ctx.P()->right_act(ctx.mu().matrix() * ctx.QP().pure(j, k));

    std::vector<Matrix> reps(t);
    for (std::size_t s = 0; s < t; ++s)
        reps[s] = Matrix::unvec(pq.section().col(s), dp, dq);

    for (std::size_t s = 0; s < t; ++s)
        for (std::size_t u = 0; u < t; ++u) {
            Matrix acc(f, t, 1);
            for (std::size_t i = 0; i < dp; ++i)
                for (std::size_t j = 0; j < dq; ++j) {
                    if (reps[s].at(i, j).is_zero()) continue;
                    for (std::size_t k = 0; k < dp; ++k)
                        for (std::size_t l = 0; l < dq; ++l) {
                            Scalar coeff = reps[s].at(i, j) * reps[u].at(k, l);
                            if (coeff.is_zero()) continue;
                            Matrix p = right_by[j * dp + k].col(i);  // p_i . mu(q_j (x) p_k)
                            Matrix ql(f, dq, 1);
                            ql.at(l, 0) = Scalar::one(f);
                            acc = acc + pq.pure_of(p, ql).scaled(coeff);
                        }
                }
            for (std::size_t k = 0; k < t; ++k) ring.constants[(s * t + u) * t + k] = acc.at(k, 0);
        }

    ring.associative = true;
    for (std::size_t a = 0; a < t && ring.associative; ++a)
        for (std::size_t b = 0; b < t && ring.associative; ++b)
            for (std::size_t cidx = 0; cidx < t && ring.associative; ++cidx) {
                Matrix ea = Matrix::identity(f, t).col(a), eb = Matrix::identity(f, t).col(b),
                       ec = Matrix::identity(f, t).col(cidx);
                ring.associative = ring.mul(ring.mul(ea, eb), ec) == ring.mul(ea, ring.mul(eb, ec));
            }
    return ring;
}

RingIsoResult ring_iso_end(const Context& ctx, const AdjunctionUnit& unit_pq,
                           const AdjunctionUnit& unit_qp) {
    if (unit_pq.order != AdjunctionOrder::pq || unit_qp.order != AdjunctionOrder::qp)
        throw ValidationError("ring_iso_end: pass the (P,Q)- and (Q,P)-order units in order");
    const FieldSpec& f = ctx.field();
    RingIsoResult out;
    out.verdict.predicate = "ring_iso_end";

    MuRing ring = build_mu_ring(ctx);
    EndRing end = end_ring(ctx.P(), Side::right);
    const std::size_t t = ring.dim, dp = ctx.P()->dim(), dq = ctx.Q()->dim();

    // Forward: class(p (x) q) -> p mu(q (x) -).
    Matrix theta(f, end.basis.size(), t);
    for (std::size_t s = 0; s < t; ++s) {
        Matrix rep = Matrix::unvec(ctx.PQ().section().col(s), dp, dq);
        Matrix endo(f, dp, dp);
        for (std::size_t c = 0; c < dp; ++c) {
            Matrix acc(f, dp, 1);
            for (std::size_t i = 0; i < dp; ++i)
                for (std::size_t j = 0; j < dq; ++j) {
                    if (rep.at(i, j).is_zero()) continue;
                    Matrix x = ctx.mu().matrix() * ctx.QP().pure(j, c);
                    acc = acc + (ctx.P()->right_act(x).col(i)).scaled(rep.at(i, j));
                }
            for (std::size_t r = 0; r < dp; ++r) endo.at(r, c) = acc.at(r, 0);
        }
        Matrix coords = end.coords_of(endo);
        for (std::size_t r = 0; r < end.basis.size(); ++r) theta.at(r, s) = coords.at(r, 0);
    }

    // Inverse: alpha -> sum alpha(p_a) (x) q_b over the qp-unit's terms.
    Matrix v_rep = Matrix::unvec(ctx.PQ().section() * unit_qp.coords, dp, dq);
    Matrix tau(f, t, end.basis.size());
    for (std::size_t e = 0; e < end.basis.size(); ++e) {
        Matrix acc(f, t, 1);
        for (std::size_t a = 0; a < dp; ++a)
            for (std::size_t b = 0; b < dq; ++b) {
                if (v_rep.at(a, b).is_zero()) continue;
                Matrix qb(f, dq, 1);
                qb.at(b, 0) = Scalar::one(f);
                acc = acc + ctx.PQ().pure_of(end.basis[e].col(a), qb).scaled(v_rep.at(a, b));
            }
        for (std::size_t r = 0; r < t; ++r) tau.at(r, e) = acc.at(r, 0);
    }

    bool inverses = (theta * tau).is_identity() && (tau * theta).is_identity();
    bool multiplicative = true;
    for (std::size_t s = 0; s < t && multiplicative; ++s)
        for (std::size_t u = 0; u < t && multiplicative; ++u) {
            Matrix prod = ring.mul(Matrix::identity(f, t).col(s), Matrix::identity(f, t).col(u));
            Matrix lhs = theta * prod;
            Matrix rhs = end.coords_of(end.concrete_of(theta.col(s)) * end.concrete_of(theta.col(u)));
            multiplicative = lhs == rhs;
        }
    bool unital = end.concrete_of(theta * unit_qp.coords).is_identity();

    out.verdict.status = inverses && multiplicative && unital && ring.associative ? Status::verified
                                                                                  : Status::refuted;
    out.verdict.add_witness("theta", theta);
    out.verdict.add_witness("tau", tau);
    if (!out.verdict.verified()) {
        std::ostringstream os;
        os << "inverses=" << inverses << " multiplicative=" << multiplicative << " unital=" << unital
           << " associative=" << ring.associative;
        out.verdict.detail = os.str();
    } else {
        out.mu_ring_algebra = ring.to_algebra(unit_qp.coords, "P(x)Q");
        out.end_algebra = end.algebra;
    }
    return out;
}

EvaluationData evaluation_onto_A(const BimoduleRef& p) {
    const FieldSpec& f = p->field();
    HomBimodule dual = hom_left_dual(p);
    TensorSpace t(p, dual.result());
    const std::size_t da = p->left_alg()->dim();
    Matrix pure_eval(f, da, t.ambient_dim());
    for (std::size_t i = 0; i < p->dim(); ++i)
        for (std::size_t g = 0; g < dual.dim(); ++g) {
            Matrix img = dual.basis_map(g).col(i);
            for (std::size_t r = 0; r < da; ++r) pure_eval.at(r, i * dual.dim() + g) = img.at(r, 0);
        }
    BimoduleMap eval(t.result(), regular_bimodule(p->left_alg()), pure_eval * t.section());
    return EvaluationData{std::move(dual), std::move(t), std::move(eval)};
}

EvaluationData evaluation_onto_B(const BimoduleRef& p) {
    const FieldSpec& f = p->field();
    HomBimodule dual = hom_right_dual(p);
    TensorSpace t(dual.result(), p);
    const std::size_t db = p->right_alg()->dim();
    Matrix pure_eval(f, db, t.ambient_dim());
    for (std::size_t g = 0; g < dual.dim(); ++g)
        for (std::size_t i = 0; i < p->dim(); ++i) {
            Matrix img = dual.basis_map(g).col(i);
            for (std::size_t r = 0; r < db; ++r) pure_eval.at(r, g * p->dim() + i) = img.at(r, 0);
        }
    BimoduleMap eval(t.result(), regular_bimodule(p->right_alg()), pure_eval * t.section());
    return EvaluationData{std::move(dual), std::move(t), std::move(eval)};
}

namespace {

Verdict projectivity_subverdict(const BimoduleRef& p) {
    Verdict v;
    v.predicate = "left_right_finite_projective";
    auto left = is_finite_projective(*p, Side::left);
    auto right = is_finite_projective(*p, Side::right);
    if (left.projective && right.projective) {
        v.status = Status::verified;
        v.add_witness("left_section", left.certificate->section);
        v.add_witness("right_section", right.certificate->section);
    } else {
        v.status = Status::refuted;
        v.detail = std::string(left.projective ? "" : "left cover has no equivariant section; ") +
                   (right.projective ? "" : "right cover has no equivariant section");
    }
    return v;
}

}  // namespace

Verdict check_p_separable(const BimoduleRef& p) {
    Verdict v;
    v.predicate = "p_separable";
    Verdict proj = projectivity_subverdict(p);
    v.subchecks.push_back(proj);
    if (!proj.verified()) {
        v.status = Status::not_applicable;
        v.detail = "P is not left and right finite projective";
        return v;
    }
    EvaluationData e1 = evaluation_onto_A(p);
    auto split = find_bimodule_splitting(e1.eval);
    if (split.section) {
        v.status = Status::verified;
        v.add_witness("e1_section", split.section->matrix());
        v.add_witness("e1", e1.eval.matrix());
    } else {
        v.status = Status::refuted;
        v.detail = "evaluation onto A does not split: " + split.fingerprint;
    }
    return v;
}

Verdict check_biseparable(const BimoduleRef& p) {
    Verdict v;
    v.predicate = "biseparable";
    Verdict proj = projectivity_subverdict(p);
    v.subchecks.push_back(proj);
    if (!proj.verified()) {
        v.status = Status::not_applicable;
        v.detail = "P is not left and right finite projective";
        return v;
    }
    EvaluationData e1 = evaluation_onto_A(p);
    auto s1 = find_bimodule_splitting(e1.eval);

    EvaluationData e2 = evaluation_onto_B(p);
    auto s2 = find_bimodule_splitting(e2.eval);

    if (s1.section && s2.section) {
        v.status = Status::verified;
        v.add_witness("e1_section", s1.section->matrix());
        v.add_witness("e2_section", s2.section->matrix());
        v.add_witness("e1", e1.eval.matrix());
        v.add_witness("e2", e2.eval.matrix());
    } else {
        v.status = Status::refuted;
        v.detail =
            std::string(s1.section ? "" : "e1 does not split; ") + (s2.section ? "" : "e2 does not split");
    }
    return v;
}

Verdict check_separably_divides(const Context& ctx) {
    Verdict v;
    v.predicate = "separably_divides";
    if (ctx.degenerate()) {
        v.status = Status::degenerate;
        v.detail = "zero-dimensional context bimodule";
        return v;
    }
    Verdict proj_p = projectivity_subverdict(ctx.P());
    proj_p.predicate += "(P)";
    Verdict proj_q = projectivity_subverdict(ctx.Q());
    proj_q.predicate += "(Q)";
    v.subchecks.push_back(proj_p);
    v.subchecks.push_back(proj_q);
    if (!proj_p.verified() || !proj_q.verified()) {
        v.status = Status::refuted;
        v.detail = "context bimodules are not left and right finite projective";
        return v;
    }
    auto sep = find_separability_element(ctx, ContextSide::a_over_b);
    if (sep.element) {
        v.status = Status::verified;
        v.add_witness("separability_element", sep.element->coords);
    } else {
        v.status = Status::refuted;
        v.detail = "no separability element: " + sep.fingerprint;
    }
    return v;
}

Verdict check_separable_equivalence(const Context& ctx) {
    Verdict v;
    v.predicate = "separable_equivalence";
    if (ctx.degenerate()) {
        v.status = Status::degenerate;
        v.detail = "zero-dimensional context bimodule";
        return v;
    }
    if (!ctx.has_mu()) {
        v.status = Status::not_applicable;
        v.detail = "context has no mu";
        return v;
    }
    Verdict forward = check_separably_divides(ctx);
    forward.predicate += "(A|B)";
    v.subchecks.push_back(forward);
    auto sep_back = find_separability_element(ctx, ContextSide::b_over_a);
    Verdict backward;
    backward.predicate = "separably_divides(B|A)";
    if (sep_back.element) {
        backward.status = Status::verified;
        backward.add_witness("separability_element", sep_back.element->coords);
    } else {
        backward.status = Status::refuted;
        backward.detail = "no separability element: " + sep_back.fingerprint;
    }
    v.subchecks.push_back(backward);

    if (forward.verified() && backward.verified()) {
        v.status = Status::verified;
        v.add_witness("separability_element_a_over_b", *forward.witness("separability_element"));
        v.add_witness("separability_element_b_over_a", *backward.witness("separability_element"));
    } else {
        v.status = Status::refuted;
        v.detail = "one of the two divisions fails";
    }
    return v;
}

Verdict check_symmetric_equivalence(const Context& ctx) {
    Verdict v;
    v.predicate = "symmetric_separable_equivalence";
    if (ctx.degenerate()) {
        v.status = Status::degenerate;
        v.detail = "zero-dimensional context bimodule";
        return v;
    }
    if (!ctx.has_mu()) {
        v.status = Status::not_applicable;
        v.detail = "context has no mu";
        return v;
    }
    Verdict equiv = check_separable_equivalence(ctx);
    v.subchecks.push_back(equiv);
    auto unit_pq = find_adjunction_unit(ctx, AdjunctionOrder::pq);
    auto unit_qp = find_adjunction_unit(ctx, AdjunctionOrder::qp);
    if (equiv.verified() && unit_pq.unit && unit_qp.unit) {
        v.status = Status::verified;
        v.add_witness("unit_pq", unit_pq.unit->coords);
        v.add_witness("unit_qp", unit_qp.unit->coords);
        v.add_witness("separability_element_a_over_b", *equiv.witness("separability_element_a_over_b"));
        v.add_witness("separability_element_b_over_a", *equiv.witness("separability_element_b_over_a"));
    } else {
        v.status = Status::refuted;
        std::ostringstream os;
        if (!equiv.verified()) os << "not separably equivalent; ";
        if (!unit_pq.unit) os << "no (P,Q) adjunction unit: " << unit_pq.fingerprint << "; ";
        if (!unit_qp.unit) os << "no (Q,P) adjunction unit: " << unit_qp.fingerprint;
        v.detail = os.str();
    }
    return v;
}

Context context_from_dual_pair(const BimoduleRef& p, const Matrix& right_to_left_dual_iso) {
    const FieldSpec& f = p->field();
    EvaluationData ev1 = evaluation_onto_A(p);   // on P (x) leftdual
    EvaluationData ev2 = evaluation_onto_B(p);   // on rightdual (x) P
    const BimoduleRef& q = ev2.dual.result();    // Hom(P_B, B_B)
    // Transport the left-dual evaluation along the iso to a counit on
    // P (x) rightdual.
    TensorSpace p_rd(p, q);
    Matrix carry = ev1.tensor.projector() *
                   kron(Matrix::identity(f, p->dim()), right_to_left_dual_iso) * p_rd.section();
    Matrix nu = ev1.eval.matrix() * carry;
    Matrix mu = ev2.eval.matrix();
    return Context::make(p->left_alg(), p->right_alg(), p, q, nu, mu);
}

Verdict biseparable_from_context(const Context& ctx) {
    Verdict equiv = check_separable_equivalence(ctx);
    if (!equiv.verified())
        throw ValidationError("biseparable_from_context: context is not separably equivalent (" +
                              equiv.detail + ")");
    const FieldSpec& f = ctx.field();
    Verdict v;
    v.predicate = "biseparable_from_context";

    const std::size_t dp = ctx.P()->dim(), dq = ctx.Q()->dim();

    // h : Q -> Hom(_A P, _A A), q -> nu(- (x) q).
    EvaluationData ev1 = evaluation_onto_A(ctx.P());
    Matrix h(f, ev1.dual.dim(), dq);
    for (std::size_t c = 0; c < dq; ++c) {
        Matrix concrete(f, ctx.A()->dim(), dp);
        for (std::size_t b = 0; b < dp; ++b) {
            Matrix x = ctx.nu().matrix() * ctx.PQ().pure(b, c);
            for (std::size_t r = 0; r < x.rows(); ++r) concrete.at(r, b) = x.at(r, 0);
        }
        Matrix coords = ev1.dual.coords_of(concrete);
        for (std::size_t r = 0; r < ev1.dual.dim(); ++r) h.at(r, c) = coords.at(r, 0);
    }

    // g : Q -> Hom(P_B, B_B), q -> mu(q (x) -).
    EvaluationData ev2 = evaluation_onto_B(ctx.P());
    Matrix g(f, ev2.dual.dim(), dq);
    for (std::size_t c = 0; c < dq; ++c) {
        Matrix concrete(f, ctx.B()->dim(), dp);
        for (std::size_t b = 0; b < dp; ++b) {
            Matrix x = ctx.mu().matrix() * ctx.QP().pure(c, b);
            for (std::size_t r = 0; r < x.rows(); ++r) concrete.at(r, b) = x.at(r, 0);
        }
        Matrix coords = ev2.dual.coords_of(concrete);
        for (std::size_t r = 0; r < ev2.dual.dim(); ++r) g.at(r, c) = coords.at(r, 0);
    }

    Matrix e1 = ev1.eval.matrix();
    Matrix id_h = ev1.tensor.projector() * kron(Matrix::identity(f, dp), h) * ctx.PQ().section();
    bool fact1 = e1 * id_h == ctx.nu().matrix();

    Matrix e2 = ev2.eval.matrix();
    Matrix g_id = ev2.tensor.projector() * kron(g, Matrix::identity(f, dp)) * ctx.QP().section();
    bool fact2 = e2 * g_id == ctx.mu().matrix();

    SeparabilityElement sep_a{ContextSide::a_over_b, *equiv.witness("separability_element_a_over_b")};
    SeparabilityElement sep_b{ContextSide::b_over_a, *equiv.witness("separability_element_b_over_a")};
    Matrix s_nu = splitting_from_element(ctx, sep_a).matrix();
    Matrix s_mu = splitting_from_element(ctx, sep_b).matrix();
    Matrix s_e1 = id_h * s_nu;
    Matrix s_e2 = g_id * s_mu;
    bool split1 = (e1 * s_e1).is_identity();
    bool split2 = (e2 * s_e2).is_identity();

    v.status = fact1 && fact2 && split1 && split2 ? Status::verified : Status::refuted;
    v.add_witness("h", h);
    v.add_witness("g", g);
    v.add_witness("e1_section", s_e1);
    v.add_witness("e2_section", s_e2);
    if (!v.verified()) {
        std::ostringstream os;
        os << "fact1=" << fact1 << " fact2=" << fact2 << " split1=" << split1 << " split2=" << split2;
        v.detail = os.str();
    }
    v.subchecks.push_back(equiv);
    return v;
}

}  // namespace sepeq
