#include "sepeq/workspace.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sepeq/sha256.hpp"
#include "sepeq/version.hpp"

namespace sepeq {

using json = nlohmann::ordered_json;

namespace {

json field_to_json(const FieldSpec& f) {
    json j;
    if (f.is_rationals()) {
        j["kind"] = "rationals";
    } else {
        j["kind"] = "prime_field";
        j["p"] = f.p;
    }
    return j;
}

FieldSpec field_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "rationals") return FieldSpec::rationals();
    if (kind == "prime_field") return FieldSpec::prime(j.at("p").get<std::uint32_t>());
    throw ValidationError("workspace: unknown field kind '" + kind + "'");
}

json matrix_to_json(const Matrix& m) {
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(i, c).str());
        rows.push_back(row);
    }
    j["entries"] = rows;
    return j;
}

Matrix matrix_from_json(const json& j, const FieldSpec& f) {
    std::size_t rows = j.at("rows").get<std::size_t>();
    std::size_t cols = j.at("cols").get<std::size_t>();
    Matrix m(f, rows, cols);
    const json& entries = j.at("entries");
    if (entries.size() != rows) throw ValidationError("matrix: row count mismatch");
    for (std::size_t i = 0; i < rows; ++i) {
        if (entries[i].size() != cols) throw ValidationError("matrix: column count mismatch");
        for (std::size_t c = 0; c < cols; ++c)
            m.at(i, c) = Scalar::parse(entries[i][c].get<std::string>(), f);
    }
    return m;
}

// Action grids without the rows/cols header (shape known from context).
json grid_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(i, c).str());
        rows.push_back(row);
    }
    return rows;
}

Matrix grid_from_json(const json& j, const FieldSpec& f, std::size_t rows, std::size_t cols,
                      const std::string& what) {
    Matrix m(f, rows, cols);
    if (j.size() != rows) throw ValidationError(what + ": row count mismatch");
    for (std::size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols) throw ValidationError(what + ": column count mismatch");
        for (std::size_t c = 0; c < cols; ++c) m.at(i, c) = Scalar::parse(j[i][c].get<std::string>(), f);
    }
    return m;
}

template <typename T>
const T& find_named(const std::vector<std::pair<std::string, T>>& list, const std::string& name,
                    const char* what) {
    for (const auto& [n, v] : list)
        if (n == name) return v;
    throw ValidationError(std::string(what) + " '" + name + "' is not defined in the workspace");
}

}  // namespace

const AlgebraRef& WorkspaceFile::algebra(const std::string& name) const {
    return find_named(algebras, name, "algebra");
}
const BimoduleRef& WorkspaceFile::bimodule(const std::string& name) const {
    return find_named(bimodules, name, "bimodule");
}
const Matrix& WorkspaceFile::map(const std::string& name) const { return find_named(maps, name, "map"); }

const WorkspaceFile::ContextEntry& WorkspaceFile::context_entry(const std::string& name) const {
    for (const auto& c : contexts)
        if (c.name == name) return c;
    throw ValidationError("context '" + name + "' is not defined in the workspace");
}

const WorkspaceFile::ExtensionEntry& WorkspaceFile::extension_entry(const std::string& name) const {
    for (const auto& e : frobenius_data)
        if (e.name == name) return e;
    throw ValidationError("frobenius_data entry '" + name + "' is not defined in the workspace");
}

Context WorkspaceFile::build_context(const std::string& name) const {
    const ContextEntry& e = context_entry(name);
    std::optional<Matrix> mu;
    if (!e.mu.empty()) mu = map(e.mu);
    return Context::make(algebra(e.a), algebra(e.b), bimodule(e.p), bimodule(e.q), map(e.nu), mu);
}

FrobeniusExtensionData WorkspaceFile::build_extension(const std::string& name) const {
    const ExtensionEntry& e = extension_entry(name);
    AlgebraMap iota(algebra(e.subalgebra), algebra(e.algebra), e.inclusion);
    return FrobeniusExtensionData{std::move(iota), e.e_map, e.dual_bases};
}

WorkspaceFile parse_workspace(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("workspace parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    WorkspaceFile ws;
    try {
        ws.format_version = j.at("format_version").get<int>();
        if (ws.format_version != kFormatVersion)
            throw ValidationError("workspace: unsupported format_version " +
                                  std::to_string(ws.format_version));
        ws.field = field_from_json(j.at("field"));
        const FieldSpec& f = ws.field;

        for (const json& ja : j.value("algebras", json::array())) {
            std::string name = ja.at("name").get<std::string>();
            if (ja.contains("field") && field_from_json(ja.at("field")) != f)
                throw ValidationError("algebra '" + name + "': field differs from the workspace field");
            std::size_t dim = ja.at("dim").get<std::size_t>();
            const json& jm = ja.at("mult");
            if (jm.size() != dim) throw ValidationError("algebra '" + name + "': mult has wrong size");
            std::vector<std::vector<std::vector<Scalar>>> mult(
                dim, std::vector<std::vector<Scalar>>(dim, std::vector<Scalar>(dim, Scalar::zero(f))));
            for (std::size_t a = 0; a < dim; ++a) {
                if (jm[a].size() != dim)
                    throw ValidationError("algebra '" + name + "': mult row has wrong size");
                for (std::size_t b = 0; b < dim; ++b) {
                    if (jm[a][b].size() != dim)
                        throw ValidationError("algebra '" + name + "': product vector has wrong size");
                    for (std::size_t c = 0; c < dim; ++c)
                        mult[a][b][c] = Scalar::parse(jm[a][b][c].get<std::string>(), f);
                }
            }
            const json& ju = ja.at("unit");
            if (ju.size() != dim) throw ValidationError("algebra '" + name + "': unit has wrong size");
            std::vector<Scalar> unit;
            for (std::size_t a = 0; a < dim; ++a) unit.push_back(Scalar::parse(ju[a].get<std::string>(), f));
            ws.algebras.emplace_back(name, Algebra::validate(name, f, dim, std::move(mult), unit));
        }

        for (const json& jb : j.value("bimodules", json::array())) {
            std::string name = jb.at("name").get<std::string>();
            const AlgebraRef& left = ws.algebra(jb.at("left_algebra").get<std::string>());
            const AlgebraRef& right = ws.algebra(jb.at("right_algebra").get<std::string>());
            std::size_t dim = jb.at("dim").get<std::size_t>();
            std::vector<Matrix> la, ra;
            const json& jl = jb.at("left_action");
            const json& jr = jb.at("right_action");
            if (jl.size() != left->dim() || jr.size() != right->dim())
                throw ValidationError("bimodule '" + name + "': action list has wrong length");
            for (std::size_t i = 0; i < left->dim(); ++i)
                la.push_back(grid_from_json(jl[i], f, dim, dim, "bimodule '" + name + "' left action"));
            for (std::size_t i = 0; i < right->dim(); ++i)
                ra.push_back(grid_from_json(jr[i], f, dim, dim, "bimodule '" + name + "' right action"));
            ws.bimodules.emplace_back(
                name, Bimodule::validate(name, left, right, dim, std::move(la), std::move(ra)));
        }

        for (const json& jm : j.value("maps", json::array()))
            ws.maps.emplace_back(jm.at("name").get<std::string>(), matrix_from_json(jm, f));

        for (const json& jc : j.value("contexts", json::array())) {
            WorkspaceFile::ContextEntry e;
            e.name = jc.at("name").get<std::string>();
            e.a = jc.at("A").get<std::string>();
            e.b = jc.at("B").get<std::string>();
            e.p = jc.at("P").get<std::string>();
            e.q = jc.at("Q").get<std::string>();
            e.nu = jc.at("nu").get<std::string>();
            if (jc.contains("mu") && !jc.at("mu").is_null()) e.mu = jc.at("mu").get<std::string>();
            ws.contexts.push_back(e);
            ws.build_context(e.name);  // validates references and the bimodule-map laws
        }

        for (const json& je : j.value("frobenius_data", json::array())) {
            WorkspaceFile::ExtensionEntry e;
            e.name = je.at("name").get<std::string>();
            e.algebra = je.at("algebra").get<std::string>();
            e.subalgebra = je.at("subalgebra").get<std::string>();
            const AlgebraRef& a = ws.algebra(e.algebra);
            const AlgebraRef& b = ws.algebra(e.subalgebra);
            e.inclusion = grid_from_json(je.at("inclusion"), f, a->dim(), b->dim(),
                                         "frobenius_data '" + e.name + "' inclusion");
            e.e_map =
                grid_from_json(je.at("E"), f, b->dim(), a->dim(), "frobenius_data '" + e.name + "' E");
            const json& jx = je.at("dual_x");
            const json& jy = je.at("dual_y");
            if (jx.size() != jy.size())
                throw ValidationError("frobenius_data '" + e.name + "': dual_x and dual_y lengths differ");
            for (std::size_t t = 0; t < jx.size(); ++t) {
                Matrix x(f, a->dim(), 1), y(f, a->dim(), 1);
                if (jx[t].size() != a->dim() || jy[t].size() != a->dim())
                    throw ValidationError("frobenius_data '" + e.name + "': dual basis vector length");
                for (std::size_t r = 0; r < a->dim(); ++r) {
                    x.at(r, 0) = Scalar::parse(jx[t][r].get<std::string>(), f);
                    y.at(r, 0) = Scalar::parse(jy[t][r].get<std::string>(), f);
                }
                e.dual_bases.emplace_back(std::move(x), std::move(y));
            }
            ws.frobenius_data.push_back(e);
            ws.build_extension(e.name);  // validates the inclusion map laws
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("workspace: malformed document: ") + e.what());
    }
    return ws;
}

WorkspaceFile load_workspace(const std::string& path) { return parse_workspace(read_file_bytes(path)); }

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string serialize_workspace(const WorkspaceFile& ws) {
    json j;
    j["format_version"] = ws.format_version;
    j["field"] = field_to_json(ws.field);
    json algebras = json::array();
    for (const auto& [name, a] : ws.algebras) {
        json ja;
        ja["name"] = name;
        ja["field"] = field_to_json(ws.field);
        ja["dim"] = a->dim();
        json unit = json::array();
        for (std::size_t i = 0; i < a->dim(); ++i) unit.push_back(a->unit().at(i, 0).str());
        ja["unit"] = unit;
        json mult = json::array();
        for (std::size_t x = 0; x < a->dim(); ++x) {
            json row = json::array();
            for (std::size_t y = 0; y < a->dim(); ++y) {
                json vec = json::array();
                for (std::size_t k = 0; k < a->dim(); ++k) vec.push_back(a->structure_const(x, y, k).str());
                row.push_back(vec);
            }
            mult.push_back(row);
        }
        ja["mult"] = mult;
        algebras.push_back(ja);
    }
    j["algebras"] = algebras;

    json bimodules = json::array();
    for (const auto& [name, m] : ws.bimodules) {
        json jb;
        jb["name"] = name;
        // Workspace keys refer to in-file names; resolve them back.
        std::string left_name, right_name;
        for (const auto& [an, av] : ws.algebras) {
            if (av->same_presentation(*m->left_alg())) left_name = an;
            if (av->same_presentation(*m->right_alg())) right_name = an;
        }
        jb["left_algebra"] = left_name;
        jb["right_algebra"] = right_name;
        jb["dim"] = m->dim();
        json la = json::array(), ra = json::array();
        for (std::size_t i = 0; i < m->left_alg()->dim(); ++i)
            la.push_back(grid_to_json(m->left_basis_action(i)));
        for (std::size_t i = 0; i < m->right_alg()->dim(); ++i)
            ra.push_back(grid_to_json(m->right_basis_action(i)));
        jb["left_action"] = la;
        jb["right_action"] = ra;
        bimodules.push_back(jb);
    }
    j["bimodules"] = bimodules;

    json maps = json::array();
    for (const auto& [name, m] : ws.maps) {
        json jm;
        jm["name"] = name;
        json body = matrix_to_json(m);
        jm["rows"] = body["rows"];
        jm["cols"] = body["cols"];
        jm["entries"] = body["entries"];
        maps.push_back(jm);
    }
    j["maps"] = maps;

    json contexts = json::array();
    for (const auto& c : ws.contexts) {
        json jc;
        jc["name"] = c.name;
        jc["A"] = c.a;
        jc["B"] = c.b;
        jc["P"] = c.p;
        jc["Q"] = c.q;
        jc["nu"] = c.nu;
        if (c.mu.empty())
            jc["mu"] = nullptr;
        else
            jc["mu"] = c.mu;
        contexts.push_back(jc);
    }
    j["contexts"] = contexts;

    json exts = json::array();
    for (const auto& e : ws.frobenius_data) {
        json je;
        je["name"] = e.name;
        je["algebra"] = e.algebra;
        je["subalgebra"] = e.subalgebra;
        je["inclusion"] = grid_to_json(e.inclusion);
        je["E"] = grid_to_json(e.e_map);
        json jx = json::array(), jy = json::array();
        for (const auto& [x, y] : e.dual_bases) {
            json vx = json::array(), vy = json::array();
            for (std::size_t r = 0; r < x.rows(); ++r) vx.push_back(x.at(r, 0).str());
            for (std::size_t r = 0; r < y.rows(); ++r) vy.push_back(y.at(r, 0).str());
            jx.push_back(vx);
            jy.push_back(vy);
        }
        je["dual_x"] = jx;
        je["dual_y"] = jy;
        exts.push_back(je);
    }
    j["frobenius_data"] = exts;
    return j.dump(2) + "\n";
}

const std::string* CertificateFile::param(const std::string& key) const {
    for (const auto& [k, v] : params)
        if (k == key) return &v;
    return nullptr;
}

const Matrix* CertificateFile::witness(const std::string& name) const {
    for (const auto& w : witnesses)
        if (w.name == name) return &w.value;
    return nullptr;
}

CertificateFile make_certificate(const std::string& predicate, Status status,
                                 const std::string& workspace_bytes,
                                 std::vector<std::pair<std::string, std::string>> params,
                                 std::vector<Witness> witnesses, const FieldSpec&) {
    CertificateFile cert;
    cert.predicate = predicate;
    cert.input_hash = "sha256:" + sha256_hex(workspace_bytes);
    cert.status = status_str(status);
    cert.params = std::move(params);
    cert.witnesses = std::move(witnesses);
    cert.tool_version = kToolVersion;
    return cert;
}

std::string serialize_certificate(const CertificateFile& cert) {
    json j;
    j["format_version"] = cert.format_version;
    j["predicate"] = cert.predicate;
    j["input_hash"] = cert.input_hash;
    j["status"] = cert.status;
    json params = json::object();
    for (const auto& [k, v] : cert.params) params[k] = v;
    j["params"] = params;
    json witnesses = json::array();
    for (const auto& w : cert.witnesses) {
        json jw;
        jw["name"] = w.name;
        json body = matrix_to_json(w.value);
        jw["rows"] = body["rows"];
        jw["cols"] = body["cols"];
        jw["entries"] = body["entries"];
        witnesses.push_back(jw);
    }
    j["witnesses"] = witnesses;
    j["tool_version"] = cert.tool_version;
    return j.dump(2) + "\n";
}

CertificateFile parse_certificate(const std::string& json_text, const FieldSpec& field) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("certificate parse error at byte " + std::to_string(e.byte) + ": " +
                              e.what());
    }
    CertificateFile cert;
    try {
        cert.format_version = j.at("format_version").get<int>();
        cert.predicate = j.at("predicate").get<std::string>();
        cert.input_hash = j.at("input_hash").get<std::string>();
        cert.status = j.at("status").get<std::string>();
        for (const auto& [k, v] : j.at("params").items()) cert.params.emplace_back(k, v.get<std::string>());
        for (const json& jw : j.at("witnesses"))
            cert.witnesses.push_back(Witness{jw.at("name").get<std::string>(), matrix_from_json(jw, field)});
        cert.tool_version = j.at("tool_version").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("certificate: malformed document: ") + e.what());
    }
    return cert;
}

namespace {

struct ReplayFailure : std::runtime_error {
    explicit ReplayFailure(const std::string& what) : std::runtime_error(what) {}
};

const Matrix& need_witness(const CertificateFile& cert, const std::string& name) {
    const Matrix* w = cert.witness(name);
    if (!w) throw ReplayFailure("missing witness '" + name + "'");
    return *w;
}

std::string need_param(const CertificateFile& cert, const std::string& key) {
    const std::string* p = cert.param(key);
    if (!p) throw ReplayFailure("missing parameter '" + key + "'");
    return *p;
}

void check(bool ok, const std::string& what) {
    if (!ok) throw ReplayFailure(what);
}

void replay_projectivity(const Bimodule& p, const CertificateFile& cert, const std::string& prefix) {
    check(section_splits_cover(p, Side::left, need_witness(cert, prefix + "left_section")),
          prefix + "left_section is not an equivariant splitting");
    check(section_splits_cover(p, Side::right, need_witness(cert, prefix + "right_section")),
          prefix + "right_section is not an equivariant splitting");
}

void replay_unit(const Context& ctx, AdjunctionOrder order, const Matrix& coords,
                 const std::string& name) {
    check(satisfies_adjunction_identities(ctx, order, coords), name + " fails the triangular identities");
    check(unit_is_central(ctx, order, coords), name + " is not central");
}

void replay_eval_splitting(const EvaluationData& ev, const Matrix& section, const std::string& name) {
    check((ev.eval.matrix() * section).is_identity(), name + " does not split the evaluation");
    try {
        BimoduleMap as_map(ev.eval.target(), ev.eval.source(), section);
    } catch (const ValidationError& e) {
        throw ReplayFailure(name + " is not a bimodule map: " + e.what());
    }
}

void dispatch_replay(const WorkspaceFile& ws, const CertificateFile& cert) {
    const std::string& pred = cert.predicate;

    if (pred == "workspace_valid") return;  // loading already validated everything

    if (pred == "tensor_basis") {
        TensorSpace t(ws.bimodule(need_param(cert, "left")), ws.bimodule(need_param(cert, "right")));
        std::ostringstream os;
        for (std::size_t i = 0; i < t.basis_coords().size(); ++i)
            os << (i ? "," : "") << t.basis_coords()[i];
        check(os.str() == need_param(cert, "basis_coords"), "canonical basis coordinates differ");
        check(t.projector() == need_witness(cert, "projector"), "projector differs");
        return;
    }

    if (pred == "separability_element") {
        Context ctx = ws.build_context(need_param(cert, "context"));
        ContextSide side =
            need_param(cert, "side") == "a_over_b" ? ContextSide::a_over_b : ContextSide::b_over_a;
        check(is_separability_element(ctx, side, need_witness(cert, "separability_element")),
              "separability element fails centrality or the counit condition");
        return;
    }

    if (pred == "adjunction_unit") {
        Context ctx = ws.build_context(need_param(cert, "context"));
        AdjunctionOrder order = need_param(cert, "order") == "pq" ? AdjunctionOrder::pq : AdjunctionOrder::qp;
        replay_unit(ctx, order, need_witness(cert, "unit"), "unit");
        return;
    }

    if (pred == "mu_ring_unital") {
        Context ctx = ws.build_context(need_param(cert, "context"));
        MuRing ring = build_mu_ring(ctx);
        check(ring.associative, "mu-multiplication is not associative");
        const Matrix& unit = need_witness(cert, "unit");
        for (std::size_t s = 0; s < ring.dim; ++s) {
            Matrix es = Matrix::identity(ring.field, ring.dim).col(s);
            check(ring.mul(unit, es) == es && ring.mul(es, unit) == es, "unit equations fail");
        }
        return;
    }

    if (pred == "separably_divides" || pred == "separable_equivalence" ||
        pred == "symmetric_separable_equivalence") {
        Context ctx = ws.build_context(need_param(cert, "context"));
        replay_projectivity(*ctx.P(), cert, "p_");
        replay_projectivity(*ctx.Q(), cert, "q_");
        check(is_separability_element(ctx, ContextSide::a_over_b,
                                      need_witness(cert, "separability_element_a_over_b")),
              "forward separability element fails");
        if (pred != "separably_divides")
            check(is_separability_element(ctx, ContextSide::b_over_a,
                                          need_witness(cert, "separability_element_b_over_a")),
                  "backward separability element fails");
        if (pred == "symmetric_separable_equivalence") {
            replay_unit(ctx, AdjunctionOrder::pq, need_witness(cert, "unit_pq"), "unit_pq");
            replay_unit(ctx, AdjunctionOrder::qp, need_witness(cert, "unit_qp"), "unit_qp");
        }
        return;
    }

    if (pred == "p_separable" || pred == "biseparable") {
        const BimoduleRef& p = ws.bimodule(need_param(cert, "bimodule"));
        replay_projectivity(*p, cert, "");
        replay_eval_splitting(evaluation_onto_A(p), need_witness(cert, "e1_section"), "e1_section");
        if (pred == "biseparable")
            replay_eval_splitting(evaluation_onto_B(p), need_witness(cert, "e2_section"), "e2_section");
        return;
    }

    if (pred == "biseparable_from_context") {
        Context ctx = ws.build_context(need_param(cert, "context"));
        const FieldSpec& f = ctx.field();
        const std::size_t dp = ctx.P()->dim();
        EvaluationData ev1 = evaluation_onto_A(ctx.P());
        EvaluationData ev2 = evaluation_onto_B(ctx.P());
        const Matrix& h = need_witness(cert, "h");
        const Matrix& g = need_witness(cert, "g");
        Matrix id_h = ev1.tensor.projector() * kron(Matrix::identity(f, dp), h) * ctx.PQ().section();
        Matrix g_id = ev2.tensor.projector() * kron(g, Matrix::identity(f, dp)) * ctx.QP().section();
        check(ev1.eval.matrix() * id_h == ctx.nu().matrix(), "nu does not factor through e1");
        check(ev2.eval.matrix() * g_id == ctx.mu().matrix(), "mu does not factor through e2");
        replay_eval_splitting(ev1, need_witness(cert, "e1_section"), "e1_section");
        replay_eval_splitting(ev2, need_witness(cert, "e2_section"), "e2_section");
        return;
    }

    if (pred == "frobenius_bimodule" || pred == "twisted_frobenius_bimodule") {
        const BimoduleRef& p = ws.bimodule(need_param(cert, "bimodule"));
        replay_projectivity(*p, cert, "");
        AlgebraMap alpha =
            cert.witness("alpha")
                ? AlgebraMap(p->left_alg(), p->left_alg(), need_witness(cert, "alpha"))
                : AlgebraMap::identity(p->left_alg());
        AlgebraMap beta = cert.witness("beta")
                              ? AlgebraMap(p->right_alg(), p->right_alg(), need_witness(cert, "beta"))
                              : AlgebraMap::identity(p->right_alg());
        HomBimodule rd = hom_right_dual(p);
        HomBimodule ld = hom_left_dual(p);
        auto twisted = twist_bimodule(ld.result(), beta, alpha);
        const Matrix& iso = need_witness(cert, "dual_iso");
        const Matrix& inv = need_witness(cert, "dual_iso_inverse");
        check((iso * inv).is_identity() && (inv * iso).is_identity(), "dual_iso is not invertible");
        try {
            BimoduleMap as_map(rd.result(), twisted, iso);
        } catch (const ValidationError& e) {
            throw ReplayFailure(std::string("dual_iso is not equivariant: ") + e.what());
        }
        return;
    }

    if (pred == "frobenius_structure") {
        const AlgebraRef& a = ws.algebra(need_param(cert, "algebra"));
        const FieldSpec& f = a->field();
        const Matrix& lambda = need_witness(cert, "functional");
        const Matrix& nak = need_witness(cert, "nakayama");
        const Matrix& nak_inv = need_witness(cert, "nakayama_inverse");
        const Matrix& dual_x = need_witness(cert, "dual_x");  // column t carries x_t
        const Matrix& dual_y = need_witness(cert, "dual_y");
        check((nak * nak_inv).is_identity() && (nak_inv * nak).is_identity(),
              "nakayama witness is not invertible");
        try {
            AlgebraMap as_map(a, a, nak);
        } catch (const ValidationError& e) {
            throw ReplayFailure(std::string("nakayama witness is not an automorphism: ") + e.what());
        }
        check(dual_x.cols() == dual_y.cols(), "dual basis sizes differ");
        for (std::size_t t = 0; t < a->dim(); ++t) {
            Matrix et = a->basis_vector(t);
            Matrix lhs(f, a->dim(), 1), rhs(f, a->dim(), 1);
            for (std::size_t i = 0; i < dual_x.cols(); ++i) {
                lhs = lhs + dual_x.col(i).scaled((lambda * a->mul(dual_y.col(i), et)).at(0, 0));
                rhs = rhs + dual_y.col(i).scaled((lambda * a->mul(et, dual_x.col(i))).at(0, 0));
            }
            check(lhs == et && rhs == et, "dual-basis law fails");
        }
        for (std::size_t i = 0; i < a->dim(); ++i)
            for (std::size_t jx = 0; jx < a->dim(); ++jx) {
                Scalar lhs = (lambda * a->mul(a->basis_vector(i), a->basis_vector(jx))).at(0, 0);
                Scalar rhs = (lambda * a->mul(a->basis_vector(jx), nak * a->basis_vector(i))).at(0, 0);
                check(lhs == rhs, "nakayama law fails");
            }
        return;
    }

    if (pred == "frobenius_extension") {
        FrobeniusExtensionData data = ws.build_extension(need_param(cert, "ext"));
        Verdict core = verify_frobenius_extension(data);
        check(core.verified(), "extension laws fail: " + core.detail);
        Context ctx = extension_context_of(data);
        check(is_separability_element(ctx, ContextSide::a_over_b,
                                      need_witness(cert, "separability_element")),
              "separability element fails");
        const Matrix& gamma = need_witness(cert, "retraction");
        const AlgebraRef& a = data.inclusion.target();
        const AlgebraRef& b = data.inclusion.source();
        check(gamma * data.inclusion.matrix() == Matrix::identity(a->field(), b->dim()),
              "retraction does not restrict to the identity");
        for (std::size_t jx = 0; jx < b->dim(); ++jx) {
            Matrix bj = data.inclusion.apply(b->basis_vector(jx));
            check(gamma * a->left_mult(bj) == b->left_mult_basis(jx) * gamma &&
                      gamma * a->right_mult(bj) == b->right_mult_basis(jx) * gamma,
                  "retraction is not B-B-linear");
        }
        return;
    }

    if (pred == "extension_context") {
        FrobeniusExtensionData data = ws.build_extension(need_param(cert, "ext"));
        Context ctx = extension_context_of(data);
        replay_unit(ctx, AdjunctionOrder::pq, need_witness(cert, "unit_pq"), "unit_pq");
        replay_unit(ctx, AdjunctionOrder::qp, need_witness(cert, "unit_qp"), "unit_qp");
        check(is_separability_element(ctx, ContextSide::a_over_b,
                                      need_witness(cert, "separability_element_a_over_b")),
              "forward separability element fails");
        check(is_separability_element(ctx, ContextSide::b_over_a,
                                      need_witness(cert, "separability_element_b_over_a")),
              "backward separability element fails");
        return;
    }

    if (pred == "endomorphism_extension") {
        Context ctx = ws.build_context(need_param(cert, "context"));
        const FieldSpec& f = ctx.field();
        const Matrix& unit_pq = need_witness(cert, "unit_pq");
        const Matrix& unit_qp = need_witness(cert, "unit_qp");
        replay_unit(ctx, AdjunctionOrder::pq, unit_pq, "unit_pq");
        replay_unit(ctx, AdjunctionOrder::qp, unit_qp, "unit_qp");
        MuRing ring = build_mu_ring(ctx);
        check(ring.associative, "mu-multiplication is not associative");
        const std::size_t t = ring.dim;
        const Matrix& embed = need_witness(cert, "embedding");
        for (std::size_t i = 0; i < ctx.A()->dim(); ++i)
            check(embed.col(i) == ctx.PQ().result()->left_basis_action(i) * unit_qp,
                  "embedding differs from a -> a.1");
        const Matrix& kappa = need_witness(cert, "conditional_expectation");
        check(kappa * embed == Matrix::identity(f, ctx.A()->dim()),
              "conditional expectation does not restrict to the identity");
        for (std::size_t i = 0; i < ctx.A()->dim(); ++i)
            check(kappa * ctx.PQ().result()->left_basis_action(i) == ctx.A()->left_mult_basis(i) * kappa &&
                      kappa * ctx.PQ().result()->right_basis_action(i) ==
                          ctx.A()->right_mult_basis(i) * kappa,
                  "conditional expectation is not A-A-linear");
        TensorSpace t4(ctx.PQ().result(), ctx.PQ().result());
        const Matrix& sep = need_witness(cert, "separability_element_end");
        Matrix mult(f, t, t4.ambient_dim());
        for (std::size_t s = 0; s < t; ++s)
            for (std::size_t u = 0; u < t; ++u) {
                Matrix prod = ring.mul(Matrix::identity(f, t).col(s), Matrix::identity(f, t).col(u));
                for (std::size_t r = 0; r < t; ++r) mult.at(r, s * t + u) = prod.at(r, 0);
            }
        check((mult * t4.section()) * sep == unit_qp, "separability element does not map to 1");
        for (std::size_t s = 0; s < t; ++s) {
            Matrix es = Matrix::identity(f, t).col(s);
            Matrix la = t4.projector() * kron(ring.left_mult(es), Matrix::identity(f, t)) * t4.section();
            Matrix ra = t4.projector() * kron(Matrix::identity(f, t), ring.right_mult(es)) * t4.section();
            check(la * sep == ra * sep, "separability element is not central over End P_B");
        }
        // The interleaved dual-bases tensor and the Frobenius-homomorphism law.
        const Matrix& db = need_witness(cert, "dual_bases_tensor");
        Matrix nu_left(f, t, t4.ambient_dim());
        Matrix nu_right(f, t, t4.ambient_dim());
        for (std::size_t s = 0; s < t; ++s)
            for (std::size_t u = 0; u < t; ++u) {
                Matrix xs = ctx.PQ().result()->left_act(ctx.nu().matrix() * Matrix::identity(f, t).col(s));
                Matrix xu = ctx.PQ().result()->right_act(ctx.nu().matrix() * Matrix::identity(f, t).col(u));
                for (std::size_t r = 0; r < t; ++r) {
                    nu_left.at(r, s * t + u) = xs.at(r, u);
                    nu_right.at(r, s * t + u) = xu.at(r, s);
                }
            }
        Matrix nu_left_q = nu_left * t4.section();
        Matrix nu_right_q = nu_right * t4.section();
        for (std::size_t z = 0; z < t; ++z) {
            Matrix ez = Matrix::identity(f, t).col(z);
            Matrix lmx = t4.projector() * kron(ring.left_mult(ez), Matrix::identity(f, t)) * t4.section();
            Matrix rmx = t4.projector() * kron(Matrix::identity(f, t), ring.right_mult(ez)) * t4.section();
            check(nu_left_q * (lmx * db) == ez && nu_right_q * (rmx * db) == ez,
                  "dual-bases tensor fails the Frobenius law");
        }
        return;
    }

    throw ReplayFailure("unknown predicate '" + pred + "'");
}

}  // namespace

ReplayResult replay_certificate(const WorkspaceFile& ws, const std::string& workspace_bytes,
                                const CertificateFile& cert) {
    ReplayResult out;
    std::string hash = "sha256:" + sha256_hex(workspace_bytes);
    if (hash != cert.input_hash) {
        out.pass = false;
        out.detail = "input hash mismatch: workspace has " + hash + ", certificate expects " +
                     cert.input_hash;
        return out;
    }
    if (cert.status != "verified") {
        out.pass = false;
        out.detail = "only verified certificates replay (status is '" + cert.status + "')";
        return out;
    }
    try {
        dispatch_replay(ws, cert);
        out.pass = true;
    } catch (const ReplayFailure& e) {
        out.pass = false;
        out.detail = e.what();
    } catch (const ValidationError& e) {
        out.pass = false;
        out.detail = std::string("validation during replay: ") + e.what();
    }
    return out;
}

}  // namespace sepeq
