#include "sepeq/bundled.hpp"

namespace sepeq {

namespace {

// Names an extension workspace: algebras A, B, bimodules P, Q, maps nu, mu,
// context main, frobenius_data ext.
WorkspaceFile extension_workspace(const FrobeniusExtensionData& data, const std::string& a_name,
                                  const std::string& b_name) {
    WorkspaceFile ws;
    ws.field = data.inclusion.target()->field();
    Context ctx = extension_context_of(data);
    ws.algebras.emplace_back(a_name, ctx.A());
    ws.algebras.emplace_back(b_name, ctx.B());
    ws.bimodules.emplace_back("P", ctx.P());
    ws.bimodules.emplace_back("Q", ctx.Q());
    ws.maps.emplace_back("nu", ctx.nu().matrix());
    ws.maps.emplace_back("mu", ctx.mu().matrix());
    ws.contexts.push_back({"main", a_name, b_name, "P", "Q", "nu", "mu"});
    WorkspaceFile::ExtensionEntry e;
    e.name = "ext";
    e.algebra = a_name;
    e.subalgebra = b_name;
    e.inclusion = data.inclusion.matrix();
    e.e_map = data.e_map;
    e.dual_bases = data.dual_bases;
    ws.frobenius_data.push_back(e);
    return ws;
}

WorkspaceFile make_qc2(const FieldSpec& f) {
    return extension_workspace(c2_extension_data(f), "A", "B");
}

WorkspaceFile make_m2() {
    const FieldSpec f = FieldSpec::rationals();
    WorkspaceFile ws;
    ws.field = f;
    Context ctx = m2_column_row_context(f);
    ws.algebras.emplace_back("A", ctx.A());
    ws.algebras.emplace_back("B", ctx.B());
    ws.bimodules.emplace_back("P", ctx.P());
    ws.bimodules.emplace_back("Q", ctx.Q());
    ws.maps.emplace_back("nu", ctx.nu().matrix());
    ws.maps.emplace_back("mu", ctx.mu().matrix());
    ws.contexts.push_back({"main", "A", "B", "P", "Q", "nu", "mu"});
    // The halved-trace extension of the same pair.
    FrobeniusExtensionData data = m2_extension_data(f);
    WorkspaceFile::ExtensionEntry e;
    e.name = "ext";
    e.algebra = "A";
    e.subalgebra = "B";
    e.inclusion = data.inclusion.matrix();
    e.e_map = data.e_map;
    e.dual_bases = data.dual_bases;
    ws.frobenius_data.push_back(e);
    // The regular bimodule of M2, for dual and twist checks.
    ws.bimodules.emplace_back("reg", regular_bimodule(ctx.A()));
    return ws;
}

WorkspaceFile make_sweedler() {
    const FieldSpec f = FieldSpec::rationals();
    WorkspaceFile ws;
    ws.field = f;
    auto h4 = sweedler_algebra(f);
    ws.algebras.emplace_back("H4", h4);
    ws.bimodules.emplace_back("reg", regular_bimodule(h4));
    ws.maps.emplace_back("lam", sweedler_gx_functional(f));
    auto fs = frobenius_structure(h4, sweedler_gx_functional(f));
    ws.maps.emplace_back("nak", fs->nakayama.matrix());
    return ws;
}

WorkspaceFile make_kx2() {
    const FieldSpec f = FieldSpec::rationals();
    WorkspaceFile ws;
    ws.field = f;
    auto a = truncated_polynomial(2, f);
    ws.algebras.emplace_back("A", a);
    ws.bimodules.emplace_back("reg", regular_bimodule(a));
    // The free 4-dimensional bimodule A (x) A.
    auto k = ground_field_algebra(f);
    ws.algebras.emplace_back("B", k);
    AlgebraMap incl(k, a, a->unit());
    TensorSpace t(bimodule_from_inclusion_left(incl), bimodule_from_inclusion_right(incl));
    ws.bimodules.emplace_back("AxA", t.result());
    ws.maps.emplace_back("lam", kx2_x_functional(f));
    return ws;
}

WorkspaceFile make_trivext() {
    const FieldSpec f = FieldSpec::rationals();
    WorkspaceFile ws;
    ws.field = f;
    auto te = trivial_extension(matrix_algebra(2, f));
    ws.algebras.emplace_back("T", te.algebra);
    ws.bimodules.emplace_back("reg", regular_bimodule(te.algebra));
    ws.maps.emplace_back("tr", te.trace_functional);
    return ws;
}

}  // namespace

WorkspaceFile bundled_workspace(const std::string& key) {
    if (key == "qc2") return make_qc2(FieldSpec::rationals());
    if (key == "f2c2") return make_qc2(FieldSpec::prime(2));
    if (key == "m2") return make_m2();
    if (key == "sweedler") return make_sweedler();
    if (key == "kx2") return make_kx2();
    if (key == "trivext") return make_trivext();
    throw ValidationError("unknown bundled workspace '" + key + "'");
}

const std::vector<std::string>& bundled_workspace_keys() {
    static const std::vector<std::string> keys = {"qc2", "f2c2", "m2", "sweedler", "kx2", "trivext"};
    return keys;
}

}  // namespace sepeq
