// Command-line surface: one subcommand per predicate, batch and
// non-interactive.  Exit codes: 0 verified, 1 refuted, 2 unknown (also
// degenerate / not applicable), 3 usage or validation errors.  Every
// verified run emits a certificate (to --out, else inline on stdout).

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sepeq/version.hpp"
#include "sepeq/workspace.hpp"

using namespace sepeq;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Options {
    std::string workspace_path;
    std::string out_path;
    bool json_output = false;
    std::uint64_t seed = 20240701;
    std::uint64_t max_exhaustive = 1ull << 17;
};

struct CommandOutcome {
    Status status = Status::unknown;
    std::string predicate;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<Witness> witnesses;  // certificate payload when verified
    std::string detail;
    std::vector<std::string> lines;  // human-readable report body
};

int exit_code(Status s) {
    switch (s) {
        case Status::verified: return 0;
        case Status::refuted: return 1;
        default: return 2;
    }
}

SearchOptions search_options(const Options& opt) {
    SearchOptions s;
    s.seed = opt.seed;
    s.max_exhaustive = opt.max_exhaustive;
    return s;
}

std::vector<Witness> projectivity_witnesses(const Bimodule& p, const std::string& prefix) {
    std::vector<Witness> out;
    auto left = is_finite_projective(p, Side::left);
    auto right = is_finite_projective(p, Side::right);
    if (left.projective) out.push_back({prefix + "left_section", left.certificate->section});
    if (right.projective) out.push_back({prefix + "right_section", right.certificate->section});
    return out;
}

CommandOutcome run_validate(const WorkspaceFile& ws) {
    CommandOutcome out;
    out.predicate = "workspace_valid";
    out.status = Status::verified;
    out.lines.push_back("workspace: " + std::to_string(ws.algebras.size()) + " algebras, " +
                        std::to_string(ws.bimodules.size()) + " bimodules, " +
                        std::to_string(ws.maps.size()) + " maps, " +
                        std::to_string(ws.contexts.size()) + " contexts, " +
                        std::to_string(ws.frobenius_data.size()) + " frobenius_data entries");
    for (const auto& [name, a] : ws.algebras) out.lines.push_back("  algebra " + a->describe());
    for (const auto& [name, m] : ws.bimodules)
        out.lines.push_back("  bimodule " + name + ": (" + m->left_alg()->name() + ", " +
                            m->right_alg()->name() + ")-bimodule of dim " + std::to_string(m->dim()));
    return out;
}

CommandOutcome run_describe_tensor(const WorkspaceFile& ws, const std::string& left,
                                   const std::string& right) {
    CommandOutcome out;
    out.predicate = "tensor_basis";
    TensorSpace t(ws.bimodule(left), ws.bimodule(right));
    out.status = Status::verified;
    out.params = {{"left", left}, {"right", right}};
    std::ostringstream coords;
    for (std::size_t i = 0; i < t.basis_coords().size(); ++i)
        coords << (i ? "," : "") << t.basis_coords()[i];
    out.params.emplace_back("basis_coords", coords.str());
    out.witnesses.push_back({"projector", t.projector()});
    out.lines.push_back("ambient dimension " + std::to_string(t.ambient_dim()) + ", relation rank " +
                        std::to_string(t.relation_rank()) + ", quotient dimension " +
                        std::to_string(t.dim()));
    const std::size_t dq = t.right_factor()->dim();
    for (std::size_t s = 0; s < t.dim(); ++s) {
        std::size_t c = t.basis_coords()[s];
        out.lines.push_back("  basis[" + std::to_string(s) + "] = class of (" +
                            std::to_string(c / dq) + " (x) " + std::to_string(c % dq) +
                            ")  [pure coordinate " + std::to_string(c) + "]");
    }
    out.lines.push_back("maps into this quotient are matrices with " + std::to_string(t.dim()) +
                        " columns over the basis above");
    return out;
}

CommandOutcome run_find_sep_element(const WorkspaceFile& ws, const std::string& context,
                                    const std::string& side_name) {
    CommandOutcome out;
    out.predicate = "separability_element";
    Context ctx = ws.build_context(context);
    ContextSide side = side_name == "b-over-a" ? ContextSide::b_over_a : ContextSide::a_over_b;
    out.params = {{"context", context}, {"side", side == ContextSide::a_over_b ? "a_over_b" : "b_over_a"}};
    auto res = find_separability_element(ctx, side);
    if (res.element) {
        out.status = Status::verified;
        out.witnesses.push_back({"separability_element", res.element->coords});
        out.lines.push_back("separability element found: " + res.element->coords.transpose().str());
    } else {
        out.status = Status::refuted;
        out.detail = res.fingerprint;
        out.lines.push_back("no separability element exists (" + res.fingerprint + ")");
    }
    return out;
}

CommandOutcome run_find_adjunction(const WorkspaceFile& ws, const std::string& context,
                                   const std::string& order_name) {
    CommandOutcome out;
    out.predicate = "adjunction_unit";
    Context ctx = ws.build_context(context);
    AdjunctionOrder order = order_name == "qp" ? AdjunctionOrder::qp : AdjunctionOrder::pq;
    out.params = {{"context", context}, {"order", order == AdjunctionOrder::pq ? "pq" : "qp"}};
    auto res = find_adjunction_unit(ctx, order);
    if (res.unit) {
        out.status = Status::verified;
        out.witnesses.push_back({"unit", res.unit->coords});
        out.lines.push_back("adjunction unit found: " + res.unit->coords.transpose().str());
        out.lines.push_back(std::string("centrality (theorem check): ") +
                            (res.unit->central ? "holds" : "VIOLATED"));
    } else {
        out.status = Status::refuted;
        out.detail = res.fingerprint;
        out.lines.push_back("triangular identities are infeasible (" + res.fingerprint + ")");
    }
    return out;
}

CommandOutcome run_mu_ring(const WorkspaceFile& ws, const std::string& context) {
    CommandOutcome out;
    out.predicate = "mu_ring_unital";
    Context ctx = ws.build_context(context);
    MuRing ring = build_mu_ring(ctx);
    out.params = {{"context", context}};
    out.lines.push_back("mu-multiplication ring on P (x) Q: dimension " + std::to_string(ring.dim) +
                        ", associativity " + (ring.associative ? "verified" : "VIOLATED"));
    for (std::size_t s = 0; s < ring.dim; ++s)
        for (std::size_t t = 0; t < ring.dim; ++t) {
            std::ostringstream os;
            os << "  w" << s << " * w" << t << " =";
            for (std::size_t k = 0; k < ring.dim; ++k)
                if (!ring.c(s, t, k).is_zero()) os << " + " << ring.c(s, t, k).str() << " w" << k;
            out.lines.push_back(os.str());
        }
    auto unit = ring.find_unit();
    if (unit && ring.associative) {
        out.status = Status::verified;
        out.witnesses.push_back({"unit", *unit});
        out.lines.push_back("two-sided unit: " + unit->transpose().str());
    } else {
        out.status = Status::refuted;
        out.detail = "the mu-multiplication ring has no two-sided unit";
        out.lines.push_back(out.detail);
    }
    return out;
}

void flatten_divides_witnesses(const Verdict& v, CommandOutcome& out, bool symmetric) {
    // Projectivity sections live in the nested sub-verdicts.
    for (const Verdict& sub : v.subchecks) {
        std::string prefix;
        if (sub.predicate.find("(P)") != std::string::npos)
            prefix = "p_";
        else if (sub.predicate.find("(Q)") != std::string::npos)
            prefix = "q_";
        else
            continue;
        if (const Matrix* m = sub.witness("left_section")) out.witnesses.push_back({prefix + "left_section", *m});
        if (const Matrix* m = sub.witness("right_section"))
            out.witnesses.push_back({prefix + "right_section", *m});
    }
    for (const Verdict& sub : v.subchecks)
        flatten_divides_witnesses(sub, out, symmetric);
}

CommandOutcome run_check_divides(const WorkspaceFile& ws, const std::string& context) {
    CommandOutcome out;
    out.predicate = "separably_divides";
    Context ctx = ws.build_context(context);
    Verdict v = check_separably_divides(ctx);
    out.params = {{"context", context}};
    out.status = v.status;
    out.detail = v.detail;
    out.lines.push_back("separably divides: " + status_str(v.status) +
                        (v.detail.empty() ? "" : " (" + v.detail + ")"));
    if (v.verified()) {
        flatten_divides_witnesses(v, out, false);
        out.witnesses.push_back({"separability_element_a_over_b", *v.witness("separability_element")});
    }
    return out;
}

CommandOutcome run_check_equiv(const WorkspaceFile& ws, const std::string& context, bool symmetric) {
    CommandOutcome out;
    out.predicate = symmetric ? "symmetric_separable_equivalence" : "separable_equivalence";
    Context ctx = ws.build_context(context);
    Verdict v = symmetric ? check_symmetric_equivalence(ctx) : check_separable_equivalence(ctx);
    out.params = {{"context", context}};
    out.status = v.status;
    out.detail = v.detail;
    out.lines.push_back(out.predicate + ": " + status_str(v.status) +
                        (v.detail.empty() ? "" : " (" + v.detail + ")"));
    if (v.verified()) {
        flatten_divides_witnesses(v, out, symmetric);
        out.witnesses.push_back({"separability_element_a_over_b",
                                 *v.witness("separability_element_a_over_b")});
        out.witnesses.push_back({"separability_element_b_over_a",
                                 *v.witness("separability_element_b_over_a")});
        if (symmetric) {
            out.witnesses.push_back({"unit_pq", *v.witness("unit_pq")});
            out.witnesses.push_back({"unit_qp", *v.witness("unit_qp")});
            out.lines.push_back("unit (P,Q): " + v.witness("unit_pq")->transpose().str());
            out.lines.push_back("unit (Q,P): " + v.witness("unit_qp")->transpose().str());
        }
    }
    return out;
}

CommandOutcome run_check_biseparable(const WorkspaceFile& ws, const std::string& bimodule,
                                     const std::string& context) {
    CommandOutcome out;
    if (!context.empty()) {
        out.predicate = "biseparable_from_context";
        Context ctx = ws.build_context(context);
        Verdict v = biseparable_from_context(ctx);
        out.params = {{"context", context}};
        out.status = v.status;
        out.detail = v.detail;
        out.lines.push_back("biseparable (from context): " + status_str(v.status));
        if (v.verified())
            for (const char* name : {"h", "g", "e1_section", "e2_section"})
                out.witnesses.push_back({name, *v.witness(name)});
        return out;
    }
    out.predicate = "biseparable";
    const BimoduleRef& p = ws.bimodule(bimodule);
    Verdict v = check_biseparable(p);
    out.params = {{"bimodule", bimodule}};
    out.status = v.status;
    out.detail = v.detail;
    out.lines.push_back("biseparable: " + status_str(v.status) +
                        (v.detail.empty() ? "" : " (" + v.detail + ")"));
    if (v.verified()) {
        for (auto& w : projectivity_witnesses(*p, "")) out.witnesses.push_back(std::move(w));
        out.witnesses.push_back({"e1_section", *v.witness("e1_section")});
        out.witnesses.push_back({"e2_section", *v.witness("e2_section")});
    }
    return out;
}

CommandOutcome run_check_frobenius_bimodule(const WorkspaceFile& ws, const Options& opt,
                                            const std::string& bimodule, const std::string& alpha_name,
                                            const std::string& beta_name) {
    CommandOutcome out;
    const BimoduleRef& p = ws.bimodule(bimodule);
    AlgebraMap alpha = alpha_name.empty() ? AlgebraMap::identity(p->left_alg())
                                          : AlgebraMap(p->left_alg(), p->left_alg(), ws.map(alpha_name));
    AlgebraMap beta = beta_name.empty() ? AlgebraMap::identity(p->right_alg())
                                        : AlgebraMap(p->right_alg(), p->right_alg(), ws.map(beta_name));
    bool twisted = !alpha_name.empty() || !beta_name.empty();
    out.predicate = twisted ? "twisted_frobenius_bimodule" : "frobenius_bimodule";
    Verdict v = twisted ? check_twisted_frobenius(p, alpha, beta, search_options(opt))
                        : check_frobenius_bimodule(p, search_options(opt));
    out.params = {{"bimodule", bimodule}};
    if (!alpha_name.empty()) out.params.emplace_back("alpha", alpha_name);
    if (!beta_name.empty()) out.params.emplace_back("beta", beta_name);
    out.status = v.status;
    out.detail = v.detail;
    out.lines.push_back(out.predicate + ": " + status_str(v.status) +
                        (v.detail.empty() ? "" : " (" + v.detail + ")"));
    if (v.verified()) {
        for (auto& w : projectivity_witnesses(*p, "")) out.witnesses.push_back(std::move(w));
        out.witnesses.push_back({"dual_iso", *v.witness("dual_iso")});
        out.witnesses.push_back({"dual_iso_inverse", *v.witness("dual_iso_inverse")});
        if (!alpha_name.empty()) out.witnesses.push_back({"alpha", alpha.matrix()});
        if (!beta_name.empty()) out.witnesses.push_back({"beta", beta.matrix()});
    }
    return out;
}

CommandOutcome run_frobenius(const WorkspaceFile& ws, const std::string& algebra,
                             const std::string& functional, bool print_alpha_only) {
    CommandOutcome out;
    out.predicate = "frobenius_structure";
    const AlgebraRef& a = ws.algebra(algebra);
    const Matrix& lambda = ws.map(functional);
    out.params = {{"algebra", algebra}, {"functional", functional}};
    auto fs = frobenius_structure(a, lambda);
    if (!fs) {
        out.status = Status::refuted;
        out.detail = "the functional induces a degenerate form";
        out.lines.push_back(out.detail);
        return out;
    }
    out.status = Status::verified;
    const FieldSpec& f = a->field();
    Matrix dual_x(f, a->dim(), fs->dual_bases.size());
    Matrix dual_y(f, a->dim(), fs->dual_bases.size());
    for (std::size_t t = 0; t < fs->dual_bases.size(); ++t)
        for (std::size_t r = 0; r < a->dim(); ++r) {
            dual_x.at(r, t) = fs->dual_bases[t].first.at(r, 0);
            dual_y.at(r, t) = fs->dual_bases[t].second.at(r, 0);
        }
    auto nak_inv = inverse(fs->nakayama.matrix());
    out.witnesses.push_back({"functional", lambda});
    out.witnesses.push_back({"nakayama", fs->nakayama.matrix()});
    out.witnesses.push_back({"nakayama_inverse", *nak_inv});
    out.witnesses.push_back({"dual_x", dual_x});
    out.witnesses.push_back({"dual_y", dual_y});
    out.lines.push_back("frobenius structure verified (gram matrix invertible)");
    out.lines.push_back("nakayama matrix: " + fs->nakayama.matrix().str());
    if (!print_alpha_only) {
        out.lines.push_back("dual bases x (columns): " + dual_x.str());
        out.lines.push_back("dual bases y (columns): " + dual_y.str());
    }
    return out;
}

CommandOutcome run_check_frob_ext(const WorkspaceFile& ws, const std::string& ext) {
    CommandOutcome out;
    out.predicate = "frobenius_extension";
    FrobeniusExtensionData data = ws.build_extension(ext);
    Verdict v = verify_frobenius_extension(data);
    out.params = {{"ext", ext}};
    out.lines.push_back("frobenius extension laws: " + status_str(v.status) +
                        (v.detail.empty() ? "" : " (" + v.detail + ")"));
    bool all = v.verified();
    for (const Verdict& sub : v.subchecks) {
        out.lines.push_back("  " + sub.predicate + ": " + status_str(sub.status) +
                            (sub.detail.empty() ? "" : " (" + sub.detail + ")"));
        all = all && sub.verified();
    }
    out.status = !v.verified() ? v.status : (all ? Status::verified : Status::refuted);
    if (out.status == Status::verified) {
        for (const Verdict& sub : v.subchecks) {
            if (const Matrix* m = sub.witness("separability_element"))
                out.witnesses.push_back({"separability_element", *m});
            if (const Matrix* m = sub.witness("retraction")) out.witnesses.push_back({"retraction", *m});
        }
    } else if (out.detail.empty()) {
        out.detail = v.detail.empty() ? "a sub-check failed" : v.detail;
    }
    return out;
}

CommandOutcome run_build_context_from_ext(const WorkspaceFile& ws, const std::string& ext) {
    CommandOutcome out;
    out.predicate = "extension_context";
    out.params = {{"ext", ext}};
    FrobeniusExtensionData data = ws.build_extension(ext);
    ExtensionContext res = context_from_frobenius_extension(data);  // throws if not verified
    out.status = Status::verified;
    out.witnesses.push_back({"unit_pq", res.unit_pq.coords});
    out.witnesses.push_back({"unit_qp", res.unit_qp.coords});
    out.witnesses.push_back(
        {"separability_element_a_over_b", *res.symmetric.witness("separability_element_a_over_b")});
    out.witnesses.push_back(
        {"separability_element_b_over_a", *res.symmetric.witness("separability_element_b_over_a")});
    out.lines.push_back("context built: P = A over (A, B), Q = A over (B, A), nu = multiplication, "
                        "mu = E after multiplication");
    out.lines.push_back("symmetric separable equivalence: verified");
    out.lines.push_back("unit (Q,P) = dual bases tensor: " + res.unit_qp.coords.transpose().str());
    out.lines.push_back("unit (P,Q) = class of 1: " + res.unit_pq.coords.transpose().str());
    return out;
}

CommandOutcome run_check_endo_ext(const WorkspaceFile& ws, const std::string& context) {
    CommandOutcome out;
    out.predicate = "endomorphism_extension";
    Context ctx = ws.build_context(context);
    auto unit_pq = find_adjunction_unit(ctx, AdjunctionOrder::pq);
    auto unit_qp = find_adjunction_unit(ctx, AdjunctionOrder::qp);
    if (!unit_pq.unit || !unit_qp.unit)
        throw ValidationError("check-endo-ext: the context has no adjunction units");
    Verdict v = check_endomorphism_extension(ctx, *unit_pq.unit, *unit_qp.unit);
    out.params = {{"context", context}};
    out.status = v.status;
    out.detail = v.detail;
    out.lines.push_back("endomorphism extension: " + status_str(v.status));
    for (const Verdict& sub : v.subchecks)
        out.lines.push_back("  " + sub.predicate + ": " + status_str(sub.status) +
                            (sub.detail.empty() ? "" : " (" + sub.detail + ")"));
    if (v.verified()) {
        out.witnesses.push_back({"unit_pq", unit_pq.unit->coords});
        out.witnesses.push_back({"unit_qp", unit_qp.unit->coords});
        out.witnesses.push_back({"embedding", *v.witness("embedding")});
        for (const Verdict& sub : v.subchecks) {
            if (const Matrix* m = sub.witness("dual_bases_tensor"))
                out.witnesses.push_back({"dual_bases_tensor", *m});
            if (const Matrix* m = sub.witness("conditional_expectation"))
                out.witnesses.push_back({"conditional_expectation", *m});
            if (sub.predicate == "separable_extension")
                if (const Matrix* m = sub.witness("separability_element"))
                    out.witnesses.push_back({"separability_element_end", *m});
        }
    }
    return out;
}

int run_replay(const Options& opt, const std::string& cert_path) {
    std::string bytes = read_file_bytes(opt.workspace_path);
    WorkspaceFile ws = parse_workspace(bytes);
    CertificateFile cert = parse_certificate(read_file_bytes(cert_path), ws.field);
    ReplayResult res = replay_certificate(ws, bytes, cert);
    if (opt.json_output) {
        ordered_json j;
        j["predicate"] = cert.predicate;
        j["replay"] = res.pass ? "pass" : "fail";
        if (!res.detail.empty()) j["detail"] = res.detail;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "replay: " << (res.pass ? "pass" : "fail") << "\n";
        if (!res.detail.empty()) std::cout << "  " << res.detail << "\n";
    }
    return res.pass ? 0 : 1;
}

int emit_and_report(const Options& opt, const std::string& workspace_bytes, const FieldSpec& field,
                    const CommandOutcome& out) {
    std::optional<CertificateFile> cert;
    if (out.status == Status::verified)
        cert = make_certificate(out.predicate, out.status, workspace_bytes, out.params, out.witnesses,
                                field);

    if (cert && !opt.out_path.empty()) {
        std::ofstream f(opt.out_path, std::ios::binary);
        if (!f) throw ValidationError("cannot write certificate to '" + opt.out_path + "'");
        f << serialize_certificate(*cert);
    }

    if (opt.json_output) {
        ordered_json j;
        j["predicate"] = out.predicate;
        j["status"] = status_str(out.status);
        if (!out.detail.empty()) j["detail"] = out.detail;
        ordered_json params = ordered_json::object();
        for (const auto& [k, v] : out.params) params[k] = v;
        j["params"] = params;
        if (cert) {
            if (!opt.out_path.empty())
                j["certificate_path"] = opt.out_path;
            else
                j["certificate"] = ordered_json::parse(serialize_certificate(*cert));
        }
        std::cout << j.dump(2) << "\n";
    } else {
        for (const std::string& line : out.lines) std::cout << line << "\n";
        std::cout << "status: " << status_str(out.status) << "\n";
        if (cert) {
            if (!opt.out_path.empty())
                std::cout << "certificate written to " << opt.out_path << "\n";
            else
                std::cout << "certificate:\n" << serialize_certificate(*cert);
        }
    }
    return exit_code(out.status);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact certification of separable equivalence and Frobenius structure"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    Options opt;
    app.add_option("--workspace", opt.workspace_path, "workspace definition file")->required();
    app.add_flag("--json", opt.json_output, "machine-readable report");
    app.add_option("--seed", opt.seed, "seed for randomized searches");
    app.add_option("--max-exhaustive", opt.max_exhaustive, "cap for exhaustive sweeps");
    app.add_option("--out", opt.out_path, "certificate output path");

    std::string arg_context, arg_side = "a-over-b", arg_order = "pq", arg_left, arg_right;
    std::string arg_bimodule, arg_algebra, arg_functional, arg_ext, arg_cert, arg_alpha, arg_beta;
    bool arg_symmetric = false;

    CLI::App* validate = app.add_subcommand("validate", "load and validate a workspace");
    CLI::App* describe = app.add_subcommand("describe-tensor", "print the canonical tensor-quotient basis");
    describe->add_option("--left", arg_left, "left factor bimodule")->required();
    describe->add_option("--right", arg_right, "right factor bimodule")->required();
    CLI::App* sep = app.add_subcommand("find-sep-element", "search for a separability element");
    sep->add_option("--context", arg_context)->required();
    sep->add_option("--side", arg_side, "a-over-b (default) or b-over-a");
    CLI::App* adj = app.add_subcommand("find-adjunction", "solve the triangular identities");
    adj->add_option("--context", arg_context)->required();
    adj->add_option("--order", arg_order, "pq (default) or qp");
    CLI::App* mu = app.add_subcommand("mu-ring", "build the mu-multiplication ring and its unit");
    mu->add_option("--context", arg_context)->required();
    CLI::App* divides = app.add_subcommand("check-divides", "separably divides");
    divides->add_option("--context", arg_context)->required();
    CLI::App* equiv = app.add_subcommand("check-equiv", "separable equivalence");
    equiv->add_option("--context", arg_context)->required();
    equiv->add_flag("--symmetric", arg_symmetric, "require adjunction units (symmetric notion)");
    CLI::App* bisep = app.add_subcommand("check-biseparable", "both evaluation maps split");
    bisep->add_option("--bimodule", arg_bimodule, "check this bimodule");
    bisep->add_option("--context", arg_context, "derive the witnesses from a context instead");
    CLI::App* frobbi = app.add_subcommand("check-frobenius-bimodule", "duals isomorphic (optionally twisted)");
    frobbi->add_option("--bimodule", arg_bimodule)->required();
    frobbi->add_option("--alpha", arg_alpha, "left twist: name of a maps entry, default identity");
    frobbi->add_option("--beta", arg_beta, "right twist: name of a maps entry, default identity");
    CLI::App* frob = app.add_subcommand("frobenius", "frobenius structure from a functional");
    frob->add_option("--algebra", arg_algebra)->required();
    frob->add_option("--functional", arg_functional)->required();
    CLI::App* nak = app.add_subcommand("nakayama", "nakayama automorphism of a frobenius functional");
    nak->add_option("--algebra", arg_algebra)->required();
    nak->add_option("--functional", arg_functional)->required();
    CLI::App* frobext = app.add_subcommand("check-frob-ext", "frobenius extension laws + separable + split");
    frobext->add_option("--ext", arg_ext)->required();
    CLI::App* buildctx = app.add_subcommand("build-context-from-ext", "context and units from an extension");
    buildctx->add_option("--ext", arg_ext)->required();
    CLI::App* endoext = app.add_subcommand("check-endo-ext", "A embeds in End P_B split separable Frobenius");
    endoext->add_option("--context", arg_context)->required();
    CLI::App* replay = app.add_subcommand("replay", "re-validate a certificate without solving");
    replay->add_option("--cert", arg_cert, "certificate file")->required();

    // Global flags may appear after the subcommand name.
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (replay->parsed()) return run_replay(opt, arg_cert);

        std::string bytes = read_file_bytes(opt.workspace_path);
        WorkspaceFile ws = parse_workspace(bytes);

        CommandOutcome out;
        if (validate->parsed())
            out = run_validate(ws);
        else if (describe->parsed())
            out = run_describe_tensor(ws, arg_left, arg_right);
        else if (sep->parsed())
            out = run_find_sep_element(ws, arg_context, arg_side);
        else if (adj->parsed())
            out = run_find_adjunction(ws, arg_context, arg_order);
        else if (mu->parsed())
            out = run_mu_ring(ws, arg_context);
        else if (divides->parsed())
            out = run_check_divides(ws, arg_context);
        else if (equiv->parsed())
            out = run_check_equiv(ws, arg_context, arg_symmetric);
        else if (bisep->parsed()) {
            if (arg_bimodule.empty() && arg_context.empty())
                throw ValidationError("check-biseparable: pass --bimodule or --context");
            out = run_check_biseparable(ws, arg_bimodule, arg_context);
        } else if (frobbi->parsed())
            out = run_check_frobenius_bimodule(ws, opt, arg_bimodule, arg_alpha, arg_beta);
        else if (frob->parsed())
            out = run_frobenius(ws, arg_algebra, arg_functional, false);
        else if (nak->parsed())
            out = run_frobenius(ws, arg_algebra, arg_functional, true);
        else if (frobext->parsed())
            out = run_check_frob_ext(ws, arg_ext);
        else if (buildctx->parsed())
            out = run_build_context_from_ext(ws, arg_ext);
        else if (endoext->parsed())
            out = run_check_endo_ext(ws, arg_context);
        else
            throw ValidationError("no subcommand");

        return emit_and_report(opt, bytes, ws.field, out);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
