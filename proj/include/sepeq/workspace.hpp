// Definition-file parsing and certificate emission/replay.  Workspaces are
// JSON with scalar strings; everything is validated on load and the first
// failure is reported with its object name and axiom.  Certificates carry
// the predicate, a digest of the workspace bytes, and explicit witnesses;
// replay re-checks the witness equations only and never searches.

#pragma once


#include "sepeq/frobenius.hpp"

namespace sepeq {

struct WorkspaceFile {
    int format_version = 1;
    FieldSpec field;

    std::vector<std::pair<std::string, AlgebraRef>> algebras;
    std::vector<std::pair<std::string, BimoduleRef>> bimodules;
    std::vector<std::pair<std::string, Matrix>> maps;  // named matrices over canonical bases

    struct ContextEntry {
        std::string name;
        std::string a, b, p, q;
        std::string nu;
        std::string mu;  // empty = absent
    };
    std::vector<ContextEntry> contexts;

    struct ExtensionEntry {
        std::string name;
        std::string algebra;     // A
        std::string subalgebra;  // B
        Matrix inclusion;        // dim A x dim B
        Matrix e_map;            // dim B x dim A
        std::vector<std::pair<Matrix, Matrix>> dual_bases;
    };
    std::vector<ExtensionEntry> frobenius_data;

    const AlgebraRef& algebra(const std::string& name) const;
    const BimoduleRef& bimodule(const std::string& name) const;
    const Matrix& map(const std::string& name) const;
    const ContextEntry& context_entry(const std::string& name) const;
    const ExtensionEntry& extension_entry(const std::string& name) const;

    Context build_context(const std::string& name) const;
    FrobeniusExtensionData build_extension(const std::string& name) const;
};

/// Parses and validates; throws ValidationError with a position-annotated
/// message on parse errors and an object/axiom message on validation errors.
WorkspaceFile parse_workspace(const std::string& json_text);
WorkspaceFile load_workspace(const std::string& path);
std::string serialize_workspace(const WorkspaceFile& ws);

/// Reads the raw bytes of a file (for hashing).
std::string read_file_bytes(const std::string& path);

struct CertificateFile {
    int format_version = 1;
    std::string predicate;
    std::string input_hash;  // "sha256:..." over the workspace bytes
    std::string status;
    std::vector<std::pair<std::string, std::string>> params;  // subject names, sides, orders
    std::vector<Witness> witnesses;
    std::string tool_version;

    const std::string* param(const std::string& key) const;
    const Matrix* witness(const std::string& name) const;
};

CertificateFile make_certificate(const std::string& predicate, Status status,
                                 const std::string& workspace_bytes,
                                 std::vector<std::pair<std::string, std::string>> params,
                                 std::vector<Witness> witnesses, const FieldSpec& field);

std::string serialize_certificate(const CertificateFile& cert);
CertificateFile parse_certificate(const std::string& json_text, const FieldSpec& field);

struct ReplayResult {
    bool pass = false;
    std::string detail;
};

/// Re-validates a certificate against a workspace: the hash must match and
/// every witness equation must hold.  Witness equations are re-checked by
/// construction and evaluation only; no feasibility search is run.
ReplayResult replay_certificate(const WorkspaceFile& ws, const std::string& workspace_bytes,
                                const CertificateFile& cert);

}  // namespace sepeq
