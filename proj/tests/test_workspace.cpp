#include <doctest.h>
#include <json.hpp>

#include "sepeq/bundled.hpp"
#include "sepeq/sha256.hpp"

using namespace sepeq;

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("bundled workspaces round-trip through serialization") {
    for (const std::string& key : bundled_workspace_keys()) {
        CAPTURE(key);
        WorkspaceFile ws = bundled_workspace(key);
        std::string once = serialize_workspace(ws);
        WorkspaceFile reloaded = parse_workspace(once);
        std::string twice = serialize_workspace(reloaded);
        CHECK(once == twice);
        CHECK(reloaded.algebras.size() == ws.algebras.size());
        CHECK(reloaded.bimodules.size() == ws.bimodules.size());
        CHECK(reloaded.contexts.size() == ws.contexts.size());
    }
}

TEST_CASE("the qc2 workspace has the advertised contents") {
    WorkspaceFile ws = bundled_workspace("qc2");
    CHECK(ws.algebras.size() == 2);
    CHECK(ws.bimodules.size() == 2);
    CHECK(ws.contexts.size() == 1);
    Context ctx = ws.build_context("main");
    CHECK(ctx.PQ().dim() == 4);
    CHECK(ctx.QP().dim() == 2);
}

TEST_CASE("parse and reference errors are reported with positions and names") {
    CHECK_THROWS_WITH_AS(parse_workspace("{ not json"), doctest::Contains("parse error at byte"),
                         ValidationError);
    // A context referencing a missing bimodule.
    WorkspaceFile ws = bundled_workspace("qc2");
    ws.contexts[0].p = "missing";
    std::string text = serialize_workspace(ws);
    CHECK_THROWS_WITH_AS(parse_workspace(text), doctest::Contains("'missing' is not defined"),
                         ValidationError);
}

TEST_CASE("validation failures name the axiom") {
    auto j = nlohmann::ordered_json::parse(serialize_workspace(bundled_workspace("qc2")));
    SUBCASE("broken unit vector") {
        j["algebras"][0]["unit"] = {"0", "0"};
        CHECK_THROWS_WITH_AS(parse_workspace(j.dump()), doctest::Contains("unit axiom"),
                             ValidationError);
    }
    SUBCASE("broken bimodule action") {
        using oj = nlohmann::ordered_json;
        j["bimodules"][0]["left_action"][1] = oj::array({oj::array({"1", "1"}), oj::array({"0", "1"})});
        CHECK_THROWS_WITH_AS(parse_workspace(j.dump()), doctest::Contains("not a homomorphism"),
                             ValidationError);
    }
    SUBCASE("nu that is not a bimodule map") {
        j["maps"][0]["entries"][0][0] = "7";
        CHECK_THROWS_WITH_AS(parse_workspace(j.dump()), doctest::Contains("equivariance"),
                             ValidationError);
    }
}

TEST_CASE("certificates round-trip and replay") {
    WorkspaceFile ws = bundled_workspace("qc2");
    std::string bytes = serialize_workspace(ws);
    Context ctx = ws.build_context("main");
    auto sep = find_separability_element(ctx, ContextSide::a_over_b);
    REQUIRE(sep.element);

    CertificateFile cert = make_certificate(
        "separability_element", Status::verified, bytes,
        {{"context", "main"}, {"side", "a_over_b"}},
        {Witness{"separability_element", sep.element->coords}}, ws.field);
    std::string text = serialize_certificate(cert);
    CertificateFile parsed = parse_certificate(text, ws.field);
    CHECK(parsed.predicate == cert.predicate);
    CHECK(parsed.input_hash == cert.input_hash);

    SUBCASE("replay passes on unmodified input") {
        CHECK(replay_certificate(ws, bytes, parsed).pass);
    }
    SUBCASE("replay fails when the workspace bytes change") {
        std::string mutated = bytes;
        mutated[mutated.size() / 2] ^= 1;
        auto res = replay_certificate(ws, mutated, parsed);
        CHECK_FALSE(res.pass);
        CHECK(res.detail.find("hash mismatch") != std::string::npos);
    }
    SUBCASE("replay fails when a witness is corrupted") {
        CertificateFile bad = parsed;
        bad.witnesses[0].value.at(0, 0) = bad.witnesses[0].value.at(0, 0) + Scalar::one(ws.field);
        auto res = replay_certificate(ws, bytes, bad);
        CHECK_FALSE(res.pass);
        CHECK(res.detail.find("separability element") != std::string::npos);
    }
    SUBCASE("non-verified certificates never replay") {
        CertificateFile refuted = parsed;
        refuted.status = "refuted";
        CHECK_FALSE(replay_certificate(ws, bytes, refuted).pass);
    }
}

TEST_CASE("serialization is deterministic") {
    WorkspaceFile ws = bundled_workspace("sweedler");
    CHECK(serialize_workspace(ws) == serialize_workspace(bundled_workspace("sweedler")));
}

TEST_CASE("committed fixture files match the builders byte for byte") {
    for (const std::string& key : bundled_workspace_keys()) {
        CAPTURE(key);
        std::string on_disk = read_file_bytes(std::string(FIXTURES_DIR) + "/" + key + ".json");
        CHECK(on_disk == serialize_workspace(bundled_workspace(key)));
        CHECK_NOTHROW(parse_workspace(on_disk));
    }
}
