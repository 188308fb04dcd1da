#include <isci/cli.hpp>
#include <isci/export.hpp>

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace isci;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome invoke(const std::string & command, const std::string & input, const std::string & format = "text", std::string stdin_text = {})
{
    RunConfig c;
    c.command = command;
    c.input = input;
    c.format = format;
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int code = run(c, in, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string & name, const std::string & content)
{
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path.string();
}

} // namespace

TEST_CASE("decide: exit codes")
{
    auto a = invoke("decide", "p == q -> (p -> q)");
    CHECK(a.code == exit_proved);
    CHECK(a.out.rfind("PROVED", 0) == 0);

    auto b = invoke("decide", "((p -> q) -> p) -> p");
    CHECK(b.code == exit_refuted);
    CHECK(b.out.rfind("REFUTED", 0) == 0);

    auto c = invoke("decide", "p == q ==");
    CHECK(c.code == exit_input_error);
    CHECK(c.err.find("syntax error") != std::string::npos);
}

TEST_CASE("prove stops at not proved")
{
    auto r = invoke("prove", "p");
    CHECK(r.code == exit_refuted);
    CHECK(r.out == "NOT PROVED p\n");
    auto j = invoke("prove", "p", "json");
    CHECK(Json::parse(j.out)["status"] == "not_proved");
}

TEST_CASE("resource exhaustion")
{
    RunConfig c{"prove", "(p -> q -> r) -> (p -> q) -> p -> r", "text", Limits{1, std::chrono::milliseconds(30000)}, std::nullopt, false};
    std::istringstream in;
    std::ostringstream out, err;
    CHECK(run(c, in, out, err) == exit_resources);
}

TEST_CASE("input errors")
{
    CHECK(invoke("frobnicate", "p").code == exit_input_error);
    CHECK(invoke("decide", "p", "yaml").code == exit_input_error);
    CHECK(invoke("check-proof", "/nonexistent/proof.json").code == exit_input_error);
    CHECK(invoke("check-model", "-", "text", "{ not json").code == exit_input_error);
}

TEST_CASE("stdin input")
{
    CHECK(invoke("decide", "-", "text", "p -> p\n").code == exit_proved);
}

TEST_CASE("verdict documents re-validate")
{
    auto proved = invoke("decide", "(p == q) -> (q -> p)", "json");
    REQUIRE(proved.code == exit_proved);
    std::string proof_path = temp_file("isci_cli_proof.json", proved.out);
    auto cp = invoke("check-proof", proof_path);
    CHECK(cp.code == exit_proved);
    CHECK(cp.out == "valid proof\n");

    auto refuted = invoke("decide", "(p -> q) -> (p == q)", "json");
    REQUIRE(refuted.code == exit_refuted);
    auto cm = invoke("check-model", "-", "text", refuted.out);
    CHECK(cm.code == exit_proved);
    CHECK(cm.out == "valid countermodel\n");

    std::remove(proof_path.c_str());
}

TEST_CASE("output is deterministic")
{
    for (const char * f : {"((p -> #) -> #) -> p", "(p == q) -> (r == s) -> ((p -> r) == (q -> s))"}) {
        auto a = invoke("decide", f, "json"), b = invoke("decide", f, "json");
        CHECK(a.out == b.out);
    }
}

TEST_CASE("exsub listing")
{
    auto r = invoke("exsub", "p == q");
    CHECK(r.code == exit_proved);
    CHECK(r.out.rfind("9 extended subformulas of p == q (bound 1)", 0) == 0);
    auto j = Json::parse(invoke("exsub", "# -> p", "json").out);
    CHECK(j["members"].size() == 7);
}

TEST_CASE("oracle cross-check")
{
    RunConfig c{"decide", "((p -> q) -> p) -> p", "text", {}, 3, false};
    std::istringstream in;
    std::ostringstream out, err;
    CHECK(run(c, in, out, err) == exit_refuted);
    CHECK(out.str().find("oracle(3): countermodel found") != std::string::npos);

    c.input = "p -> p";
    std::ostringstream out2;
    CHECK(run(c, in, out2, err) == exit_proved);
    CHECK(out2.str().find("oracle(3): no countermodel") != std::string::npos);
}
