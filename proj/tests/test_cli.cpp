#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int status;
    std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + " " + std::string(CML_CLI_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 512> buf{};
    while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    int rc = pclose(pipe);
    return {WEXITSTATUS(rc), out};
}

std::string data(const std::string& name) { return std::string(CML_DATA_DIR) + "/" + name; }

std::string trimmed(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
    return s;
}

} // namespace

TEST_CASE("check evaluates and exits with the verdict") {
    auto yes = run("check -m " + data("paper_example.json") + " -f \"[Y:=1] Pr(Z=3) >= 1/2\"");
    CHECK(yes.status == 0);
    CHECK(trimmed(yes.out) == "true");

    auto no = run("check -m " + data("paper_example.json") + " -f \"Pr(Z=3) >= 1/2\"");
    CHECK(no.status == 1);
    CHECK(trimmed(no.out) == "false");
}

TEST_CASE("bad inputs exit 2, guard violations exit 3") {
    auto missing = run("check -m /nonexistent.json -f \"X=1\"");
    CHECK(missing.status == 2);

    auto badformula = run("check -m " + data("paper_example.json") + " -f \"Q=1\"");
    CHECK(badformula.status == 2);
    CHECK(badformula.out.find("unknown variable") != std::string::npos);

    auto guarded = run("enumerate --sig " + data("sig_xy.json") + " --max-size 1",
                       "CML_MAX_STATES=2");
    CHECK(guarded.status == 3);
}

TEST_CASE("discriminant prints exact rationals") {
    CHECK(trimmed(run("discriminant --delta 1/2").out) == "-1");
    CHECK(trimmed(run("discriminant --delta 1/4").out) == "-1/2");
    CHECK(run("discriminant --delta 2").status == 2);
}

TEST_CASE("classify, rewrite, equiv") {
    CHECK(trimmed(run("classify -f \"Pr(X=1) >= 1/2\" --sig " + data("sig_xy.json")).out) == "P-");
    CHECK(trimmed(run("classify -f \"Pr(X=1|Y=1) >= Pr(X=1|Y=0)\" --sig " +
                      data("sig_xy.json"))
                      .out) == "EXTENDED");

    auto rewritten = run("rewrite --pass push-box -f \"[X:=1] Pr(Y=1) >= 1/2\" --sig " +
                         data("sig_xy.json"));
    CHECK(trimmed(rewritten.out) == "Pr([X:=1] Y=1) >= 1/2");

    auto pass = run("equiv --f1 \"A=1 => (B=1 => Pr(C=1) >= 1/2)\" --f2 \"(A=1 and B=1) => "
                    "Pr(C=1) >= 1/2\" --sig " +
                    data("sig_abc.json") + " --max-size 3");
    CHECK(pass.status == 0);
    CHECK(trimmed(pass.out) == "pass");

    auto fail = run("equiv --f1 \"Pr(X=1) >= 1/2\" --f2 \"X=1\" --sig " + data("sig_xy.json") +
                    " --max-size 3");
    CHECK(fail.status == 1);
    CHECK(fail.out.find("counterexample") != std::string::npos);
}

TEST_CASE("extract and synth speak the inequality format") {
    auto ex = run("extract -f \"Pr(X=1) >= 1/2\" --sig " + data("sig_xy.json") + " --json");
    CHECK(ex.status == 0);
    auto j = nlohmann::json::parse(ex.out);
    CHECK(j["class"] == "MONIC");
    CHECK(j["system"]["n"] == 4);

    auto sy = run("synth -i " + data("example_system.json") + " --target signed-binary");
    CHECK(sy.status == 0);
    CHECK(trimmed(sy.out) == "(((S=0 or S=1) or S=2) => Pr((S=0 or S=1)) <= 1/3)");

    auto wrong = run("synth -i " + data("example_system.json") + " --target monic");
    CHECK(wrong.status == 2);
}

TEST_CASE("atoms expand and enumerate") {
    auto dep = run("atoms expand --kind dep --vars \"X;Y\" --sig " + data("sig_xy.json"));
    CHECK(dep.status == 0);
    CHECK(trimmed(dep.out) ==
          "(((X=0 => Y=0) gor (X=0 => Y=1)) and ((X=1 => Y=0) gor (X=1 => Y=1)))");

    auto en = run("enumerate --sig " + data("sig_xy.json") + " --max-size 1");
    CHECK(en.status == 0);
    // 1 empty + 4 singletons, one JSON object per line
    int lines = 0;
    for (char c : en.out)
        if (c == '\n') ++lines;
    CHECK(lines == 5);
}

TEST_CASE("json mode wraps every verdict") {
    auto j = run("check -m " + data("paper_example.json") + " -f \"Pr(Z=3) >= 1/3\" --json");
    CHECK(j.status == 0);
    CHECK(nlohmann::json::parse(j.out)["verdict"] == true);
}
