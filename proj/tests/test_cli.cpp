#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

// End-to-end tests of the command-line tool: golden outputs, byte
// stability across runs, and the exit-code contract.

#include <cstdio>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(CLI_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("narrow class group golden output") {
    RunResult r = run("classgroup --field 3 --modulus \"(1)\" --narrow");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"invariant_factors\": [\n    2\n  ]") != std::string::npos);
    CHECK(r.out.find("\"schema\": \"cusp-forge/1\"") != std::string::npos);
}

TEST_CASE("trivial-character constant terms are all one") {
    RunResult r = run(
        "constant-term --field 3 --modulus \"(1)\" --p 5 --weight 2 "
        "--trivial-psi");
    CHECK(r.exit_code == 0);
    // Every per-cusp entry serializes as the cyclotomic constant 1.
    std::size_t pos = 0, entries = 0;
    while ((pos = r.out.find("\"entry\": ", pos)) != std::string::npos) {
        ++entries;
        pos += 9;
        CHECK(r.out.compare(pos, 8, "\"[z2:1]\"") == 0);
    }
    CHECK(entries == 2);
}

TEST_CASE("byte-identical across repeated runs") {
    const char* jobs[] = {
        "classgroup --field 5 --modulus \"(6)\" --narrow",
        "cusps --field 3 --modulus \"(5)\" --all",
        "rigidity --field 5 --modulus \"(7)\"",
        "hecke --field 3 --modulus \"(1)\" --weight 3",
    };
    for (const char* job : jobs) {
        RunResult a = run(job), b = run(job);
        CHECK(a.exit_code == 0);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
}

TEST_CASE("seeded check is deterministic and respects the env override") {
    RunResult a = run("check --field 5 --modulus \"(1)\" --seed 11");
    RunResult b = run("check --field 5 --modulus \"(1)\" --seed 11");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"all_ok\": true") != std::string::npos);
    CHECK(a.out.find("\"seed\": 11") != std::string::npos);
}

TEST_CASE("env seed override") {
    std::string cmd = std::string("env CUSP_FORGE_SEED=42 ") + CLI_BIN +
                      " check --field 3 --modulus \"(1)\"";
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
    pclose(pipe);
    CHECK(out.find("\"seed\": 42") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run("classgroup --field 3 --modulus \"(x)\"").exit_code == 2);
    CHECK(run("classgroup --field 3 --modulus \"[[1]]\"").exit_code == 2);
    CHECK(run("cusps --field 3 --modulus \"hnf:[[1,2],[3,4]]\"").exit_code == 2);
    // Inadmissible weight at level (1) over Q(sqrt 5): parity mismatch.
    CHECK(run("constant-term --field 5 --modulus \"(1)\" --p 3 --weight 3")
              .exit_code == 3);
    CHECK(run("check --field 5 --modulus \"(1)\"").exit_code == 0);
}

TEST_CASE("hnf ideal grammar round trip") {
    RunResult a = run("cusps --field 3 --modulus \"hnf:[[5,0],[0,5]]\"");
    RunResult b = run("cusps --field 3 --modulus \"(5)\"");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}
