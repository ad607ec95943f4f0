// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#ifndef RIESZQ_CLI_PATH
#define RIESZQ_CLI_PATH "rieszq"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(RIESZQ_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("pair report over the CLI") {
    RunResult r = run_cli("quantities -g Z3 -E \"(0),(1)\" -B \"(0),(1)\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"rho\":3") != std::string::npos);
    CHECK(r.out.find("\"is_basis\":true") != std::string::npos);
}

TEST_CASE("set search over the CLI") {
    RunResult r = run_cli("quantities -g Z3^2 -E \"(0,0),(0,1),(1,0),(1,1)\" --set --q rho");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"value\":6.85410196625") != std::string::npos);
}

TEST_CASE("byte-identical output for identical config and seed") {
    const std::string cmd =
        "search -g Z7 -E \"0,1,3\" --q rho --strategy random-loop --seed 12345";
    RunResult a = run_cli(cmd);
    RunResult b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"seed\":12345") != std::string::npos);

    // thread count must not change exhaustive results
    RunResult t1 = run_cli("quantities -g Z3^2 -E \"(0,0),(0,1),(1,0),(1,1)\" --set --q D --threads 1");
    RunResult t4 = run_cli("quantities -g Z3^2 -E \"(0,0),(0,1),(1,0),(1,1)\" --set --q D --threads 4");
    CHECK(t1.out == t4.out);
}

TEST_CASE("exit codes") {
    CHECK(run_cli("quantities -g Zoops -E \"0\"").exit_code == 2);
    CHECK(run_cli("quantities -g Z3 -E \"(0,0)\"").exit_code == 2);
    CHECK(run_cli("quantities -g Z3^2 -E \"(0,0),(0,1),(1,0),(1,1)\" --set --q rho --cap 5")
              .exit_code == 3);
    CHECK(run_cli("verify --only trace-identity -n 25").exit_code == 0);
    CHECK(run_cli("verify --only no-such-check").exit_code == 2);
}

TEST_CASE("tiling output over the CLI") {
    RunResult r = run_cli(
        "tiling -g Z3^2 -E \"(0,0),(2,0),(0,1),(1,1),(0,2),(1,2)\" -H \"(1,0)\" --certify");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"level\":2") != std::string::npos);
    CHECK(r.out.find("\"holds\":true") != std::string::npos);
    CHECK(r.out.find("\"holds\":false") == std::string::npos);

    RunResult plain = run_cli("tiling -g Z4 -E \"0,1,2\" -H \"2\"");
    CHECK(plain.exit_code == 0);
    CHECK(plain.out.find("\"level\":null") != std::string::npos);
}

TEST_CASE("examples emit csv rows") {
    RunResult r = run_cli("examples condtoinfty --m 2..3 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("m,rho,lower_bound") != std::string::npos);
    CHECK(r.out.find("2,4,1.5") != std::string::npos);
    CHECK(run_cli("examples nosuchfamily").exit_code == 2);
}
