/*
   Copyright 2026 The anops Authors.

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "json.hpp"

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// Runs the CLI through the shell; stderr is folded into `out` when asked.
Run run(const std::string& args, bool merge_stderr = false) {
    const std::string cmd = "SOURCE_DATE_EPOCH=1767225600 " + std::string(ANOPS_CLI) + " " + args +
                            (merge_stderr ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string spec(const std::string& name) { return std::string(ANOPS_SPEC_DIR) + "/" + name + ".json"; }
std::string data(const std::string& name) { return std::string(ANOPS_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("classify prints verdicts and exits 0") {
    const Run r = run("classify " + spec("right_shift") + " --trunc 64");
    CHECK(r.code == 0);
    CHECK(r.out.find("AN            yes  alpha = 1") != std::string::npos);
    CHECK(r.out.find("hyponormal    yes") != std::string::npos);
    CHECK(r.out.find("normal        no") != std::string::npos);
}

TEST_CASE("structured output is a deterministic report document") {
    const std::string args = "classify " + spec("example36") + " --trunc 64 --format structured";
    const Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    for (const char* key : {"classification", "spectral", "decomposition", "provenance"}) CHECK(j.contains(key));
    CHECK(j["classification"]["is_AN"] == "yes");
    CHECK(j["classification"]["is_hyponormal"] == "yes");
    CHECK(j["classification"]["is_normal"] == "no");
    CHECK(j["classification"]["tolerances"]["trunc"] == 64);
    CHECK(j["provenance"]["timestamps"]["started"] == "2026-01-01T00:00:00Z");
}

TEST_CASE("spec params apply unless overridden by flags") {
    auto j = nlohmann::json::parse(run("classify " + data("with_params.json") + " --format structured").out);
    CHECK(j["provenance"]["parameters"]["trunc"] == 16);
    CHECK(j["provenance"]["parameters"]["samples"] == 256);
    j = nlohmann::json::parse(run("classify " + data("with_params.json") + " --trunc 24 --format structured").out);
    CHECK(j["provenance"]["parameters"]["trunc"] == 24);
}

TEST_CASE("bad specs exit 1 with diagnostics") {
    Run r = run("classify " + data("bad_offset.json"), true);
    CHECK(r.code == 1);
    CHECK(r.out.find("bands[1].offset") != std::string::npos);
    CHECK(r.out.find("line 5") != std::string::npos);
    r = run("classify " + data("noncanonical.json"), true);
    CHECK(r.code == 1);
    CHECK(r.out.find("not canonical") != std::string::npos);
    CHECK(run("classify /nonexistent.json").code == 1);
    CHECK(run("frobnicate").code == 1);
    CHECK(run("classify " + spec("right_shift") + " --format yaml").code == 1);
}

TEST_CASE("spectrum writes the curve CSV") {
    const Run r = run("spectrum " + spec("right_shift") + " --trunc 32 --csv -");
    CHECK(r.code == 0);
    REQUIRE(r.out.rfind("theta,re,im\n0.000000000000,1.000000000000,0.000000000000\n", 0) == 0);
    int lines = 0;
    for (char c : r.out) lines += c == '\n';
    CHECK(lines == 1025);

    const Run s = run("spectrum " + spec("unitary_diag") + " --trunc 32");
    CHECK(s.out.find("single point 1") != std::string::npos);
    const Run e = run("spectrum " + spec("example36") + " --trunc 32");
    CHECK(e.out.find("|T| eigenvalues below m_e: 0.5 (x2)") != std::string::npos);
}

TEST_CASE("decompose") {
    const Run r = run("decompose " + spec("example36") + " --trunc 64");
    CHECK(r.code == 0);
    CHECK(r.out.find("dim H1 = 62, dim H2 = 2") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);

    const Run bad = run("decompose " + spec("selfadjoint_band") + " --trunc 32", true);
    CHECK(bad.code == 1);
    CHECK(bad.out.find("not absolutely norm attaining") != std::string::npos);
    CHECK(bad.out.find("witness symbol_deviation") != std::string::npos);
}

TEST_CASE("verify-suite passes, detects corruption, and is deterministic") {
    const Run ok = run("verify-suite --cases 4 --seed 7 --format structured");
    CHECK(ok.code == 0);
    CHECK(nlohmann::json::parse(ok.out)["passed"] == true);
    CHECK(run("verify-suite --cases 4 --seed 7 --format structured").out == ok.out);

    const Run bad = run("verify-suite --cases 2 --inject-corruption");
    CHECK(bad.code == 1);
    CHECK(bad.out.find("FAIL golden") != std::string::npos);
    CHECK(bad.out.find("gram_A_S2") != std::string::npos);
}
