// Copyright 2026 The qapprox Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"
#include "qapprox/io.hpp"

using namespace qapprox;
using Catch::Matchers::ContainsSubstring;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
  public:
    TempDir() : path_(std::filesystem::temp_directory_path() / "qapprox_cli_test") {
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    [[nodiscard]] std::string file(const std::string &name) const { return (path_ / name).string(); }

  private:
    std::filesystem::path path_;
};

} // namespace

TEST_CASE("synth-state then apply reproduces the target", "[cli]") {
    TempDir dir;
    oracle::TestRng rng(81);
    for (int n = 1; n <= 4; ++n) {
        const StateVec target = rng.state(n);
        save_state(dir.file("t.qstate"), target);
        const Result synth = run({"synth-state", "--state", dir.file("t.qstate"), "--out", dir.file("c.qcircuit")});
        REQUIRE(synth.code == cli::kExitOk);
        CHECK_THAT(synth.err, ContainsSubstring("# qapprox"));

        const Result applied = run({"apply", "--circuit", dir.file("c.qcircuit"), "--state", "zero",
                                    "--n", std::to_string(n)});
        REQUIRE(applied.code == cli::kExitOk);
        std::istringstream in(applied.out);
        const StateVec got = read_state(in);
        CHECK((got.amplitudes() - target.amplitudes()).norm() <= 1e-9);
    }
}

TEST_CASE("bounds table rows", "[cli]") {
    const Result r = run({"bounds", "--table", "thm34", "--n", "3", "--k", "8"});
    REQUIRE(r.code == cli::kExitOk);
    CHECK_THAT(r.out, ContainsSubstring("n,k,lower_bound"));
    CHECK_THAT(r.out, ContainsSubstring("3,8,6"));

    const Result sweep = run({"bounds", "--table", "thm51", "--n", "3", "--g", "2", "--q", "2", "--D",
                              "1000000", "--sweep", "b=2:10:4"});
    REQUIRE(sweep.code == cli::kExitOk);
    std::istringstream lines(sweep.out);
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) {
        rows += line.empty() || line[0] == '#' ? 0 : 1;
    }
    CHECK(rows == 4); // header plus b = 2, 6, 10
}

TEST_CASE("mc output is reproducible for a fixed seed", "[cli]") {
    const std::vector<std::string> args{"mc", "--experiment", "simplex-ball", "--N", "4", "--eps", "0.25",
                                        "--samples", "1000000", "--seed", "7"};
    const Result a = run(args);
    const Result b = run(args);
    REQUIRE(a.code == cli::kExitOk);
    CHECK(a.out == b.out);
    CHECK_THAT(a.out, ContainsSubstring("true"));
}

TEST_CASE("advantage subcommand", "[cli]") {
    TempDir dir;
    save_circuit(dir.file("id.qcircuit"), Circuit(2));
    save_problem(dir.file("p.qproblem"), DecisionProblem(2, {{0, 0}, {1, 1}, {2, 0}}));
    const Result r = run({"advantage", "--circuit", dir.file("id.qcircuit"), "--problem", dir.file("p.qproblem")});
    REQUIRE(r.code == cli::kExitOk);
    CHECK_THAT(r.out, ContainsSubstring("p_star,q_or_none"));
    CHECK_THAT(r.out, ContainsSubstring("1,1"));
}

TEST_CASE("text format", "[cli]") {
    const Result r = run({"--format", "text", "net", "--g", "1", "--delta", "1", "--count"});
    REQUIRE(r.code == cli::kExitOk);
    CHECK_THAT(r.out, ContainsSubstring("5764801"));
    CHECK_THAT(r.out, !ContainsSubstring(","));
}

TEST_CASE("exit codes", "[cli]") {
    CHECK(run({"bounds", "--table", "thm34", "--n", "3", "--k", "9"}).code == cli::kExitDomain);
    CHECK(run({"bounds", "--table", "nope"}).code == cli::kExitDomain);
    CHECK(run({"mc", "--experiment", "sphere-ball", "--m", "3", "--eps", "0.5", "--bogus"}).code ==
          cli::kExitDomain);
    CHECK(run({"apply", "--circuit", "/nonexistent/c.qcircuit", "--state", "zero", "--n", "1"}).code ==
          cli::kExitIo);

    TempDir dir;
    {
        std::ofstream f(dir.file("bad.qstate"));
        f << "qstate v1\nn=1\n1 0\n";
    }
    const Result bad = run({"synth-state", "--state", dir.file("bad.qstate")});
    CHECK(bad.code == cli::kExitIo);
    CHECK_THAT(bad.err, ContainsSubstring("line"));
}

TEST_CASE("--out is only written on success", "[cli]") {
    TempDir dir;
    const std::string out = dir.file("table.csv");
    CHECK(run({"bounds", "--table", "thm34", "--n", "3", "--k", "9", "--out", out}).code == cli::kExitDomain);
    CHECK_FALSE(std::filesystem::exists(out));
    CHECK(run({"bounds", "--table", "thm34", "--n", "3", "--k", "8", "--out", out}).code == cli::kExitOk);
    CHECK(std::filesystem::exists(out));
}
