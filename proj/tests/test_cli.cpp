// Copyright 2026 The zbtail Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// End-to-end tests of the command-line tool. The binary path arrives in the
// ZBTAIL_CLI environment variable (set by CTest).

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "zbtail/bounds.hpp"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CliResult run_cli(const std::string& args) {
  const char* bin = std::getenv("ZBTAIL_CLI");
  REQUIRE(bin != nullptr);
  const auto dir = std::filesystem::temp_directory_path();
  const auto out_path = dir / "zbtail_cli_stdout.txt";
  const auto err_path = dir / "zbtail_cli_stderr.txt";
  const std::string cmd = std::string("\"") + bin + "\" " + args + " > \"" +
                          out_path.string() + "\" 2> \"" + err_path.string() +
                          "\"";
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_file(out_path);
  r.err = read_file(err_path);
  return r;
}

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path, std::ios::binary);
  out << contents;
  return path;
}

std::filesystem::path cyclic3_csv() {
  return write_temp("zbtail_cyclic3.csv", "0,1,2\n1,2,0\n2,0,1\n");
}

}  // namespace

TEST_CASE("bound: direct parameters, JSON report") {
  const CliResult r = run_cli(
      "bound --sigma2 1 --c 1 --t 2 --kind one-sided --format json");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("schema_version") == 1);
  CHECK(doc.at("command") == "bound");
  CHECK(doc.at("config").at("seed").is_null());
  CHECK(doc.at("config").at("source") == "direct");
  CHECK(doc.at("config").at("parameters").at("sigma2") == 1.0);
  REQUIRE(doc.at("results").size() == 1);
  const nlohmann::json& row = doc.at("results").at(0);
  CHECK(row.at("t") == 2.0);
  CHECK(row.at("kind") == "one-sided");
  CHECK(row.at("applicable") == true);
  const double expected =
      zbtail::evaluate(zbtail::BoundKind::one_sided, {1.0, 1.0, 2.0}).clamped;
  CHECK(row.at("clamped").get<double>() == expected);
  CHECK(std::abs(expected - std::exp(-2.0 / 3.0)) < 1e-15);
}

TEST_CASE("bound: CSV preamble carries the config") {
  const CliResult r =
      run_cli("bound --sigma2 2 --c 1 --t 1 --t 2 --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("# schema_version: 1\n# command: bound\n# config: ", 0) ==
        0);
  CHECK(r.out.find("t,kind,applicable,raw,clamped\n") != std::string::npos);
}

TEST_CASE("bound: bad invocations exit with the input-error code") {
  CHECK(run_cli("bound --c 1 --t 2").exit_code == 2);          // no sigma2
  CHECK(run_cli("bound --sigma2 1 --c 1").exit_code == 2);     // no t
  CHECK(run_cli("bound --sigma2 1 --t 1 --t-grid 0:1:5").exit_code == 2);
  CHECK(run_cli("bound --sigma2 -1 --c 1 --t 2").exit_code == 2);
  CHECK(run_cli("bound --sigma2 1 --c 1 --t 2 --kind nope").exit_code == 2);
  CHECK(run_cli("bogus").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("bound --help").exit_code == 0);
}

TEST_CASE("moments: matrix statistics under the uniform law") {
  const auto csv = cyclic3_csv();
  const CliResult r =
      run_cli("moments --matrix \"" + csv.string() + "\" --format json");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("command") == "moments");
  const nlohmann::json& res = doc.at("results");
  CHECK(res.at("n") == 3);
  CHECK(res.at("mean").get<double>() == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(res.at("variance").get<double>() ==
        doctest::Approx(3.0).epsilon(1e-12));
  CHECK(res.at("coupling_c").get<double>() ==
        doctest::Approx(8.0).epsilon(1e-12));

  const CliResult csv_run =
      run_cli("moments --matrix \"" + csv.string() + "\" --format csv");
  REQUIRE(csv_run.exit_code == 0);
  CHECK(csv_run.out.find("key,value\n") != std::string::npos);
  CHECK(csv_run.out.find("variance,3.0\n") != std::string::npos);
}

TEST_CASE("sample: valid draws, reproducible byte-for-byte") {
  const std::string args =
      "sample --law fpf-involution --n 4 --count 3 --seed 1 --format json";
  const CliResult r = run_cli(args);
  REQUIRE(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("config").at("seed") == 1);
  REQUIRE(doc.at("results").size() == 3);
  for (const nlohmann::json& row : doc.at("results")) {
    const std::vector<int> perm = row.at("perm").get<std::vector<int>>();
    REQUIRE(perm.size() == 4);
    for (int i = 0; i < 4; ++i) {
      const int image = perm[static_cast<std::size_t>(i)];  // 1-based
      REQUIRE(image >= 1);
      REQUIRE(image <= 4);
      CHECK(image != i + 1);                                   // no fixed point
      CHECK(perm[static_cast<std::size_t>(image - 1)] == i + 1);  // involution
    }
  }
  const CliResult again = run_cli(args);
  CHECK(again.exit_code == 0);
  CHECK(again.out == r.out);

  // Without --seed one is generated and echoed; runs differ but stay valid.
  const CliResult fresh =
      run_cli("sample --law uniform --n 5 --count 2 --format json");
  CHECK(fresh.exit_code == 0);
  CHECK(nlohmann::json::parse(fresh.out).at("config").at("seed").is_number());
}

TEST_CASE("zerobias: transformed density and samples") {
  const std::string coin = R"({"atoms":[[-1,0.5],[1,0.5]]})";
  const CliResult r =
      run_cli("zerobias --dist '" + coin + "' --format json");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  const nlohmann::json& density = doc.at("results").at("density");
  CHECK(density.at("breakpoints") == nlohmann::json({-1.0, 1.0}));
  CHECK(density.at("densities") == nlohmann::json({0.5}));
  CHECK(doc.at("results").at("variance") == 1.0);

  const std::string sample_args = "zerobias --dist '" + coin +
                                  "' --emit samples --n 100 --seed 7 "
                                  "--format json";
  const CliResult s1 = run_cli(sample_args);
  const CliResult s2 = run_cli(sample_args);
  REQUIRE(s1.exit_code == 0);
  CHECK(s1.out == s2.out);
  const nlohmann::json sdoc = nlohmann::json::parse(s1.out);
  REQUIRE(sdoc.at("results").at("samples").size() == 100);
  for (const nlohmann::json& v : sdoc.at("results").at("samples")) {
    const double y = v.get<double>();
    CHECK(y >= -1.0);
    CHECK(y <= 1.0);
  }

  // Mean must be zero for the transform to exist.
  const CliResult bad =
      run_cli(R"(zerobias --dist '{"atoms":[[0,0.5],[1,0.5]]}')");
  CHECK(bad.exit_code == 2);

  // Two components: coupled sum draws with the replacement index.
  const std::string pair_args = "zerobias --dist '" + coin + "' --dist '" +
                                coin +
                                "' --emit samples --n 50 --seed 3 "
                                "--format json";
  const CliResult pair = run_cli(pair_args);
  REQUIRE(pair.exit_code == 0);
  const nlohmann::json pdoc = nlohmann::json::parse(pair.out);
  const double cap = pdoc.at("results").at("coupling_bound").get<double>();
  CHECK(cap == 2.0);
  for (const nlohmann::json& v : pdoc.at("results").at("samples")) {
    CHECK(std::abs(v.at("y_star").get<double>() - v.at("y").get<double>()) <=
          cap + 1e-12);
  }
}

TEST_CASE("validate: domination checks and exit codes") {
  const auto csv = cyclic3_csv();
  const std::string base = "validate --matrix \"" + csv.string() +
                           "\" --t-grid 0:3:4 --seed 5 --format json";
  const CliResult ok = run_cli(base);
  REQUIRE(ok.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(ok.out);
  CHECK(doc.at("pass") == true);
  CHECK(doc.at("config").at("method") == "exact");
  CHECK_FALSE(doc.at("config").contains("threads"));

  // The hidden negative-control hook must flip the verdict.
  const CliResult crushed = run_cli(base + " --self-test-bound-scale 1e-6");
  CHECK(crushed.exit_code == 1);
  CHECK(nlohmann::json::parse(crushed.out).at("pass") == false);

  // --seed is mandatory here even for the exact method.
  const CliResult no_seed = run_cli("validate --matrix \"" + csv.string() +
                                    "\" --t-grid 0:3:4 --format json");
  CHECK(no_seed.exit_code == 2);

  // Monte Carlo runs are identical across thread counts.
  const std::string mc = base + " --mc --trials 20000";
  const CliResult t1 = run_cli(mc + " --threads 1");
  const CliResult t4 = run_cli(mc + " --threads 4");
  REQUIRE(t1.exit_code == 0);
  CHECK(t1.out == t4.out);

  // Too large to enumerate: resource-limit exit code.
  std::ostringstream big;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      big << ((i * 3 + j * 7) % 11) << (j == 9 ? "" : ",");
    }
    big << "\n";
  }
  const auto big_csv = write_temp("zbtail_big.csv", big.str());
  const CliResult capped = run_cli("validate --matrix \"" + big_csv.string() +
                                   "\" --t-grid 0:1:2 --seed 1");
  CHECK(capped.exit_code == 3);
}

TEST_CASE("compare: winner switches once from one-sided to tlogt-tight") {
  const CliResult r = run_cli(
      "compare --sigma2 1 --c 1 --t-grid 1:100:100 --log --format json");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.at("results").size() == 100);
  std::vector<std::string> winners;
  for (const nlohmann::json& row : doc.at("results")) {
    REQUIRE_FALSE(row.at("winner").is_null());
    winners.push_back(row.at("winner").get<std::string>());
  }
  const std::set<std::string> distinct(winners.begin(), winners.end());
  CHECK(distinct ==
        std::set<std::string>({"one-sided", "tlogt-tight"}));
  // Monotone handoff: every one-sided win precedes every tlogt-tight win.
  bool switched = false;
  for (const std::string& w : winners) {
    if (w == "tlogt-tight") {
      switched = true;
    } else {
      CHECK_FALSE(switched);
    }
  }
  CHECK(switched);
}
