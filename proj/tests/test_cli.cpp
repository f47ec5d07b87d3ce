// Copyright 2026 The avgdist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "avgdist/cli.hpp"
#include "avgdist/rational.hpp"

using namespace avgdist;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream f(path);
  f << body;
  return path;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("bounds --json gives an exact record") {
    const auto r = run({"bounds", "--n", "8", "--m", "16", "--json"});
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["lower_exact"] == "19/10");
    CHECK(parse_rational(j["lower_exact"].get<std::string>()) == make_rational(19, 10));
    CHECK(j["lower_decimal"] == "1.90000000000");
    CHECK(j["lower_decimal_note"] == "approximate");
    CHECK(j["upper_exact"] == "65/32");
    CHECK(j["provenance"].size() >= 1);
  }

  TEST_CASE("bounds text output labels the decimal as approximate") {
    const auto r = run({"bounds", "--n", "3", "--m", "4"});
    REQUIRE(r.status == 0);
    CHECK(r.out.find("1/1") != std::string::npos);
    CHECK(r.out.find("approx") != std::string::npos);
  }

  TEST_CASE("search prints the value and a code") {
    const auto r = run({"search", "--n", "3", "--m", "4"});
    REQUIRE(r.status == 0);
    CHECK(r.out.find("= 1/1") != std::string::npos);
    CHECK(r.out.find("000\n") != std::string::npos);
    const auto all = run({"search", "--n", "3", "--m", "2", "--all-minimizers", "--threads", "2"});
    CHECK(all.status == 0);
    CHECK(all.out.find("# code 3") != std::string::npos);
    const auto budget = run({"search", "--n", "5", "--m", "9", "--budget", "50", "--threads", "1"});
    CHECK(budget.status == cli::kExitIncomplete);
    CHECK(budget.err.find("budget") != std::string::npos);
    CHECK(run({"search", "--n", "7", "--m", "3"}).status == cli::kExitUsage);
  }

  TEST_CASE("verify reports vacuous ranges and succeeds") {
    const auto r = run({"verify", "--lemma", "monotone-even", "--n-max", "10"});
    CHECK(r.status == 0);
    CHECK(r.out.find("checked 0 pairs") != std::string::npos);
    const auto all = run({"verify", "--n-max", "40", "--json"});
    CHECK(all.status == 0);
    CHECK(nlohmann::json::parse(all.out).size() == 6);
    CHECK(run({"verify", "--lemma", "midpoint", "--n-max", "30", "--serial"}).status == 0);
    CHECK(run({"verify", "--lemma", "nonsense"}).status == cli::kExitUsage);
  }

  TEST_CASE("construct output round-trips through eval-code") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"construct", "--kind", "two_n", "--n", "4"},
             {"construct", "--kind", "constant_weight", "--n", "6", "--w", "2"}}) {
      const auto c = run(args);
      REQUIRE(c.status == 0);
      const auto marker = c.out.find("average distance: ");
      REQUIRE(marker != std::string::npos);
      const auto claimed = c.out.substr(marker + 18, c.out.find(' ', marker + 18) - marker - 18);
      const auto path = temp_file("avgdist_cli_roundtrip.txt", c.out);
      const auto e = run({"eval-code", path.string(), "--json"});
      REQUIRE(e.status == 0);
      CHECK(nlohmann::json::parse(e.out)["average_distance_exact"] == claimed);
      std::filesystem::remove(path);
    }
    CHECK(run({"construct", "--kind", "two_n", "--n", "4"}).out.find("13/8") != std::string::npos);
    CHECK(run({"construct", "--kind", "constant_weight", "--n", "4"}).status == cli::kExitUsage);
    CHECK(run({"construct", "--kind", "circle", "--n", "4"}).status == cli::kExitUsage);
  }

  TEST_CASE("eval-code examples") {
    const auto rep = temp_file("avgdist_cli_rep.txt", "000\n111\n");
    const auto r = run({"eval-code", rep.string()});
    CHECK(r.status == 0);
    CHECK(r.out.find("3/2") != std::string::npos);
    CHECK(r.out.find("distribution checks: ok") != std::string::npos);

    const auto single = temp_file("avgdist_cli_single.txt", "# one\n0101\n");
    CHECK(run({"eval-code", single.string()}).out.find("0/1") != std::string::npos);

    const auto broken = temp_file("avgdist_cli_broken.txt", "01\n011\n");
    const auto b = run({"eval-code", broken.string()});
    CHECK(b.status == cli::kExitUsage);
    CHECK(b.err.find("line 2") != std::string::npos);
    for (const auto& p : {rep, single, broken}) std::filesystem::remove(p);
  }

  TEST_CASE("certify reports validity and the implied bound") {
    const auto r = run({"certify", "--family", "ALPHA_HALF_EVEN", "--n", "8", "--m", "16", "--json"});
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["valid"] == true);
    CHECK(j["bound_exact"] == "19/10");
    const auto all = run({"certify", "--family", "all", "--n", "9"});
    CHECK(all.status == 0);
    CHECK(all.out.find("ALPHA_MOD4_1") != std::string::npos);
    CHECK(run({"certify", "--family", "ALPHA_MOD4_1", "--n", "3"}).status == cli::kExitUsage);
    CHECK(run({"certify", "--family", "NOPE", "--n", "3"}).status == cli::kExitUsage);
  }

  TEST_CASE("lp prints a verified dual certificate") {
    const auto r = run({"lp", "--n", "6", "--m", "12", "--variant", "aside", "--json"});
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["status"] == "optimal");
    CHECK(j["certificate"]["valid"] == true);
    CHECK(j["solution_check"].empty());
    CHECK(run({"lp", "--n", "4", "--m", "6", "--variant", "mod4"}).status == 0);
    CHECK(run({"lp", "--n", "4", "--m", "6", "--variant", "odd"}).status == cli::kExitUsage);
    CHECK(run({"lp", "--n", "4", "--m", "6", "--variant", "dual"}).status == cli::kExitUsage);
  }

  TEST_CASE("table renderings carry identical values and are stable") {
    const auto md = run({"table", "--n", "4"});
    const auto md2 = run({"table", "--n", "4"});
    REQUIRE(md.status == 0);
    CHECK(md.out == md2.out);
    const auto csv = run({"table", "--n", "4", "--m-from", "3", "--m-to", "6", "--csv"});
    const auto json = run({"table", "--n", "4", "--m-from", "3", "--m-to", "6", "--json"});
    REQUIRE(csv.status == 0);
    REQUIRE(json.status == 0);
    const auto rows = nlohmann::json::parse(json.out);
    REQUIRE(rows.size() == 4);
    std::istringstream lines(csv.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line.rfind("n,M,lower_exact", 0) == 0);
    for (const auto& row : rows) {
      std::getline(lines, line);
      CHECK(line.find("," + row["lower_exact"].get<std::string>() + ",") != std::string::npos);
      CHECK(md.out.find("| " + row["lower_exact"].get<std::string>() + " |") != std::string::npos);
    }
    CHECK(run({"table", "--n", "4", "--csv", "--json"}).status == cli::kExitUsage);
    CHECK(run({"table", "--n", "4", "--m-from", "9", "--m-to", "3"}).status == cli::kExitUsage);
  }

  TEST_CASE("usage errors exit 1 with help") {
    const auto r = run({"bounds", "--n", "3", "--m", "4", "--bogus"});
    CHECK(r.status == cli::kExitUsage);
    CHECK(r.err.find("--json") != std::string::npos);
    CHECK(run({}).status == cli::kExitUsage);
    CHECK(run({"frobnicate"}).status == cli::kExitUsage);
    CHECK(run({"bounds", "--n", "3", "--m", "9"}).status == cli::kExitUsage);
    CHECK(run({"--help"}).status == 0);
  }

  TEST_CASE("make_record renders lower and upper") {
    BoundResult lo{4, 8, Direction::Lower, make_rational(3, 2), {"lp:bside"}};
    BoundResult up{4, 8, Direction::Upper, make_rational(13, 8), {"construction:two-n"}};
    const auto rec = cli::make_record(lo, up);
    CHECK(rec.lower_exact == "3/2");
    CHECK(rec.lower_decimal == "1.50000000000");
    CHECK(rec.upper_exact == "13/8");
    CHECK(cli::make_record(lo, std::nullopt).upper_exact == std::nullopt);
  }
}
