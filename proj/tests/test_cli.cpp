#include <array>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"
#include "mps_reader.hpp"
#include "spcp/milp.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SPCP_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const std::string kLine = std::string("--matrix ") + SPCP_DATA + "/line.matrix --strata " + SPCP_DATA + "/line_strata.json --p 2";

std::string without_timing(std::string s) {
  return std::regex_replace(s, std::regex("\"t_(prep|solv|total)\": [^,\\n]*"), "");
}

}  // namespace

TEST_CASE("solve writes the line fixture optimum") {
  for (const char* f : {"F1", "F3mod", "combinatorial"}) {
    const auto r = run("solve " + kLine + " --formulation " + f);
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["objective"].get<double>() == doctest::Approx(2.8));
    CHECK(j.contains("t_prep"));
    CHECK(j.contains("t_solv"));
    CHECK(j.contains("t_total"));
  }
}

TEST_CASE("configuration errors exit with 2") {
  CHECK(run("solve " + std::string("--matrix ") + SPCP_DATA + "/line.matrix --strata " + SPCP_DATA +
            "/line_strata.json --p 1").code == 2);
  CHECK(run("solve " + kLine + " --formulation F3 --ineq Restz").code == 2);
  CHECK(run("solve " + kLine + " --formulation F9").code == 2);
  CHECK(run("solve --bogus").code == 2);
}

TEST_CASE("limit without proof exits with 3") {
  const auto r = run("solve --random 14,3 --gen-strata 3,1 --p 3 --formulation F1 --node-limit 2");
  CHECK(r.code == 3);
  CHECK(nlohmann::json::parse(r.out)["proven"] == false);
}

TEST_CASE("solve output is deterministic apart from timing") {
  const auto a = run("solve --random 10,4 --gen-strata 3,2 --p 3 --formulation F5 --f5-linking agg53 --preprocess binary");
  const auto b = run("solve --random 10,4 --gen-strata 3,2 --p 3 --formulation F5 --f5-linking agg53 --preprocess binary");
  CHECK(a.code == 0);
  CHECK(without_timing(a.out) == without_timing(b.out));
}

TEST_CASE("compare agrees across specs and reports equal F2 and F2prime gaps") {
  const auto r = run("compare --random 8,20,3 --gen-strata 2,7 --p 2 --specs all --jobs 2");
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "instance,n,p,spec,status,optimum,lp_value,lp_gap_pct,nodes,time");
  std::map<std::string, std::map<std::string, std::string>> gap;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string t; std::getline(ss, t, ',');) f.push_back(t);
    REQUIRE(f.size() == 10);
    gap[f[0]][f[3]] = f[7];
  }
  CHECK(gap.size() == 3);
  for (const auto& [inst, m] : gap) CHECK(m.at("F2") == m.at("F2prime"));
}

TEST_CASE("preprocess-stats rows stay in range") {
  const auto r = run("preprocess-stats --random 10,1,3 --gen-strata 3,4 --p 3");
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "instance,n,p,pct_z,pct_u_classic,pct_u_binary");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string t;
    for (int k = 0; std::getline(ss, t, ','); ++k)
      if (k >= 3) v.push_back(std::stod(t));
    REQUIRE(v.size() == 3);
    for (double x : v) CHECK((x >= 0 && x <= 100));
    CHECK(v[2] >= v[1]);
  }
  CHECK(rows == 3);
  const auto all = run(std::string("preprocess-stats --matrix ") + SPCP_DATA + "/line.matrix --strata " + SPCP_DATA +
                       "/line_strata.json --p 5");
  CHECK(all.out.find(",100,") != std::string::npos);
}

TEST_CASE("saa reports a zero gap for certain demand and is reproducible") {
  const std::string ones = std::string(SPCP_BINARY_DIR) + "/ones_q.txt";
  std::ofstream(ones) << "1\n1\n1\n1\n1\n";
  const auto r = run(std::string("saa --matrix ") + SPCP_DATA + "/line.matrix --p 2 --q " + ones);
  CHECK(r.code == 0);
  const auto json_start = r.out.find('{');
  REQUIRE(json_start != std::string::npos);
  const auto j = nlohmann::json::parse(r.out.substr(json_start));
  CHECK(j["gap_pct"].get<double>() == doctest::Approx(0));
  const auto half = std::string("saa --matrix ") + SPCP_DATA + "/line.matrix --p 2 --q " + SPCP_DATA + "/line_q.txt --seed 9";
  CHECK(run(half).out == run(half).out);
}

TEST_CASE("export writes a readable MPS file") {
  const auto r = run("export " + kLine + " --formulation F5 --f5-linking agg53 --preprocess binary");
  CHECK(r.code == 0);
  CHECK(r.out.size() > 6);
  CHECK(r.out.substr(r.out.size() - 7) == "ENDATA\n");
  const auto m = spcp::testing::read_mps(r.out);
  CHECK(spcp::milp_solve(m).incumbent_value == doctest::Approx(2.8));
}
