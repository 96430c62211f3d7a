#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "taut2/cli.hpp"

using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  json record() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = taut2::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("taut2-cli-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("record shape") {
  const auto r = run({"hecke", "--weight", "12", "--p", "2"});
  REQUIRE(r.code == 0);
  const json rec = r.record();
  for (const char* key : {"command", "inputs", "outputs", "route", "evidence", "provenance", "version"}) {
    CHECK(rec.contains(key));
  }
  CHECK(rec["outputs"]["trace"] == -24);
  CHECK(rec["version"] == taut2::cli::kVersion);
  // Keys are emitted sorted.
  std::vector<std::string> keys;
  for (const auto& [k, v] : rec.items()) keys.push_back(k);
  CHECK(std::is_sorted(keys.begin(), keys.end()));
  CHECK(r.out.find("\"command\"") < r.out.find("\"version\""));
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args{"trace", "--space", "a11", "--lambda", "10,10", "--q", "7"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("trace subcommand") {
  const auto m2 = run({"trace", "--space", "m2", "--lambda", "0,0", "--q", "5"});
  REQUIRE(m2.code == 0);
  CHECK(m2.record()["outputs"]["value"] == 125);
  CHECK(m2.record()["route"] == "point-count");
  const auto a2 = run({"trace", "--space", "a2", "--lambda", "0,0", "--q", "5"});
  CHECK(a2.record()["outputs"]["value"] == 150);
  const auto odd = run({"trace", "--space", "m2", "--lambda", "1,0", "--q", "5"});
  CHECK(odd.record()["outputs"]["value"] == 0);
  CHECK(odd.record()["route"] == "odd-weight-vanishing");
  const auto a1 = run({"trace", "--space", "a1", "--lambda", "10,0", "--q", "5"});
  CHECK(a1.record()["outputs"]["value"] == -4831);
}

TEST_CASE("large values are exact strings") {
  const auto r = run({"trace", "--space", "a11", "--lambda", "20,0", "--q", "13"});
  REQUIRE(r.code == 0);
  const json v = r.record()["outputs"]["value"];
  REQUIRE(v.is_number_integer());
  CHECK(v.get<std::int64_t>() == 2893015689862);
  CHECK(r.record()["evidence"]["pretty"] ==
        "4 - L + S[12] + S[16] + S[18] + S[20] - S[22] L + Alt2 S[12]");
}

TEST_CASE("euler, eisenstein, branch, mult, poincare") {
  const auto e = run({"euler", "--space", "a1", "--n", "10"});
  CHECK(e.record()["outputs"]["motive"] == json::parse(R"([["tate:0",-1],["cusp:12:0",-1]])"));
  const auto eis = run({"eisenstein", "--lambda", "10,10", "--degree", "2"});
  CHECK(eis.record()["outputs"]["motive"] == json::parse(R"([["tate:11",2]])"));
  const auto br = run({"branch", "--lambda", "1,1"});
  CHECK(br.record()["outputs"]["dimension"] == 5);
  const auto mult = run({"mult", "--lambda", "2,2", "--n", "4", "--k", "4"});
  CHECK(mult.record()["outputs"]["multiplicity"].get<int>() > 0);
  const auto p = run({"poincare", "--n", "2"});
  CHECK(p.record()["outputs"]["dimensions"] == json::parse("[1,0,3,0,1]"));
  const auto csv = run({"poincare", "--n", "2", "--format", "csv"});
  CHECK(csv.out == "k,dimension\n0,1\n1,0\n2,3\n3,0\n4,1\n");
}

TEST_CASE("inner and analyze") {
  const auto in = run({"inner", "--lambda", "20,0"});
  CHECK(in.record()["route"] == "fweight-Tate-obstruction");
  CHECK(in.record()["outputs"]["verdict"] == "vanishes");
  const auto cond = run({"inner", "--lambda", "10,10"});
  CHECK(cond.record()["outputs"]["verdict"] == "vanishes-conditionally");
  const auto n = run({"analyze", "N"});
  REQUIRE(n.code == 0);
  CHECK(n.record()["outputs"]["N"] == 20);
  CHECK(n.record()["outputs"]["i"] == 11);
  const auto n8 = run({"analyze", "N", "--assume", "a2=noninj"});
  CHECK(n8.record()["outputs"]["N"] == 8);
  CHECK(n8.record()["outputs"]["i"] == 5);
}

TEST_CASE("fit from a samples file") {
  const auto dir = fresh_dir("fit");
  const auto path = dir / "samples.csv";
  {
    std::ofstream out(path);
    out << "# p,r,value\n3,1,-253\n5,1,-4831\n7,1,16743\n";
  }
  const auto r = run({"fit", "--basis", "tate:0,cusp:12:0", "--samples", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.record()["outputs"]["motive"] == json::parse(R"([["tate:0",-1],["cusp:12:0",-1]])"));
  const auto under = run({"fit", "--basis", "tate:0,tate:1,tate:2,tate:3", "--samples", path.string()});
  CHECK(under.code == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("count writes the cache under TAUT2_CACHE; corruption is exit 2") {
  const auto dir = fresh_dir("cache");
  setenv("TAUT2_CACHE", dir.c_str(), 1);
  const auto r = run({"count", "--family", "elliptic", "--q", "7", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("a1,num,den\n", 0) == 0);
  const auto file = dir / "hist-elliptic-7.csv";
  REQUIRE(std::filesystem::exists(file));
  std::ifstream in(file);
  std::string header;
  std::getline(in, header);
  CHECK(header == "taut2-hist v1 elliptic 7 42");

  const auto again = run({"count", "--family", "elliptic", "--q", "7"});
  CHECK(again.record()["route"] == "cache");
  CHECK(again.record()["outputs"]["total_mass"] == 7);

  {
    std::ofstream out(file, std::ios::app);
    out << "1,1,1\n";
  }
  const auto bad = run({"count", "--family", "elliptic", "--q", "7"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("integrity") != std::string::npos);

  // The flag overrides the environment.
  const auto other = fresh_dir("cache-flag");
  const auto flag = run({"count", "--family", "genus2", "--q", "3", "--cache", other.string()});
  CHECK(flag.code == 0);
  CHECK(flag.record()["outputs"]["total_mass"] == 27);
  CHECK(std::filesystem::exists(other / "hist-genus2-3.csv"));
  unsetenv("TAUT2_CACHE");
  std::filesystem::remove_all(dir);
  std::filesystem::remove_all(other);
}

TEST_CASE("domain errors exit 1") {
  CHECK(run({"trace", "--space", "m2", "--lambda", "1,2", "--q", "5"}).code == 1);
  CHECK(run({"trace", "--space", "m2", "--lambda", "0,0", "--q", "4"}).code == 1);
  CHECK(run({"inner", "--lambda", "11,11"}).code == 1);
  CHECK(run({"count", "--family", "genus2", "--q", "11"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"hecke", "--weight", "12"}).code == 1);
  CHECK(run({"analyze", "M"}).code == 1);
  const auto e = run({"inner", "--lambda", "21,0"});
  CHECK(e.err.find("inner_vanishing_report") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify reports thirteen criteria") {
  const auto dir = fresh_dir("verify");
  const auto r = run({"verify", "--cache", dir.string()});
  const json rec = r.record();
  REQUIRE(rec["outputs"]["criteria"].size() == 13);
  bool all = true;
  for (const auto& c : rec["outputs"]["criteria"]) all = all && c["pass"].get<bool>();
  CHECK(rec["outputs"]["all_pass"] == all);
  CHECK(r.code == (all ? 0 : 1));

  // Corrupting a genus-2 cache turns the mass criterion into an integrity failure.
  {
    std::ofstream out(dir / "hist-genus2-5.csv", std::ios::app);
    out << "0,0,1,480\n";
  }
  const auto bad = run({"verify", "--cache", dir.string()});
  CHECK(bad.code == 2);
  CHECK(bad.record()["outputs"]["criteria"][1]["actual"].get<std::string>().rfind("integrity:", 0) == 0);
  std::filesystem::remove_all(dir);
}
