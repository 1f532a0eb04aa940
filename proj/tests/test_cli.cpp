#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qehrhart/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "qehrhart");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = qehrhart::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(QEHRHART_DATA_DIR) + "/" + name + ".json"; }

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("qehrhart with every method agrees on the triangle") {
  const auto r = run({"qehrhart", "--polytope", data("triangle"), "--mmax", "1", "--method", "all"});
  CHECK(r.code == 0);
  CHECK(count(r.out, "m=0: 1\n") == 3);
  CHECK(count(r.out, "m=1: 1 2 1\n") == 3);
  CHECK(r.out.find("agreement: yes") != std::string::npos);
}

TEST_CASE("points of the doubled triangle") {
  const auto r = run({"points", "--polytope", data("triangle"), "--dilation", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("lattice points of 2P: 10") != std::string::npos);
  const auto j = run({"points", "-p", data("triangle"), "--m", "2", "--format", "json"});
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc.at("count") == 10);
  CHECK(doc.at("points").size() == 10);
}

TEST_CASE("input errors exit with 1") {
  CHECK(run({"qehrhart", "--polytope", data("triangle"), "--mmax", "-1"}).code == 1);
  CHECK(run({"qehrhart", "--polytope", data("triangle"), "--mmax", "1", "--method", "bogus"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"points", "--polytope", "/nonexistent.json"}).code == 1);
  const auto bad = std::filesystem::temp_directory_path() / "qehrhart_bad_polytope.json";
  {
    std::ofstream(bad) << R"({"dim": 2, "vertices": [["1/0", 0]]})";
  }
  const auto r = run({"ehrhart", "--polytope", bad.string(), "--mmax", "1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("zero denominator") != std::string::npos);
  CHECK(run({"mult-check", "-p", data("triangle"), "--mmax", "1"}).code == 1);
  CHECK(run({"generators", "-p", data("triangle"), "--mmax", "0"}).code == 1);
}

TEST_CASE("compute budget aborts exit with 2") {
  const auto r = run({"qehrhart", "-p", data("triangle"), "--mmax", "3", "--max-entries", "10"});
  CHECK(r.code == 2);
  CHECK(run({"gk-check", "-p", data("gk_rational_triangle"), "--max-entries", "30"}).code == 2);
}

TEST_CASE("structured output is deterministic") {
  const std::vector<std::vector<std::string>> configs{
      {"qehrhart", "-p", data("gk_rational_triangle"), "--mmax", "3", "--method", "all", "--format", "json"},
      {"lemma32", "-p", data("triangle"), "--m", "2", "--trials", "20", "--seed", "9", "--format", "json"},
      {"mult-check", "-p", data("triangle"), "--samples", "10", "--seed", "4", "--format", "json"},
      {"generators", "-p", data("triangle"), "--mmax", "2", "--format", "json"},
      {"gk-check", "-p", data("gk_rational_triangle"), "--mmax", "2", "--growth-mmax", "2", "--p3-mmax", "1",
       "--format", "json"},
      {"filtration", "-p", data("triangle"), "--m", "1", "--bases", "--format", "json"},
  };
  for (const auto& c : configs) {
    CAPTURE(c[0]);
    const auto a = run(c), b = run(c);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(nlohmann::json::accept(a.out));
  }
}

TEST_CASE("threads do not change the output") {
  const std::vector<std::string> base{"qehrhart", "-p", data("unit_square"), "--mmax", "3", "--format", "json"};
  auto threaded = base;
  threaded.insert(threaded.end(), {"--threads", "4"});
  CHECK(run(base).out == run(threaded).out);
}

TEST_CASE("csv output") {
  const auto r = run({"qehrhart", "-p", data("segment"), "--mmax", "2", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("m,d,dim\n", 0) == 0);
  CHECK(r.out.find("2,2,1\n") != std::string::npos);
  const auto f = run({"filtration", "-p", data("triangle"), "--m", "1", "--format", "csv"});
  CHECK(f.out == "m,d,dim\n1,0,4\n1,1,3\n1,2,1\n1,3,0\n");
}

TEST_CASE("results cache") {
  const auto dir = std::filesystem::temp_directory_path() / "qehrhart_cli_cache_test";
  std::filesystem::remove_all(dir);
  const std::vector<std::string> args{"qehrhart", "-p",          data("triangle"), "--mmax",     "2",
                                      "--format", "json",        "--cache-dir",    dir.string()};
  const auto first = run(args);
  CHECK(first.code == 0);
  CHECK(first.err.find("cache hit") == std::string::npos);
  const auto second = run(args);
  CHECK(second.err.find("cache hit") != std::string::npos);
  CHECK(first.out == second.out);

  // A corrupted entry fails validation and is recomputed.
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    std::ofstream(entry.path()) << R"({"filtration": {"rows": [{"m": 0, "dims": [7]}]}})";
  }
  const auto third = run(args);
  CHECK(third.code == 0);
  CHECK(third.err.find("cache hit") == std::string::npos);
  CHECK(third.out == first.out);

  auto other = args;
  other[4] = "1";
  CHECK(run(other).err.find("cache hit") == std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("remaining subcommands") {
  CHECK(run({"ehrhart", "-p", data("segment"), "--mmax", "3"}).out == "m=0: 1\nm=1: 2\nm=2: 3\nm=3: 4\n");
  const auto h = run({"harmonic-basis", "-p", data("triangle"), "--m", "1", "--method", "dual"});
  CHECK(h.code == 0);
  CHECK(h.out.find("x^2 + x*y + y^2") != std::string::npos);
  const auto g = run({"generators", "-p", data("segment"), "--mmax", "3"});
  CHECK(g.out.find("(1,0): 1\n(1,1): 1\n") == 0);
  const auto gk = run({"gk-check", "-p", data("gk_rational_triangle"), "--mmax", "3", "--growth-mmax", "3"});
  CHECK(gk.code == 0);
  CHECK(gk.out.find("m=3  order=3  verified=3") != std::string::npos);
  CHECK(gk.out.find("(m,d)=(3,3)  divisible") != std::string::npos);
  const auto l = run({"lemma32", "-p", data("triangle"), "--m", "1", "--trials", "10"});
  CHECK(l.code == 0);
  CHECK(l.out.find("mismatches: 0") != std::string::npos);
  const auto mc = run({"mult-check", "-p", data("unit_square"), "--samples", "10"});
  CHECK(mc.code == 0);
}
