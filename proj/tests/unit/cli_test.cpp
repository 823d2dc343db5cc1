#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "commands.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kData = CPTP_TEST_DATA;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cptp::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("cptp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::size_t count_lines_starting(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0;
  return n;
}

}  // namespace

TEST_F(CliTest, TensorizeCubic) {
  const auto r = run({"tensorize", data("cubic.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("symtensor 3 4\n"), std::string::npos);
  EXPECT_NE(r.out.find("0 0 0 -3/1\n"), std::string::npos);
  EXPECT_NE(r.out.find("0 1 2 1/6\n"), std::string::npos);
  EXPECT_NE(r.out.find("1 1 1 1/1\n"), std::string::npos);
}

TEST_F(CliTest, TensorizeConstant) {
  const auto file = write("c.json", R"({"nvars": 2, "objective": ["5 : 0 0"]})");
  const auto r = run({"tensorize", file});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "symtensor 1 3\n0 5/1\n");
}

TEST_F(CliTest, ParseErrorsExitTwo) {
  const auto r = run({"tensorize", data("malformed.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 4"), std::string::npos);
  EXPECT_EQ(run({"tensorize", path("missing.json")}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"verify", data("cubic.json"), "--depth", "x"}).code, 2);
}

TEST_F(CliTest, ReformulateShapes) {
  const auto h = run({"reformulate", data("simplex_bilinear.json"), "--alpha", "1,1"});
  ASSERT_EQ(h.code, 0) << h.err;
  EXPECT_EQ(count_lines_starting(h.out, "eq "), 1u);
  EXPECT_EQ(count_lines_starting(h.out, "map "), 1u);

  const auto i = run({"reformulate", data("interval_quadratic.json"), "--alpha", "1"});
  ASSERT_EQ(i.code, 0) << i.err;
  EXPECT_EQ(count_lines_starting(i.out, "eq "), 2u);
  EXPECT_EQ(count_lines_starting(i.out, "map "), 2u);

  const auto t = run({"reformulate", data("interval_quadratic.json"), "--alpha", "1", "--t", "3"});
  ASSERT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("map 3\nmatrix 3 3\n1/1 -1/1 -1/1\n1/1 -1/1 -1/1\n1/1 -1/1 -1/1\nend\n"), std::string::npos);
}

TEST_F(CliTest, ReformulatePreconditions) {
  EXPECT_EQ(run({"reformulate", data("simplex_bilinear.json"), "--alpha", "2,2"}).code, 3);
  EXPECT_EQ(run({"reformulate", data("finite_example.json")}).code, 3);
  EXPECT_EQ(run({"reformulate", data("interval_quadratic.json"), "--kind", "homogeneous"}).code, 3);
}

TEST_F(CliTest, DualOfExports) {
  const auto prog = path("p.txt");
  ASSERT_EQ(run({"reformulate", data("simplex_bilinear.json"), "--alpha", "1,1", "--out", prog}).code, 0);
  const auto d = run({"dual", prog});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(count_lines_starting(d.out, "slot "), 1u);
  EXPECT_EQ(count_lines_starting(d.out, "scalar lambda"), 1u);

  const auto prog2 = path("q.txt");
  ASSERT_EQ(run({"reformulate", data("interval_quadratic.json"), "--alpha", "1", "--out", prog2}).code, 0);
  const auto dual2 = path("d.txt");
  ASSERT_EQ(run({"dual", prog2, "--out", dual2}).code, 0);
  std::ifstream in(dual2);
  const std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(count_lines_starting(text, "slot "), 2u);
  EXPECT_EQ(count_lines_starting(text, "scalar mu"), 1u);
  EXPECT_EQ(run({"dual", dual2}).code, 2);
}

TEST_F(CliTest, VerifyFiniteExample) {
  const auto r = run({"verify", data("finite_example.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["brute_force"]["value"], "-2/1");
  EXPECT_EQ(j["lifted"]["value"], "-2/1");
  EXPECT_EQ(j["gap"], 0.0);
  EXPECT_TRUE(j["passed"].get<bool>());
}

TEST_F(CliTest, VerifyBilinearBound) {
  const auto r = run({"verify", data("simplex_bilinear.json"), "--alpha", "1,1", "--depth", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  const double bound = j["dual"]["bound"];
  EXPECT_GE(bound, -0.52);
  EXPECT_LE(bound, -0.5);
  EXPECT_GE(j["gap"].get<double>(), 0.0);
  EXPECT_LE(j["gap"].get<double>(), 0.02);
  EXPECT_NE(r.err.find("timing brute-force"), std::string::npos);
}

TEST_F(CliTest, VerifyExitCodeMatchesChecks) {
  for (const char* file : {"finite_example.json", "simplex_bilinear.json", "interval_quadratic.json"}) {
    const auto r = run({"verify", data(file), "--samples", "16"});
    const auto j = json::parse(r.out);
    bool all = true;
    for (const auto& c : j["checks"]) all = all && c["passed"].get<bool>();
    EXPECT_EQ(all, j["passed"].get<bool>());
    EXPECT_EQ(r.code == 0, all) << file;
  }
}

TEST_F(CliTest, VerifyFailingCheckExitsOne) {
  // Too steep for forty doublings of lambda, so the strict-feasibility probe gives up.
  const auto file = write("steep.json", R"({"nvars": 2, "objective": ["-1000000000000000 : 1 1"],
    "constraints": {"B": [[1, 1]], "b": [1]}, "kind": "homogeneous"})");
  const auto r = run({"verify", file, "--alpha", "1,1", "--samples", "8"});
  EXPECT_EQ(r.code, 1) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_FALSE(j["passed"].get<bool>());
  for (const auto& c : j["checks"]) {
    if (c["name"] == "strict_feasibility") EXPECT_FALSE(c["passed"].get<bool>());
  }
}

TEST_F(CliTest, VerifyUnboundedExitsFour) {
  const auto file = write("down.json", R"({"nvars": 1, "objective": ["-1 : 2", "1 : 1"], "kind": "inhomogeneous"})");
  EXPECT_EQ(run({"verify", file, "--box", "0:2"}).code, 4);
}

TEST_F(CliTest, VerifyInfeasible) {
  const auto r = run({"verify", data("infeasible.json")});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("infeasible"), std::string::npos);
}

TEST_F(CliTest, ReportsAreByteDeterministic) {
  const auto a = run({"verify", data("simplex_bilinear.json"), "--alpha", "1,1"});
  const auto b = run({"verify", data("simplex_bilinear.json"), "--alpha", "1,1"});
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, SolveFinite) {
  const auto r = run({"solve-finite", data("finite_example.json")});
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["value"], "-2/1");
  EXPECT_EQ(j["argmins"], json::parse(R"([["0/1","1/1"],["1/1","1/1"]])"));
  EXPECT_EQ(j["optimal_generators"], json::parse(R"([["1/1","0/1","1/1"],["1/1","1/1","1/1"]])"));
  EXPECT_EQ(run({"solve-finite", data("simplex_bilinear.json")}).code, 3);
}

TEST_F(CliTest, CopositiveCheck) {
  const auto id = write("id.txt", "symtensor 2 2\n0 0 1\n1 1 1\n");
  const auto ok = run({"copositive-check", id});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(json::parse(ok.out)["status"], "copositive");

  const auto bad = write("bad.txt", "symtensor 2 2\n0 0 1\n0 1 -2\n1 1 1\n");
  const auto r = run({"copositive-check", bad, "--depth", "2", "--tol", "1e-9"});
  EXPECT_EQ(r.code, 1);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["status"], "not-copositive");
  EXPECT_EQ(j["witness"], json::parse(R"(["1/2","1/2"])"));
  EXPECT_EQ(j["depth"], 2);

  EXPECT_EQ(run({"copositive-check", write("broken.txt", "symtensor 2 2\n0 9 1\n")}).code, 2);
  EXPECT_EQ(run({"copositive-check", write("big.txt", "symtensor 1 40\n0 1\n")}).code, 5);
}
