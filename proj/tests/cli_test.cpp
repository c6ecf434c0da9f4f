#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kqm/cli.hpp"

namespace kqm {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

Outcome run_binary(const std::string& args) {
  const std::string cmd = std::string(KQM_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, "", "popen failed"};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, ""};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("kqm_cli_test_" + name);
  std::ofstream(p) << text;
  return p.string();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

const std::string kQubit = "dim Q = 2;\ngen f : Q -> Q;\nmatrix f = [[0, 1], [1, 0]];\n";

TEST(Cli, DemoTeleportPrintsFourEqualBranches) {
  const Outcome r = run({"demo", "teleport"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(count_lines(r.out), 4u) << r.out;
  EXPECT_NE(r.out.find("branch 11: equal"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("weight=0.25"), std::string::npos) << r.out;
}

TEST(Cli, DemoOtherProtocols) {
  for (const std::string which : {"gate-teleport", "swap"}) {
    const Outcome r = run({"demo", which});
    EXPECT_EQ(r.code, kExitOk) << which << r.err;
    EXPECT_EQ(count_lines(r.out), 4u) << r.out;
  }
  EXPECT_EQ(run({"demo", "nope"}).code, kExitError);
}

TEST(Cli, CheckEqZigzag) {
  const std::string file = write_temp("zig.qdc", kQubit);
  const Outcome r = run({"check-eq", file, "--lhs", "(id[Q] * cap[Q]) ; (cup[Q*] * id[Q])", "--rhs", "id[Q]"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "equal\n");
}

TEST(Cli, CheckEqUnequalAndScalar) {
  const std::string file = write_temp("neq.qdc", kQubit);
  const Outcome r = run({"check-eq", file, "--lhs", "f", "--rhs", "id[Q]"});
  EXPECT_EQ(r.code, kExitUnequal);
  EXPECT_EQ(r.out.rfind("unequal max_abs_diff=", 0), 0u) << r.out;
  const Outcome s = run({"check-eq", file, "--lhs", "scalar[2+0i] * f", "--rhs", "f", "--mode", "scalar"});
  EXPECT_EQ(s.code, kExitOk) << s.err;
  EXPECT_EQ(s.out, "equal witness=2,0\n");
}

TEST(Cli, EvalUndeclaredGeneratorReportsSpan) {
  const std::string file = write_temp("undecl.qdc", kQubit);
  const Outcome r = run({"eval", file, "--expr", "f ; g"});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find(":1:5"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("undeclared"), std::string::npos) << r.err;
}

TEST(Cli, ParseErrorInFileReportsLine) {
  const std::string file = write_temp("broken.qdc", "dim Q = 2;\nlet x = id[Q] ; ;\n");
  const Outcome r = run({"parse", file});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("broken.qdc:2:"), std::string::npos) << r.err;
}

TEST(Cli, EvalJson) {
  const std::string file = write_temp("json.qdc", kQubit);
  const Outcome r = run({"eval", file, "--expr", "f", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rows"], 2);
  EXPECT_EQ(j["cols"], 2);
  EXPECT_EQ(j["entries"][0][1][0].get<double>(), 1.0);
  EXPECT_EQ(j["entries"][0][0][0].get<double>(), 0.0);
}

TEST(Cli, NormalizeWithTrace) {
  const std::string file = write_temp("norm.qdc", kQubit);
  const Outcome r = run({"normalize", file, "--expr", "(id[Q] * cap[Q]) ; (cup[Q*] * id[Q])", "--trace"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("yank"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("id[Q]"), std::string::npos) << r.out;
}

TEST(Cli, DoubleAndPhaseWitness) {
  const std::string file = write_temp("cpm.qdc", kQubit);
  const Outcome d = run({"double", file, "--expr", "f"});
  EXPECT_EQ(d.code, kExitOk) << d.err;
  EXPECT_NE(d.out.find("completely-positive: true"), std::string::npos) << d.out;
  const Outcome w = run({"phase-witness", file, "--lhs", "f", "--rhs", "scalar[0+1i] * f"});
  EXPECT_EQ(w.code, kExitOk) << w.err;
  EXPECT_EQ(w.out.rfind("witness s=", 0), 0u) << w.out;
  const Outcome n = run({"phase-witness", file, "--lhs", "f", "--rhs", "scalar[2+0i] * f"});
  EXPECT_EQ(n.code, kExitUnequal);
}

TEST(Cli, MissingFileAndBadUsage) {
  EXPECT_EQ(run({"parse", "/nonexistent/x.qdc"}).code, kExitError);
  EXPECT_EQ(run({"frobnicate"}).code, kExitError);
  EXPECT_EQ(run({}).code, kExitError);
}

TEST(Cli, VerifyEverySample) {
  std::size_t seen = 0;
  for (const auto& entry : fs::directory_iterator(KQM_SAMPLES_DIR)) {
    if (entry.path().extension() != ".qdc") continue;
    ++seen;
    const Outcome r = run_binary("verify " + entry.path().string());
    EXPECT_EQ(r.code, kExitOk) << entry.path() << "\n" << r.out;
    EXPECT_NE(r.out.find("all "), std::string::npos) << r.out;
  }
  EXPECT_GE(seen, 5u);
}

TEST(Cli, VerifyReportsFailure) {
  const std::string file = write_temp("fail.qdc", kQubit + "check f == id[Q] exact;\n");
  const Outcome r = run({"verify", file});
  EXPECT_EQ(r.code, kExitUnequal);
  EXPECT_NE(r.out.find("failed: 1"), std::string::npos) << r.out;
}

TEST(Cli, BinaryOutputIsDeterministic) {
  const std::string sample = std::string(KQM_SAMPLES_DIR) + "/teleport.qdc";
  for (const std::string args : {std::string("demo swap"), "verify " + sample, "normalize " + sample + " --expr branch11 --trace"}) {
    const Outcome a = run_binary(args);
    const Outcome b = run_binary(args);
    EXPECT_EQ(a.code, kExitOk) << args << "\n" << a.out;
    EXPECT_EQ(a.out, b.out) << args;
  }
}

}  // namespace
}  // namespace kqm
