#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Output {
  int code;
  std::string out;
};

Output run(const std::string& args) {
  const std::string cmd = std::string(PLP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch() {
  const fs::path d = fs::temp_directory_path() / ("plp_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST(Cli, VerifyFourPointExample) {
  const Output o = run("verify --case 4pt --a-grid 0.3,2,9.6,21,60");
  ASSERT_EQ(o.code, 0);
  const json j = json::parse(o.out);
  EXPECT_TRUE(j["result"]["passed"].get<bool>());
  EXPECT_EQ(j["result"]["rows"].size(), 5u);
  EXPECT_EQ(j["manifest"]["command"], "verify case");
  EXPECT_TRUE(j["manifest"]["timestamp"].is_null());
}

TEST(Cli, MomentNodes) {
  const Output o = run("moments nodes --family 6m2 --m 1");
  ASSERT_EQ(o.code, 0);
  const json j = json::parse(o.out);
  const json& nodes = j["result"]["nodes"];
  EXPECT_EQ(nodes.size(), 4u);
  bool found = false;
  for (const auto& n : nodes) found = found || (n[0] == -1 && n[1] == -1);
  EXPECT_TRUE(found);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("verify --case 4pt --no-such-flag").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("verify --case 5pt").code, 2);
  EXPECT_EQ(run("verify certificate --id abounds --a-samples 5").code, 2);
  EXPECT_EQ(run("energy eval --a 2").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, ThetaEval) {
  const json p = json::parse(run("theta eval --c 0.4 --x 0.3").out);
  const json d = json::parse(run("theta eval --c 0.4 --x 0.3 --dual").out);
  EXPECT_NEAR(p["result"]["value"].get<double>(), d["result"]["value"].get<double>(),
              p["result"]["tail"].get<double>() + d["result"]["tail"].get<double>() + 1e-13);
}

TEST(Cli, EnergyEvalFromConfigFile) {
  const fs::path dir = scratch();
  {
    std::ofstream f(dir / "two.json");
    f << R"({"points": [[0, 0], [0.5, 0.8660254037844386]]})";
  }
  const Output o = run("energy eval --lattice L --a 3 --config " + (dir / "two.json").string());
  ASSERT_EQ(o.code, 0);
  const json j = json::parse(o.out);
  EXPECT_TRUE(j["result"]["lp_bound"].is_null());
  EXPECT_EQ(j["manifest"]["input_hashes"].size(), 1u);
  const json s = json::parse(run("energy eval --lattice L --a 3 --star 2").out);
  EXPECT_NEAR(j["result"]["energy"].get<double>(), s["result"]["energy"].get<double>(), 1e-12);
}

TEST(Cli, ReportEmptyIsHeaderOnly) {
  const Output o = run("report");
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "case,a,check,passed,min_margin,points_evaluated\n");
}

TEST(Cli, ReportConcatenatesSorted) {
  const fs::path dir = scratch();
  ASSERT_EQ(run("verify --case 6pt --a-grid 30,3 --out " + (dir / "b.json").string()).code, 0);
  ASSERT_EQ(run("verify --case 4pt --a-grid 2 --out " + (dir / "a.json").string()).code, 0);
  std::size_t checks = 0;
  for (const char* f : {"a.json", "b.json"}) {
    const json doc = json::parse(slurp(dir / f));
    for (const auto& row : doc["result"]["rows"]) checks += row["report"]["children"].size();
  }
  const Output o = run("report " + (dir / "b.json").string() + " " + (dir / "a.json").string());
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(count_lines(o.out), static_cast<int>(checks) + 1);
  // First data row is the 4pt case, and 6pt rows follow in increasing a.
  std::istringstream ss(o.out);
  std::string line, prev_key;
  std::getline(ss, line);
  std::getline(ss, line);
  EXPECT_EQ(line.rfind("4pt,", 0), 0u);
  double last_a = 0;
  while (std::getline(ss, line)) {
    if (line.rfind("6pt,", 0) != 0) continue;
    const double a = std::stod(line.substr(4));
    EXPECT_GE(a, last_a);
    last_a = a;
  }
}

TEST(Cli, ReportRejectsBadSchema) {
  const fs::path dir = scratch();
  {
    std::ofstream f(dir / "bad.json");
    f << R"({"result": {"kind": "optimize"}})";
  }
  EXPECT_EQ(run("report " + (dir / "bad.json").string()).code, 2);
}

TEST(Cli, ByteIdenticalWithoutStamp) {
  const std::string args = "optimize --lattice L --n 6 --a 10 --restarts 4 --seed 7";
  const Output x = run(args), y = run(args);
  ASSERT_EQ(x.code, 0);
  EXPECT_EQ(x.out, y.out);
  const json s = json::parse(run(args + " --stamp").out);
  EXPECT_TRUE(s["manifest"]["timestamp"].is_string());
}

TEST(Cli, ParamsFileSuppliesFlags) {
  const fs::path dir = scratch();
  {
    std::ofstream f(dir / "p.json");
    f << R"({"lattice": "L", "n": 6, "a": 10, "restarts": 3, "seed": 7})";
  }
  const Output o = run("optimize --params " + (dir / "p.json").string());
  ASSERT_EQ(o.code, 0);
  const json j = json::parse(o.out);
  EXPECT_EQ(j["result"]["n"], 6);
  EXPECT_EQ(j["result"]["restarts"], 3);
  // The command line wins over the file.
  const json k = json::parse(run("optimize --restarts 2 --params " + (dir / "p.json").string()).out);
  EXPECT_EQ(k["result"]["restarts"], 2);
}

TEST(Cli, OptimizeRespectsThreadsEnv) {
  const std::string args = "optimize --lattice A2 --n 4 --a 5 --restarts 6 --seed 1";
  const Output a = run(args);
  const Output b = run("--threads 3 " + args);  // rejected: --threads belongs to optimize
  EXPECT_EQ(b.code, 2);
  const std::string env = "PLP_THREADS=3 " + std::string(PLP_CLI_PATH) + " " + args;
  FILE* p = popen(env.c_str(), "r");
  ASSERT_NE(p, nullptr);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  EXPECT_EQ(pclose(p), 0);
  EXPECT_EQ(out, a.out);
}

TEST(Cli, CertificateOutputAndExitCode) {
  const Output o = run("verify certificate --id phi-ABC --a-samples 5");
  ASSERT_EQ(o.code, 0);
  const json j = json::parse(o.out);
  EXPECT_EQ(j["result"]["passed"].get<bool>(), o.code == 0);
  EXPECT_EQ(j["manifest"]["parameters"]["a_samples"][0], 5.0);
}
