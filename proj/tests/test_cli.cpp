#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

// FPH_CLI_PATH is injected by the build and points at the fph binary.
#ifndef FPH_CLI_PATH
#error "FPH_CLI_PATH must be defined"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

// run the CLI through the shell, capturing stdout; env: optional VAR=VALUE
// prefix so FPH_SEED tests do not mutate this process's environment
RunResult run(const std::string& args, const std::string& env = "") {
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += std::string("\"") + FPH_CLI_PATH + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), out};
}

nlohmann::json run_json(const std::string& args) {
  const auto r = run(args);
  REQUIRE(r.exit_code == 0);
  return nlohmann::json::parse(r.out);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("solve: text output is stable to the byte") {
  const auto r = run("solve --n 3 --lambda 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "command solve\n"
        "n 3\n"
        "lambda 4\n"
        "lambda_min 2.81369860687\n"
        "H 0.25\n"
        "M 0.25\n"
        "alpha 1\n"
        "c 0\n"
        "equilibrium 0.25 0.5 0.75\n");
}

TEST_CASE("solve: non-existence is reported without failing") {
  const auto r = run("solve --n 4 --lambda 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("equilibrium NON-EXISTENT") != std::string::npos);
  CHECK(r.out.find("lambda_min 3.40182812985") != std::string::npos);

  const auto low = run("solve --n 2 --lambda 1");
  CHECK(low.exit_code == 0);
  CHECK(low.out ==
        "command solve\n"
        "n 2\n"
        "lambda 1\n"
        "equilibrium 0.5 0.5\n");
}

TEST_CASE("solve: JSON shape") {
  const auto j = run_json("solve --n 3 --lambda 4 --json");
  CHECK(j["command"] == "solve");
  CHECK(j["exists"] == true);
  CHECK(j["pair"]["alpha"].get<double>() == doctest::Approx(1.0));
  CHECK(j["profile"].size() == 3);
  CHECK(j["parameters"]["n"] == 3);

  const auto none = run_json("solve --n 4 --lambda 3 --json");
  CHECK(none["exists"] == false);
  CHECK(none["profile"].is_null());
  CHECK_FALSE(none["pair"].is_null());  // the pair is a diagnostic, not a profile

  const auto low = run_json("solve --n 2 --lambda 1 --json");
  CHECK(low["exists"] == true);
  CHECK(low["pair"].is_null());
  CHECK(low["lambda_min"].is_null());
}

TEST_CASE("threshold: CSV table over an n range") {
  const auto r = run("threshold --n 3..10");
  CHECK(r.exit_code == 0);
  std::istringstream in(r.out);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "n,lambda_min_exact,lambda_min_linear_approx,alpha0,beta0");
  REQUIRE(std::getline(in, line));
  CHECK(line == "3,2.81369860687,2.8137,0.588129522982,0.119007257412");
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 8);

  CHECK(run("threshold --n 2").exit_code == 2);

  const auto j = run_json("threshold --n 3..4 --json");
  REQUIRE(j["rows"].size() == 2);
  CHECK(j["rows"][1]["n"] == 4);
  CHECK(j["rows"][1]["lambda_min_exact"].get<double>() ==
        doctest::Approx(3.40182812985).epsilon(1e-10));
}

TEST_CASE("verify: exit code reflects the verdict") {
  const auto good = run("verify --lambda 4 0.25 0.5 0.75");
  CHECK(good.exit_code == 0);
  CHECK(good.out.find("is_equilibrium true") != std::string::npos);

  const auto bad = run("verify --lambda 4 0.25 0.5 0.74 --grid-oracle");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("analytic_equilibrium false") != std::string::npos);
  CHECK(bad.out.find("grid_equilibrium false") != std::string::npos);
  CHECK(bad.out.find("grid_best_point") != std::string::npos);

  // --n must agree with the number of coordinates
  CHECK(run("verify --lambda 4 --n 4 0.25 0.5 0.75").exit_code == 2);

  const auto j = run_json("verify --lambda 4 0.25 0.5 0.75 --json");
  CHECK(j["is_equilibrium"] == true);
  CHECK(j["grid_equilibrium"].is_null());  // no grid scan requested
  CHECK(j["players"][1]["gain"].get<double>() == 0.0);
}

TEST_CASE("simulate: deterministic bytes and seed precedence") {
  const std::string cmd = "simulate --lambda 4 --samples 2000 0.25 0.5 0.75";
  const auto a = run(cmd);
  const auto b = run(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("seed 42\n") != std::string::npos);
  CHECK(a.out.find("consistent true") != std::string::npos);

  // env overrides the default, flag overrides the env
  CHECK(run(cmd, "FPH_SEED=7").out.find("seed 7\n") != std::string::npos);
  CHECK(run(cmd + " --seed 9", "FPH_SEED=7").out.find("seed 9\n") != std::string::npos);
  CHECK(run(cmd, "FPH_SEED=7").out != a.out);
}

TEST_CASE("simulate: single sample yields no z-score") {
  const auto r = run("simulate --lambda 1 --samples 1 0.5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find(" n/a n/a\n") != std::string::npos);

  const auto j = run_json("simulate --lambda 1 --samples 1 0.5 --json");
  CHECK(j["players"][0]["z"].is_null());
  CHECK(j["players"][0]["mc_stderr"].is_null());
}

TEST_CASE("efficiency: CSV metrics") {
  const auto cfree = run("efficiency --n 3 --lambda 4 --metric cfree");
  CHECK(cfree.exit_code == 0);
  CHECK(cfree.out ==
        "lambda,profile,metric,value,std_error\n"
        "4,canonical,cfree,0.09375,\n");

  const auto pos = run("efficiency --n 5 --metric pos --lambda-points lmin,lmax");
  CHECK(pos.exit_code == 0);
  std::istringstream in(pos.out);
  std::string header, first, second;
  REQUIRE(std::getline(in, header));
  REQUIRE(std::getline(in, first));
  REQUIRE(std::getline(in, second));
  CHECK(first.find("pos,1.27665025413,") != std::string::npos);
  CHECK(second.find("pos,1.0375069455,") != std::string::npos);

  const auto ref = run("efficiency --n 3 --lambda 4 --metric pos --reference-optimum");
  CHECK(ref.out.find(",pos,0.5625,") != std::string::npos);

  // below the pair threshold the canonical cell is left empty (RFC 4180 null)
  const auto dc = run("efficiency --n 4 --lambda 1.2 --metric dcfrac --profiles canonical,faultfree");
  CHECK(dc.exit_code == 0);
  CHECK(dc.out.find("1.2,canonical,dcfrac,,\n") != std::string::npos);
  CHECK(dc.out.find("1.2,faultfree,dcfrac,0.0904555793399,") != std::string::npos);

  // Monte Carlo fills the std_error column
  const auto mc = run("efficiency --n 4 --lambda 2 --metric dcfrac --mc --samples 400");
  std::istringstream mcs(mc.out);
  std::string hdr, row;
  REQUIRE(std::getline(mcs, hdr));
  REQUIRE(std::getline(mcs, row));
  CHECK(row.rfind(",") < row.size() - 1);  // non-empty last column
}

TEST_CASE("efficiency: usage errors") {
  CHECK(run("efficiency --n 2 --lambda lmin --metric cfree").exit_code == 2);
  CHECK(run("efficiency --n 4 --lambda 2 --lambda-points 3 --metric cfree").exit_code == 2);
  CHECK(run("efficiency --n 4 --lambda 2 --metric nope").exit_code == 2);
  CHECK(run("efficiency --n 3 --lambda 2 --metric pos --profiles canonical,faultfree").exit_code == 2);
  CHECK(run("efficiency --n 3 --lambda 2 --metric dcfrac --profiles faultfree").exit_code == 2);
}

TEST_CASE("--out writes the payload plus a manifest sidecar") {
  char tmpl[] = "/tmp/fph_cli_XXXXXX";
  REQUIRE(mkdtemp(tmpl) != nullptr);
  const std::string dir = tmpl;
  const std::string path = dir + "/solve.txt";

  const auto direct = run("solve --n 3 --lambda 4");
  const auto filed = run("solve --n 3 --lambda 4 --out " + path);
  CHECK(filed.exit_code == 0);
  CHECK(slurp(path) == direct.out);  // the payload itself stays byte-identical

  const auto manifest = nlohmann::json::parse(slurp(path + ".manifest.json"));
  CHECK(manifest["command"] == "solve");
  CHECK(manifest["version"] == "0.1.0");
  CHECK(manifest["parameters"]["n"] == 3);
  CHECK(manifest.contains("timestamp"));

  std::remove((path + ".manifest.json").c_str());
  std::remove(path.c_str());
  rmdir(dir.c_str());
}

TEST_CASE("top level: version and help") {
  const auto v = run("--version");
  CHECK(v.exit_code == 0);
  CHECK(v.out == "0.1.0\n");
  CHECK(run("--help").exit_code == 0);
  CHECK(run("").exit_code == 2);          // a subcommand is required
  CHECK(run("frobnicate").exit_code == 2);
}
