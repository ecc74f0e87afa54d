#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <json.hpp>
#include <sys/wait.h>

#include "support.hpp"

namespace fs = std::filesystem;
using testing_support::problem_path;
using testing_support::read_file;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("dedonder_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run run(const std::string& args) {
  fs::path o = scratch() / "stdout.txt", e = scratch() / "stderr.txt";
  std::string cmd = std::string(DEDONDER_CLI) + " " + args + " >" + o.string() + " 2>" + e.string();
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, read_file(o.string()), read_file(e.string())};
}

std::string write_problem(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("euler-lagrange on the wave problem") {
  Run r = run("euler-lagrange " + problem_path("fourth_order_wave.dd"));
  CHECK(r.code == 0);
  CHECK(r.out.find("E[1] = 2*z[1;1 1 1 1] - 4*z[1;1 1 2 2] + 2*z[1;2 2 2 2]") != std::string::npos);
  CHECK(r.out.find("E[2] = -2*z[2;1 1 1 1] + 4*z[2;1 1 2 2] - 2*z[2;2 2 2 2]") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("verify " + problem_path("fourth_order_wave.dd")).code == 0);
  CHECK(run("noether " + problem_path("harmonic.dd")).code == 0);
  Run bad = run("verify " + problem_path("bad_skew.dd"));
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL") != std::string::npos);

  std::string broken = write_problem("broken.dd", "dims 1 1 1;\nL = y[1] $ 2;\n");
  Run e = run("verify " + broken);
  CHECK(e.code == 2);
  CHECK(e.err.find("broken.dd:2:10: error:") != std::string::npos);

  CHECK(run("verify " + (scratch() / "missing.dd").string()).code == 2);
  CHECK(run("frobnicate " + problem_path("harmonic.dd")).code == 2);
  // evolve needs m = 2 and k = 2
  CHECK(run("evolve " + problem_path("harmonic.dd")).code == 2);
}

TEST_CASE("json output") {
  Run r = run("verify --json " + problem_path("bad_skew.dd"));
  CHECK(r.code == 1);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.contains("failures"));
  CHECK(j["failures"].size() >= 1);

  Run b = run("boundary-form --json " + problem_path("fourth_order_wave.dd"));
  CHECK(b.code == 0);
  auto jb = nlohmann::json::parse(b.out);
  CHECK(jb.dump().find("p[1;1 1]") != std::string::npos);
}

TEST_CASE("evolve writes a CSV and is deterministic") {
  fs::path d1 = scratch() / "out1", d2 = scratch() / "out2";
  Run a = run("evolve --out " + d1.string() + " " + problem_path("fourth_order_wave.dd"));
  Run b = run("evolve --out " + d2.string() + " " + problem_path("fourth_order_wave.dd"));
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  std::string csv = read_file((d1 / "energy.csv").string());
  CHECK(csv.rfind("t,E_symmetric,E_skew,drift\n", 0) == 0);
  CHECK(csv == read_file((d2 / "energy.csv").string()));
  CHECK(read_file((d1 / "evolve.txt").string()) == read_file((d2 / "evolve.txt").string()));
  CHECK(a.out == b.out);

  Run s = run("evolve --seed 7 --grid-n 64 --t1 0.5 " + problem_path("fourth_order_wave.dd"));
  CHECK(s.code == 0);
  CHECK(s.out != a.out);
}

TEST_CASE("residual and dedonder-form") {
  CHECK(run("residual " + problem_path("fourth_order_wave.dd")).code == 0);
  Run d = run("dedonder-form " + problem_path("harmonic.dd"));
  CHECK(d.code == 0);
  CHECK_FALSE(d.out.empty());
}
