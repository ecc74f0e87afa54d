#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dedonder/commands.hpp"

namespace fs = std::filesystem;
using namespace dedonder;

namespace {

bool write_file(const fs::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  f << content;
  return static_cast<bool>(f);
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging(std::getenv("DEDONDER_LOG"));

  CLI::App app{"Higher-order variational calculus on jet bundles: boundary forms, De Donder forms, conservation laws"};
  std::string command, file;
  CommandOptions opts;
  std::string out_dir;
  int grid_n = 0;
  double t1 = 0.0;
  app.add_option("command", command, "euler-lagrange | boundary-form | dedonder-form | verify | noether | evolve | residual")
      ->required()
      ->check(CLI::IsMember(command_names()));
  app.add_option("problem", file, "problem description file")->required();
  app.add_option("--out", out_dir, "directory for result files");
  app.add_flag("--json", opts.json, "structured JSON output");
  auto* gn = app.add_option("--grid-n", grid_n, "spatial grid points for evolve")->check(CLI::Range(8, 1 << 20));
  auto* tt = app.add_option("--t1", t1, "final time for evolve");
  app.add_option("--seed", opts.seed, "seed for random initial data");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  }
  if (*gn) opts.grid_n = grid_n;
  if (*tt) opts.t1 = t1;
  if (!out_dir.empty()) opts.out_dir = out_dir;

  std::ifstream in(file, std::ios::binary);
  if (!in) {
    std::cerr << file << ": error: cannot open file\n";
    return kExitInputError;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  ProblemSpec spec;
  try {
    spec = parse_problem(buf.str());
  } catch (const ParseError& e) {
    std::cerr << file << ':' << e.what() << '\n';
    return kExitInputError;
  }

  CommandResult res;
  try {
    res = run_command(spec, command, opts);
  } catch (const std::exception& e) {
    std::cerr << file << ": error: " << e.what() << '\n';
    return kExitInputError;
  }

  const std::string body = opts.json ? res.json.dump(2) + "\n" : res.text;
  if (opts.out_dir) {
    fs::path dir(*opts.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    bool ok = write_file(dir / (command + (opts.json ? ".json" : ".txt")), body);
    if (!res.csv.empty()) ok = write_file(dir / "energy.csv", res.csv) && ok;
    if (!ok) {
      std::cerr << *opts.out_dir << ": error: cannot write results\n";
      return kExitInputError;
    }
  }
  std::cout << body;
  return res.exit_code;
}
