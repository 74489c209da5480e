#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Kernels, cokernels and Fredholm checks for T(a) +- H_alpha(b)"};
  std::string spec_path = "-";
  std::string out_path = "-";
  tphk::cli::RunOptions opt;
  int oracle_size = 0;
  double tol = 0.0;
  app.add_option("--spec", spec_path, "problem spec JSON file ('-' for stdin)");
  app.add_option("--out", out_path, "report file ('-' for stdout)");
  auto* size_opt = app.add_option("--oracle-size", oracle_size, "finite-section size N")->check(CLI::Range(8, 1 << 14));
  app.add_flag("--no-oracle", opt.no_oracle, "skip the finite-section cross-check");
  auto* tol_opt = app.add_option("--tol", tol, "relative singular-value cutoff")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);
  if (*size_opt) opt.oracle_size = oracle_size;
  if (*tol_opt) opt.tol = tol;

  std::stringstream text;
  if (spec_path == "-") {
    text << std::cin.rdbuf();
  } else {
    std::ifstream in(spec_path);
    if (!in) {
      std::cerr << "cannot open " << spec_path << "\n";
      return tphk::cli::kInputError;
    }
    text << in.rdbuf();
  }
  const auto outcome = tphk::cli::run_text(text.str(), opt);
  const auto doc = tphk::cli::dump_report(outcome.report);
  if (out_path == "-") {
    std::cout << doc;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return tphk::cli::kInputError;
    }
    out << doc;
  }
  return outcome.exit_code;
}
