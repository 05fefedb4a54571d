//
// ... Standard header files
//
#include <cstdio>
#include <iostream>

//
// ... Third party header files
//
#include <CLI11.hpp>

//
// ... shqr header files
//
#include "shqr/app/app.hpp"

namespace {

  void add_common(CLI::App* cmd, shqr::app::RunConfig& cfg) {
    cmd->add_option("--delta", cfg.delta, "relative backward error target")->capture_default_str();
    cmd->add_option("--phi", cfg.phi, "failure probability")->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "random seed (drawn from the system when absent)");
    cmd->add_option("--bits", cfg.bits, "working precision in bits; above 53 selects double-double")
      ->capture_default_str();
    cmd->add_option("--B", cfg.B, "eigenvector condition bound override");
    cmd->add_option("--gamma-gap", cfg.Gamma, "eigenvalue gap bound override");
    cmd->add_option("--sigma", cfg.Sigma, "norm bound override");
    cmd->add_flag("--no-preprocess", [&cfg](std::int64_t) { cfg.preprocess = false; },
                  "skip the Gaussian perturbation");
    cmd->add_option("--threads", cfg.threads, "worker threads for deflated blocks")->capture_default_str();
  }

} // namespace

int main(int argc, char** argv) {
  shqr::app::RunConfig cfg;
  CLI::App app{"shqr: randomized shifted QR eigensolver for complex matrices"};
  app.require_subcommand(1);

  CLI::App* solve = app.add_subcommand("solve", "compute all eigenvalues of a Matrix Market matrix");
  solve->add_option("input", cfg.input, "Matrix Market file")->required();
  add_common(solve, cfg);
  solve->add_option("--out-json", cfg.out_json, "eigenvalue JSON output (stdout when absent)");
  solve->add_option("--out-trace", cfg.out_trace, "potential trace CSV output");

  CLI::App* info = app.add_subcommand("info", "print derived parameters without solving");
  info->add_option("input", cfg.input, "Matrix Market file");
  info->add_option("--n", cfg.n, "dimension, when no input file is given");
  add_common(info, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*solve) {
      const bool to_stdout = cfg.out_json.empty();
      const shqr::app::RunReport rep = shqr::app::run(cfg);
      if (to_stdout) std::cout << shqr::app::to_json(rep, cfg).dump(2) << '\n';
      for (const auto& w : rep.result.warnings) std::cerr << "warning: " << w << '\n';
      std::fprintf(stderr, "seed %llu, %zu eigenvalues, %.3f s\n", static_cast<unsigned long long>(rep.seed),
                   rep.result.eigenvalues.size(), rep.wall_seconds);
    } else {
      for (const auto& line : shqr::app::info(cfg)) std::cout << line << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return shqr::app::exit_code_for(e);
  }
  return 0;
}
