#pragma once

//
// ... Standard header files
//
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

//
// ... Third party header files
//
#include <json.hpp>

//
// ... shqr header files
//
#include "shqr/driver.hpp"

namespace shqr::app {

  struct RunConfig {
    std::string input;
    double delta = 1e-6;
    double phi = 0.01;
    std::optional<std::uint64_t> seed;
    int bits = 53;
    std::optional<double> B;
    std::optional<double> Gamma;
    std::optional<double> Sigma;
    bool preprocess = true;
    std::size_t threads = 1;
    std::string out_json;
    std::string out_trace;
    std::optional<std::size_t> n;  ///< info only, when no input is given
  };

  /// Throws DomainError when a field is out of range.
  void validate(const RunConfig& cfg);

  struct RunReport {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;  ///< not part of the JSON output
    SolveReport result;
  };

  /// Reads the input, solves, and writes the JSON and CSV outputs named in cfg.
  RunReport run(const RunConfig& cfg);

  /// Solves an in-memory matrix with the same configuration rules as run().
  RunReport run_matrix(const DenseMatrix<double>& a, const RunConfig& cfg);

  nlohmann::json to_json(const RunReport& rep, const RunConfig& cfg);

  /// Columns: block_id, iteration, psi_k, branch, shift_re, shift_im.
  std::string trace_csv(const RunReport& rep);

  /// Eigenvalues stored by to_json, in output order.
  std::vector<Cplx> eigenvalues_from_json(const nlohmann::json& j);

  /// Parameter report lines (k, alpha, theta, gamma, omega, phi_working, N_dec, bits).
  std::vector<std::string> info(const RunConfig& cfg);

  /// 0 for success, 2 for invalid input or configuration, 3 for probabilistic failure, 1 otherwise.
  int exit_code_for(const std::exception& e);

} // namespace shqr::app
