#pragma once

//
// ... Standard header files
//
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace shqr {

  /// Constants that depend only on the eigenvector condition bound B.
  struct ShiftConstants {
    unsigned k = 0;      ///< shift degree, a power of two
    double alpha = 0.0;  ///< promising-ness factor (1.01 B)^(4 log2 k / k)
    double theta = 0.0;  ///< optimality factor (1.01 / 0.998^(1/k)) (2 B^4)^(1/2k)
    double gamma = 0.2;  ///< required potential decrease
  };

  /// Smallest power of two k >= 2 with B^((8 log2 k + 3)/(k-1)) (2 B^4)^(2/(k-1)) <= 3.
  ShiftConstants derive_globals(double B);

  double alpha_for(double B, unsigned k);
  double theta_for(double B, unsigned k);

  /// Defining data of a run: B >= 2 kappa_V(H), Gamma <= gap(H)/2, Sigma >= 2||H||.
  struct GlobalData {
    double B = 1.0;
    double Gamma = 0.0;
    double Sigma = 0.0;
    std::size_t n0 = 0;
    unsigned k = 0;
    double alpha = 0.0;
    double theta = 0.0;
    double gamma = 0.2;
  };

  /// Fills k, alpha, theta, gamma from B and validates ranges.
  GlobalData make_global_data(double B, double Gamma, double Sigma, std::size_t n0);

  struct RunParams {
    double delta = 0.0;
    double phi = 0.0;
    double omega = 0.0;          ///< (1/4n) min{delta, Gamma / (8 n^2 B^2)}
    double phi_working = 0.0;    ///< per-call failure tolerance
    std::size_t n_dec = 0;       ///< iteration budget of one while loop
    std::uint64_t seed = 0;
  };

  RunParams derive_run_params(std::size_t n, double delta, double phi, const GlobalData& g, std::uint64_t seed = 0);

  /// Unrounded log(Sigma/omega) / log(1 / (1.002 (1 - gamma))).
  double n_dec_exact(double Sigma, double omega, double gamma);

  struct PrecisionTerm {
    std::string name;
    double log2_u;
  };

  /// Unit roundoff requirement, unpacked term by term.
  struct PrecisionBudget {
    int bits = 0;              ///< ceil(log2(1/u)) for the smallest term
    double log2_u = 0.0;       ///< log2 of the binding term
    std::vector<PrecisionTerm> terms;
  };

  PrecisionBudget required_precision(std::size_t n, unsigned k, double Sigma, double B, double Gamma, double delta,
                                     double phi);

} // namespace shqr
