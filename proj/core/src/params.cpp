#include "shqr/params.hpp"

//
// ... Standard header files
//
#include <algorithm>
#include <cmath>

//
// ... shqr header files
//
#include "shqr/errors.hpp"

namespace shqr {

  namespace {

    double lg(double x) { return std::log2(x); }

    bool degree_ok(double log2_B, unsigned k) {
      const double lk = lg(static_cast<double>(k));
      const double lhs =
        (8.0 * lk + 3.0) / (k - 1.0) * log2_B + 2.0 / (k - 1.0) * (1.0 + 4.0 * log2_B);
      return lhs <= lg(3.0);
    }

  } // namespace

  double alpha_for(double B, unsigned k) {
    return std::exp2(4.0 * lg(k) / k * lg(1.01 * B));
  }

  double theta_for(double B, unsigned k) {
    const double lead = 1.01 / std::pow(0.998, 1.0 / k);
    return lead * std::exp2((1.0 + 4.0 * lg(B)) / (2.0 * k));
  }

  ShiftConstants derive_globals(double B) {
    if (!(B >= 1.0) || !std::isfinite(B)) throw DomainError("derive_globals: B must be at least 1");
    const double log2_B = lg(B);
    unsigned k = 2;
    while (!degree_ok(log2_B, k)) {
      if (k >= (1u << 30)) throw DomainError("derive_globals: B too large");
      k *= 2;
    }
    ShiftConstants c;
    c.k = k;
    c.alpha = alpha_for(B, k);
    c.theta = theta_for(B, k);
    c.gamma = 0.2;
    return c;
  }

  GlobalData make_global_data(double B, double Gamma, double Sigma, std::size_t n0) {
    if (!(Gamma > 0.0) || !std::isfinite(Gamma)) throw DomainError("Gamma must be positive");
    if (!(Sigma > 0.0) || !std::isfinite(Sigma)) throw DomainError("Sigma must be positive");
    if (n0 == 0) throw DomainError("dimension must be positive");
    ShiftConstants c = derive_globals(B);
    GlobalData g;
    g.B = B;
    g.Gamma = Gamma;
    g.Sigma = Sigma;
    g.n0 = n0;
    g.k = c.k;
    g.alpha = c.alpha;
    g.theta = c.theta;
    g.gamma = c.gamma;
    return g;
  }

  double n_dec_exact(double Sigma, double omega, double gamma) {
    return std::log(Sigma / omega) / std::log(1.0 / (1.002 * (1.0 - gamma)));
  }

  RunParams derive_run_params(std::size_t n, double delta, double phi, const GlobalData& g, std::uint64_t seed) {
    if (n == 0) throw DomainError("derive_run_params: n must be positive");
    if (!(delta > 0.0) || delta > g.Sigma) throw DomainError("derive_run_params: need 0 < delta <= Sigma");
    if (!(phi > 0.0 && phi < 1.0)) throw DomainError("derive_run_params: phi must lie in (0, 1)");
    const double nd = static_cast<double>(n);
    RunParams p;
    p.delta = delta;
    p.phi = phi;
    p.seed = seed;
    p.omega = std::min(delta, g.Gamma / (8.0 * nd * nd * g.B * g.B)) / (4.0 * nd);
    const double decay = std::log(1.0 / (1.002 * (1.0 - g.gamma)));
    p.phi_working = phi / (3.0 * nd * nd) * decay / std::log(g.Sigma / p.omega);
    p.n_dec = static_cast<std::size_t>(std::ceil(n_dec_exact(g.Sigma, p.omega, g.gamma)));
    return p;
  }

  namespace {

    double log2_nu(double n) { return lg(32.0) + 1.5 * lg(n); }

    // dist^k / (8 kappa nu ||H||^k)
    double u_iqr(double n, double k, double norm, double kappa, double dist) {
      return -lg(8.0 * kappa) - log2_nu(n) + k * (lg(dist) - lg(norm));
    }

    double u_comptau(double n, double k, double C, double norm, double kappa, double dist) {
      return -lg(6.0e3 * kappa) - log2_nu(n) + 2.0 * k * (lg(dist) - lg((2.0 + 2.0 * C) * norm));
    }

    double u_optimal(double n, double k, double C, double norm, double theta, double psi) {
      return -lg(2.0e3 * n * n) + k * (lg(psi) - lg(theta * (2.0 + 2.0 * C) * norm));
    }

    double u_potential(double k) {
      const double t = 1.0 - std::pow(0.999, 1.0 / k);
      return lg(t / (k * (4.0 + t)));
    }

    // 0.001 omega dist^k / (32 kappa ||H||^(k+1) (2+2C)^k n^(1/2) nu)
    double u_pot_apx(double n, double k, double C, double norm, double kappa, double dist, double omega) {
      return lg(0.001 * omega) + k * lg(dist) - lg(32.0 * kappa) - (k + 1.0) * lg(norm) -
             k * lg(2.0 + 2.0 * C) - 0.5 * lg(n) - log2_nu(n);
    }

  } // namespace

  PrecisionBudget required_precision(std::size_t n_in, unsigned k_in, double Sigma, double B, double Gamma,
                                     double delta, double phi) {
    if (n_in == 0 || k_in < 2) throw DomainError("required_precision: need n >= 1 and k >= 2");
    GlobalData g;
    g.B = B;
    g.Gamma = Gamma;
    g.Sigma = Sigma;
    g.n0 = n_in;
    g.k = k_in;
    g.alpha = alpha_for(B, k_in);
    g.theta = theta_for(B, k_in);
    const RunParams rp = derive_run_params(n_in, delta, phi, g);

    const double n = static_cast<double>(n_in);
    const double k = static_cast<double>(k_in);
    const double omega = rp.omega;
    const double phw = rp.phi_working;
    const double theta = g.theta;
    const double alpha = g.alpha;
    const double gamma = g.gamma;
    const double xi = 0.999 * (1.0 - gamma);
    const double reg_dist = omega * omega * std::sqrt(phw) / (32.0 * 101.0 * Sigma * std::sqrt(2.0 * k));
    const double eps = std::pow(xi * (1.0 - gamma) / (std::pow(13.0 * std::pow(B, 4.0), 1.0 / k) * alpha * alpha *
                                                       theta * theta),
                                k / (k - 1.0));
    const double tab = 1.998 * theta * alpha * std::pow(B, 1.0 / k);
    const double C_sh = 3.0;

    PrecisionBudget out;
    auto add = [&](const char* name, double v) { out.terms.push_back({name, v}); };
    add("loop_backward", lg(omega) - lg(4.5 * k * static_cast<double>(rp.n_dec) * n * Sigma) - log2_nu(n));
    add("ritz_optimal", u_optimal(n, k, 1.1, Sigma, theta, omega));
    add("ritz_forward", lg(omega / (8.0 * std::sqrt(n) * Sigma)) + u_iqr(n, k, Sigma, B, reg_dist));
    add("find_comptau", u_comptau(n, k / 2.0, C_sh, Sigma, B, reg_dist));
    add("exc_potential_root", u_potential(k));
    add("exc_net", lg(0.1 * eps * tab * omega) - lg(4.0 * (eps + 2.0 * (1.0 + eps) * C_sh * Sigma)));
    add("exc_forward",
        u_pot_apx(n, k, C_sh, Sigma, B, eps * tab * omega * std::sqrt(phw) / std::sqrt(3.0 * n), omega));
    add("sh_forward", u_pot_apx(n, k, C_sh, Sigma, B, reg_dist, omega));

    out.log2_u = 0.0;
    for (const auto& t : out.terms) out.log2_u = std::min(out.log2_u, t.log2_u);
    out.bits = static_cast<int>(std::ceil(-out.log2_u));
    return out;
  }

} // namespace shqr
