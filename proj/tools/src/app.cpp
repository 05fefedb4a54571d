#include "shqr/app/app.hpp"

//
// ... Standard header files
//
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

//
// ... shqr header files
//
#include "shqr/matrix_market.hpp"

namespace shqr::app {

  void validate(const RunConfig& cfg) {
    if (!(cfg.delta > 0.0) || !std::isfinite(cfg.delta)) throw DomainError("--delta must be positive");
    if (!(cfg.phi > 0.0 && cfg.phi < 1.0)) throw DomainError("--phi must lie in (0, 1)");
    if (cfg.bits < 24) throw DomainError("--bits must be at least 24");
    if (cfg.bits > 106) throw DomainError("--bits above 106 is not supported");
    if (cfg.B && !(*cfg.B >= 1.0)) throw DomainError("--B must be at least 1");
    if (cfg.Gamma && !(*cfg.Gamma > 0.0)) throw DomainError("--gamma-gap must be positive");
    if (cfg.Sigma && !(*cfg.Sigma > 0.0)) throw DomainError("--sigma must be positive");
    if (cfg.threads == 0) throw DomainError("--threads must be positive");
  }

  namespace {

    SolveConfig solve_config(const RunConfig& cfg, std::uint64_t seed) {
      SolveConfig s;
      s.delta = cfg.delta;
      s.phi = cfg.phi;
      s.seed = seed;
      s.bits = cfg.bits;
      s.B = cfg.B;
      s.Gamma = cfg.Gamma;
      s.Sigma = cfg.Sigma;
      s.preprocess = cfg.preprocess;
      s.threads = cfg.threads;
      return s;
    }

    void write_file(const std::string& path, const std::string& text) {
      std::ofstream f(path, std::ios::binary);
      if (!f) throw Error("cannot write '" + path + "'");
      f << text;
      if (!f) throw Error("write failed for '" + path + "'");
    }

    std::string fmt17(double x) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      return buf;
    }

  } // namespace

  RunReport run_matrix(const DenseMatrix<double>& a, const RunConfig& cfg) {
    validate(cfg);
    if (!a.square()) throw DimensionError("input matrix must be square");
    RunReport rep;
    rep.n = a.rows();
    rep.seed = cfg.seed ? *cfg.seed : (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^
                                         static_cast<std::uint64_t>(std::random_device{}());
    const auto t0 = std::chrono::steady_clock::now();
    rep.result = solve(a, solve_config(cfg, rep.seed));
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  }

  RunReport run(const RunConfig& cfg) {
    validate(cfg);
    if (cfg.input.empty()) throw DomainError("no input file given");
    const DenseMatrix<double> a = read_matrix_market_file(cfg.input);
    RunReport rep = run_matrix(a, cfg);
    if (!cfg.out_json.empty()) write_file(cfg.out_json, to_json(rep, cfg).dump(2) + "\n");
    if (!cfg.out_trace.empty()) write_file(cfg.out_trace, trace_csv(rep));
    return rep;
  }

  nlohmann::json to_json(const RunReport& rep, const RunConfig& cfg) {
    const SolveReport& r = rep.result;
    nlohmann::json j;
    j["n"] = rep.n;
    j["seed"] = rep.seed;
    j["delta"] = cfg.delta;
    j["phi"] = cfg.phi;
    j["bits"] = r.bits_used;
    j["preprocess"] = cfg.preprocess;
    j["parameters"] = {
      {"B", r.globals.B},
      {"Gamma", r.globals.Gamma},
      {"Sigma", r.globals.Sigma},
      {"k", r.globals.k},
      {"alpha", r.globals.alpha},
      {"theta", r.globals.theta},
      {"gamma", r.globals.gamma},
      {"omega", r.params.omega},
      {"phi_working", r.params.phi_working},
      {"n_dec", r.params.n_dec},
      {"delta_absolute", r.delta_absolute},
      {"required_bits", r.budget.bits},
    };
    nlohmann::json eigs = nlohmann::json::array();
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i)
      eigs.push_back({{"re", r.eigenvalues[i].re},
                      {"im", r.eigenvalues[i].im},
                      {"block", r.eigen_block[i]},
                      {"offset", r.eigen_offset[i]}});
    j["eigenvalues"] = std::move(eigs);
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& node : r.tree.nodes) {
      nlohmann::json b = {{"id", node.id},
                          {"offset", node.offset},
                          {"size", node.size},
                          {"leaf", node.leaf},
                          {"iterations", node.trace.empty() ? 0 : node.trace.size() - 1},
                          {"retries", node.retries}};
      b["parent"] = node.parent ? nlohmann::json(*node.parent) : nlohmann::json(nullptr);
      if (node.leaf) b["solver_error_bound"] = node.solver_error;
      blocks.push_back(std::move(b));
    }
    j["blocks"] = std::move(blocks);
    j["stats"] = {{"sh_steps", r.sh_steps}, {"rod_calls", r.rod_calls}, {"uncertified_solves", r.uncertified_solves}};
    j["warnings"] = r.warnings;
    return j;
  }

  std::string trace_csv(const RunReport& rep) {
    std::ostringstream os;
    os << "block_id,iteration,psi_k,branch,shift_re,shift_im\n";
    for (const auto& node : rep.result.tree.nodes)
      for (const auto& t : node.trace)
        os << node.id << ',' << t.iteration << ',' << fmt17(t.psi) << ',' << to_string(t.branch) << ','
           << fmt17(t.shift.re) << ',' << fmt17(t.shift.im) << '\n';
    return os.str();
  }

  std::vector<Cplx> eigenvalues_from_json(const nlohmann::json& j) {
    std::vector<Cplx> out;
    for (const auto& e : j.at("eigenvalues")) out.emplace_back(e.at("re").get<double>(), e.at("im").get<double>());
    return out;
  }

  std::vector<std::string> info(const RunConfig& cfg) {
    validate(cfg);
    std::size_t n = 0;
    double norm_a = 0.0;
    double fro_h = 0.0;
    if (!cfg.input.empty()) {
      const DenseMatrix<double> a = read_matrix_market_file(cfg.input);
      if (!a.square()) throw DimensionError("input matrix must be square");
      n = a.rows();
      norm_a = spectral_norm_estimate(a);
      fro_h = frobenius_norm(a);
    } else {
      if (!cfg.n || *cfg.n == 0) throw DomainError("info needs an input file or --n");
      n = *cfg.n;
      if (!cfg.Sigma) throw DomainError("info without an input file needs --sigma");
      fro_h = *cfg.Sigma / 2.0;
      norm_a = fro_h;
    }
    SolveConfig sc = solve_config(cfg, 0);
    const GlobalData g = globals_for(sc, n, norm_a, fro_h);
    const double delta_abs = cfg.delta * norm_a / (cfg.preprocess ? 2.0 : 1.0);
    const RunParams rp = derive_run_params(n, delta_abs, cfg.phi, g);
    const PrecisionBudget pb = required_precision(n, g.k, g.Sigma, g.B, g.Gamma, delta_abs, cfg.phi);
    const int have = cfg.bits <= 53 ? 53 : 106;

    std::vector<std::string> lines;
    auto add = [&](const std::string& key, const std::string& val) { lines.push_back(key + " = " + val); };
    add("n", std::to_string(n));
    add("B", fmt17(g.B));
    add("Gamma", fmt17(g.Gamma));
    add("Sigma", fmt17(g.Sigma));
    add("k", std::to_string(g.k));
    add("alpha", fmt17(g.alpha));
    add("theta", fmt17(g.theta));
    add("gamma", "0.2");
    add("omega", fmt17(rp.omega));
    add("phi_working", fmt17(rp.phi_working));
    add("N_dec", std::to_string(rp.n_dec));
    add("required_bits", std::to_string(pb.bits));
    add("configured_bits", std::to_string(have));
    if (have < pb.bits)
      lines.push_back("warning: configured precision (" + std::to_string(have) + " bits) is below the required " +
                      std::to_string(pb.bits) + " bits");
    return lines;
  }

  int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ProbabilisticFailure*>(&e)) return 3;
    if (dynamic_cast<const Error*>(&e)) return 2;
    return 1;
  }

} // namespace shqr::app
