// Acceptance suite: prints one PASS/FAIL line per criterion and exits nonzero if any fails.

//
// ... Standard header files
//
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

//
// ... shqr header files
//
#include "generators.hpp"

namespace {

  using namespace shqr;
  using namespace shqr::testing;
  namespace fs = std::filesystem;

  struct Verdict {
    bool pass = false;
    std::string detail;
  };

  std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
  }

  double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  double u53() { return unit_roundoff<double>(); }

  /// Exact potential from the subdiagonal product in double-double.
  double exact_psi(const HessenbergMatrix& h, std::size_t k) {
    DD p(1.0);
    for (std::size_t i = h.n() - k; i < h.n(); ++i) p *= abs(CplxDD(h(i, i - 1)));
    return std::pow(p.to_double(), 1.0 / static_cast<double>(k));
  }

  /// Well-conditioned instance with oracle kappa_V <= kappa_max.
  HessenbergMatrix conditioned_instance(std::size_t n, double kappa_max, Rng& rng) {
    for (;;) {
      HessenbergMatrix h = well_conditioned_hessenberg(n, 0.3, 0.1, rng);
      if (oracle::condition_report(h.dense().cast<DD>()).kappa_v <= kappa_max) return h;
    }
  }

  Verdict criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(101);
    const std::size_t sizes[] = {8, 32, 50};
    double worst_fact = 0.0, worst_sim = 0.0;
    bool ok = true;
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = sizes[trial % 3];
      const HessenbergMatrix h = random_hessenberg(n, rng);
      const DenseMatrix<DD> hd = h.dense().cast<DD>();
      const double norm_h = oracle::spectral_norm(hd);
      const Cplx s = sample_disk(Cplx(), 2.0 * norm_h, rng);
      IqrFactors<double> f;
      const IqrResult<double> res = iqr_single_factored(h, s, f);
      const DenseMatrix<DD> q = accumulate_q(f.rotations, n);
      const DenseMatrix<DD> hs = shifted(hd, CplxDD(s));
      const double base = std::pow(static_cast<double>(n), 1.5) * u53() * oracle::spectral_norm(hs);
      const double fact = oracle::spectral_norm(subtract(hs, multiply(q, f.r_factor.cast<DD>())));
      const DenseMatrix<DD> sim = multiply(adjoint(q), multiply(hd, q));
      const double simerr = oracle::spectral_norm(subtract(res.next_h.dense().cast<DD>(), sim));
      const double rf = fact / (16.0 * base);
      const double rs = simerr / (32.0 * base);
      worst_fact = std::max(worst_fact, rf);
      worst_sim = std::max(worst_sim, rs);
      if (rf > 1.0 || rs > 1.0) ok = false;
    }
    const double secs = seconds_since(t0);
    return {ok && secs < 10.0, "worst factorization ratio " + fmt("%.3g", worst_fact) + ", worst similarity ratio " +
                                 fmt("%.3g", worst_sim) + ", " + fmt("%.2f", secs) + " s"};
  }

  Verdict criterion2() {
    Rng rng(202);
    double worst = 0.0, worst_hat = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t k = trial % 2 == 0 ? 2 : 4;
      const std::size_t n = k + 1 + static_cast<std::size_t>(rng() % (8 - k));
      const HessenbergMatrix h = random_hessenberg(n, rng);
      const std::vector<CplxDD> chi = oracle::ref_eigs(h.corner(k).cast<DD>());
      const double rhs = std::pow(oracle::dense_en_p_norm(h.dense().cast<DD>(), chi).to_double(), 1.0 / k);
      // psi_k itself: full-precision root of the exactly accumulated product.
      const double psi = kth_root<DD>(potential_power(h, k), static_cast<unsigned>(k), 1e-28).to_double();
      worst = std::max(worst, std::abs(psi - rhs) / psi);
      // The working estimate only promises 1 - 0.999^(1/k).
      const double rel_hat = std::abs(potential(h, k) - rhs) / rhs;
      worst_hat = std::max(worst_hat, rel_hat / potential_tolerance(k));
    }
    return {worst <= 1e-10 && worst_hat <= 1.0,
            "worst relative gap " + fmt("%.3g", worst) + ", working estimate at " + fmt("%.3g", worst_hat) +
              " of its tolerance"};
  }

  Verdict criterion3() {
    Rng rng(303);
    double worst = 0.0;
    const std::size_t degrees[] = {1, 2, 4};
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t m = degrees[trial % 3];
      const HessenbergMatrix h = random_hessenberg(8, rng);
      const DenseMatrix<DD> hd = h.dense().cast<DD>();
      const double norm_h = oracle::spectral_norm(hd);
      const std::vector<Cplx> eigs = to_double(oracle::ref_eigs(hd));
      std::vector<Cplx> roots;
      while (roots.size() < m) {
        const Cplx s = sample_disk(Cplx(), 1.5 * norm_h, rng);
        if (min_distance(s, eigs) >= 1e-3 * norm_h) roots.push_back(s);
      }
      const ShiftList<double> shifts(roots);
      const double got = comp_tau(h, shifts);
      const double want = oracle::resolvent_tau(hd, oracle::to_dd(shifts)).to_double();
      worst = std::max(worst, std::abs(got - want) / want);
    }
    return {worst <= 0.0011, "worst relative error " + fmt("%.3g", worst)};
  }

  Verdict criterion4() {
    // Upper triangular 4 x 4 with eigenvalues 0, 1, 2, 3.
    DenseMatrix<double> m(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
      m(i, i) = Cplx(static_cast<double>(i), 0.0);
      for (std::size_t j = i + 1; j < 4; ++j) m(i, j) = Cplx(0.5, -0.25);
    }
    const HessenbergMatrix h(m);
    const std::vector<Cplx> spectrum = to_double(oracle::ref_eigs(h.dense().cast<DD>()));
    RegularizationParams p;
    p.eta2 = 0.2;
    p.eta1 = 0.02;
    p.beta = 0.4;
    const double gap = oracle::gap(spectrum);
    // Worst case for the bound: the unregularized values sit on eigenvalues.
    const ShiftList<double> r{Cplx(1.0, 0.0), Cplx(2.0, 0.0)};
    Rng rng(404);
    int hits = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
      const ShiftList<double> out = regularize(r, p, rng);
      bool near = false;
      for (const auto& z : out)
        if (min_distance(z, spectrum) < p.eta1) near = true;
      hits += near ? 1 : 0;
    }
    const double frac = static_cast<double>(hits) / trials;
    const bool hyp = gap >= 2.0 * (p.eta1 + p.eta2);
    return {hyp && frac <= 0.04, "empirical probability " + fmt("%.4f", frac) + " (bound 0.02), gap " + fmt("%.3g", gap)};
  }

  Verdict criterion5() {
    Rng gen(505);
    const AberthSolver solver;
    int optimal_ok = 0, dec_ok = 0, misses = 0, violations = 0;
    const int trials = 500;
    for (int t = 0; t < trials; ++t) {
      const HessenbergMatrix h = conditioned_instance(16, 5.0, gen);
      const GlobalData g = desk_globals(h);
      const RunParams rp = derive_run_params(16, 1e-6 * g.Sigma / 2.0, 0.05, g);
      Rng rng(splitmix64(5000 + t));
      const RitzOutcome<double> out = ritz_or_decouple(h, rp.omega, 0.05, g, solver, rng);
      if (out.status == RitzStatus::dichotomy_miss) {
        ++misses;
        continue;
      }
      if (!out.dec) {
        const double lhs =
          std::pow(oracle::dense_en_p_norm(h.dense().cast<DD>(), oracle::to_dd(out.ritz_values)).to_double(), 0.25);
        if (lhs <= g.theta * exact_psi(h, g.k) && out.next_h == h)
          ++optimal_ok;
        else
          ++violations;
      } else {
        if (out.next_h.min_bottom_subdiagonal(g.k) <= rp.omega)
          ++dec_ok;
        else
          ++violations;
      }
    }
    const double miss_frac = static_cast<double>(misses) / trials;
    return {violations == 0 && miss_frac <= 0.10,
            std::to_string(optimal_ok) + " optimal, " + std::to_string(dec_ok) + " decoupled, " +
              std::to_string(violations) + " postcondition violations, failure fraction " + fmt("%.3f", miss_frac)};
  }

  Verdict criterion6() {
    Rng gen(606);
    int pass = 0, pass_b1 = 0;
    const int trials = 200;
    const unsigned k = 4;
    for (int t = 0; t < trials; ++t) {
      const HessenbergMatrix h = conditioned_instance(12, 5.0, gen);
      const DenseMatrix<DD> hd = h.dense().cast<DD>();
      const double kappa = oracle::condition_report(hd).kappa_v;
      const std::vector<CplxDD> ritz_dd = oracle::ref_eigs(h.corner(k).cast<DD>());
      const ShiftList<double> ritz(to_double(ritz_dd));
      const Cplx r = find(h, ritz);
      const double B = 2.0 * kappa;
      const double alpha = std::pow(1.01 * B, 4.0 * std::log2(k) / k);
      std::vector<CplxDD> rl = oracle::to_dd(ritz);
      if (oracle::promising_check(hd, CplxDD(r), rl, alpha)) ++pass;
      if (oracle::promising_check(hd, CplxDD(r), rl, alpha_for(1.0, k))) ++pass_b1;
    }
    return {pass == trials, std::to_string(pass) + "/" + std::to_string(trials) +
                              " promising with B = 2 kappa_V (" + std::to_string(pass_b1) + "/" +
                              std::to_string(trials) + " already at B = 1)"};
  }

  Verdict criterion7() {
    Rng gen(707);
    const AberthSolver solver;
    int calls = 0, good = 0, increases = 0, unsuccessful = 0, ritz_branch = 0;
    std::uint64_t seed = 7000;
    while (calls < 500) {
      const HessenbergMatrix h = conditioned_instance(16, 5.0, gen);
      const GlobalData g = desk_globals(h);
      const RunParams rp = derive_run_params(16, 1e-6 * g.Sigma / 2.0, 0.05, g);
      Rng rng(splitmix64(seed++));
      const RitzOutcome<double> rod = ritz_or_decouple(h, rp.omega, 0.05, g, solver, rng);
      if (rod.status != RitzStatus::optimal) continue;
      const ShStepOutcome<double> sh = sh_step(h, rod.ritz_values, rp.omega, g, rng);
      ++calls;
      if (!sh.success) {
        ++unsuccessful;
        continue;
      }
      if (sh.branch == ShBranch::ritz_shift) ++ritz_branch;
      const double before = exact_psi(h, g.k);
      const double after = exact_psi(sh.next_h, g.k);
      const bool dec = sh.next_h.min_bottom_subdiagonal(g.k) <= rp.omega;
      if (dec || after <= 0.8016 * before) ++good;
      if (!dec && after > 1.0011 * before) ++increases;
    }
    const double frac = static_cast<double>(good) / calls;
    return {frac >= 0.90 && increases == 0,
            fmt("%.3f", frac) + " reduced or decoupled, " + std::to_string(increases) + " increases, " +
              std::to_string(unsuccessful) + " without a qualifying candidate, " + std::to_string(ritz_branch) +
              " via the Ritz shift"};
  }

  Verdict criterion8() {
    Rng rng(808);
    bool ok = true;
    std::ostringstream detail;
    for (double eps : {0.05, 0.1, 0.5, 1.0}) {
      const std::vector<Cplx> net = build_net(eps);
      const double bound = net_size_bound(eps);
      double worst = 0.0;
      for (int t = 0; t < 100000; ++t) {
        const Cplx z = sample_disk(Cplx(), 1.0 + eps, rng);
        worst = std::max(worst, min_distance(z, net));
      }
      const bool here = static_cast<double>(net.size()) <= bound && worst <= 0.99 * eps;
      ok = ok && here;
      detail << "eps " << eps << ": " << net.size() << " <= " << fmt("%.1f", bound) << ", cover "
             << fmt("%.3g", worst / eps) << " eps; ";
    }
    return {ok, detail.str()};
  }

  Verdict criterion9() {
    const std::size_t n = 32;
    int failures = 0, over_budget = 0, sh_over = 0;
    std::size_t max_iter = 0, n_dec = 0;
    for (int t = 0; t < 200; ++t) {
      Rng rng(splitmix64(9000 + t));
      const DenseMatrix<double> a = ginibre(n, rng);
      SolveConfig cfg;
      cfg.delta = 1e-6;
      cfg.phi = 0.01;
      cfg.seed = 900 + t;
      cfg.B = 1.0;
      try {
        const SolveReport rep = solve(a, cfg);
        n_dec = rep.params.n_dec;
        for (const auto& node : rep.tree.nodes) {
          const std::size_t iters = node.trace.empty() ? 0 : node.trace.size() - 1;
          max_iter = std::max(max_iter, iters);
          if (iters > rep.params.n_dec) ++over_budget;
        }
        if (rep.sh_steps > n * rep.params.n_dec) ++sh_over;
      } catch (const std::exception&) {
        ++failures;
      }
    }
    return {failures == 0 && over_budget == 0 && sh_over == 0,
            "max while-loop iterations " + std::to_string(max_iter) + " (N_dec " + std::to_string(n_dec) + "), " +
              std::to_string(failures) + " failed runs, " + std::to_string(sh_over) + " runs over n N_dec"};
  }

  Verdict criterion10() {
    const auto t0 = std::chrono::steady_clock::now();
    const AberthSolver solver;
    int within = 0, wrong_count = 0, failures = 0;
    double worst_ratio = 0.0;
    const int runs = 50;
    for (int t = 0; t < runs; ++t) {
      Rng rng(splitmix64(10000 + t));
      const HessenbergMatrix h = random_hessenberg(32, rng);
      const DenseMatrix<DD> hd = h.dense().cast<DD>();
      const auto cr = oracle::condition_report(hd);
      const GlobalData g = make_global_data(1.0, cr.gap / 2.0, 2.0 * frobenius_norm(h.dense()), 32);
      const double delta = 1e-6 * cr.norm;
      try {
        const ShiftedQrResult res = shifted_qr(h, delta, 0.01, g, solver, 100 + t);
        if (res.eigenvalues.size() != 32) {
          ++wrong_count;
          continue;
        }
        const double dist = oracle::matched_distance(res.eigenvalues, to_double(oracle::ref_eigs(hd)));
        const double ratio = dist / (cr.kappa_v * delta);
        worst_ratio = std::max(worst_ratio, ratio);
        if (ratio <= 1.0) ++within;
      } catch (const std::exception&) {
        ++failures;
      }
    }
    const double secs = seconds_since(t0);
    const double frac = static_cast<double>(within) / runs;
    return {frac >= 0.98 && wrong_count == 0 && failures == 0 && secs < 60.0,
            fmt("%.2f", frac) + " within kappa_V delta, worst ratio " + fmt("%.3g", worst_ratio) + ", " +
              std::to_string(failures) + " failed runs, " + fmt("%.1f", secs) + " s"};
  }

  struct DriftStats {
    int blocks = 0;
    int spec_violations = 0;
    int gap_violations = 0;
    int kappa_violations = 0;
  };

  /// Runs the while loop on h, deflates, checks every block against the original, and recurses.
  void instrumented(const HessenbergMatrix& h, const GlobalData& g, double omega, double gap0, double kappa0,
                    std::size_t n0, Rng& rng, DriftStats& st) {
    const AberthSolver solver;
    const std::size_t k = g.k;
    if (h.n() <= k) return;
    HessenbergMatrix cur = h;
    for (int iter = 0; cur.min_bottom_subdiagonal(k) > omega; ++iter) {
      if (iter > 500) throw BudgetExceeded("instrumented loop did not decouple");
      const RitzOutcome<double> rod = ritz_or_decouple(cur, omega, 0.05, g, solver, rng);
      if (rod.status == RitzStatus::dichotomy_miss) continue;
      if (rod.dec) {
        cur = rod.next_h;
        continue;
      }
      const ShStepOutcome<double> sh = sh_step(cur, rod.ritz_values, omega, g, rng);
      if (sh.success) cur = sh.next_h;
    }
    const auto blocks = deflate(cur, omega, k);
    HessenbergMatrix zeroed = cur;
    for (std::size_t b = 1; b < blocks.size(); ++b)
      zeroed.at(blocks[b].offset, blocks[b].offset - 1) = Cplx();
    const DenseMatrix<DD> zd = zeroed.dense().cast<DD>();
    const std::vector<CplxDD> zspec = oracle::ref_eigs(zd);
    const DD tol = DD(1e-24) * frobenius_norm(zd);

    const double n = static_cast<double>(n0);
    const double drift = 2.0 * (n - 1.0) * omega;
    for (const auto& blk : blocks) {
      ++st.blocks;
      const DenseMatrix<DD> bd = blk.h.dense().cast<DD>();
      for (const auto& lam : oracle::ref_eigs(bd)) {
        DD best(INFINITY);
        for (const auto& mu : zspec) best = std::min(best, abs(lam - mu));
        if (best > tol) ++st.spec_violations;
      }
      if (blk.h.n() >= 2) {
        const auto cr = oracle::condition_report(bd);
        if (cr.gap < gap0 - 2.0 * kappa0 * drift) ++st.gap_violations;
        const double kappa_budget =
          std::sqrt(n) * kappa0 * (1.0 + 10.0 * n * n * kappa0 * kappa0 * drift / gap0);
        if (cr.kappa_v > kappa_budget) ++st.kappa_violations;
      }
      instrumented(blk.h, g, omega, gap0, kappa0, n0, rng, st);
    }
  }

  Verdict criterion11() {
    Rng gen(1111);
    DriftStats st;
    int failures = 0;
    const std::size_t sizes[] = {8, 10, 12};
    for (int t = 0; t < 30; ++t) {
      const std::size_t n = sizes[t % 3];
      const HessenbergMatrix h = t % 2 == 0 ? conditioned_instance(n, 5.0, gen) : random_hessenberg(n, gen);
      const auto cr = oracle::condition_report(h.dense().cast<DD>());
      const GlobalData g = make_global_data(1.0, cr.gap / 2.0, 2.0 * frobenius_norm(h.dense()), n);
      const RunParams rp = derive_run_params(n, 1e-6 * cr.norm, 0.05, g);
      Rng rng(splitmix64(11000 + t));
      try {
        instrumented(h, g, rp.omega, cr.gap, cr.kappa_v, n, rng, st);
      } catch (const std::exception&) {
        ++failures;
      }
    }
    return {failures == 0 && st.spec_violations == 0 && st.gap_violations == 0 && st.kappa_violations == 0,
            std::to_string(st.blocks) + " blocks checked, " + std::to_string(st.spec_violations) +
              " spectrum mismatches, " + std::to_string(st.gap_violations) + " gap drifts, " +
              std::to_string(st.kappa_violations) + " kappa drifts, " + std::to_string(failures) + " failed runs"};
  }

  std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
  }

  Verdict criterion12() {
    const fs::path dir = fs::temp_directory_path() / ("shqr_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    bool ok = true;
    std::ostringstream detail;
    for (const char* fixture : {"fixture32.mtx", "fixture16_coordinate.mtx"}) {
      const fs::path input = fs::path(SHQR_DATA_DIR) / fixture;
      std::vector<std::string> json, csv;
      int idx = 0;
      for (int threads : {1, 1, 4}) {
        const fs::path j = dir / ("out" + std::to_string(idx) + ".json");
        const fs::path c = dir / ("out" + std::to_string(idx) + ".csv");
        ++idx;
        const std::string cmd = std::string("\"") + SHQR_CLI_PATH + "\" solve \"" + input.string() +
                                "\" --seed 424242 --B 1 --threads " + std::to_string(threads) + " --out-json \"" +
                                j.string() + "\" --out-trace \"" + c.string() + "\" 2>/dev/null";
        if (std::system(cmd.c_str()) != 0) ok = false;
        json.push_back(slurp(j));
        csv.push_back(slurp(c));
      }
      const bool same = !json[0].empty() && json[0] == json[1] && json[0] == json[2] && csv[0] == csv[1] &&
                        csv[0] == csv[2] && csv[0].find('\n') != csv[0].rfind('\n');
      ok = ok && same;
      detail << fixture << (same ? " identical" : " differs") << "; ";
    }
    fs::remove_all(dir);
    return {ok, detail.str()};
  }

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
    {"IQR backward stability", criterion1},
    {"variational potential", criterion2},
    {"CompTau accuracy", criterion3},
    {"regularization probability", criterion4},
    {"dichotomy outcomes", criterion5},
    {"Find promising-ness", criterion6},
    {"potential reduction", criterion7},
    {"net size and covering", criterion8},
    {"iteration budget", criterion9},
    {"end-to-end backward accuracy", criterion10},
    {"preservation under deflation", criterion11},
    {"determinism", criterion12},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::printf("criterion %2zu %s  %s: %s\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
