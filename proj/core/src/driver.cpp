#include "shqr/driver.hpp"

//
// ... Standard header files
//
#include <cmath>

//
// ... shqr header files
//
#include "shqr/hessenberg.hpp"

namespace shqr {

  const char* to_string(TraceBranch b) {
    switch (b) {
      case TraceBranch::init: return "init";
      case TraceBranch::ritz_shift: return "ritz_shift";
      case TraceBranch::exceptional: return "exceptional";
      case TraceBranch::ritz_decouple: return "ritz_decouple";
    }
    return "unknown";
  }

  double spectral_norm_estimate(const DenseMatrix<double>& a, int iterations) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (m == 0 || n == 0) return 0.0;
    std::vector<Cplx> x(n), y(m);
    for (std::size_t j = 0; j < n; ++j) x[j] = Cplx(1.0 + static_cast<double>(j) / static_cast<double>(n), 0.0);
    double sigma = 0.0;
    for (int it = 0; it < iterations; ++it) {
      double xn = 0.0;
      for (const auto& v : x) xn += norm2(v);
      xn = std::sqrt(xn);
      if (xn == 0.0) return 0.0;
      for (auto& v : x) v /= xn;
      for (std::size_t i = 0; i < m; ++i) {
        Cplx acc;
        for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * x[j];
        y[i] = acc;
      }
      double yn = 0.0;
      for (const auto& v : y) yn += norm2(v);
      sigma = std::sqrt(yn);
      for (std::size_t j = 0; j < n; ++j) {
        Cplx acc;
        for (std::size_t i = 0; i < m; ++i) acc += conj(a(i, j)) * y[i];
        x[j] = acc;
      }
    }
    return sigma;
  }

  PreprocessResult preprocess(const DenseMatrix<double>& a, double delta, Rng& rng) {
    if (!a.square()) throw DimensionError("preprocess: matrix must be square");
    for (const auto& z : a.data())
      if (!isfinite(z)) throw DomainError("preprocess: non-finite entry");
    if (delta < 0.0) throw DomainError("preprocess: delta must be nonnegative");
    PreprocessResult out;
    out.norm_estimate = spectral_norm_estimate(a);
    DenseMatrix<double> work = a;
    if (delta > 0.0 && out.norm_estimate > 0.0) {
      const std::size_t n = a.rows();
      DenseMatrix<double> e(n, n);
      const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const double re = standard_normal(rng);
          const double im = standard_normal(rng);
          e(i, j) = Cplx(re * inv_sqrt2, im * inv_sqrt2);
        }
      const double target = delta * out.norm_estimate / 2.0;
      const double scale = target / spectral_norm_estimate(e);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) work(i, j) += e(i, j) * scale;
      out.perturbation_norm = target;
    }
    out.h = householder_hessenberg(std::move(work));
    return out;
  }

  GlobalData globals_for(const SolveConfig& cfg, std::size_t n, double norm_a, double frobenius_h) {
    const double d = cfg.preprocess ? cfg.delta / 2.0 : cfg.delta;
    const double nd = static_cast<double>(n);
    const double B = cfg.B.value_or(std::max(1.0, nd / d));
    const double Gamma = cfg.Gamma.value_or(norm_a * (d / nd) * (d / nd));
    const double Sigma = cfg.Sigma.value_or(2.0 * frobenius_h);
    return make_global_data(B, Gamma, Sigma, n);
  }

  namespace {

    void copy_result(const ShiftedQrResult& r, SolveReport& rep) {
      rep.eigenvalues = r.eigenvalues;
      rep.eigen_block = r.eigen_block;
      rep.eigen_offset.clear();
      for (std::size_t b : r.eigen_block) rep.eigen_offset.push_back(r.tree.nodes[b].offset);
      rep.tree = r.tree;
      rep.params = r.params;
      rep.sh_steps = r.sh_steps;
      rep.rod_calls = r.rod_calls;
      rep.uncertified_solves = r.uncertified_solves;
    }

  } // namespace

  SolveReport solve(const DenseMatrix<double>& a, const SolveConfig& cfg) {
    if (!(cfg.delta > 0.0)) throw DomainError("delta must be positive");
    if (!(cfg.phi > 0.0 && cfg.phi < 1.0)) throw DomainError("phi must lie in (0, 1)");
    if (cfg.bits < 24 || cfg.bits > RealTraits<DoubleDouble>::mantissa_bits)
      throw DomainError("precision bits must lie in [24, 106]");
    if (!a.square() || a.rows() == 0) throw DimensionError("input must be a nonempty square matrix");

    const std::size_t n = a.rows();
    SolveReport rep;
    rep.bits_used = cfg.bits <= 53 ? 53 : 106;

    Rng pre_rng(splitmix64(cfg.seed ^ 0x1ULL));
    PreprocessResult pre = preprocess(a, cfg.preprocess ? cfg.delta : 0.0, pre_rng);
    if (pre.norm_estimate == 0.0) {
      rep.eigenvalues.assign(n, Cplx());
      rep.eigen_block.assign(n, 0);
      rep.eigen_offset.assign(n, 0);
      TreeNode leaf;
      leaf.size = n;
      leaf.leaf = true;
      rep.tree.nodes.push_back(leaf);
      rep.warnings.push_back("zero matrix: all eigenvalues are 0");
      return rep;
    }

    const double fro = frobenius_norm(pre.h.dense());
    rep.globals = globals_for(cfg, n, pre.norm_estimate, fro);
    rep.delta_absolute = cfg.delta * pre.norm_estimate / (cfg.preprocess ? 2.0 : 1.0);
    rep.budget = required_precision(n, rep.globals.k, rep.globals.Sigma, rep.globals.B, rep.globals.Gamma,
                                    rep.delta_absolute, cfg.phi);
    if (rep.bits_used < rep.budget.bits)
      rep.warnings.push_back("configured precision of " + std::to_string(rep.bits_used) + " bits is below the " +
                             std::to_string(rep.budget.bits) + " bits required for the guarantee");

    const AberthSolver default_solver;
    const SmallEigSolver& solver = cfg.solver ? *cfg.solver : default_solver;
    ShiftedQrOptions opt;
    opt.threads = cfg.threads;
    const std::uint64_t qr_seed = splitmix64(cfg.seed ^ 0x2ULL);

    if (rep.bits_used == 53) {
      copy_result(shifted_qr(pre.h, rep.delta_absolute, cfg.phi, rep.globals, solver, qr_seed, opt), rep);
    } else {
      const HessenbergDD hdd = pre.h.cast<DoubleDouble>();
      copy_result(shifted_qr(hdd, rep.delta_absolute, cfg.phi, rep.globals, solver, qr_seed, opt), rep);
    }
    rep.params.seed = cfg.seed;
    return rep;
  }

} // namespace shqr
