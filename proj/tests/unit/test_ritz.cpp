//
// ... Standard header files
//
#include <algorithm>
#include <cmath>

//
// ... Third party header files
//
#include <gtest/gtest.h>

//
// ... shqr header files
//
#include "generators.hpp"

using namespace shqr;
using namespace shqr::testing;

namespace {

  /// Exact corner eigenvalues from the oracle.
  struct OracleSolver final : SmallEigSolver {
    SmallEigResult solve(const DenseMatrix<DD>& m, double, double) const override {
      return {oracle::ref_eigs(m), 0.0, true};
    }
  };

  /// Default solver applied to the corner plus beta_inj at its bottom-left entry.
  struct PerturbedSolver final : SmallEigSolver {
    double beta_inj;
    explicit PerturbedSolver(double b) : beta_inj(b) {}
    SmallEigResult solve(const DenseMatrix<DD>& m, double beta, double phi) const override {
      DenseMatrix<DD> p = m;
      p(m.rows() - 1, 0) += CplxDD(DD(beta_inj));
      return AberthSolver().solve(p, beta, phi);
    }
  };

  double exact_psi(const HessenbergMatrix& h, std::size_t k) {
    return std::pow(potential_power(h, k).to_double(), 1.0 / static_cast<double>(k));
  }

  HessenbergMatrix toeplitz_example(std::size_t n, double delta) {
    DenseMatrix<double> t(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      t(i, i + 1) = Cplx(1.0);
      t(i + 1, i) = Cplx(delta);
    }
    t(0, n - 1) += Cplx(1.0);
    return HessenbergMatrix(t);
  }

} // namespace

TEST(AberthSolver, KnownEigenvalues) {
  DenseMatrix<DD> m(3, 3);
  m(0, 0) = CplxDD(DD(1.0));
  m(1, 1) = CplxDD(DD(-2.0), DD(0.5));
  m(2, 2) = CplxDD(DD(0.25));
  m(0, 2) = CplxDD(DD(3.0));
  m(1, 0) = CplxDD(DD(0.1));
  const SmallEigResult res = AberthSolver().solve(m, 1e-20, 0.01);
  ASSERT_EQ(res.values.size(), 3u);
  EXPECT_TRUE(res.certified);
  EXPECT_LE(res.error_bound, 1e-20);
  const double d = oracle::matched_distance(to_double(res.values), to_double(oracle::ref_eigs(m)));
  EXPECT_LT(d, 1e-14);
}

TEST(AberthSolver, RandomCornersCertifiedAgainstOracle) {
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    const DenseMatrix<DD> m = ginibre(4, rng).cast<DD>();
    const SmallEigResult res = AberthSolver().solve(m, 1e-18, 0.01);
    ASSERT_EQ(res.values.size(), 4u);
    const std::vector<CplxDD> ref = oracle::ref_eigs(m);
    for (const auto& z : res.values) {
      DD best(INFINITY);
      for (const auto& w : ref) best = std::min(best, abs(z - w));
      EXPECT_LE(best.to_double(), std::max(res.error_bound, 1e-25));
    }
    EXPECT_TRUE(res.certified);
  }
}

TEST(AberthSolver, SplitsOnZeroSubdiagonal) {
  DenseMatrix<DD> m(2, 2);
  m(0, 0) = CplxDD(DD(2.0));
  m(1, 1) = CplxDD(DD(5.0));
  m(0, 1) = CplxDD(DD(7.0));
  const SmallEigResult res = AberthSolver().solve(m, 1e-30, 0.01);
  EXPECT_EQ(res.error_bound, 0.0);
  std::vector<double> re{res.values[0].re.to_double(), res.values[1].re.to_double()};
  std::sort(re.begin(), re.end());
  EXPECT_EQ(re, (std::vector<double>{2.0, 5.0}));
}

TEST(HessenbergCharpoly, MatchesHandExpansion) {
  // det(z - [[1, 2], [3, 4]]) = z^2 - 5 z - 2
  DenseMatrix<DD> m(2, 2);
  m(0, 0) = CplxDD(DD(1.0));
  m(0, 1) = CplxDD(DD(2.0));
  m(1, 0) = CplxDD(DD(3.0));
  m(1, 1) = CplxDD(DD(4.0));
  const auto c = hessenberg_charpoly(HessenbergDD(m));
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0].re.to_double(), -2.0);
  EXPECT_EQ(c[1].re.to_double(), -5.0);
  EXPECT_EQ(c[2].re.to_double(), 1.0);
}

TEST(Regularize, Examples) {
  Rng rng(22);
  const ShiftList<double> r{Cplx(1.0, 2.0), Cplx(-0.5)};
  RegularizationParams zero;
  EXPECT_EQ(regularize(r, zero, rng), r);

  RegularizationParams p;
  p.eta2 = 0.3;
  p.eta1 = 0.03;
  for (int t = 0; t < 10000; ++t) {
    const ShiftList<double> out = regularize(r, p, rng);
    for (std::size_t i = 0; i < r.size(); ++i) ASSERT_LE(abs(out.roots()[i] - r.roots()[i]), p.eta2);
  }
  p.eta1 = 0.5;
  EXPECT_THROW(regularize(r, p, rng), DomainError);
}

TEST(RegularizationParams, ForRitz) {
  const auto p = RegularizationParams::for_ritz(1e-3, 2.0, 4, 0.05);
  EXPECT_DOUBLE_EQ(p.beta, 1e-6 / (16.0 * 101.0 * 2.0));
  EXPECT_DOUBLE_EQ(p.eta2, p.beta / 2.0);
  EXPECT_DOUBLE_EQ(p.eta1, p.eta2 / std::sqrt(8.0 / 0.05));
}

TEST(Optimal, ExactRitzValuesAreOptimal) {
  Rng rng(23);
  const double theta = theta_for(1.0, 4);
  for (int t = 0; t < 20; ++t) {
    const HessenbergMatrix h = random_hessenberg(9, rng);
    const ShiftList<double> ritz(to_double(oracle::ref_eigs(h.corner(4).cast<DD>())));
    EXPECT_TRUE(optimal(h, ritz, theta));
  }
}

TEST(Optimal, FarShiftsAreNotOptimal) {
  Rng rng(24);
  const HessenbergMatrix h = random_hessenberg(6, rng);
  const double far = 1e3 * oracle::spectral_norm(h.dense().cast<DD>());
  EXPECT_FALSE(optimal(h, ShiftList<double>::repeated(Cplx(far), 2), theta_for(1.0, 2)));
}

TEST(Optimal, AgreesWithDenseOracleOutsideMargin) {
  Rng rng(25);
  const double theta = 1.3;
  const double lower = std::pow(0.998, 0.5) * theta;
  int decided = 0;
  for (int t = 0; t < 1000; ++t) {
    const HessenbergMatrix h = random_hessenberg(6, rng);
    const std::vector<Cplx> chi = to_double(oracle::ref_eigs(h.corner(2).cast<DD>()));
    const double spread = 0.3 * std::exp(2.0 * (uniform01<double>(rng) - 1.0));
    const ShiftList<double> s{chi[0] + sample_disk(Cplx(), spread, rng), chi[1] + sample_disk(Cplx(), spread, rng)};
    const double val =
      std::sqrt(oracle::dense_en_p_norm(h.dense().cast<DD>(), oracle::to_dd(s)).to_double()) / exact_psi(h, 2);
    if (val >= lower && val <= theta) continue;
    ++decided;
    EXPECT_EQ(optimal(h, s, theta), val < lower) << val;
  }
  EXPECT_GT(decided, 900);
}

TEST(EnPNorm, MatchesDenseOracle) {
  Rng rng(26);
  for (int t = 0; t < 20; ++t) {
    const HessenbergMatrix h = random_hessenberg(7, rng);
    const ShiftList<double> s{sample_disk(Cplx(), 1.0, rng), sample_disk(Cplx(), 1.0, rng), Cplx(0.2)};
    const double a = en_p_norm(h, s).to_double();
    const double b = oracle::dense_en_p_norm(h.dense().cast<DD>(), oracle::to_dd(s)).to_double();
    EXPECT_NEAR(a, b, 1e-14 * b);
  }
}

TEST(RitzOrDecouple, ExactSolverGivesOptimalOutcome) {
  Rng rng(27);
  const OracleSolver solver;
  for (int t = 0; t < 20; ++t) {
    const HessenbergMatrix h = well_conditioned_hessenberg(8, 0.2, 0.2, rng);
    GlobalData g = desk_globals(h);
    g = make_global_data(1.0, g.Gamma, g.Sigma, 8);
    const RitzOutcome<double> out = ritz_or_decouple(h, 1e-8, 0.05, g, solver, rng);
    EXPECT_EQ(out.status, RitzStatus::optimal);
    EXPECT_FALSE(out.dec);
    EXPECT_EQ(out.next_h, h);
    const double lhs =
      std::pow(oracle::dense_en_p_norm(h.dense().cast<DD>(), oracle::to_dd(out.ritz_values)).to_double(), 0.25);
    EXPECT_LE(lhs, g.theta * exact_psi(h, 4));
    // Regularized values stay within beta of the corner eigenvalues.
    const std::vector<Cplx> rho = to_double(oracle::ref_eigs(h.corner(4).cast<DD>()));
    EXPECT_LE(oracle::matched_distance(out.ritz_values.roots(), rho), out.params.beta + 1e-15);
  }
}

TEST(RitzOrDecouple, DecoupledInputIsRejected) {
  Rng rng(28);
  HessenbergMatrix h = random_hessenberg(8, rng);
  h.at(6, 5) = Cplx(1e-12);
  const GlobalData g = make_global_data(1.0, 1e-3, 10.0, 8);
  EXPECT_THROW(ritz_or_decouple(h, 1e-8, 0.05, g, AberthSolver(), rng), PreconditionError);
  EXPECT_THROW(ritz_or_decouple(random_hessenberg(4, rng), 1e-8, 0.05, g, AberthSolver(), rng), DimensionError);
}

TEST(RitzOrDecouple, ToeplitzExampleNeedsBetaOfOrderDeltaToTheK) {
  const double delta = 1e-3;
  const HessenbergMatrix t = toeplitz_example(12, delta);
  const GlobalData g = make_global_data(1.0, 0.1, 2.0 * frobenius_norm(t.dense()), 12);

  // Corner error of order delta^k keeps the Ritz values optimal.
  Rng rng1(1);
  const auto small = ritz_or_decouple(t, 1e-5, 0.05, g, PerturbedSolver(std::pow(delta, 4)), rng1);
  EXPECT_EQ(small.status, RitzStatus::optimal);

  // A backward-only corner error much larger than delta^k breaks optimality, and the loop decouples.
  Rng rng2(1);
  const auto big = ritz_or_decouple(t, 1e-5, 0.05, g, PerturbedSolver(1e-8), rng2);
  EXPECT_FALSE(optimal(t, big.ritz_values, g.theta));
  EXPECT_EQ(big.status, RitzStatus::decoupled);
  ASSERT_TRUE(big.culprit.has_value());
  EXPECT_LE(big.next_h.min_bottom_subdiagonal(4), 1e-5);
}

TEST(RitzOrDecouple, FailureRateAtSmallSize) {
  Rng gen(29);
  const AberthSolver solver;
  int misses = 0;
  for (int t = 0; t < 500; ++t) {
    const HessenbergMatrix h = well_conditioned_hessenberg(8, 0.3, 0.15, gen);
    const GlobalData g = desk_globals(h);
    const RunParams rp = derive_run_params(8, 1e-6, 0.05, g);
    Rng rng(splitmix64(t));
    if (ritz_or_decouple(h, rp.omega, 0.05, g, solver, rng).status == RitzStatus::dichotomy_miss) ++misses;
  }
  EXPECT_LE(misses, 50);
}

TEST(RitzOrDecouple, Deterministic) {
  Rng gen(30);
  const HessenbergMatrix h = random_hessenberg(10, gen);
  const GlobalData g = desk_globals(h);
  Rng a(5), b(5);
  const auto x = ritz_or_decouple(h, 1e-9, 0.05, g, AberthSolver(), a);
  const auto y = ritz_or_decouple(h, 1e-9, 0.05, g, AberthSolver(), b);
  EXPECT_EQ(x.ritz_values, y.ritz_values);
  EXPECT_EQ(x.next_h, y.next_h);
}
