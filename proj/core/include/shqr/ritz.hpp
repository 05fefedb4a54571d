#pragma once

//
// ... Standard header files
//
#include <cmath>
#include <optional>
#include <vector>

//
// ... shqr header files
//
#include "shqr/iqr.hpp"
#include "shqr/params.hpp"

namespace shqr {

  struct SmallEigResult {
    std::vector<CplxDD> values;
    double error_bound = 0.0;  ///< certified forward error, or +inf if certification failed
    bool certified = false;    ///< error_bound <= beta
  };

  /// Eigenvalues of a small dense matrix to absolute accuracy beta with probability >= 1 - phi.
  class SmallEigSolver {
  public:
    virtual ~SmallEigSolver() = default;
    virtual SmallEigResult solve(const DenseMatrix<DoubleDouble>& m, double beta, double phi) const = 0;
  };

  /// Characteristic polynomial of the Hessenberg form, Ehrlich-Aberth roots and
  /// inclusion-disk certification, all in double-double.
  class AberthSolver final : public SmallEigSolver {
  public:
    SmallEigResult solve(const DenseMatrix<DoubleDouble>& m, double beta, double phi) const override;
  };

  /// Coefficients c_0 .. c_m (monic, c_m = 1) of det(z - H) via the Hessenberg recurrence.
  std::vector<CplxDD> hessenberg_charpoly(const HessenbergDD& h);

  struct RegularizationParams {
    double eta1 = 0.0;  ///< exclusion radius
    double eta2 = 0.0;  ///< perturbation radius
    double beta = 0.0;  ///< forward accuracy asked of the small solver

    /// beta = omega^2 / (16 * 101 * Sigma), eta2 = beta / 2, eta1 = eta2 / sqrt(2k / phi).
    static RegularizationParams for_ritz(double omega, double Sigma, unsigned k, double phi) {
      RegularizationParams p;
      p.beta = omega * omega / (16.0 * 101.0 * Sigma);
      p.eta2 = p.beta / 2.0;
      p.eta1 = p.eta2 / std::sqrt(2.0 * k / phi);
      return p;
    }
  };

  /// r_i + w_i with independent w_i uniform on D(0, eta2).
  template <class R>
  ShiftList<R> regularize(const ShiftList<R>& r, const RegularizationParams& p, Rng& rng) {
    if (p.eta1 > p.eta2 || p.eta1 < 0.0) throw DomainError("regularize: need 0 <= eta1 <= eta2");
    std::vector<Complex<R>> out;
    out.reserve(r.size());
    for (const auto& ri : r) out.push_back(ri + sample_disk(Complex<R>(), R(p.eta2), rng));
    return ShiftList<R>(std::move(out));
  }

  /// || e_n^* (H - s_1) ... (H - s_k) || by the support-limited row recurrence, in double-double.
  template <class R>
  DoubleDouble en_p_norm(const BasicHessenberg<R>& h, const ShiftList<R>& shifts) {
    const std::size_t n = h.n();
    std::vector<CplxDD> v(n), next(n);
    v[n - 1] = CplxDD(DoubleDouble(1.0));
    std::size_t lo = n - 1;  // v supported on [lo, n)
    for (const auto& s_r : shifts) {
      const CplxDD s(s_r);
      const std::size_t nlo = lo == 0 ? 0 : lo - 1;
      for (std::size_t j = nlo; j < n; ++j) {
        CplxDD acc;
        const std::size_t i_hi = std::min(n - 1, j + 1);
        for (std::size_t i = std::max(lo, nlo); i <= i_hi; ++i) {
          if (i < lo) continue;
          acc += v[i] * CplxDD(h(i, j));
        }
        if (j >= lo) acc -= v[j] * s;
        next[j] = acc;
      }
      for (std::size_t j = nlo; j < n; ++j) v[j] = next[j];
      lo = nlo;
    }
    DoubleDouble ss(0.0);
    for (std::size_t j = lo; j < n; ++j) ss += norm2(v[j]);
    return sqrt(ss);
  }

  /// True if || e_n^* p(H) || < 0.999 theta^k psi_k(H)^k, certifying theta-optimality.
  template <class R>
  bool optimal(const BasicHessenberg<R>& h, const ShiftList<R>& shifts, double theta) {
    const std::size_t k = shifts.size();
    const DoubleDouble lhs = en_p_norm(h, shifts);
    const DoubleDouble rhs = DoubleDouble(0.999) * pow_int(DoubleDouble(theta), static_cast<unsigned>(k)) *
                             potential_power(h, k);
    return lhs < rhs;
  }

  enum class RitzStatus { optimal, decoupled, dichotomy_miss };

  template <class R>
  struct RitzOutcome {
    BasicHessenberg<R> next_h;
    ShiftList<R> ritz_values;              ///< regularized Ritz values
    bool dec = false;
    std::optional<Complex<R>> culprit;     ///< shift that produced the decoupling
    RitzStatus status = RitzStatus::dichotomy_miss;
    SmallEigResult corner;                 ///< raw solver output on the k x k corner
    RegularizationParams params;
  };

  /// Either certifies regularized Ritz values as theta-optimal or decouples H with one of them.
  template <class R>
  RitzOutcome<R> ritz_or_decouple(const BasicHessenberg<R>& h, double omega, double phi, const GlobalData& g,
                                  const SmallEigSolver& solver, Rng& rng) {
    const std::size_t k = g.k;
    if (h.n() <= k) throw DimensionError("ritz_or_decouple: need n > k");
    if (!(to_double(h.min_bottom_subdiagonal(k)) > omega))
      throw PreconditionError("ritz_or_decouple: matrix is omega-decoupled");

    RitzOutcome<R> out;
    out.params = RegularizationParams::for_ritz(omega, g.Sigma, static_cast<unsigned>(k), phi);
    out.corner = solver.solve(h.corner(k).template cast<DoubleDouble>(), out.params.beta / 2.0, phi / 2.0);
    if (out.corner.values.size() != k) throw DimensionError("ritz_or_decouple: solver returned wrong count");

    std::vector<Complex<R>> rho;
    rho.reserve(k);
    for (const auto& z : out.corner.values) {
      if constexpr (std::is_same_v<R, double>)
        rho.push_back(to_cplx(z));
      else
        rho.push_back(z);
    }
    out.ritz_values = regularize(ShiftList<R>(std::move(rho)), out.params, rng);

    if (optimal(h, out.ritz_values, g.theta)) {
      out.next_h = h;
      out.status = RitzStatus::optimal;
      return out;
    }
    for (const auto& r : out.ritz_values) {
      IqrResult<R> step = iqr_multi(h, ShiftList<R>::repeated(r, k));
      if (!(to_double(step.next_h.min_bottom_subdiagonal(k)) > omega)) {
        out.next_h = std::move(step.next_h);
        out.dec = true;
        out.culprit = r;
        out.status = RitzStatus::decoupled;
        return out;
      }
    }
    out.next_h = h;
    out.status = RitzStatus::dichotomy_miss;
    return out;
  }

} // namespace shqr
