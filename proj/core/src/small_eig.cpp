#include "shqr/ritz.hpp"

//
// ... Standard header files
//
#include <cmath>
#include <limits>
#include <numbers>

//
// ... shqr header files
//
#include "shqr/hessenberg.hpp"

namespace shqr {

  namespace {

    using DD = DoubleDouble;

    /// Coefficients of det(z - H) and of its entrywise-absolute majorant.
    void charpoly_with_majorant(const HessenbergDD& h, std::vector<CplxDD>& coef, std::vector<DD>& major) {
      const std::size_t m = h.n();
      std::vector<std::vector<CplxDD>> p(m + 1);
      std::vector<std::vector<DD>> pa(m + 1);
      p[0] = {CplxDD(DD(1.0))};
      pa[0] = {DD(1.0)};
      for (std::size_t j = 1; j <= m; ++j) {
        const CplxDD hjj = h(j - 1, j - 1);
        std::vector<CplxDD> cur(j + 1);
        std::vector<DD> cura(j + 1);
        for (std::size_t t = 0; t < j; ++t) {
          cur[t + 1] += p[j - 1][t];
          cur[t] -= hjj * p[j - 1][t];
          cura[t + 1] += pa[j - 1][t];
          cura[t] += abs(hjj) * pa[j - 1][t];
        }
        // - sum_{i<j} h(i, j) * prod_{l=i+1..j} h(l, l-1) * p_{i-1}, 1-based.
        CplxDD sub(DD(1.0));
        DD suba(1.0);
        for (std::size_t i = j - 1; i >= 1; --i) {
          sub *= h(i, i - 1);
          suba *= abs(h(i, i - 1));
          const CplxDD f = h(i - 1, j - 1) * sub;
          const DD fa = abs(h(i - 1, j - 1)) * suba;
          for (std::size_t t = 0; t < p[i - 1].size(); ++t) {
            cur[t] -= f * p[i - 1][t];
            cura[t] += fa * pa[i - 1][t];
          }
        }
        p[j] = std::move(cur);
        pa[j] = std::move(cura);
      }
      coef = std::move(p[m]);
      major = std::move(pa[m]);
    }

    void horner(const std::vector<CplxDD>& c, const CplxDD& z, CplxDD& pv, CplxDD& dpv) {
      const std::size_t m = c.size() - 1;
      pv = c[m];
      dpv = CplxDD();
      for (std::size_t j = m; j-- > 0;) {
        dpv = dpv * z + pv;
        pv = pv * z + c[j];
      }
    }

    DD eval_abs(const std::vector<DD>& a, const DD& r) {
      DD acc(0.0);
      for (std::size_t j = a.size(); j-- > 0;) acc = acc * r + a[j];
      return acc;
    }

    std::vector<CplxDD> aberth(const std::vector<CplxDD>& c) {
      const std::size_t m = c.size() - 1;
      if (m == 1) return {-c[0]};

      double rho = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double a = abs(c[j]).to_double();
        if (a > 0.0) rho = std::max(rho, std::pow(a, 1.0 / static_cast<double>(m - j)));
      }
      if (rho == 0.0) return std::vector<CplxDD>(m);

      std::vector<CplxDD> z(m);
      for (std::size_t i = 0; i < m; ++i) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m) + 0.7;
        z[i] = CplxDD(DD(rho * std::cos(t)), DD(rho * std::sin(t)));
      }

      const DD tol = DD(1e-31);
      std::vector<bool> done(m, false);
      for (int it = 0; it < 2000; ++it) {
        bool all = true;
        for (std::size_t i = 0; i < m; ++i) {
          if (done[i]) continue;
          CplxDD pv, dpv;
          horner(c, z[i], pv, dpv);
          if (pv == CplxDD()) {
            done[i] = true;
            continue;
          }
          const CplxDD ratio = pv / dpv;
          CplxDD sum;
          for (std::size_t j = 0; j < m; ++j)
            if (j != i) sum += CplxDD(DD(1.0)) / (z[i] - z[j]);
          const CplxDD w = ratio / (CplxDD(DD(1.0)) - ratio * sum);
          z[i] -= w;
          const DD scale = std::max(abs(z[i]), DD(1e-300));
          if (abs(w) <= tol * scale) done[i] = true;
          else all = false;
        }
        if (all) break;
      }
      for (int pass = 0; pass < 2; ++pass)
        for (auto& zi : z) {
          CplxDD pv, dpv;
          horner(c, zi, pv, dpv);
          if (!(dpv == CplxDD()) && !(pv == CplxDD())) zi -= pv / dpv;
        }
      return z;
    }

    /// Error bound from inclusion disks; +inf when non-finite.
    double certify(const std::vector<CplxDD>& c, const std::vector<DD>& major, const std::vector<CplxDD>& z) {
      const std::size_t m = z.size();
      if (m == 1) {
        // Root -c0 exact up to rounding of the coefficient itself.
        return (DD(16.0) * DD(std::ldexp(1.0, -105)) * major[0]).to_double();
      }
      const DD coef_err = DD(8.0 * static_cast<double>(m)) * DD(std::ldexp(1.0, -105));
      std::vector<double> rad(m);
      for (std::size_t i = 0; i < m; ++i) {
        CplxDD pv, dpv;
        horner(c, z[i], pv, dpv);
        CplxDD prod(DD(1.0));
        for (std::size_t j = 0; j < m; ++j)
          if (j != i) prod *= z[i] - z[j];
        const DD den = abs(prod);
        if (den == DD(0.0)) return std::numeric_limits<double>::infinity();
        const DD num = abs(pv) + coef_err * eval_abs(major, abs(z[i]));
        rad[i] = (DD(static_cast<double>(m)) * num / den).to_double();
      }
      // Connected components of the disk union; each contains as many roots as disks.
      std::vector<std::size_t> comp(m);
      for (std::size_t i = 0; i < m; ++i) comp[i] = i;
      auto find = [&](std::size_t x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
      };
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
          if (abs(z[i] - z[j]).to_double() <= rad[i] + rad[j]) comp[find(i)] = find(j);
      std::vector<double> span(m, 0.0);
      std::vector<std::size_t> count(m, 0);
      for (std::size_t i = 0; i < m; ++i) {
        span[find(i)] += 2.0 * rad[i];
        ++count[find(i)];
      }
      double bound = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        if (count[i] == 0) continue;
        bound = std::max(bound, count[i] == 1 ? span[i] / 2.0 : span[i]);
      }
      return bound;
    }

  } // namespace

  std::vector<CplxDD> hessenberg_charpoly(const HessenbergDD& h) {
    std::vector<CplxDD> c;
    std::vector<DD> a;
    charpoly_with_majorant(h, c, a);
    return c;
  }

  SmallEigResult AberthSolver::solve(const DenseMatrix<DoubleDouble>& m, double beta, double /*phi*/) const {
    if (!m.square() || m.rows() == 0) throw DimensionError("AberthSolver: need a nonempty square matrix");
    const HessenbergDD h = householder_hessenberg(m);
    const std::size_t n = h.n();

    SmallEigResult out;
    out.values.reserve(n);
    std::size_t lo = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      if (i < n && !(h(i, i - 1) == CplxDD())) continue;
      const HessenbergDD blk = h.block(lo, i);
      if (blk.n() == 1) {
        out.values.push_back(blk(0, 0));
      } else {
        std::vector<CplxDD> coef;
        std::vector<DD> major;
        charpoly_with_majorant(blk, coef, major);
        std::vector<CplxDD> roots = aberth(coef);
        out.error_bound = std::max(out.error_bound, certify(coef, major, roots));
        out.values.insert(out.values.end(), roots.begin(), roots.end());
      }
      lo = i;
    }
    out.certified = out.error_bound <= beta;
    return out;
  }

} // namespace shqr
