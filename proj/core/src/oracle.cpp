#include "shqr/oracle.hpp"

//
// ... Standard header files
//
#include <algorithm>
#include <cmath>
#include <limits>

//
// ... shqr header files
//
#include "shqr/hessenberg.hpp"

namespace shqr::oracle {

  namespace {

    const DD kUnit = DD(std::ldexp(1.0, -104));

    CplxDD one() { return CplxDD(DD(1.0)); }

    std::vector<CplxDD> row_times(const std::vector<CplxDD>& v, const DenseMatrix<DD>& m, const CplxDD& s) {
      const std::size_t n = m.rows();
      std::vector<CplxDD> out(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (v[i] == CplxDD()) continue;
        for (std::size_t j = 0; j < n; ++j) out[j] += v[i] * m(i, j);
      }
      for (std::size_t j = 0; j < n; ++j) out[j] -= v[j] * s;
      return out;
    }

    DD vec_norm(const std::vector<CplxDD>& v) {
      DD scale(0.0);
      for (const auto& z : v) scale = std::max(scale, abs(z));
      if (scale == DD(0.0)) return DD(0.0);
      DD ss(0.0);
      for (const auto& z : v) ss += norm2(z / scale);
      return scale * sqrt(ss);
    }

    void require_square(const DenseMatrix<DD>& m) {
      if (!m.square() || m.rows() == 0) throw DimensionError("oracle: need a nonempty square matrix");
    }

  } // namespace

  DD dense_en_p_norm(const DenseMatrix<DD>& m, const std::vector<CplxDD>& shifts) {
    require_square(m);
    if (shifts.empty()) throw DomainError("dense_en_p_norm: empty shift list");
    std::vector<CplxDD> v(m.rows());
    v.back() = one();
    for (const auto& s : shifts) v = row_times(v, m, s);
    return vec_norm(v);
  }

  DD resolvent_tau(const DenseMatrix<DD>& m, const std::vector<CplxDD>& shifts) {
    require_square(m);
    if (shifts.empty()) throw DomainError("resolvent_tau: empty shift list");
    const std::size_t n = m.rows();
    const DD mnorm = frobenius_norm(m);
    std::vector<CplxDD> y(n);
    y.back() = one();
    for (const auto& s : shifts) {
      // Solve x (M - s) = y, i.e. (M - s)^T x^T = y^T, by Gaussian elimination with partial pivoting.
      DenseMatrix<DD> a(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = m(j, i);
      for (std::size_t i = 0; i < n; ++i) a(i, i) -= s;
      std::vector<CplxDD> b = y;
      for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
          if (abs(a(r, c)) > abs(a(piv, c))) piv = r;
        if (abs(a(piv, c)) <= DD(1e-29) * (mnorm + abs(s)))
          throw SingularityError("resolvent_tau: shifted matrix is singular at oracle precision");
        if (piv != c) {
          for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(piv, j));
          std::swap(b[c], b[piv]);
        }
        for (std::size_t r = c + 1; r < n; ++r) {
          const CplxDD f = a(r, c) / a(c, c);
          if (f == CplxDD()) continue;
          for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
          b[r] -= f * b[c];
        }
      }
      for (std::size_t c = n; c-- > 0;) {
        CplxDD acc = b[c];
        for (std::size_t j = c + 1; j < n; ++j) acc -= a(c, j) * b[j];
        b[c] = acc / a(c, c);
      }
      y = std::move(b);
    }
    return DD(1.0) / vec_norm(y);
  }

  SchurForm schur(const DenseMatrix<DD>& m) {
    require_square(m);
    const std::size_t n = m.rows();
    SchurForm out;
    out.t = householder_hessenberg(m, &out.z).dense();
    DenseMatrix<DD>& t = out.t;
    DenseMatrix<DD>& z = out.z;
    const DD tnorm = frobenius_norm(t);
    const DD tiny = DD(1e-300) + tnorm * DD(1e-40);

    std::size_t hi = n - 1;
    std::size_t its = 0;
    std::size_t total = 0;
    while (hi > 0) {
      std::size_t l = hi;
      while (l > 0) {
        const DD sub = abs(t(l, l - 1));
        if (sub <= kUnit * (abs(t(l, l)) + abs(t(l - 1, l - 1))) || sub <= tiny) {
          t(l, l - 1) = CplxDD();
          break;
        }
        --l;
      }
      if (l == hi) {
        --hi;
        its = 0;
        continue;
      }
      if (++total > 100 * n) throw Error("oracle schur: QR iteration did not converge");
      ++its;

      CplxDD sigma;
      if (its % 11 == 0) {
        sigma = t(hi, hi) + CplxDD(DD(0.75) * abs(t(hi, hi - 1)), DD(0.0));
      } else {
        const CplxDD a = t(hi - 1, hi - 1), b = t(hi - 1, hi), c = t(hi, hi - 1), d = t(hi, hi);
        const CplxDD half_tr = (a + d) * DD(0.5);
        const CplxDD disc = sqrt((a - d) * (a - d) * DD(0.25) + b * c);
        const CplxDD e1 = half_tr + disc, e2 = half_tr - disc;
        sigma = abs(e1 - d) <= abs(e2 - d) ? e1 : e2;
      }

      // Explicit-shift QR step on the active block [l, hi], applied to the full matrix.
      for (std::size_t i = l; i <= hi; ++i) t(i, i) -= sigma;
      std::vector<GivensRotation<DD>> rots;
      rots.reserve(hi - l);
      for (std::size_t i = l; i < hi; ++i) {
        const CplxDD x = t(i, i), y = t(i + 1, i);
        GivensRotation<DD> g =
          (x == CplxDD() && y == CplxDD()) ? GivensRotation<DD>::identity() : make_givens(x, y);
        t(i, i) = givens_image(g, x, y);
        t(i + 1, i) = CplxDD();
        apply_givens_left(g, &t(i, i + 1), &t(i + 1, i + 1), n - i - 1);
        rots.push_back(g);
      }
      for (std::size_t q = 0; q < rots.size(); ++q) {
        const std::size_t i = l + q;
        apply_givens_right(rots[q], &t(0, i), &t(0, i + 1), std::min(i + 2, hi + 1), n);
        apply_givens_right(rots[q], &z(0, i), &z(0, i + 1), n, n);
      }
      for (std::size_t i = l; i <= hi; ++i) t(i, i) += sigma;
    }
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) t(i, j) = CplxDD();
    return out;
  }

  std::vector<CplxDD> ref_eigs(const DenseMatrix<DD>& m) {
    const SchurForm s = schur(m);
    std::vector<CplxDD> out;
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(s.t(i, i));
    return out;
  }

  EigenDecomposition eig(const DenseMatrix<DD>& m) {
    const SchurForm s = schur(m);
    const std::size_t n = m.rows();
    const DD tnorm = std::max(frobenius_norm(s.t), DD(1e-300));
    EigenDecomposition out;
    for (std::size_t i = 0; i < n; ++i) out.values.push_back(s.t(i, i));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (abs(out.values[i] - out.values[j]) <= DD(1e-28) * tnorm)
          throw Error("oracle eig: eigenvalues closer than oracle resolution");

    out.vectors = DenseMatrix<DD>(n, n);
    std::vector<CplxDD> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::fill(y.begin(), y.end(), CplxDD());
      y[i] = one();
      const CplxDD lam = s.t(i, i);
      for (std::size_t j = i; j-- > 0;) {
        CplxDD acc;
        for (std::size_t l = j + 1; l <= i; ++l) acc += s.t(j, l) * y[l];
        y[j] = -acc / (s.t(j, j) - lam);
      }
      std::vector<CplxDD> v(n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t l = 0; l <= i; ++l) v[r] += s.z(r, l) * y[l];
      const DD nv = vec_norm(v);
      for (std::size_t r = 0; r < n; ++r) out.vectors(r, i) = v[r] / nv;
    }
    return out;
  }

  DD hyman_determinant(const DenseMatrix<DD>& m, const CplxDD& zval) {
    require_square(m);
    const HessenbergDD h = householder_hessenberg(m);
    const std::size_t n = h.n();
    DD det(1.0);
    std::size_t lo = 0;
    for (std::size_t e = 1; e <= n; ++e) {
      if (e < n && !(h(e, e - 1) == CplxDD())) continue;
      // Block [lo, e): x_last = 1, rows bottom-up determine the rest; row lo gives the residual.
      const std::size_t b = e - lo;
      std::vector<CplxDD> x(b);
      x[b - 1] = one();
      DD subprod(1.0);
      for (std::size_t r = b - 1; r >= 1; --r) {
        CplxDD acc;
        for (std::size_t c = r; c < b; ++c) {
          CplxDD hv = h(lo + r, lo + c);
          if (c == r) hv -= zval;
          acc += hv * x[c];
        }
        const CplxDD sub = h(lo + r, lo + r - 1);
        x[r - 1] = -acc / sub;
        subprod *= abs(sub);
      }
      CplxDD f;
      for (std::size_t c = 0; c < b; ++c) {
        CplxDD hv = h(lo, lo + c);
        if (c == 0) hv -= zval;
        f += hv * x[c];
      }
      det *= subprod * abs(f);
      lo = e;
    }
    return det;
  }

  double max_relative_residual(const DenseMatrix<DD>& m, const std::vector<CplxDD>& lambdas) {
    const double mn = frobenius_norm(m).to_double();
    const double scale = std::pow(mn, static_cast<double>(m.rows()));
    double worst = 0.0;
    for (const auto& l : lambdas) worst = std::max(worst, hyman_determinant(m, l).to_double() / scale);
    return worst;
  }

  SpectralMeasure spectral_measure(const DenseMatrix<DD>& h) {
    const EigenDecomposition e = eig(h);
    const std::size_t n = h.rows();
    SpectralMeasure mu;
    mu.eigenvalues = e.values;
    DD total(0.0);
    for (std::size_t i = 0; i < n; ++i) {
      mu.weights.push_back(norm2(e.vectors(n - 1, i)));
      total += mu.weights.back();
    }
    if (total == DD(0.0)) throw Error("spectral_measure: e_n is orthogonal to every eigenvector");
    for (auto& w : mu.weights) w /= total;
    return mu;
  }

  PromisingSides promising_sides(const SpectralMeasure& mu, const CplxDD& r, const std::vector<CplxDD>& ritz,
                                 double alpha) {
    const unsigned k = static_cast<unsigned>(ritz.size());
    PromisingSides s{DD(0.0), DD(0.0)};
    for (std::size_t i = 0; i < mu.eigenvalues.size(); ++i) {
      const CplxDD lam = mu.eigenvalues[i];
      s.lhs += mu.weights[i] / pow_int(abs(lam - r), k);
      DD p(1.0);
      for (const auto& q : ritz) p *= abs(lam - q);
      s.rhs += mu.weights[i] / p;
    }
    s.rhs /= pow_int(DD(alpha), k);
    return s;
  }

  bool promising_check(const DenseMatrix<DD>& h, const CplxDD& r, const std::vector<CplxDD>& ritz, double alpha) {
    return promising_sides(spectral_measure(h), r, ritz, alpha).passes();
  }

  std::vector<double> singular_values(const DenseMatrix<double>& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Cplx>> col(cols, std::vector<Cplx>(rows));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) col[j][i] = m(i, j);
    const double tol = 1e-15;
    for (int sweep = 0; sweep < 80; ++sweep) {
      bool rotated = false;
      for (std::size_t p = 0; p + 1 < cols; ++p)
        for (std::size_t q = p + 1; q < cols; ++q) {
          double a = 0.0, b = 0.0;
          Cplx g;
          for (std::size_t i = 0; i < rows; ++i) {
            a += norm2(col[p][i]);
            b += norm2(col[q][i]);
            g += conj(col[p][i]) * col[q][i];
          }
          const double gabs = shqr::abs(g);
          if (gabs <= tol * std::sqrt(a * b) || gabs == 0.0) continue;
          rotated = true;
          const Cplx phase = g / gabs;
          const double zeta = (b - a) / (2.0 * gabs);
          const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = c * t;
          for (std::size_t i = 0; i < rows; ++i) {
            const Cplx xp = col[p][i];
            const Cplx xq = col[q][i] * conj(phase);
            col[p][i] = xp * c - xq * s;
            col[q][i] = (xp * s + xq * c) * phase;
          }
        }
      if (!rotated) break;
    }
    std::vector<double> sv;
    for (const auto& c : col) {
      double ss = 0.0;
      for (const auto& v : c) ss += norm2(v);
      sv.push_back(std::sqrt(ss));
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
  }

  double spectral_norm(const DenseMatrix<DD>& m) {
    return singular_values(m.cast<double>()).front();
  }

  double gap(const std::vector<Cplx>& v) {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) g = std::min(g, shqr::abs(v[i] - v[j]));
    return g;
  }

  ConditionReport condition_report(const DenseMatrix<DD>& m) {
    const EigenDecomposition e = eig(m);
    ConditionReport rep;
    const std::vector<double> sv = singular_values(e.vectors.cast<double>());
    rep.kappa_v = std::max(1.0, sv.front() / sv.back());
    std::vector<Cplx> vals;
    for (const auto& z : e.values) vals.push_back(to_cplx(z));
    rep.gap = vals.size() > 1 ? gap(vals) : 0.0;
    rep.norm = spectral_norm(m);
    return rep;
  }

  double matched_distance(const std::vector<Cplx>& a, const std::vector<Cplx>& b) {
    if (a.size() != b.size()) throw DimensionError("matched_distance: sizes differ");
    const std::size_t n = a.size();
    if (n == 0) return 0.0;
    // Hungarian algorithm with potentials, 1-based.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    std::vector<bool> used(n + 1);
    auto cost = [&](std::size_t i, std::size_t j) { return shqr::abs(a[i - 1] - b[j - 1]); };
    for (std::size_t i = 1; i <= n; ++i) {
      p[0] = i;
      std::size_t j0 = 0;
      std::fill(minv.begin(), minv.end(), inf);
      std::fill(used.begin(), used.end(), false);
      do {
        used[j0] = true;
        const std::size_t i0 = p[j0];
        double delta = inf;
        std::size_t j1 = 0;
        for (std::size_t j = 1; j <= n; ++j) {
          if (used[j]) continue;
          const double cur = cost(i0, j) - u[i0] - v[j];
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
          if (minv[j] < delta) {
            delta = minv[j];
            j1 = j;
          }
        }
        for (std::size_t j = 0; j <= n; ++j) {
          if (used[j]) {
            u[p[j]] += delta;
            v[j] -= delta;
          } else {
            minv[j] -= delta;
          }
        }
        j0 = j1;
      } while (p[j0] != 0);
      do {
        const std::size_t j1 = way[j0];
        p[j0] = p[j1];
        j0 = j1;
      } while (j0);
    }
    double worst = 0.0;
    for (std::size_t j = 1; j <= n; ++j) worst = std::max(worst, cost(p[j], j));
    return worst;
  }

} // namespace shqr::oracle
