#pragma once

//
// ... Standard header files
//
#include <cmath>
#include <vector>

//
// ... shqr header files
//
#include "shqr/iqr.hpp"
#include "shqr/params.hpp"

namespace shqr {

  /// Binary search over halvings of the Ritz set for a promising value.
  ///
  /// Round j compares comp_tau of the two halves, each root repeated 2^(j-1) times,
  /// and keeps the smaller; ties keep the first half.
  template <class R>
  Complex<R> find(const BasicHessenberg<R>& h, const ShiftList<R>& ritz) {
    const std::size_t k = ritz.size();
    if (k == 0 || (k & (k - 1)) != 0) throw DomainError("find: Ritz set size must be a power of two");
    std::vector<Complex<R>> cur = ritz.roots();
    std::size_t rep = 1;
    while (cur.size() > 1) {
      const std::size_t half = cur.size() / 2;
      R best{};
      std::size_t best_b = 0;
      for (std::size_t b = 0; b < 2; ++b) {
        std::vector<Complex<R>> roots;
        roots.reserve(half * rep);
        for (std::size_t i = b * half; i < (b + 1) * half; ++i)
          for (std::size_t t = 0; t < rep; ++t) roots.push_back(cur[i]);
        const R tau = comp_tau(h, ShiftList<R>(std::move(roots)));
        if (b == 0 || tau < best) {
          best = tau;
          best_b = b;
        }
      }
      cur = std::vector<Complex<R>>(cur.begin() + best_b * half, cur.begin() + (best_b + 1) * half);
      rep *= 2;
    }
    return cur.front();
  }

  /// S(eps) = (2 pi / 3 sqrt 3)(1.99 + 1/0.99 eps)^2 + (4 sqrt 2 / sqrt 3)(1.99 + 1/0.99 eps) + 1.
  double net_size_bound(double epsilon);

  /// Triangular lattice with spacing sqrt(3) * 0.99 eps, restricted to D(0, 1 + 1.99 eps).
  /// Points come in row-major order of lattice coordinates.
  std::vector<Cplx> build_net(double epsilon);

  /// epsilon of the exceptional net for given constants.
  double exc_epsilon(const GlobalData& g, double xi);

  template <class R>
  struct ExcResult {
    ShiftList<R> candidates;  ///< in net order
    double r_hat = 0.0;
    double epsilon = 0.0;
    double xi = 0.0;
    Complex<R> w;
    std::size_t net_size = 0;
  };

  /// Randomly translated net of D(r, R_hat), points outside projected onto the boundary.
  template <class R>
  ExcResult<R> exc(const BasicHessenberg<R>& h, const Complex<R>& r, double xi, const GlobalData& g, Rng& rng) {
    const std::size_t k = g.k;
    ExcResult<R> out;
    out.xi = xi;
    out.epsilon = exc_epsilon(g, xi);
    const double kd = static_cast<double>(k);
    const R psi = potential(h, k);
    const R r_hat = R(std::exp2(1.0 / kd) * g.alpha * std::pow(g.B, 1.0 / kd) * g.theta) * psi;
    out.r_hat = to_double(r_hat);
    out.w = sample_disk(Complex<R>(), R(out.epsilon) * r_hat, rng);

    const std::vector<Cplx> net = build_net(out.epsilon);
    out.net_size = net.size();
    std::vector<Complex<R>> cand;
    cand.reserve(net.size());
    for (const Cplx& p : net) {
      Complex<R> s = r + out.w + Complex<R>(R(p.re), R(p.im)) * r_hat;
      const Complex<R> d = s - r;
      const R dist = abs(d);
      if (dist > r_hat) s = r + d * (r_hat / dist);
      cand.push_back(s);
    }
    out.candidates = ShiftList<R>(std::move(cand));
    return out;
  }

  enum class ShBranch { ritz_shift, exceptional };

  template <class R>
  struct ShStepOutcome {
    BasicHessenberg<R> next_h;
    ShBranch branch = ShBranch::ritz_shift;
    ShiftList<R> shift_used;
    double psi_before = 0.0;
    double psi_after = 0.0;
    bool decoupled = false;        ///< next_h has a bottom-k subdiagonal <= omega
    bool success = true;           ///< false if no exceptional candidate qualified
    Complex<R> promising;          ///< output of find
    std::size_t candidates_tried = 0;
  };

  /// One potential-reducing step: Ritz shift when it already works, exceptional shift otherwise.
  template <class R>
  ShStepOutcome<R> sh_step(const BasicHessenberg<R>& h, const ShiftList<R>& ritz, double omega, const GlobalData& g,
                           Rng& rng) {
    const std::size_t k = g.k;
    if (h.n() <= k) throw DimensionError("sh_step: need n > k");
    if (!(to_double(h.min_bottom_subdiagonal(k)) > omega))
      throw PreconditionError("sh_step: matrix is omega-decoupled");

    ShStepOutcome<R> out;
    const R psi = potential(h, k);
    out.psi_before = to_double(psi);
    out.promising = find(h, ritz);

    auto measure = [&](const BasicHessenberg<R>& next, double& psi_after) {
      psi_after = to_double(potential(next, k));
      return !(to_double(next.min_bottom_subdiagonal(k)) > omega);
    };

    const ShiftList<R> ritz_shift = ShiftList<R>::repeated(out.promising, k);
    const DoubleDouble tau = DoubleDouble(comp_tau(h, ritz_shift));
    const DoubleDouble bar =
      pow_int(DoubleDouble(1.0 - g.gamma), static_cast<unsigned>(k)) * potential_power(h, k);
    if (tau < bar) {
      out.branch = ShBranch::ritz_shift;
      out.shift_used = ritz_shift;
      out.next_h = iqr_multi(h, ritz_shift).next_h;
      out.decoupled = measure(out.next_h, out.psi_after);
      return out;
    }

    out.branch = ShBranch::exceptional;
    const double xi = 0.999 * (1.0 - g.gamma);
    const ExcResult<R> ex = exc(h, out.promising, xi, g, rng);
    const R target = R(1.002 * (1.0 - g.gamma)) * psi;
    for (const auto& s : ex.candidates) {
      ++out.candidates_tried;
      ShiftList<R> shift = ShiftList<R>::repeated(s, k);
      BasicHessenberg<R> next = iqr_multi(h, shift).next_h;
      double psi_after = 0.0;
      const bool dec = measure(next, psi_after);
      if (dec || potential(next, k) < target) {
        out.shift_used = std::move(shift);
        out.next_h = std::move(next);
        out.psi_after = psi_after;
        out.decoupled = dec;
        return out;
      }
    }
    out.success = false;
    out.next_h = h;
    out.psi_after = out.psi_before;
    return out;
  }

} // namespace shqr
