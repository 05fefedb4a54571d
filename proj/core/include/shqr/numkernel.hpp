#pragma once

//
// ... Standard header files
//
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

//
// ... shqr header files
//
#include "shqr/complex.hpp"
#include "shqr/double_double.hpp"
#include "shqr/errors.hpp"

namespace shqr {

  /// Seeded generator used by every randomized routine.
  using Rng = std::mt19937_64;

  /// Floating point model: u = 2^(1 - mantissa_bits), with u <= 1/24.
  struct PrecisionConfig {
    int mantissa_bits = 53;

    double unit_roundoff() const { return std::ldexp(1.0, 1 - mantissa_bits); }

    static PrecisionConfig with_bits(int bits) {
      PrecisionConfig p{bits};
      if (bits <= 0 || p.unit_roundoff() > 1.0 / 24.0)
        throw DomainError("PrecisionConfig: unit roundoff must be at most 1/24");
      return p;
    }
  };

  /// G = [[c, s], [-conj(s), c]] with c real; G * (a, b)^T = (r, 0)^T, |r| = norm.
  template <class R>
  struct GivensRotation {
    R c{1.0};
    Complex<R> s{};
    R norm{};

    static GivensRotation identity(R norm = R(0.0)) { return GivensRotation{R(1.0), Complex<R>{}, norm}; }
  };

  /// Rotation that maps (a, b) onto (phase(a) * ||(a, b)||, 0).
  template <class R>
  GivensRotation<R> make_givens(const Complex<R>& a, const Complex<R>& b) {
    if (!isfinite(a) || !isfinite(b)) throw DomainError("make_givens: non-finite input");
    R abs_a = abs(a);
    R abs_b = abs(b);
    R nrm = hypot_real<R>(abs_a, abs_b);
    if (nrm == R(0.0)) throw DomainError("make_givens: zero vector");
    if (abs_b == R(0.0)) return GivensRotation<R>::identity(nrm);
    if (abs_a == R(0.0)) return GivensRotation<R>{R(0.0), conj(b) / abs_b, nrm};
    Complex<R> phase = a / abs_a;
    return GivensRotation<R>{abs_a / nrm, phase * conj(b) / nrm, nrm};
  }

  /// Value that G maps the pair (a, b) onto in its first slot.
  template <class R>
  Complex<R> givens_image(const GivensRotation<R>& g, const Complex<R>& a, const Complex<R>& b) {
    return a * g.c + g.s * b;
  }

  /// (x, y) <- G (x, y) entrywise; x and y are rows of length len with strides.
  template <class R>
  void apply_givens_left(const GivensRotation<R>& g, Complex<R>* x, Complex<R>* y, std::size_t len,
                         std::size_t stride = 1) {
    Complex<R> ms = -conj(g.s);
    for (std::size_t j = 0; j < len; ++j) {
      Complex<R>& xj = x[j * stride];
      Complex<R>& yj = y[j * stride];
      Complex<R> nx = xj * g.c + g.s * yj;
      Complex<R> ny = ms * xj + yj * g.c;
      xj = nx;
      yj = ny;
    }
  }

  /// (x, y) <- (x, y) G^* for two columns x and y.
  template <class R>
  void apply_givens_right(const GivensRotation<R>& g, Complex<R>* x, Complex<R>* y, std::size_t len,
                          std::size_t stride = 1) {
    Complex<R> cs = conj(g.s);
    for (std::size_t j = 0; j < len; ++j) {
      Complex<R>& xj = x[j * stride];
      Complex<R>& yj = y[j * stride];
      Complex<R> nx = xj * g.c + yj * cs;
      Complex<R> ny = yj * g.c - xj * g.s;
      xj = nx;
      yj = ny;
    }
  }

  namespace detail {
    template <class R>
    R pow_power_impl(R b, unsigned e) {
      R r(1.0);
      while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
      }
      return r;
    }
  } // namespace detail

  template <class R>
  R pow_power(const R& b, unsigned e) {
    return detail::pow_power_impl<R>(b, e);
  }

  namespace detail {
    inline double log_of(double x) { return std::log(x); }
    inline double log_of(const DoubleDouble& x) { return std::log(x.hi()); }
  } // namespace detail

  /// Newton iteration for a^(1/k) started above the root after a coarse geometric bisection.
  template <class R>
  R kth_root(const R& a, unsigned k, double eps) {
    constexpr double c_root = 4.0;
    constexpr double C_root = 4.0;
    if (!(a > R(0.0))) throw DomainError("kth_root: argument must be positive");
    if (k == 0) throw DomainError("kth_root: k must be positive");
    if (eps > 0.5 || eps < k * c_root * unit_roundoff<R>()) throw DomainError("kth_root: tolerance out of range");
    if (k == 1) return a;

    // Bracket [lo, hi] with hi / lo <= 2, compared in the log domain.
    const double log_a = detail::log_of(a);
    double lo = std::min(0.0, log_a) / k;
    double hi = std::max(0.0, log_a) / k;
    while (hi - lo > std::numbers::ln2) {
      double mid = 0.5 * (lo + hi);
      if (mid * k > log_a)
        hi = mid;
      else
        lo = mid;
    }
    R x = R(std::exp(hi + 1e-12 + 1e-15 * std::abs(hi)));

    const double steps = std::ceil(C_root * k * std::log2(k * std::log2(1.0 / eps))) + 8.0;
    const R kr = R(static_cast<double>(k));
    for (int it = 0; it < static_cast<int>(steps); ++it) {
      R xk1 = pow_power(x, k - 1);
      R next = ((kr - R(1.0)) * x + a / xk1) / kr;
      if (!(next < x)) break;
      R change = x - next;
      x = next;
      if (change <= R(eps / 16.0) * x) break;
    }
    return x;
  }

  /// Uniform draw from [0, 1) carrying the full mantissa of R.
  template <class R>
  R uniform01(Rng& rng) {
    constexpr double two_m53 = 1.0 / 9007199254740992.0;
    double u = static_cast<double>(rng() >> 11) * two_m53;
    if constexpr (std::is_same_v<R, double>) {
      return u;
    } else {
      double v = static_cast<double>(rng() >> 11) * two_m53;
      return DoubleDouble(u) + DoubleDouble(v) * two_m53;
    }
  }

  /// Standard real normal draw (Box-Muller on two uniforms).
  double standard_normal(Rng& rng);

  void sincos_2pi(const DoubleDouble& t, DoubleDouble& s, DoubleDouble& c);

  /// Uniform point in the closed disk D(center, radius): r = radius * sqrt(U1), angle 2 pi U2.
  template <class R>
  Complex<R> sample_disk(const Complex<R>& center, const R& radius, Rng& rng) {
    if (radius < R(0.0)) throw DomainError("sample_disk: negative radius");
    R u1 = uniform01<R>(rng);
    R u2 = uniform01<R>(rng);
    if (radius == R(0.0)) return center;
    using std::sqrt;
    R r = radius * sqrt(u1);
    if constexpr (std::is_same_v<R, double>) {
      double t = 2.0 * std::numbers::pi * u2;
      return center + Complex<R>(r * std::cos(t), r * std::sin(t));
    } else {
      DoubleDouble s, c;
      sincos_2pi(u2, s, c);
      return center + Complex<R>(r * c, r * s);
    }
  }

  /// Deterministic seed derivation for independent child streams.
  inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

} // namespace shqr
