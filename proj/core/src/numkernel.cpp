#include "shqr/numkernel.hpp"

namespace shqr {

  double standard_normal(Rng& rng) {
    double u1 = 1.0 - uniform01<double>(rng);  // (0, 1]
    double u2 = uniform01<double>(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  void sincos_2pi(const DoubleDouble& t, DoubleDouble& s, DoubleDouble& c) {
    // 2 pi to double-double precision.
    const DoubleDouble two_pi = DoubleDouble::from_parts(6.283185307179586232e+00, 2.449293598294706414e-16);
    DoubleDouble x = ldexp(two_pi * t, -6);
    DoubleDouble x2 = x * x;
    DoubleDouble term = x;
    DoubleDouble sn = x;
    DoubleDouble cterm(1.0);
    DoubleDouble cs(1.0);
    for (int i = 1; i < 20; ++i) {
      term = -term * x2 / static_cast<double>((2 * i) * (2 * i + 1));
      cterm = -cterm * x2 / static_cast<double>((2 * i - 1) * (2 * i));
      sn += term;
      cs += cterm;
    }
    for (int i = 0; i < 6; ++i) {
      DoubleDouble s2 = 2.0 * sn * cs;
      DoubleDouble c2 = cs * cs - sn * sn;
      sn = s2;
      cs = c2;
    }
    s = sn;
    c = cs;
  }

} // namespace shqr
