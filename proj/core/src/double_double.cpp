#include "shqr/double_double.hpp"

//
// ... Standard header files
//
#include <cstdio>
#include <ostream>

namespace shqr {

  namespace {

    inline void two_sum(double a, double b, double& s, double& e) {
      s = a + b;
      double bb = s - a;
      e = (a - (s - bb)) + (b - bb);
    }

    inline void quick_two_sum(double a, double b, double& s, double& e) {
      s = a + b;
      e = b - (s - a);
    }

    inline void split(double a, double& hi, double& lo) {
      constexpr double splitter = 134217729.0;  // 2^27 + 1
      constexpr double thresh = 6.69692879491417e+299;
      if (a > thresh || a < -thresh) {
        a *= 3.7252902984619140625e-09;  // 2^-28
        double t = splitter * a;
        hi = t - (t - a);
        lo = a - hi;
        hi *= 268435456.0;
        lo *= 268435456.0;
      } else {
        double t = splitter * a;
        hi = t - (t - a);
        lo = a - hi;
      }
    }

    inline void two_prod(double a, double b, double& p, double& e) {
      p = a * b;
      double ah, al, bh, bl;
      split(a, ah, al);
      split(b, bh, bl);
      e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    }

  } // namespace

  DoubleDouble& DoubleDouble::operator+=(const DoubleDouble& o) {
    double s, e, t, f;
    two_sum(hi_, o.hi_, s, e);
    two_sum(lo_, o.lo_, t, f);
    e += t;
    quick_two_sum(s, e, s, e);
    e += f;
    quick_two_sum(s, e, hi_, lo_);
    return *this;
  }

  DoubleDouble& DoubleDouble::operator-=(const DoubleDouble& o) {
    return *this += -o;
  }

  DoubleDouble& DoubleDouble::operator*=(const DoubleDouble& o) {
    double p, e;
    two_prod(hi_, o.hi_, p, e);
    e += hi_ * o.lo_ + lo_ * o.hi_;
    quick_two_sum(p, e, hi_, lo_);
    return *this;
  }

  DoubleDouble& DoubleDouble::operator/=(const DoubleDouble& o) {
    double q1 = hi_ / o.hi_;
    DoubleDouble r = *this - o * q1;
    double q2 = r.hi_ / o.hi_;
    r -= o * q2;
    double q3 = r.hi_ / o.hi_;
    double s, e;
    quick_two_sum(q1, q2, s, e);
    *this = DoubleDouble::from_parts(s, e) + DoubleDouble(q3);
    return *this;
  }

  DoubleDouble sqrt(const DoubleDouble& a) {
    if (a.hi() == 0.0) return DoubleDouble();
    if (a.hi() < 0.0) return DoubleDouble(std::numeric_limits<double>::quiet_NaN());
    double x = 1.0 / std::sqrt(a.hi());
    double ax = a.hi() * x;
    double p, e;
    two_prod(ax, ax, p, e);
    DoubleDouble diff = a - DoubleDouble::from_parts(p, e);
    double corr = diff.hi() * (x * 0.5);
    double s, t;
    two_sum(ax, corr, s, t);
    return DoubleDouble::from_parts(s, t);
  }

  DoubleDouble abs(const DoubleDouble& a) {
    return a.hi() < 0.0 ? -a : a;
  }

  DoubleDouble ldexp(const DoubleDouble& a, int e) {
    return DoubleDouble::from_parts(std::ldexp(a.hi(), e), std::ldexp(a.lo(), e));
  }

  DoubleDouble log(const DoubleDouble& a) {
    // One Newton step on exp(x) = a from the double estimate doubles the accuracy.
    double x0 = std::log(a.hi());
    DoubleDouble x(x0);
    return x + a * exp(-x) - 1.0;
  }

  DoubleDouble exp(const DoubleDouble& a) {
    // exp(a) = 2^m * exp(r), |r| <= ln2/2, then r is scaled by 2^-10 for the series.
    constexpr double ln2_hi = 6.931471805599452862e-01;
    constexpr double ln2_lo = 2.319046813846299558e-17;
    if (a.hi() > 709.0) return DoubleDouble(std::numeric_limits<double>::infinity());
    if (a.hi() < -745.0) return DoubleDouble();
    double m = std::floor(a.hi() / ln2_hi + 0.5);
    DoubleDouble r = a - DoubleDouble::from_parts(ln2_hi, ln2_lo) * m;
    r = ldexp(r, -10);
    DoubleDouble term = r;
    DoubleDouble sum = r;
    for (int i = 2; i < 30; ++i) {
      term = term * r / static_cast<double>(i);
      sum += term;
      if (std::abs(term.hi()) < 1e-34) break;
    }
    // (1 + s)^2 - 1 = s(2 + s), repeated 10 times.
    for (int i = 0; i < 10; ++i) sum = sum * (sum + 2.0);
    return ldexp(sum + 1.0, static_cast<int>(m));
  }

  DoubleDouble pow_int(DoubleDouble a, unsigned int e) {
    DoubleDouble r(1.0);
    while (e) {
      if (e & 1u) r *= a;
      a *= a;
      e >>= 1u;
    }
    return r;
  }

  bool isfinite(const DoubleDouble& a) {
    return std::isfinite(a.hi()) && std::isfinite(a.lo());
  }

  std::string to_string(const DoubleDouble& a) {
    if (!isfinite(a)) return std::to_string(a.hi());
    if (a.hi() == 0.0) return "0";
    DoubleDouble x = abs(a);
    int e10 = static_cast<int>(std::floor(std::log10(x.hi())));
    DoubleDouble scale = pow_int(DoubleDouble(10.0), static_cast<unsigned>(std::abs(e10)));
    x = e10 >= 0 ? x / scale : x * scale;
    if (x.hi() >= 10.0) {
      x /= 10.0;
      ++e10;
    } else if (x.hi() < 1.0) {
      x *= 10.0;
      --e10;
    }
    std::string digits;
    for (int i = 0; i < 32; ++i) {
      int d = static_cast<int>(std::floor(x.hi()));
      if (d < 0) d = 0;
      if (d > 9) d = 9;
      digits.push_back(static_cast<char>('0' + d));
      x = (x - static_cast<double>(d)) * 10.0;
    }
    char exp_buf[16];
    std::snprintf(exp_buf, sizeof exp_buf, "e%+d", e10);
    return std::string(a.hi() < 0.0 ? "-" : "") + digits.substr(0, 1) + "." + digits.substr(1) + exp_buf;
  }

  std::ostream& operator<<(std::ostream& os, const DoubleDouble& a) {
    return os << to_string(a);
  }

} // namespace shqr
