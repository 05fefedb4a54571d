#pragma once

//
// ... Standard header files
//
#include <cmath>
#include <compare>
#include <iosfwd>
#include <limits>
#include <string>

namespace shqr {

  /// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2; about 106 mantissa bits.
  ///
  /// Products use Dekker splitting so results do not depend on hardware FMA.
  class DoubleDouble {
  public:
    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double x) : hi_(x) {}

    static constexpr DoubleDouble from_parts(double hi, double lo) {
      DoubleDouble r;
      r.hi_ = hi;
      r.lo_ = lo;
      return r;
    }

    constexpr double hi() const { return hi_; }
    constexpr double lo() const { return lo_; }
    constexpr double to_double() const { return hi_ + lo_; }
    explicit constexpr operator double() const { return to_double(); }

    DoubleDouble& operator+=(const DoubleDouble& o);
    DoubleDouble& operator-=(const DoubleDouble& o);
    DoubleDouble& operator*=(const DoubleDouble& o);
    DoubleDouble& operator/=(const DoubleDouble& o);

    friend DoubleDouble operator+(DoubleDouble a, const DoubleDouble& b) { return a += b; }
    friend DoubleDouble operator-(DoubleDouble a, const DoubleDouble& b) { return a -= b; }
    friend DoubleDouble operator*(DoubleDouble a, const DoubleDouble& b) { return a *= b; }
    friend DoubleDouble operator/(DoubleDouble a, const DoubleDouble& b) { return a /= b; }
    friend DoubleDouble operator+(DoubleDouble a, double b) { return a += DoubleDouble(b); }
    friend DoubleDouble operator-(DoubleDouble a, double b) { return a -= DoubleDouble(b); }
    friend DoubleDouble operator*(DoubleDouble a, double b) { return a *= DoubleDouble(b); }
    friend DoubleDouble operator/(DoubleDouble a, double b) { return a /= DoubleDouble(b); }
    friend DoubleDouble operator+(double a, const DoubleDouble& b) { return DoubleDouble(a) += b; }
    friend DoubleDouble operator-(double a, const DoubleDouble& b) { return DoubleDouble(a) -= b; }
    friend DoubleDouble operator*(double a, const DoubleDouble& b) { return DoubleDouble(a) *= b; }
    friend DoubleDouble operator/(double a, const DoubleDouble& b) { return DoubleDouble(a) /= b; }

    constexpr DoubleDouble operator-() const { return from_parts(-hi_, -lo_); }

    friend constexpr bool operator==(const DoubleDouble& a, const DoubleDouble& b) {
      return a.hi_ == b.hi_ && a.lo_ == b.lo_;
    }
    friend constexpr std::partial_ordering operator<=>(const DoubleDouble& a, const DoubleDouble& b) {
      if (auto c = a.hi_ <=> b.hi_; c != 0) return c;
      return a.lo_ <=> b.lo_;
    }

  private:
    double hi_ = 0.0;
    double lo_ = 0.0;
  };

  DoubleDouble sqrt(const DoubleDouble& a);
  DoubleDouble abs(const DoubleDouble& a);
  DoubleDouble ldexp(const DoubleDouble& a, int e);
  DoubleDouble log(const DoubleDouble& a);
  DoubleDouble exp(const DoubleDouble& a);
  DoubleDouble pow_int(DoubleDouble a, unsigned int e);
  bool isfinite(const DoubleDouble& a);

  /// Decimal rendering with 32 significant digits.
  std::string to_string(const DoubleDouble& a);
  std::ostream& operator<<(std::ostream& os, const DoubleDouble& a);

  /// Number of mantissa bits and related constants of a real type.
  template <class R>
  struct RealTraits;

  template <>
  struct RealTraits<double> {
    static constexpr int mantissa_bits = 53;
    static double to_double(double x) { return x; }
    static double from_double(double x) { return x; }
  };

  template <>
  struct RealTraits<DoubleDouble> {
    static constexpr int mantissa_bits = 106;
    static double to_double(const DoubleDouble& x) { return x.to_double(); }
    static DoubleDouble from_double(double x) { return DoubleDouble(x); }
  };

  template <class R>
  double to_double(const R& x) {
    return RealTraits<R>::to_double(x);
  }

  /// Unit roundoff 2^(1 - mantissa_bits) of a real type.
  template <class R>
  double unit_roundoff() {
    return std::ldexp(1.0, 1 - RealTraits<R>::mantissa_bits);
  }

} // namespace shqr
