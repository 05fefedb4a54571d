#pragma once

//
// ... Standard header files
//
#include <cmath>
#include <complex>

//
// ... shqr header files
//
#include "shqr/double_double.hpp"

namespace shqr {

  /// Complex number over a real type R (double or DoubleDouble).
  template <class R>
  struct Complex {
    R re{};
    R im{};

    constexpr Complex() = default;
    constexpr Complex(R r) : re(r) {}
    constexpr Complex(R r, R i) : re(r), im(i) {}
    template <class S>
      requires(!std::is_same_v<S, R>)
    explicit Complex(const Complex<S>& o) : re(R(o.re)), im(R(o.im)) {}

    Complex& operator+=(const Complex& o) {
      re += o.re;
      im += o.im;
      return *this;
    }
    Complex& operator-=(const Complex& o) {
      re -= o.re;
      im -= o.im;
      return *this;
    }
    Complex& operator*=(const Complex& o) {
      R r = re * o.re - im * o.im;
      im = re * o.im + im * o.re;
      re = r;
      return *this;
    }
    Complex& operator*=(const R& s) {
      re *= s;
      im *= s;
      return *this;
    }
    Complex& operator/=(const R& s) {
      re /= s;
      im /= s;
      return *this;
    }
    Complex& operator/=(const Complex& o);

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator*(Complex a, const R& s) { return a *= s; }
    friend Complex operator*(const R& s, Complex a) { return a *= s; }
    friend Complex operator/(Complex a, const R& s) { return a /= s; }
    Complex operator-() const { return Complex(-re, -im); }

    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
  };

  using Cplx = Complex<double>;
  using CplxDD = Complex<DoubleDouble>;

  template <class R>
  Complex<R> conj(const Complex<R>& z) {
    return Complex<R>(z.re, -z.im);
  }

  template <class R>
  R norm2(const Complex<R>& z) {
    return z.re * z.re + z.im * z.im;
  }

  /// Euclidean hypotenuse without spurious overflow/underflow.
  template <class R>
  R hypot_real(const R& a, const R& b) {
    if constexpr (std::is_same_v<R, double>) {
      return std::hypot(a, b);
    } else {
      R x = abs(a);
      R y = abs(b);
      R m = x < y ? y : x;
      if (m == R(0.0)) return R(0.0);
      R p = x / m;
      R q = y / m;
      return m * sqrt(p * p + q * q);
    }
  }

  template <class R>
  R abs(const Complex<R>& z) {
    using std::abs;
    return hypot_real<R>(abs(z.re), abs(z.im));
  }

  template <class R>
  bool isfinite(const Complex<R>& z) {
    using std::isfinite;
    return isfinite(z.re) && isfinite(z.im);
  }

  template <class R>
  Complex<R>& Complex<R>::operator/=(const Complex& o) {
    using std::abs;
    // Smith's algorithm.
    if (abs(o.re) >= abs(o.im)) {
      R t = o.im / o.re;
      R d = o.re + o.im * t;
      R r = (re + im * t) / d;
      im = (im - re * t) / d;
      re = r;
    } else {
      R t = o.re / o.im;
      R d = o.re * t + o.im;
      R r = (re * t + im) / d;
      im = (im * t - re) / d;
      re = r;
    }
    return *this;
  }

  /// Principal square root.
  template <class R>
  Complex<R> sqrt(const Complex<R>& z) {
    using std::abs;
    using std::sqrt;
    const R r = abs(z);
    if (r == R(0.0)) return Complex<R>();
    if (z.re >= R(0.0)) {
      const R t = sqrt((r + z.re) / R(2.0));
      return Complex<R>(t, z.im / (R(2.0) * t));
    }
    const R t = sqrt((r - z.re) / R(2.0));
    const R im = z.im < R(0.0) ? -t : t;
    return Complex<R>(abs(z.im) / (R(2.0) * t), im);
  }

  inline Cplx to_cplx(const CplxDD& z) {
    return Cplx(z.re.to_double(), z.im.to_double());
  }

  template <class R>
  Cplx to_cplx(const Complex<R>& z) {
    return Cplx(to_double(z.re), to_double(z.im));
  }

  inline std::complex<double> to_std(const Cplx& z) {
    return {z.re, z.im};
  }

} // namespace shqr
