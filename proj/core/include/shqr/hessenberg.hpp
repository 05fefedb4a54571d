#pragma once

//
// ... Standard header files
//
#include <vector>

//
// ... shqr header files
//
#include "shqr/matrix.hpp"

namespace shqr {

  /// Unitary reduction A = Q H Q^* by Householder reflectors.
  ///
  /// Columns whose part below the subdiagonal is already zero are left untouched, so
  /// Hessenberg input comes back unchanged. If q is non-null it receives Q.
  template <class R>
  BasicHessenberg<R> householder_hessenberg(DenseMatrix<R> a, DenseMatrix<R>* q = nullptr) {
    if (!a.square()) throw DimensionError("householder_hessenberg: matrix must be square");
    const std::size_t n = a.rows();
    if (q) *q = DenseMatrix<R>::identity(n);
    std::vector<Complex<R>> v(n);

    for (std::size_t j = 0; j + 2 < n; ++j) {
      bool tail_zero = true;
      for (std::size_t i = j + 2; i < n; ++i)
        if (!(a(i, j) == Complex<R>())) tail_zero = false;
      if (tail_zero) continue;

      const std::size_t m = n - j - 1;
      R scale(0.0);
      for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, abs(a(j + 1 + i, j)));
      R ss(0.0);
      for (std::size_t i = 0; i < m; ++i) {
        v[i] = a(j + 1 + i, j) / scale;
        ss += norm2(v[i]);
      }
      using std::sqrt;
      const R xnorm = sqrt(ss);
      const R a0 = abs(v[0]);
      const Complex<R> phase = a0 == R(0.0) ? Complex<R>(R(1.0)) : v[0] / a0;
      v[0] += phase * xnorm;
      R vv(0.0);
      for (std::size_t i = 0; i < m; ++i) vv += norm2(v[i]);
      const R tau = R(2.0) / vv;

      // Left: rows j+1.., columns j+1..
      for (std::size_t c = j + 1; c < n; ++c) {
        Complex<R> dot;
        for (std::size_t i = 0; i < m; ++i) dot += conj(v[i]) * a(j + 1 + i, c);
        dot *= tau;
        for (std::size_t i = 0; i < m; ++i) a(j + 1 + i, c) -= v[i] * dot;
      }
      a(j + 1, j) = -phase * (xnorm * scale);
      for (std::size_t i = 1; i < m; ++i) a(j + 1 + i, j) = Complex<R>();

      // Right: all rows, columns j+1..
      auto apply_right = [&](DenseMatrix<R>& mtx) {
        for (std::size_t r = 0; r < n; ++r) {
          Complex<R> dot;
          for (std::size_t i = 0; i < m; ++i) dot += mtx(r, j + 1 + i) * v[i];
          dot *= tau;
          for (std::size_t i = 0; i < m; ++i) mtx(r, j + 1 + i) -= dot * conj(v[i]);
        }
      };
      apply_right(a);
      if (q) apply_right(*q);
    }
    return BasicHessenberg<R>::truncate(std::move(a));
  }

} // namespace shqr
