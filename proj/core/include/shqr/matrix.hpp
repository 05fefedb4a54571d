#pragma once

//
// ... Standard header files
//
#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

//
// ... shqr header files
//
#include "shqr/complex.hpp"
#include "shqr/errors.hpp"

namespace shqr {

  /// Dense row-major complex matrix.
  template <class R>
  class DenseMatrix {
  public:
    using value_type = Complex<R>;

    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static DenseMatrix identity(std::size_t n) {
      DenseMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i) m(i, i) = value_type(R(1.0));
      return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    value_type* row(std::size_t i) { return data_.data() + i * cols_; }
    const value_type* row(std::size_t i) const { return data_.data() + i * cols_; }

    const std::vector<value_type>& data() const { return data_; }

    template <class S>
    DenseMatrix<S> cast() const {
      DenseMatrix<S> out(rows_, cols_);
      for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = Complex<S>((*this)(i, j));
      return out;
    }

    friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
      return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<value_type> data_;
  };

  template <class R>
  R frobenius_norm(const DenseMatrix<R>& m) {
    R scale(0.0);
    for (const auto& z : m.data()) scale = std::max(scale, abs(z));
    if (scale == R(0.0)) return R(0.0);
    R sum(0.0);
    for (const auto& z : m.data()) sum += norm2(z / scale);
    using std::sqrt;
    return scale * sqrt(sum);
  }

  template <class R>
  DenseMatrix<R> multiply(const DenseMatrix<R>& a, const DenseMatrix<R>& b) {
    if (a.cols() != b.rows()) throw DimensionError("multiply: inner dimensions differ");
    DenseMatrix<R> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t l = 0; l < a.cols(); ++l) {
        const Complex<R> ail = a(i, l);
        if (ail == Complex<R>()) continue;
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += ail * b(l, j);
      }
    return c;
  }

  template <class R>
  DenseMatrix<R> adjoint(const DenseMatrix<R>& a) {
    DenseMatrix<R> c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = conj(a(i, j));
    return c;
  }

  template <class R>
  DenseMatrix<R> subtract(DenseMatrix<R> a, const DenseMatrix<R>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("subtract: shapes differ");
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= b(i, j);
    return a;
  }

  /// Square upper Hessenberg matrix: entries below the first subdiagonal are exact zeros.
  template <class R>
  class BasicHessenberg {
  public:
    using value_type = Complex<R>;

    BasicHessenberg() = default;

    /// Throws PreconditionError if m is not square or has a nonzero below the subdiagonal.
    explicit BasicHessenberg(DenseMatrix<R> m) : m_(std::move(m)) {
      if (!m_.square()) throw DimensionError("Hessenberg matrix must be square");
      for (std::size_t i = 2; i < m_.rows(); ++i)
        for (std::size_t j = 0; j + 1 < i; ++j)
          if (!(m_(i, j) == value_type())) throw PreconditionError("matrix is not upper Hessenberg");
    }

    /// Copy of the upper Hessenberg part of m; entries below the subdiagonal are dropped.
    static BasicHessenberg truncate(DenseMatrix<R> m) {
      if (!m.square()) throw DimensionError("Hessenberg matrix must be square");
      for (std::size_t i = 2; i < m.rows(); ++i)
        for (std::size_t j = 0; j + 1 < i; ++j) m(i, j) = value_type();
      return BasicHessenberg(std::move(m));
    }

    std::size_t n() const { return m_.rows(); }
    const value_type& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    /// Writable entry in the Hessenberg pattern (i <= j + 1).
    value_type& at(std::size_t i, std::size_t j) {
      if (i > j + 1) throw PreconditionError("write below the subdiagonal");
      return m_(i, j);
    }

    /// |h(i, i-1)| for 1 <= i < n.
    R subdiagonal(std::size_t i) const { return abs(m_(i, i - 1)); }

    const DenseMatrix<R>& dense() const { return m_; }

    /// Unchecked mutable storage; callers must keep the Hessenberg pattern.
    DenseMatrix<R>& storage() { return m_; }

    template <class S>
    BasicHessenberg<S> cast() const {
      return BasicHessenberg<S>(m_.template cast<S>());
    }

    /// Principal submatrix on rows/cols [lo, hi).
    BasicHessenberg block(std::size_t lo, std::size_t hi) const {
      DenseMatrix<R> b(hi - lo, hi - lo);
      for (std::size_t i = lo; i < hi; ++i)
        for (std::size_t j = (i > lo ? i - 1 : lo); j < hi; ++j) b(i - lo, j - lo) = m_(i, j);
      return BasicHessenberg(std::move(b));
    }

    /// Bottom-right k x k corner.
    DenseMatrix<R> corner(std::size_t k) const {
      if (k > n()) throw DimensionError("corner larger than matrix");
      return block(n() - k, n()).dense();
    }

    /// min over the bottom k subdiagonal moduli |h(i, i-1)|, i = n-k .. n-1.
    R min_bottom_subdiagonal(std::size_t k) const {
      if (k >= n()) throw DimensionError("need n > k");
      R m = subdiagonal(n() - 1);
      for (std::size_t i = n() - k; i < n(); ++i) m = std::min(m, subdiagonal(i));
      return m;
    }

    friend bool operator==(const BasicHessenberg& a, const BasicHessenberg& b) { return a.m_ == b.m_; }

  private:
    DenseMatrix<R> m_;
  };

  using HessenbergMatrix = BasicHessenberg<double>;
  using HessenbergDD = BasicHessenberg<DoubleDouble>;

} // namespace shqr
