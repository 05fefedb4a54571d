#pragma once

//
// ... Standard header files
//
#include <cmath>
#include <initializer_list>
#include <vector>

//
// ... shqr header files
//
#include "shqr/matrix.hpp"
#include "shqr/numkernel.hpp"

namespace shqr {

  /// Ordered shifts s_1, ..., s_m of p(z) = (z - s_1) ... (z - s_m); nonempty and finite.
  template <class R>
  class ShiftList {
  public:
    using value_type = Complex<R>;

    ShiftList() = default;
    explicit ShiftList(std::vector<value_type> roots) : roots_(std::move(roots)) { validate(); }
    ShiftList(std::initializer_list<value_type> roots) : roots_(roots) { validate(); }

    /// (z - r)^m.
    static ShiftList repeated(const value_type& r, std::size_t m) {
      return ShiftList(std::vector<value_type>(m, r));
    }

    std::size_t size() const { return roots_.size(); }
    bool empty() const { return roots_.empty(); }
    const value_type& operator[](std::size_t i) const { return roots_[i]; }
    auto begin() const { return roots_.begin(); }
    auto end() const { return roots_.end(); }
    const std::vector<value_type>& roots() const { return roots_; }

    friend bool operator==(const ShiftList& a, const ShiftList& b) { return a.roots_ == b.roots_; }

  private:
    void validate() const {
      if (roots_.empty()) throw DomainError("ShiftList: empty");
      for (const auto& r : roots_)
        if (!isfinite(r)) throw DomainError("ShiftList: non-finite root");
    }

    std::vector<value_type> roots_;
  };

  template <class R>
  struct IqrResult {
    BasicHessenberg<R> next_h;
    std::vector<R> r_nn_per_step;  ///< |(R_l)_nn| of each degree-1 step
  };

  /// Rotations and triangular factor of one step, kept for verification.
  template <class R>
  struct IqrFactors {
    std::vector<GivensRotation<R>> rotations;  ///< G_0 .. G_{n-2}; Q^* = G_{n-2} ... G_0
    DenseMatrix<R> r_factor;                   ///< upper triangular R with H - s = Q R
  };

  namespace detail {

    template <class R>
    IqrResult<R> iqr_step(const BasicHessenberg<R>& h, const Complex<R>& s, IqrFactors<R>* factors) {
      const std::size_t n = h.n();
      if (n < 2) throw DimensionError("iqr: n must be at least 2");
      if (!isfinite(s)) throw DomainError("iqr: non-finite shift");

      DenseMatrix<R> a = h.dense();
      for (std::size_t i = 0; i < n; ++i) a(i, i) -= s;

      std::vector<GivensRotation<R>> rots(n - 1);
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const Complex<R> x = a(i, i);
        const Complex<R> y = a(i + 1, i);
        GivensRotation<R> g = (x == Complex<R>() && y == Complex<R>()) ? GivensRotation<R>::identity()
                                                                        : make_givens(x, y);
        a(i, i) = givens_image(g, x, y);
        a(i + 1, i) = Complex<R>();
        if (i + 1 < n) apply_givens_left(g, &a(i, i + 1), &a(i + 1, i + 1), n - i - 1);
        rots[i] = g;
      }

      IqrResult<R> out;
      out.r_nn_per_step.push_back(abs(a(n - 1, n - 1)));
      if (factors) factors->r_factor = a;

      for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t rows = std::min(i + 2, n);
        apply_givens_right(rots[i], &a(0, i), &a(0, i + 1), rows, n);
      }
      for (std::size_t i = 0; i < n; ++i) a(i, i) += s;
      for (std::size_t i = 2; i < n; ++i)
        for (std::size_t j = 0; j + 1 < i; ++j) a(i, j) = Complex<R>();

      if (factors) factors->rotations = std::move(rots);
      out.next_h = BasicHessenberg<R>(std::move(a));
      return out;
    }

  } // namespace detail

  /// One implicit QR step: H - s = QR, returns RQ + s and |R_nn|.
  template <class R>
  IqrResult<R> iqr_single(const BasicHessenberg<R>& h, const Complex<R>& s) {
    return detail::iqr_step<R>(h, s, nullptr);
  }

  /// Same step, also returning the rotations and R.
  template <class R>
  IqrResult<R> iqr_single_factored(const BasicHessenberg<R>& h, const Complex<R>& s, IqrFactors<R>& factors) {
    return detail::iqr_step<R>(h, s, &factors);
  }

  /// Degree-1 steps composed in root order.
  template <class R>
  IqrResult<R> iqr_multi(const BasicHessenberg<R>& h, const ShiftList<R>& shifts) {
    if (shifts.empty()) throw DomainError("iqr_multi: empty shift list");
    IqrResult<R> acc;
    acc.next_h = h;
    for (const auto& s : shifts) {
      IqrResult<R> step = iqr_single(acc.next_h, s);
      acc.next_h = std::move(step.next_h);
      acc.r_nn_per_step.push_back(step.r_nn_per_step.front());
    }
    return acc;
  }

  template <class R>
  struct TauEstimate {
    R value;       ///< product of |(R_l)_nn|, approximating tau_p(H)^m
    bool trusted;  ///< false if some factor is too close to the roundoff floor for 0.1% accuracy
  };

  template <class R>
  TauEstimate<R> comp_tau_checked(const BasicHessenberg<R>& h, const ShiftList<R>& shifts) {
    const double n = static_cast<double>(h.n());
    const double floor_factor = 1000.0 * 16.0 * n * std::sqrt(n) * unit_roundoff<R>();
    BasicHessenberg<R> cur = h;
    R prod(1.0);
    bool trusted = true;
    for (const auto& s : shifts) {
      DenseMatrix<R> shifted = cur.dense();
      for (std::size_t i = 0; i < cur.n(); ++i) shifted(i, i) -= s;
      const double scale = to_double(frobenius_norm(shifted));
      IqrResult<R> step = iqr_single(cur, s);
      const R rnn = step.r_nn_per_step.front();
      if (to_double(rnn) <= floor_factor * scale) trusted = false;
      prod *= rnn;
      cur = std::move(step.next_h);
    }
    return {prod, trusted};
  }

  /// Approximation of tau_p(H)^m = || e_n^* p(H)^{-1} ||^{-1}.
  template <class R>
  R comp_tau(const BasicHessenberg<R>& h, const ShiftList<R>& shifts) {
    R prod(1.0);
    BasicHessenberg<R> cur = h;
    for (const auto& s : shifts) {
      IqrResult<R> step = iqr_single(cur, s);
      prod *= step.r_nn_per_step.front();
      cur = std::move(step.next_h);
    }
    return prod;
  }

  /// psi_k(H)^k = |h(n-k, n-k-1)| ... |h(n-1, n-2)| (0-based), accumulated in double-double.
  template <class R>
  DoubleDouble potential_power(const BasicHessenberg<R>& h, std::size_t k) {
    if (k == 0 || h.n() <= k) throw DimensionError("potential: need n > k >= 1");
    DoubleDouble p(1.0);
    for (std::size_t i = h.n() - k; i < h.n(); ++i) {
      const Complex<DoubleDouble> z(h(i, i - 1));
      p *= abs(z);
    }
    return p;
  }

  /// Relative accuracy 1 - 0.999^(1/k) of the computed potential.
  inline double potential_tolerance(std::size_t k) {
    return -std::expm1(std::log(0.999) / static_cast<double>(k));
  }

  /// psi_k(H), the geometric mean of the bottom k subdiagonal moduli.
  template <class R>
  R potential(const BasicHessenberg<R>& h, std::size_t k) {
    DoubleDouble p = potential_power(h, k);
    if (p == DoubleDouble(0.0)) return R(0.0);
    DoubleDouble root = kth_root<DoubleDouble>(p, static_cast<unsigned>(k), potential_tolerance(k));
    if constexpr (std::is_same_v<R, double>)
      return root.to_double();
    else
      return root;
  }

} // namespace shqr
