#pragma once

//
// ... Standard header files
//
#include <vector>

//
// ... shqr header files
//
#include "shqr/iqr.hpp"
#include "shqr/matrix.hpp"

/// Brute-force double-double reference computations for tests and diagnostics.
namespace shqr::oracle {

  using DD = DoubleDouble;

  template <class R>
  DenseMatrix<DD> to_dd(const DenseMatrix<R>& m) {
    return m.template cast<DD>();
  }

  template <class R>
  DenseMatrix<DD> to_dd(const BasicHessenberg<R>& h) {
    return h.dense().template cast<DD>();
  }

  template <class R>
  std::vector<CplxDD> to_dd(const ShiftList<R>& s) {
    std::vector<CplxDD> out;
    for (const auto& z : s) out.push_back(CplxDD(z));
    return out;
  }

  /// || e_n^* (M - s_1) ... (M - s_m) || by dense row-vector products.
  DD dense_en_p_norm(const DenseMatrix<DD>& m, const std::vector<CplxDD>& shifts);

  /// || e_n^* p(M)^{-1} ||^{-1} by m dense solves; throws SingularityError.
  DD resolvent_tau(const DenseMatrix<DD>& m, const std::vector<CplxDD>& shifts);

  struct SchurForm {
    DenseMatrix<DD> t;  ///< upper triangular
    DenseMatrix<DD> z;  ///< unitary, M = Z T Z^*
  };

  /// Complex Schur form by Hessenberg reduction and Wilkinson-shifted QR.
  SchurForm schur(const DenseMatrix<DD>& m);

  /// Eigenvalues, in the order they appear on the diagonal of the Schur form.
  std::vector<CplxDD> ref_eigs(const DenseMatrix<DD>& m);

  struct EigenDecomposition {
    std::vector<CplxDD> values;
    DenseMatrix<DD> vectors;  ///< unit 2-norm columns
  };

  /// Throws Error when two eigenvalues are closer than the oracle can resolve.
  EigenDecomposition eig(const DenseMatrix<DD>& m);

  /// |det(M - z)| via the Hyman recurrence on the Hessenberg form.
  DD hyman_determinant(const DenseMatrix<DD>& m, const CplxDD& z);

  /// max_i |det(M - lambda_i)| / ||M||_F^n.
  double max_relative_residual(const DenseMatrix<DD>& m, const std::vector<CplxDD>& lambdas);

  struct SpectralMeasure {
    std::vector<CplxDD> eigenvalues;
    std::vector<DD> weights;  ///< |e_n^* V e_i|^2 / ||e_n^* V||^2
  };

  SpectralMeasure spectral_measure(const DenseMatrix<DD>& h);

  struct PromisingSides {
    DD lhs;  ///< E |Z - r|^{-k}
    DD rhs;  ///< alpha^{-k} E |p(Z)|^{-1}
    bool passes() const { return !(lhs < rhs); }
  };

  PromisingSides promising_sides(const SpectralMeasure& mu, const CplxDD& r, const std::vector<CplxDD>& ritz,
                                 double alpha);

  bool promising_check(const DenseMatrix<DD>& h, const CplxDD& r, const std::vector<CplxDD>& ritz, double alpha);

  struct ConditionReport {
    double kappa_v = 1.0;  ///< ||V|| ||V^{-1}|| for unit-column V, an upper bound on the infimum
    double gap = 0.0;
    double norm = 0.0;     ///< spectral norm
  };

  ConditionReport condition_report(const DenseMatrix<DD>& m);

  /// Singular values (descending) by one-sided Jacobi.
  std::vector<double> singular_values(const DenseMatrix<double>& m);

  double spectral_norm(const DenseMatrix<DD>& m);

  /// Largest pair distance in a minimum-total-cost perfect matching.
  double matched_distance(const std::vector<Cplx>& a, const std::vector<Cplx>& b);

  /// Minimum pairwise distance.
  double gap(const std::vector<Cplx>& values);

} // namespace shqr::oracle
