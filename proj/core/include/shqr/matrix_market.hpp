#pragma once

//
// ... Standard header files
//
#include <iosfwd>
#include <string>

//
// ... shqr header files
//
#include "shqr/matrix.hpp"

namespace shqr {

  /// Reads a Matrix Market file: array or coordinate; real, integer or complex;
  /// general, symmetric, skew-symmetric or hermitian. Coordinate entries are densified.
  /// Throws ParseError with the offending line number.
  DenseMatrix<double> read_matrix_market(std::istream& in);
  DenseMatrix<double> read_matrix_market_file(const std::string& path);

  /// Writes a complex general array file with 17 significant digits.
  void write_matrix_market(std::ostream& out, const DenseMatrix<double>& m);

} // namespace shqr
