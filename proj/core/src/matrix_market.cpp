#include "shqr/matrix_market.hpp"

//
// ... Standard header files
//
#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace shqr {

  namespace {

    std::string lower(std::string s) {
      std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
      return s;
    }

    bool blank_or_comment(const std::string& line) {
      for (char c : line) {
        if (c == '%') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
      }
      return true;
    }

    enum class Field { real, complex };
    enum class Symmetry { general, symmetric, skew, hermitian };

    struct Reader {
      std::istream& in;
      std::size_t line_no = 0;

      bool next_data_line(std::string& line) {
        while (std::getline(in, line)) {
          ++line_no;
          if (!blank_or_comment(line)) return true;
        }
        return false;
      }
    };

    Cplx parse_value(std::istringstream& ss, Field field, std::size_t line) {
      double re = 0.0, im = 0.0;
      if (!(ss >> re)) throw ParseError(line, "expected a numeric value");
      if (field == Field::complex && !(ss >> im)) throw ParseError(line, "expected an imaginary part");
      std::string rest;
      if (ss >> rest) throw ParseError(line, "unexpected trailing token '" + rest + "'");
      return Cplx(re, im);
    }

    void place(DenseMatrix<double>& m, std::size_t i, std::size_t j, const Cplx& v, Symmetry sym) {
      m(i, j) = v;
      if (i == j) return;
      switch (sym) {
        case Symmetry::general: break;
        case Symmetry::symmetric: m(j, i) = v; break;
        case Symmetry::skew: m(j, i) = -v; break;
        case Symmetry::hermitian: m(j, i) = conj(v); break;
      }
    }

  } // namespace

  DenseMatrix<double> read_matrix_market(std::istream& in) {
    Reader rd{in};
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "empty input");
    rd.line_no = 1;
    std::istringstream hs(line);
    std::string banner, object, format, field_s, sym_s;
    hs >> banner >> object >> format >> field_s >> sym_s;
    if (banner != "%%MatrixMarket") throw ParseError(1, "missing %%MatrixMarket banner");
    if (lower(object) != "matrix") throw ParseError(1, "object must be 'matrix'");
    format = lower(format);
    field_s = lower(field_s);
    sym_s = lower(sym_s);
    if (format != "array" && format != "coordinate") throw ParseError(1, "format must be array or coordinate");

    Field field;
    if (field_s == "real" || field_s == "integer" || field_s == "double")
      field = Field::real;
    else if (field_s == "complex")
      field = Field::complex;
    else
      throw ParseError(1, "unsupported field '" + field_s + "'");

    Symmetry sym;
    if (sym_s == "general")
      sym = Symmetry::general;
    else if (sym_s == "symmetric")
      sym = Symmetry::symmetric;
    else if (sym_s == "skew-symmetric")
      sym = Symmetry::skew;
    else if (sym_s == "hermitian")
      sym = Symmetry::hermitian;
    else
      throw ParseError(1, "unsupported symmetry '" + sym_s + "'");
    if (sym == Symmetry::hermitian && field != Field::complex)
      throw ParseError(1, "hermitian symmetry requires a complex field");

    if (!rd.next_data_line(line)) throw ParseError(rd.line_no + 1, "missing size line");
    std::istringstream ss(line);
    long rows = -1, cols = -1, nnz = -1;
    ss >> rows >> cols;
    if (format == "coordinate") ss >> nnz;
    if (ss.fail() || rows <= 0 || cols <= 0 || (format == "coordinate" && nnz < 0))
      throw ParseError(rd.line_no, "malformed size line");
    if (sym != Symmetry::general && rows != cols) throw ParseError(rd.line_no, "symmetric storage needs a square matrix");

    const std::size_t r = static_cast<std::size_t>(rows), c = static_cast<std::size_t>(cols);
    DenseMatrix<double> m(r, c);
    if (format == "array") {
      for (std::size_t j = 0; j < c; ++j) {
        std::size_t i0 = 0;
        if (sym == Symmetry::symmetric || sym == Symmetry::hermitian) i0 = j;
        if (sym == Symmetry::skew) i0 = j + 1;
        for (std::size_t i = i0; i < r; ++i) {
          if (!rd.next_data_line(line)) throw ParseError(rd.line_no + 1, "unexpected end of data");
          std::istringstream es(line);
          place(m, i, j, parse_value(es, field, rd.line_no), sym);
        }
      }
    } else {
      for (long e = 0; e < nnz; ++e) {
        if (!rd.next_data_line(line)) throw ParseError(rd.line_no + 1, "unexpected end of data");
        std::istringstream es(line);
        long i = 0, j = 0;
        if (!(es >> i >> j)) throw ParseError(rd.line_no, "expected row and column indices");
        if (i < 1 || j < 1 || i > rows || j > cols) throw ParseError(rd.line_no, "index out of range");
        place(m, static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), parse_value(es, field, rd.line_no),
              sym);
      }
    }
    if (rd.next_data_line(line)) throw ParseError(rd.line_no, "unexpected extra data");
    return m;
  }

  DenseMatrix<double> read_matrix_market_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open '" + path + "'");
    return read_matrix_market(f);
  }

  void write_matrix_market(std::ostream& out, const DenseMatrix<double>& m) {
    out << "%%MatrixMarket matrix array complex general\n" << m.rows() << ' ' << m.cols() << '\n';
    char buf[96];
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t i = 0; i < m.rows(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", m(i, j).re, m(i, j).im);
        out << buf;
      }
  }

} // namespace shqr
