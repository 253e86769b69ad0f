#include "maxplus/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

namespace maxplus {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::DimensionMismatch, std::string(op) + ": shapes " + std::to_string(a.rows()) +
                                             "x" + std::to_string(a.cols()) + " and " +
                                             std::to_string(b.rows()) + "x" +
                                             std::to_string(b.cols()));
  }
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = kUnit;
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(v);
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) {
      throw Error(Errc::DimensionMismatch, "ragged row " + std::to_string(i + 1));
    }
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar(rows[i][j]);
  }
  return m;
}

std::size_t Matrix::dim() const {
  if (!is_square()) {
    throw Error(Errc::DimensionMismatch, "expected a square matrix, got " + std::to_string(rows_) +
                                             "x" + std::to_string(cols_));
  }
  return rows_;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Matrix Matrix::submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
  Matrix m(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(rows[i], cols[j]);
  }
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

Matrix oplus(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "oplus");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = oplus(a(i, j), b(i, j));
  }
  return c;
}

Vector matvec(const Matrix& a, std::span<const Scalar> x) {
  if (a.cols() != x.size()) {
    throw Error(Errc::DimensionMismatch, "matvec: matrix has " + std::to_string(a.cols()) +
                                             " columns, vector has " + std::to_string(x.size()));
  }
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Scalar acc = kZero;
    for (std::size_t j = 0; j < a.cols(); ++j) acc = oplus(acc, otimes(a(i, j), x[j]));
    y[i] = acc;
  }
  return y;
}

Matrix power(const Matrix& a, std::uint64_t k) {
  Matrix result = Matrix::identity(a.dim());
  Matrix base = a;
  bool first = true;
  while (k > 0) {
    if (k & 1U) {
      result = first ? base : matmul(result, base);
      first = false;
    }
    k >>= 1U;
    if (k > 0) base = matmul(base, base);
  }
  return result;
}

PowerTable power_residues(const Matrix& a, std::uint64_t rmin) {
  if (rmin < 1) throw Error(Errc::InvalidArgument, "power_residues: rmin must be >= 1");
  a.dim();
  const std::uint64_t target = std::bit_ceil(rmin);
  PowerTable table{a, 1, 0};
  while (table.exponent < target) {
    table.power = matmul(table.power, table.power);
    table.exponent *= 2;
    ++table.squarings;
  }
  return table;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar x = a(i, j);
      const Scalar y = b(i, j);
      if (x.is_zero() != y.is_zero()) return std::numeric_limits<double>::infinity();
      if (x.is_finite()) worst = std::max(worst, std::fabs(x.value() - y.value()));
    }
  }
  return worst;
}

bool approx_equal(const Matrix& a, const Matrix& b, double eps) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs_diff(a, b) <= eps;
}

}  // namespace maxplus
