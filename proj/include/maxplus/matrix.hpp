#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "maxplus/scalar.hpp"

namespace maxplus {

using Vector = std::vector<Scalar>;

// Dense row-major matrix over the max-plus semiring.
//
// Public analyses work on square matrices; rectangular shapes exist for the
// factors of the CSR decomposition and for column/row extraction.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Scalar fill = kZero)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix square(std::size_t n, Scalar fill = kZero) { return Matrix(n, n, fill); }
  static Matrix identity(std::size_t n);

  // Rows of plain doubles; use Scalar::kNegInf for the semiring zero.
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  // Dimension of a square matrix; throws DimensionMismatch otherwise.
  std::size_t dim() const;

  Scalar operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  Scalar& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }

  std::span<const Scalar> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<Scalar> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  Vector column(std::size_t j) const;

  std::span<const Scalar> data() const noexcept { return data_; }

  Matrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  Matrix transposed() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

// Elementwise ⊕.
Matrix oplus(const Matrix& a, const Matrix& b);

// a ⊗ b, OpenMP row-parallel. Bitwise identical to matmul_serial.
Matrix matmul(const Matrix& a, const Matrix& b);

// Textbook triple loop; kept as the reference for matmul.
Matrix matmul_serial(const Matrix& a, const Matrix& b);

// a ⊗ x.
Vector matvec(const Matrix& a, std::span<const Scalar> x);

// Number of matrix products (matmul, matmul_serial) performed by this process.
std::uint64_t matmul_count() noexcept;
void reset_matmul_count() noexcept;

// A^k by binary exponentiation; A^0 = I.
Matrix power(const Matrix& a, std::uint64_t k);

struct PowerTable {
  Matrix power;             // A^exponent
  std::uint64_t exponent;   // least power of two >= rmin
  std::size_t squarings;    // number of products performed
};

// A^r for r = bit_ceil(rmin), obtained by repeated squaring A, A^2, A^4, ...
PowerTable power_residues(const Matrix& a, std::uint64_t rmin);

// Max |a_ij - b_ij| over entries where both are finite; +inf if the
// finiteness patterns differ. Used for tolerance-based comparisons.
double max_abs_diff(const Matrix& a, const Matrix& b);
bool approx_equal(const Matrix& a, const Matrix& b, double eps);

}  // namespace maxplus
