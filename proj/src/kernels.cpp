#include <atomic>
#include <cstdint>
#include <string>

#include "maxplus/matrix.hpp"

namespace maxplus {

namespace {

std::atomic<std::uint64_t> g_matmul_count{0};

void require_conformable(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(Errc::DimensionMismatch, "matmul: " + std::to_string(a.rows()) + "x" +
                                             std::to_string(a.cols()) + " times " +
                                             std::to_string(b.rows()) + "x" +
                                             std::to_string(b.cols()));
  }
}

}  // namespace

std::uint64_t matmul_count() noexcept { return g_matmul_count.load(); }
void reset_matmul_count() noexcept { g_matmul_count.store(0); }

Matrix matmul_serial(const Matrix& a, const Matrix& b) {
  require_conformable(a, b);
  ++g_matmul_count;
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Scalar acc = kZero;
      for (std::size_t k = 0; k < a.cols(); ++k) acc = oplus(acc, otimes(a(i, k), b(k, j)));
      c(i, j) = acc;
    }
  }
  return c;
}

// Each output row is owned by one thread and every entry is a max over the
// same exact sums, so the loop order (i-k-j here) does not change any bit.
Matrix matmul(const Matrix& a, const Matrix& b) {
  require_conformable(a, b);
  ++g_matmul_count;
  const auto rows = static_cast<std::int64_t>(a.rows());
  const std::size_t inner = a.cols();
  const std::size_t cols = b.cols();
  Matrix c(a.rows(), cols);

#pragma omp parallel for schedule(static) if (rows * static_cast<std::int64_t>(inner) > 4096)
  for (std::int64_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    auto out = c.row(i);
    for (std::size_t k = 0; k < inner; ++k) {
      const Scalar aik = a(i, k);
      if (aik.is_zero()) continue;
      const auto bk = b.row(k);
      for (std::size_t j = 0; j < cols; ++j) {
        if (bk[j].is_zero()) continue;
        const Scalar cand = Scalar::from_raw(aik.value() + bk[j].value());
        if (out[j] < cand) out[j] = cand;
      }
    }
  }
  return c;
}

}  // namespace maxplus
