#include "maxplus/convert.hpp"

#include <cmath>
#include <string>

namespace maxplus {

Scalar to_maxplus(double maxtimes_value) {
  if (std::isnan(maxtimes_value) || std::isinf(maxtimes_value)) {
    throw Error(Errc::InvalidScalar, "max-times entries must be finite");
  }
  if (maxtimes_value < 0.0) {
    throw Error(Errc::NegativeEntry, "max-times entry " + std::to_string(maxtimes_value) + " < 0");
  }
  if (maxtimes_value == 0.0) return kZero;
  return Scalar::from_raw(std::log(maxtimes_value));
}

double to_maxtimes(Scalar value) noexcept {
  return value.is_zero() ? 0.0 : std::exp(value.value());
}

Matrix to_maxplus(const MaxTimesMatrix& m) {
  if (m.values.size() != m.rows * m.cols) {
    throw Error(Errc::DimensionMismatch, "max-times matrix storage does not match its shape");
  }
  Matrix out(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) out(i, j) = to_maxplus(m(i, j));
  }
  return out;
}

MaxTimesMatrix to_maxtimes(const Matrix& m) {
  MaxTimesMatrix out{m.rows(), m.cols(), std::vector<double>(m.rows() * m.cols())};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out.values[i * m.cols() + j] = to_maxtimes(m(i, j));
  }
  return out;
}

}  // namespace maxplus
