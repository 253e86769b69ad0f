#pragma once

#include <cstddef>
#include <vector>

#include "maxplus/matrix.hpp"

namespace maxplus {

// Nonnegative real matrix over the max-times semiring, row-major.
struct MaxTimesMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
};

// x -> ln x, with 0 -> -inf. Throws NegativeEntry for x < 0.
Scalar to_maxplus(double maxtimes_value);
// x -> exp x, with -inf -> 0.
double to_maxtimes(Scalar value) noexcept;

Matrix to_maxplus(const MaxTimesMatrix& m);
MaxTimesMatrix to_maxtimes(const Matrix& m);

}  // namespace maxplus
