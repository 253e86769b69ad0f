#pragma once

#include <string>
#include <string_view>

#include "maxplus/matrix.hpp"

namespace maxplus {

enum class Semiring { MaxPlus, MaxTimes };

std::string_view to_string(Semiring s) noexcept;

// Parsed file contents. Values are always held in max-plus form; max-times
// files are converted with ln on the way in.
struct MatrixFile {
  Semiring semiring = Semiring::MaxPlus;
  Matrix matrix;
};

struct VectorFile {
  Semiring semiring = Semiring::MaxPlus;
  Vector vector;
};

// Text format:
//   semiring: maxplus|maxtimes     (optional, default maxplus)
//   n
//   n lines of n whitespace-separated tokens
// Lines whose first non-blank character is '#' are comments. In max-plus
// files the token -inf is the semiring zero; in max-times files it is 0.
MatrixFile read_matrix(std::string_view text);
std::string write_matrix(const Matrix& m, Semiring semiring = Semiring::MaxPlus);

// Same header, then one line of n tokens. A dimension line before the
// tokens is accepted but not required.
VectorFile read_vector(std::string_view text);
std::string write_vector(const Vector& v, Semiring semiring = Semiring::MaxPlus);

// Shortest round-trip decimal form, or "-inf" (max-plus zero).
std::string format_scalar(Scalar s, Semiring semiring = Semiring::MaxPlus);

}  // namespace maxplus
