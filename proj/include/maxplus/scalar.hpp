#pragma once

#include <cmath>
#include <compare>
#include <limits>

#include "maxplus/error.hpp"

namespace maxplus {

// Element of the max-plus semiring (R ∪ {-inf}, max, +).
//
// The semiring zero is stored as -infinity, which orders below every finite
// value. otimes() tests for it explicitly instead of relying on IEEE
// arithmetic, and construction rejects NaN and +infinity.
class Scalar {
 public:
  static constexpr double kNegInf = -std::numeric_limits<double>::infinity();

  constexpr Scalar() noexcept : v_(kNegInf) {}
  constexpr Scalar(double v) : v_(checked(v)) {}  // NOLINT(google-explicit-constructor)

  static constexpr Scalar zero() noexcept { return Scalar(); }
  static constexpr Scalar unit() noexcept { return from_raw(0.0); }

  // Skips validation; callers guarantee v is finite or -inf.
  static constexpr Scalar from_raw(double v) noexcept {
    Scalar s;
    s.v_ = v;
    return s;
  }

  constexpr double value() const noexcept { return v_; }
  constexpr bool is_zero() const noexcept { return v_ == kNegInf; }
  constexpr bool is_finite() const noexcept { return v_ != kNegInf; }

  friend constexpr bool operator==(Scalar a, Scalar b) noexcept { return a.v_ == b.v_; }
  friend constexpr auto operator<=>(Scalar a, Scalar b) noexcept {
    // No NaN can be stored, so the order is total.
    return a.v_ < b.v_ ? std::strong_ordering::less
                       : (a.v_ > b.v_ ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  static constexpr double checked(double v) {
    if (v != v) throw Error(Errc::InvalidScalar, "NaN is not a max-plus scalar");
    if (v == std::numeric_limits<double>::infinity()) {
      throw Error(Errc::InvalidScalar, "+inf is not a max-plus scalar");
    }
    return v;
  }

  double v_;
};

inline constexpr Scalar kZero = Scalar::zero();
inline constexpr Scalar kUnit = Scalar::unit();

// a ⊕ b
constexpr Scalar oplus(Scalar a, Scalar b) noexcept { return a < b ? b : a; }

// a ⊗ b; -inf annihilates.
constexpr Scalar otimes(Scalar a, Scalar b) noexcept {
  if (a.is_zero() || b.is_zero()) return kZero;
  return Scalar::from_raw(a.value() + b.value());
}

// Multiplicative inverse of a finite scalar (max-plus negation).
constexpr Scalar inverse(Scalar a) {
  if (a.is_zero()) throw Error(Errc::InvalidArgument, "-inf has no max-plus inverse");
  return Scalar::from_raw(-a.value());
}

// Equality up to eps; -inf only equals -inf.
inline bool approx_equal(Scalar a, Scalar b, double eps) noexcept {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return std::fabs(a.value() - b.value()) <= eps;
}

}  // namespace maxplus
