#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace maxplus {

enum class Errc {
  DimensionMismatch,
  ParseError,
  InvalidScalar,
  NegativeEntry,
  AcyclicMatrix,
  DivergentStar,
  NotDefinite,
  NotIrreducible,
  NotVisualized,
  NonCriticalNode,
  CapExceeded,
  GammaOverflow,
  CoverageGap,
  NotStronglyConnectedCritical,
  InvalidArgument,
};

std::string_view to_string(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(Errc::ParseError, "line " + std::to_string(line) + ", column " +
                                    std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace maxplus
