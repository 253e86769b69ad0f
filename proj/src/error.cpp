#include "maxplus/error.hpp"

namespace maxplus {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidScalar: return "InvalidScalar";
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::AcyclicMatrix: return "AcyclicMatrix";
    case Errc::DivergentStar: return "DivergentStar";
    case Errc::NotDefinite: return "NotDefinite";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::NotVisualized: return "NotVisualized";
    case Errc::NonCriticalNode: return "NonCriticalNode";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::GammaOverflow: return "GammaOverflow";
    case Errc::CoverageGap: return "CoverageGap";
    case Errc::NotStronglyConnectedCritical: return "NotStronglyConnectedCritical";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace maxplus
