#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "maxplus/attraction.hpp"
#include "maxplus/io.hpp"
#include "maxplus/periodic.hpp"

namespace maxplus {

using Json = nlohmann::ordered_json;

// Node indices are 1-based in every serialized form. Scalars are max-plus
// numbers, with the string "-inf" for the semiring zero.
Json to_json(Scalar s);
Json to_json(std::span<const Scalar> v);
Json to_json(const Matrix& m);
Json nodes_json(const NodeSet& nodes);
Json to_json(const SpectralData& sd);
Json to_json(const CyclicClasses& cc);
Json to_json(const VisualizedMatrix& vm);
Json to_json(const CoreMatrix& core);
Json to_json(const CsrDecomposition& d);
Json to_json(const ReducedPower& rp);
Json to_json(const AttractionSystem& sys);
Json to_json(const std::vector<Extremal>& xs);
Json to_json(const Algorithm1State& st);

struct InputDigest {
  std::string path;
  std::string sha256;
};

std::string sha256_hex(std::string_view bytes);

Json make_report(std::string_view command, const std::vector<InputDigest>& inputs, Semiring semiring,
                 Json result);

// Like Json::dump but with floats printed as %.17g.
std::string dump(const Json& j, int indent = 2);

}  // namespace maxplus
