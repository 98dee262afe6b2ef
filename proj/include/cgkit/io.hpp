#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "cgkit/bd.hpp"
#include "cgkit/cg_rmatrix.hpp"
#include "cgkit/ncpoly.hpp"
#include "cgkit/report.hpp"

namespace cgkit {

// JSON form of a tensor operator with Laurent entries. Coefficients are
// stored as exact integer strings so a round trip is bit-exact. Entries are
// listed in a fixed order (input index, then output index), so serializing
// the same operator twice yields identical bytes.
nlohmann::json rmatrix_to_json(const LaurentOperator& r);

// Inverse of rmatrix_to_json. Throws std::runtime_error on malformed input.
LaurentOperator rmatrix_from_json(const nlohmann::json& j);

// Plain-text entry listing: a "base_dim legs" header line, then one line per
// nonzero entry with output indices, input indices, and the coefficient.
std::string rmatrix_to_text(const LaurentOperator& r);

// A classical construction problem as read from disk: which algebra, which
// combinatorial triple, and optionally a pre-chosen Cartan component. When
// f0 is absent the library solves for it.
struct BDInput {
  ReductiveAlgebra::Type type = ReductiveAlgebra::Type::sl;
  int rank = 0;
  AdmissibleTriple triple;
  std::optional<RatMatrix> f0;
};

nlohmann::json bd_input_to_json(const BDInput& in);

// Throws std::runtime_error on malformed input (missing fields, bad types,
// or shape mismatches that can be detected without building the algebra).
BDInput bd_input_from_json(const nlohmann::json& j);

// Relations of a quadratic presentation, serialized term by term for
// inspection or external processing.
nlohmann::json presentation_to_json(const QuadraticPresentation& pres);

// Check results. Entries are sorted by name so output is deterministic.
nlohmann::json report_to_json(const Report& rep);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace cgkit
