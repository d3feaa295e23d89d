#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "lcpk/lcp.hpp"
#include "lcpk/matrix.hpp"

namespace lcpk {

// Thrown for structurally valid JSON whose contents violate the instance
// schema (non-square M, mismatched q, bad block size, ...).
struct InstanceFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses an instance document: {"M": [[...]], "q": [...],
// "block_size": int?, "X": [[...]]?, "Y": [[...]]?, "orientation": str?}.
// JSON syntax errors surface as nlohmann::json::parse_error.
LcpInstance parse_instance(const std::string& text);
LcpInstance load_instance(const std::string& path);

// Canonical document for an instance: sorted keys, floats at 17
// significant digits, so write(parse(write(x))) is byte-identical.
std::string write_instance(const LcpInstance& inst);
void save_instance(const LcpInstance& inst, const std::string& path);

// Canonical serialization of any json value (sorted keys come from the
// default std::map-backed object type).
std::string canonical_dump(const nlohmann::json& j, int indent = 2);

nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const Residuals& r);
nlohmann::json to_json(const LcpSolution& s);

}  // namespace lcpk
