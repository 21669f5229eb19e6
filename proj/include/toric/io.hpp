#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "toric/fan.hpp"
#include "toric/polytope.hpp"

// Input documents (fans and polytopes as JSON) and serialization helpers.
//
// Fan document: {"dim": n, "rays": [[..]..], "max_cones": [[0-based ray
// indices]..], "complete": true (optional), "notes": "..." (optional)}.
// Polytope document: {"dim": n, "vertices": [[..]..], "notes": "..."}.
// All coordinates are integers.  Ray indices are 0-based in files; human
// output uses the 1-based rho/sigma labels.

namespace toric {

struct PolytopeData {
  Index dim = 0;
  std::vector<IntVector> vertices;
};

FanData parse_fan_document(const std::string& text);
PolytopeData parse_polytope_document(const std::string& text);

// File loaders; parse errors carry the path.
std::string read_file(const std::string& path);
FanData load_fan_document(const std::string& path);
PolytopeData load_polytope_document(const std::string& path);

nlohmann::json fan_to_json(const Fan& f);
nlohmann::json polytope_to_json(Index dim, const std::vector<IntVector>& vertices);
nlohmann::json vector_to_json(const IntVector& v);

// Guarded conversion for serialization; desk-scale values always fit.
long long to_int64(const Int& x);

// FNV-1a 64-bit digest of the raw input bytes, as 16 hex characters.
std::string input_digest(const std::string& bytes);

}  // namespace toric
