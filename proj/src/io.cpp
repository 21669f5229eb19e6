#include "toric/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace toric {

using nlohmann::json;

namespace {

long long line_of_offset(const std::string& text, size_t offset) {
  long long line = 1;
  for (size_t i = 0; i < offset && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

// Best-effort line number of a field, for error messages.
std::string field_location(const std::string& text, const std::string& field) {
  auto pos = text.find("\"" + field + "\"");
  if (pos == std::string::npos) return "field '" + field + "'";
  return "field '" + field + "' (line " + std::to_string(line_of_offset(text, pos)) +
         ")";
}

json parse_top_level(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("syntax error at line " +
                     std::to_string(line_of_offset(text, e.byte)) + ": " +
                     e.what());
  }
}

void check_keys(const json& doc, const std::string& text,
                const std::vector<std::string>& allowed) {
  if (!doc.is_object()) throw ParseError("document must be a JSON object");
  for (const auto& item : doc.items()) {
    bool known = false;
    for (const auto& k : allowed)
      if (item.key() == k) known = true;
    if (!known)
      throw ParseError("unknown " + field_location(text, item.key()));
  }
}

Index read_dim(const json& doc, const std::string& text) {
  if (!doc.contains("dim") || !doc["dim"].is_number_integer())
    throw ParseError(field_location(text, "dim") + " must be an integer");
  long long dim = doc["dim"].get<long long>();
  if (dim < 1) throw ParseError(field_location(text, "dim") + " must be >= 1");
  return static_cast<Index>(dim);
}

std::vector<IntVector> read_vector_list(const json& doc, const std::string& text,
                                        const std::string& field, Index dim) {
  if (!doc.contains(field) || !doc[field].is_array())
    throw ParseError(field_location(text, field) + " must be an array");
  std::vector<IntVector> out;
  size_t i = 0;
  for (const auto& entry : doc[field]) {
    std::string name = field + "[" + std::to_string(i) + "]";
    if (!entry.is_array() || static_cast<Index>(entry.size()) != dim)
      throw ParseError(field_location(text, field) + ": " + name +
                       " must be an array of " + std::to_string(dim) +
                       " integers");
    IntVector v(dim);
    Index c = 0;
    for (const auto& coord : entry) {
      if (!coord.is_number_integer())
        throw ParseError(field_location(text, field) + ": " + name +
                         " has a non-integer coordinate");
      v(c++) = coord.get<long long>();
    }
    out.push_back(std::move(v));
    ++i;
  }
  return out;
}

}  // namespace

FanData parse_fan_document(const std::string& text) {
  json doc = parse_top_level(text);
  check_keys(doc, text, {"dim", "rays", "max_cones", "complete", "notes"});
  FanData data;
  data.dim = read_dim(doc, text);
  data.rays = read_vector_list(doc, text, "rays", data.dim);
  if (!doc.contains("max_cones") || !doc["max_cones"].is_array())
    throw ParseError(field_location(text, "max_cones") + " must be an array");
  size_t i = 0;
  for (const auto& entry : doc["max_cones"]) {
    std::string name = "max_cones[" + std::to_string(i) + "]";
    if (!entry.is_array())
      throw ParseError(field_location(text, "max_cones") + ": " + name +
                       " must be an array of ray indices");
    std::vector<int> cone;
    for (const auto& idx : entry) {
      if (!idx.is_number_integer())
        throw ParseError(field_location(text, "max_cones") + ": " + name +
                         " has a non-integer ray index");
      long long v = idx.get<long long>();
      if (v < 0 || v >= static_cast<long long>(data.rays.size()))
        throw ParseError(field_location(text, "max_cones") + ": " + name +
                         " has out-of-range ray index " + std::to_string(v));
      cone.push_back(static_cast<int>(v));
    }
    data.max_cones.push_back(std::move(cone));
    ++i;
  }
  if (doc.contains("complete")) {
    if (!doc["complete"].is_boolean())
      throw ParseError(field_location(text, "complete") + " must be a boolean");
    data.asserted_complete = doc["complete"].get<bool>();
  }
  if (doc.contains("notes") && !doc["notes"].is_string())
    throw ParseError(field_location(text, "notes") + " must be a string");
  return data;
}

PolytopeData parse_polytope_document(const std::string& text) {
  json doc = parse_top_level(text);
  check_keys(doc, text, {"dim", "vertices", "notes"});
  PolytopeData data;
  data.dim = read_dim(doc, text);
  data.vertices = read_vector_list(doc, text, "vertices", data.dim);
  if (doc.contains("notes") && !doc["notes"].is_string())
    throw ParseError(field_location(text, "notes") + " must be a string");
  return data;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

FanData load_fan_document(const std::string& path) {
  try {
    return parse_fan_document(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

PolytopeData load_polytope_document(const std::string& path) {
  try {
    return parse_polytope_document(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

long long to_int64(const Int& x) {
  static const Int lo = std::numeric_limits<long long>::min();
  static const Int hi = std::numeric_limits<long long>::max();
  if (x < lo || x > hi)
    throw Error("integer too large for serialization: " + x.str());
  return x.convert_to<long long>();
}

json vector_to_json(const IntVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_int64(v(i)));
  return out;
}

json fan_to_json(const Fan& f) {
  json doc;
  doc["dim"] = static_cast<long long>(f.dim());
  doc["complete"] = true;
  json rays = json::array();
  for (const auto& ray : f.rays()) rays.push_back(vector_to_json(ray.generator));
  doc["rays"] = std::move(rays);
  json cones = json::array();
  for (const auto& c : f.max_cones()) cones.push_back(c.ray_indices);
  doc["max_cones"] = std::move(cones);
  return doc;
}

json polytope_to_json(Index dim, const std::vector<IntVector>& vertices) {
  json doc;
  doc["dim"] = static_cast<long long>(dim);
  json vs = json::array();
  for (const auto& v : vertices) vs.push_back(vector_to_json(v));
  doc["vertices"] = std::move(vs);
  return doc;
}

std::string input_digest(const std::string& bytes) {
  unsigned long long h = 14695981039346656037ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx", h);
  return std::string(out, 16);
}

}  // namespace toric
