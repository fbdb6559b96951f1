#include "treepack/documents.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace treepack {

namespace {

using nlohmann::json;

std::string line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n');
  return "line " + std::to_string(line);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // byte is 1-based and points just past the offending character.
    const auto at = e.byte == 0 ? 0 : e.byte - 1;
    throw Error(ErrorKind::ParseError, line_of(text, at) + ": malformed document");
  }
}

const json& field(const json& doc, const char* name) {
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "document must be an object");
  auto it = doc.find(name);
  if (it == doc.end()) throw Error(ErrorKind::ParseError, std::string("missing field '") + name + "'");
  return *it;
}

std::size_t as_index(const json& value, const std::string& where) {
  if (!value.is_number_integer()) {
    throw Error(ErrorKind::ParseError, "field '" + where + "' must be an integer");
  }
  const auto v = value.get<std::int64_t>();
  if (v < 0) throw Error(ErrorKind::ValidationError, "field '" + where + "' is negative");
  return static_cast<std::size_t>(v);
}

std::vector<std::vector<Vertex>> as_rows(const json& value, const std::string& where) {
  if (!value.is_array()) throw Error(ErrorKind::ParseError, "field '" + where + "' must be an array");
  std::vector<std::vector<Vertex>> rows;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const auto row_name = where + "[" + std::to_string(i) + "]";
    const auto& row = value[i];
    if (!row.is_array()) throw Error(ErrorKind::ParseError, "field '" + row_name + "' must be an array");
    std::vector<Vertex> out;
    for (std::size_t j = 0; j < row.size(); ++j) {
      const auto v = as_index(row[j], row_name + "[" + std::to_string(j) + "]");
      if (v > UINT32_MAX) throw Error(ErrorKind::ValidationError, "field '" + row_name + "' entry too large");
      out.push_back(static_cast<Vertex>(v));
    }
    rows.push_back(std::move(out));
  }
  return rows;
}

std::string rows_text(const std::vector<std::vector<Vertex>>& rows) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) os << ", ";
    os << '[';
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (j) os << ", ";
      os << rows[i][j];
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace

AugTreeFamily parse_family(std::string_view text) {
  const json doc = parse_json(text);
  const auto n = as_index(field(doc, "n"), "n");
  const auto rows = as_rows(field(doc, "trees"), "trees");
  if (n == 0) throw Error(ErrorKind::ValidationError, "n must be positive");
  if (rows.size() != n) {
    throw Error(ErrorKind::ValidationError, "expected " + std::to_string(n) + " trees, got " +
                                                std::to_string(rows.size()));
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (rows[k].size() != k + 1) {
      throw Error(ErrorKind::ValidationError, "trees[" + std::to_string(k) + "] must have " +
                                                  std::to_string(k + 1) + " entries");
    }
    if (rows[k][0] != 0) {
      throw Error(ErrorKind::ValidationError, "trees[" + std::to_string(k) + "][0] must be 0");
    }
    for (std::size_t u = 1; u <= k; ++u) {
      if (rows[k][u] >= u) {
        throw Error(ErrorKind::ValidationError,
                    "trees[" + std::to_string(k) + "][" + std::to_string(u) +
                        "]: parent must be below child index");
      }
    }
  }
  return AugTreeFamily::from_parents(rows);
}

std::string emit_family(const AugTreeFamily& family) {
  std::vector<std::vector<Vertex>> rows;
  for (std::size_t k = 0; k < family.n(); ++k) rows.push_back(family.parents(k));
  return "{\"n\": " + std::to_string(family.n()) + ", \"trees\": " + rows_text(rows) + "}\n";
}

Labeling parse_labeling(std::string_view text) {
  const json doc = parse_json(text);
  const auto n = as_index(field(doc, "n"), "n");
  const auto rows = as_rows(field(doc, "sigma"), "sigma");
  if (n == 0) throw Error(ErrorKind::ValidationError, "n must be positive");
  if (rows.size() != n) {
    throw Error(ErrorKind::ValidationError, "expected " + std::to_string(n) + " permutations");
  }
  std::vector<Mapping> sigmas;
  for (std::size_t k = 0; k < n; ++k) {
    const auto name = "sigma[" + std::to_string(k) + "]";
    if (rows[k].size() != n) throw Error(ErrorKind::ValidationError, name + " must have n entries");
    std::vector<bool> seen(n, false);
    for (Vertex v : rows[k]) {
      if (v >= n || seen[v]) {
        throw Error(ErrorKind::ValidationError, name + " is not a permutation of 0..n-1");
      }
      seen[v] = true;
    }
    sigmas.emplace_back(rows[k]);
  }
  return Labeling(std::move(sigmas));
}

std::string emit_labeling(const Labeling& labeling) {
  std::vector<std::vector<Vertex>> rows;
  for (const auto& s : labeling.sigmas()) rows.emplace_back(s.values().begin(), s.values().end());
  return "{\"n\": " + std::to_string(labeling.n()) + ", \"sigma\": " + rows_text(rows) + "}\n";
}

std::string emit_orientation(const EdgeOrientation& orientation, OrientationFormat format) {
  if (!orientation.is_complete()) {
    throw Error(ErrorKind::NotComplete, "orientation does not cover K_n");
  }
  std::ostringstream os;
  if (format == OrientationFormat::Dot) {
    os << "digraph K" << orientation.n() << " {\n";
    for (std::size_t v = 0; v < orientation.n(); ++v) os << "  " << v << ";\n";
    for (const auto& a : orientation.arcs()) os << "  " << a.tail << " -> " << a.head << ";\n";
    os << "}\n";
    return os.str();
  }
  os << "{\"n\": " << orientation.n() << ", \"arcs\": [";
  bool first = true;
  for (const auto& a : orientation.arcs()) {
    if (!first) os << ", ";
    first = false;
    os << '[' << a.tail << ", " << a.head << ']';
  }
  os << "]}\n";
  return os.str();
}

EdgeOrientation parse_orientation(std::string_view text) {
  const json doc = parse_json(text);
  const auto n = as_index(field(doc, "n"), "n");
  const auto rows = as_rows(field(doc, "arcs"), "arcs");
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != 2) {
      throw Error(ErrorKind::ValidationError, "arcs[" + std::to_string(i) + "] must be a pair");
    }
    if (rows[i][0] >= n || rows[i][1] >= n) {
      throw Error(ErrorKind::ValidationError, "arcs[" + std::to_string(i) + "] out of range");
    }
    arcs.push_back(Arc{rows[i][0], rows[i][1]});
  }
  return EdgeOrientation(n, std::move(arcs));
}

std::string sweep_csv(const SweepReport& report) {
  std::ostringstream os;
  os << "family-index,status,nodes,millis\n";
  char millis[32];
  for (const auto& e : report.entries) {
    std::snprintf(millis, sizeof millis, "%.3f", e.millis);
    os << e.index << ',' << to_string(e.status) << ',' << e.nodes << ',' << millis << '\n';
  }
  return os.str();
}

}  // namespace treepack
