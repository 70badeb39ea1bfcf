#include "gmprof/document.hpp"

#include "gmprof/error.hpp"

#include "json.hpp"

#include <limits>
#include <regex>
#include <set>

namespace gmprof {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::Schema, where + ": " + what);
}

json integer_json(const Integer& n) {
  if (auto v = to_int64(n)) return *v;
  return n.str();
}

Integer read_integer(const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    return Integer(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    static const std::regex decimal("-?[0-9]+");
    const std::string s = j.get<std::string>();
    if (std::regex_match(s, decimal)) return Integer(s);
  }
  schema(where, "expected an integer");
}

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(where, std::string("missing field '") + key + "'");
  return *it;
}

void only_fields(const json& obj, std::initializer_list<const char*> allowed,
                 const std::string& where) {
  if (!obj.is_object()) schema(where, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* a : allowed) known = known || it.key() == a;
    if (!known) schema(where, "unknown field '" + it.key() + "'");
  }
}

std::string read_id(const json& j, const std::string& where) {
  static const std::regex id("[A-Za-z0-9_.-]+");
  if (!j.is_string()) schema(where, "id must be a string");
  std::string s = j.get<std::string>();
  if (!std::regex_match(s, id)) schema(where, "id '" + s + "' has characters outside [A-Za-z0-9_.-]");
  return s;
}

SeifertPiece read_vertex(const json& v, const std::string& where) {
  const json& kind = field(v, "kind", where);
  if (kind == "minor") {
    only_fields(v, {"id", "kind"}, where);
    return MinorPiece{};
  }
  if (kind != "major") schema(where, "kind must be \"major\" or \"minor\"");
  only_fields(v, {"id", "kind", "genus", "orientable", "cones"}, where);
  MajorPiece piece;
  const json& genus = field(v, "genus", where);
  if (!genus.is_number_integer() || genus.get<std::int64_t>() < 0 ||
      genus.get<std::int64_t>() > std::numeric_limits<int>::max())
    schema(where, "genus must be a non-negative integer");
  piece.base.genus = genus.get<int>();
  const json& orientable = field(v, "orientable", where);
  if (!orientable.is_boolean()) schema(where, "orientable must be a boolean");
  piece.base.orientable = orientable.get<bool>();
  const json& cones = field(v, "cones", where);
  if (!cones.is_array()) schema(where, "cones must be an array");
  for (std::size_t i = 0; i < cones.size(); ++i) {
    const std::string at = where + ".cones[" + std::to_string(i) + "]";
    if (!cones[i].is_array() || cones[i].size() != 2) schema(at, "expected [p, q]");
    piece.base.cones.push_back({read_integer(cones[i][0], at), read_integer(cones[i][1], at)});
  }
  return piece;
}

GluingMatrix read_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
      !j[1].is_array() || j[1].size() != 2)
    schema(where, "matrix must be [[alpha, beta], [gamma, delta]]");
  return {read_integer(j[0][0], where), read_integer(j[0][1], where),
          read_integer(j[1][0], where), read_integer(j[1][1], where)};
}

json manifold_json(const GraphManifold& m) {
  json vertices = json::array();
  for (const auto& [id, piece] : m.vertices) {
    json v = {{"id", id}};
    if (is_minor(piece)) {
      v["kind"] = "minor";
    } else {
      const BaseOrbifold& base = std::get<MajorPiece>(piece).base;
      v["kind"] = "major";
      v["genus"] = base.genus;
      v["orientable"] = base.orientable;
      json cones = json::array();
      for (const ConePoint& c : base.cones) cones.push_back({integer_json(c.p), integer_json(c.q)});
      v["cones"] = cones;
    }
    vertices.push_back(v);
  }
  json edges = json::array();
  for (const Edge& e : m.edges) {
    const GluingMatrix& a = e.matrix;
    edges.push_back({{"id", e.id},
                     {"from", e.from},
                     {"to", e.to},
                     {"matrix", {{integer_json(a.alpha), integer_json(a.beta)},
                                 {integer_json(a.gamma), integer_json(a.delta)}}}});
  }
  return {{"name", m.name}, {"vertices", vertices}, {"edges", edges}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json iso_json(const GraphManifold& m1, const GraphManifold& m2, const IsoCandidate& iso) {
  json vertices = json::object();
  for (const auto& [a, b] : iso.vertex_map) vertices[a] = b;
  json edges = json::object();
  for (std::size_t i = 0; i < iso.edge_map.size(); ++i)
    edges[m1.edges[i].id] = m2.edges[iso.edge_map[i].edge].id + (iso.edge_map[i].reversed ? "~" : "");
  return {{"vertices", vertices}, {"edges", edges}};
}

json string_set(const std::set<std::string>& s) {
  json out = json::array();
  for (const std::string& x : s) out.push_back(x);
  return out;
}

json edge_signs_json(const GraphManifold& m1, const std::vector<int>& signs) {
  json out = json::object();
  for (std::size_t i = 0; i < signs.size(); ++i) out[m1.edges[i].id] = signs[i];
  return out;
}

json homeo_witness_json(const GraphManifold& m1, const GraphManifold& m2, const HomeoWitness& w) {
  json cones = json::object();
  for (const auto& [v, match] : w.cone_matchings) cones[v] = match;
  json twists = json::object();
  for (std::size_t i = 0; i < m1.edges.size(); ++i)
    twists[m1.edges[i].id] = {integer_json(w.twist_from[i]), integer_json(w.twist_to[i])};
  return {{"iso", iso_json(m1, m2, w.iso)},
          {"mirrored", w.mirrored},
          {"flips", string_set(w.flips)},
          {"edge_signs", edge_signs_json(m1, w.edge_signs)},
          {"cone_matchings", cones},
          {"twists", twists}};
}

}  // namespace

GraphManifold decode_manifold(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  only_fields(doc, {"name", "vertices", "edges"}, "document");
  GraphManifold m;
  const json& name = field(doc, "name", "document");
  if (!name.is_string()) schema("document.name", "expected a string");
  m.name = name.get<std::string>();

  const json& vertices = field(doc, "vertices", "document");
  if (!vertices.is_array()) schema("document.vertices", "expected an array");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string where = "vertices[" + std::to_string(i) + "]";
    if (!vertices[i].is_object()) schema(where, "expected an object");
    std::string id = read_id(field(vertices[i], "id", where), where);
    SeifertPiece piece = read_vertex(vertices[i], where);
    if (!m.vertices.emplace(id, std::move(piece)).second) schema(where, "duplicate vertex id '" + id + "'");
  }

  const json& edges = field(doc, "edges", "document");
  if (!edges.is_array()) schema("document.edges", "expected an array");
  std::set<std::string> edge_ids;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const json& e = edges[i];
    only_fields(e, {"id", "from", "to", "matrix"}, where);
    Edge edge;
    edge.id = read_id(field(e, "id", where), where);
    if (!edge_ids.insert(edge.id).second) schema(where, "duplicate edge id '" + edge.id + "'");
    edge.from = read_id(field(e, "from", where), where + ".from");
    edge.to = read_id(field(e, "to", where), where + ".to");
    edge.matrix = read_matrix(field(e, "matrix", where), where + ".matrix");
    m.edges.push_back(std::move(edge));
  }
  return m;
}

GraphManifold parse_manifold(const std::string& text) {
  GraphManifold m = decode_manifold(text);
  ValidationReport report = validate(m);
  if (!report.ok) {
    std::string msg;
    for (const Violation& v : report.violations) {
      if (!msg.empty()) msg += "; ";
      msg += v.code + " at " + v.location + ": " + v.message;
    }
    throw Error(ErrorCode::Invalid, msg);
  }
  return m;
}

std::string print_manifold(const GraphManifold& m) { return dump(manifold_json(m)); }

std::string format_kappa(const Integer& kappa, const Integer& modulus) {
  return kappa.str() + " mod " + modulus.str();
}

std::string report_validation(const ValidationReport& report) {
  json violations = json::array();
  for (const Violation& v : report.violations)
    violations.push_back({{"code", v.code}, {"location", v.location}, {"message", v.message}});
  return dump({{"ok", report.ok}, {"violations", violations}});
}

std::string report_info(const GraphManifold& m, const InfoOptions& options) {
  json vertices = json::object();
  for (const auto& [v, piece] : m.vertices) {
    json entry = {{"kind", is_minor(piece) ? "minor" : "major"},
                  {"degree", degree(m, v)},
                  {"total_slope", to_string(total_slope(m, v))}};
    if (is_major(piece)) entry["euler_characteristic"] = to_string(orbifold_euler_char(piece, degree(m, v)));
    if (options.prime) entry["residually_p"] = is_residually_p(piece, *options.prime);
    vertices[v] = entry;
  }
  json out = {{"name", m.name}, {"vertices", vertices}};
  if (auto bip = bipartition(m)) {
    out["bipartite"] = true;
    out["bipartition"] = {{"red", string_set(bip->red)}, {"blue", string_set(bip->blue)}};
  } else {
    out["bipartite"] = false;
  }
  if (options.prime) out["prime"] = integer_json(*options.prime);
  return dump(out);
}

std::string report_homeo(const GraphManifold& m1, const GraphManifold& m2,
                         const std::optional<HomeoWitness>& witness) {
  json out = {{"mode", "homeo"},
              {"first", m1.name},
              {"second", m2.name},
              {"verdict", witness ? "homeomorphic" : "distinct"}};
  if (witness) out["witness"] = homeo_witness_json(m1, m2, *witness);
  return dump(out);
}

std::string report_profinite(const GraphManifold& m1, const GraphManifold& m2,
                             const ProfiniteVerdict& verdict) {
  json out = {{"mode", "profinite"},
              {"first", m1.name},
              {"second", m2.name},
              {"verdict", to_string(verdict.kind)}};
  if (verdict.homeo) out["witness"] = homeo_witness_json(m1, m2, *verdict.homeo);
  if (verdict.profinite) {
    const ProfiniteWitness& w = *verdict.profinite;
    out["witness"] = {{"iso", iso_json(m1, m2, w.iso)},
                      {"flips", string_set(w.flips)},
                      {"edge_signs", edge_signs_json(m1, w.edge_signs)},
                      {"red_to_red", w.red_to_red}};
    out["kappa"] = format_kappa(w.kappa, w.modulus);
  }
  return dump(out);
}

std::string report_genus(const GenusResult& genus) {
  json reps = json::array();
  for (std::size_t i = 0; i < genus.representatives.size(); ++i)
    reps.push_back({{"kappa", format_kappa(genus.kappas[i], genus.modulus)},
                    {"document", manifold_json(genus.representatives[i])}});
  return dump({{"rigid", genus.rigid},
               {"reason", to_string(genus.reason)},
               {"modulus", integer_json(genus.modulus)},
               {"size", genus.representatives.size()},
               {"representatives", reps}});
}

std::string report_census(const std::vector<CensusReport>& census) {
  auto one = [](const CensusReport& c) {
    json homs = json::object();
    for (const auto& [g, n] : c.homs.entries) homs[g] = n;
    json subgroups = json::object();
    for (const auto& [n, count] : c.subgroups) subgroups[std::to_string(n)] = integer_json(count);
    return json{{"name", c.name}, {"homs", homs}, {"subgroups", subgroups}};
  };
  if (census.size() == 1) return dump(one(census.front()));
  json out = {{"manifolds", json::array()}};
  for (const CensusReport& c : census) out["manifolds"].push_back(one(c));
  json mismatches = json::array();
  if (census.size() == 2) {
    const json a = out["manifolds"][0], b = out["manifolds"][1];
    for (const char* section : {"homs", "subgroups"})
      for (auto it = a[section].begin(); it != a[section].end(); ++it)
        if (!b[section].contains(it.key()) || b[section][it.key()] != it.value())
          mismatches.push_back(std::string(section) + ":" + it.key());
  }
  out["agree"] = mismatches.empty();
  out["mismatches"] = mismatches;
  return dump(out);
}

}  // namespace gmprof
