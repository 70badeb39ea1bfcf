#include "gmprof/model.hpp"

#include "gmprof/error.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <utility>

namespace gmprof {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "PARSE";
    case ErrorCode::Schema: return "SCHEMA";
    case ErrorCode::Invalid: return "INVALID";
    case ErrorCode::Precondition: return "PRECONDITION";
    case ErrorCode::Budget: return "BUDGET";
    case ErrorCode::Internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

GluingMatrix reverse_end(const GluingMatrix& a) {
  if (a.determinant() != -1)
    throw Error(ErrorCode::Precondition,
                "reverse_end: determinant " + a.determinant().str() + " != -1");
  return {-a.delta, a.beta, a.gamma, -a.alpha};
}

GluingMatrix twist_from_side(const GluingMatrix& a, const Integer& k) {
  return {a.alpha, a.beta + k * a.alpha, a.gamma, a.delta + k * a.gamma};
}

GluingMatrix twist_to_side(const GluingMatrix& a, const Integer& k) {
  return {a.alpha + k * a.gamma, a.beta + k * a.delta, a.gamma, a.delta};
}

const SeifertPiece& GraphManifold::piece(const std::string& v) const {
  auto it = vertices.find(v);
  if (it == vertices.end())
    throw Error(ErrorCode::Precondition, "unknown vertex '" + v + "'");
  return it->second;
}

const MajorPiece& GraphManifold::major(const std::string& v) const {
  const auto* major = std::get_if<MajorPiece>(&piece(v));
  if (major == nullptr)
    throw Error(ErrorCode::Precondition, "vertex '" + v + "' is a minor piece");
  return *major;
}

MajorPiece& GraphManifold::major(const std::string& v) {
  return const_cast<MajorPiece&>(std::as_const(*this).major(v));
}

std::optional<std::size_t> GraphManifold::edge_index(const std::string& id) const {
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].id == id) return i;
  return std::nullopt;
}

const std::string& base_vertex(const GraphManifold& m, EdgeEnd end) {
  const Edge& e = m.edges.at(end.edge);
  return end.side == Side::From ? e.from : e.to;
}

const std::string& far_vertex(const GraphManifold& m, EdgeEnd end) {
  const Edge& e = m.edges.at(end.edge);
  return end.side == Side::From ? e.to : e.from;
}

EdgeEnd opposite(EdgeEnd end) {
  return {end.edge, end.side == Side::From ? Side::To : Side::From};
}

GluingMatrix end_matrix(const GraphManifold& m, EdgeEnd end) {
  const GluingMatrix& a = m.edges.at(end.edge).matrix;
  return end.side == Side::From ? a : reverse_end(a);
}

std::vector<EdgeEnd> incident_ends(const GraphManifold& m, const std::string& v) {
  std::vector<EdgeEnd> ends;
  for (std::size_t i = 0; i < m.edges.size(); ++i) {
    if (m.edges[i].from == v) ends.push_back({i, Side::From});
    if (m.edges[i].to == v) ends.push_back({i, Side::To});
  }
  std::sort(ends.begin(), ends.end(), [&](EdgeEnd a, EdgeEnd b) {
    return std::tie(far_vertex(m, a), m.edges[a.edge].id, a.side) <
           std::tie(far_vertex(m, b), m.edges[b.edge].id, b.side);
  });
  return ends;
}

std::size_t degree(const GraphManifold& m, const std::string& v) {
  std::size_t d = 0;
  for (const Edge& e : m.edges) d += (e.from == v) + (e.to == v);
  return d;
}

Rational euler_characteristic(const BaseOrbifold& base, std::size_t boundary) {
  Rational chi = base.orientable ? Rational(2 - 2 * base.genus) : Rational(2 - base.genus);
  chi -= static_cast<long>(boundary);
  for (const ConePoint& c : base.cones) chi -= 1 - make_rational(1, c.p);
  return chi;
}

namespace {

class ViolationSink {
 public:
  void add(std::string code, std::string location, std::string message) {
    found_.push_back({std::move(code), std::move(location), std::move(message)});
  }
  ValidationReport finish() {
    std::sort(found_.begin(), found_.end());
    return {found_.empty(), std::move(found_)};
  }

 private:
  std::vector<Violation> found_;
};

std::string vloc(const std::string& v) { return "vertex:" + v; }
std::string eloc(const std::string& e) { return "edge:" + e; }

void check_piece(const std::string& id, const SeifertPiece& piece, std::size_t deg,
                 ViolationSink& sink) {
  if (deg == 0) sink.add("DEGREE", vloc(id), "vertex has no incident edges");
  if (is_minor(piece)) {
    if (deg != 1)
      sink.add("DEGREE", vloc(id),
               "minor piece must have degree 1, has " + std::to_string(deg));
    return;
  }
  const BaseOrbifold& base = std::get<MajorPiece>(piece).base;
  if (base.genus < 0 || (!base.orientable && base.genus < 1)) {
    sink.add("GENUS", vloc(id), "invalid genus " + std::to_string(base.genus));
    return;
  }
  bool cones_ok = true;
  for (std::size_t i = 0; i < base.cones.size(); ++i) {
    const ConePoint& c = base.cones[i];
    const std::string where = "cone #" + std::to_string(i) + " (" + c.p.str() + "," +
                              c.q.str() + ")";
    if (c.p < 2) {
      sink.add("CONE_ORDER", vloc(id), where + ": order must be >= 2");
      cones_ok = false;
    } else if (gcd(c.p, c.q) != 1) {
      sink.add("GCD", vloc(id), where + ": gcd(p, q) != 1");
    }
  }
  if (cones_ok && deg > 0) {
    Rational chi = euler_characteristic(base, deg);
    if (chi >= 0)
      sink.add("CHI_NONNEG", vloc(id),
               "base orbifold Euler characteristic " + to_string(chi) + " is not negative");
  }
}

bool connected(const GraphManifold& m) {
  if (m.vertices.empty()) return false;
  std::set<std::string> seen{m.vertices.begin()->first};
  std::vector<std::string> stack{m.vertices.begin()->first};
  while (!stack.empty()) {
    std::string v = stack.back();
    stack.pop_back();
    for (const Edge& e : m.edges) {
      for (const auto& [a, b] : {std::pair{e.from, e.to}, std::pair{e.to, e.from}}) {
        if (a == v && m.vertices.count(b) && seen.insert(b).second) stack.push_back(b);
      }
    }
  }
  return seen.size() == m.vertices.size();
}

}  // namespace

ValidationReport validate(const GraphManifold& m) {
  ViolationSink sink;

  std::set<std::string> edge_ids;
  for (const Edge& e : m.edges)
    if (!edge_ids.insert(e.id).second)
      sink.add("EDGE_ID", eloc(e.id), "duplicate edge id");

  bool dangling = false;
  for (const Edge& e : m.edges) {
    for (const std::string& end : {e.from, e.to}) {
      if (!m.vertices.count(end)) {
        sink.add("DANGLING", eloc(e.id), "unknown vertex '" + end + "'");
        dangling = true;
      }
    }
    const GluingMatrix& a = e.matrix;
    if (a.determinant() != -1)
      sink.add("DET", eloc(e.id), "determinant " + a.determinant().str() + " != -1");
    if (a.gamma == 0) sink.add("GAMMA_ZERO", eloc(e.id), "fibre intersection number is 0");
  }

  if (m.edges.empty()) sink.add("CONNECTED", "graph", "graph has no edges");
  if (!dangling && !connected(m)) sink.add("CONNECTED", "graph", "graph is disconnected");

  for (const auto& [id, piece] : m.vertices) check_piece(id, piece, degree(m, id), sink);

  for (const Edge& e : m.edges) {
    auto from = m.vertices.find(e.from), to = m.vertices.find(e.to);
    if (from == m.vertices.end() || to == m.vertices.end()) continue;
    bool minor_from = is_minor(from->second), minor_to = is_minor(to->second);
    if (minor_from && minor_to) {
      sink.add("MINOR_ADJ", eloc(e.id), "two minor pieces are adjacent");
      continue;
    }
    // alpha of the major-to-minor direction: stored alpha, or -delta when the
    // edge is stored leaving the minor piece.
    if (minor_to && e.matrix.alpha == 0)
      sink.add("MINOR_ALPHA", eloc(e.id), "neighbour fibre lies in the minor piece's second fibre");
    if (minor_from && e.matrix.delta == 0)
      sink.add("MINOR_ALPHA", eloc(e.id), "neighbour fibre lies in the minor piece's second fibre");
  }
  return sink.finish();
}

GraphManifold mirror(const GraphManifold& m) {
  GraphManifold out = m;
  for (auto& [id, piece] : out.vertices)
    if (auto* major = std::get_if<MajorPiece>(&piece))
      for (ConePoint& c : major->base.cones) c.q = -c.q;
  for (Edge& e : out.edges) {
    e.matrix.beta = -e.matrix.beta;
    e.matrix.gamma = -e.matrix.gamma;
  }
  return out;
}

Signature vertex_signature(const GraphManifold& m, const std::string& v) {
  Signature sig;
  const SeifertPiece& piece = m.piece(v);
  sig.minor = is_minor(piece);
  if (const auto* major = std::get_if<MajorPiece>(&piece)) {
    sig.genus = major->base.genus;
    sig.orientable = major->base.orientable;
    for (const ConePoint& c : major->base.cones) sig.cone_orders.push_back(c.p);
    std::sort(sig.cone_orders.begin(), sig.cone_orders.end());
  }
  for (EdgeEnd end : incident_ends(m, v))
    sig.gamma_magnitudes.push_back(abs(m.edges[end.edge].matrix.gamma));
  sig.degree = sig.gamma_magnitudes.size();
  std::sort(sig.gamma_magnitudes.begin(), sig.gamma_magnitudes.end());
  return sig;
}

}  // namespace gmprof
