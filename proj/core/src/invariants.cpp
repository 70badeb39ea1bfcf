#include "gmprof/invariants.hpp"

#include "gmprof/error.hpp"

#include <map>

namespace gmprof {

Rational orbifold_euler_char(const SeifertPiece& piece, std::size_t degree) {
  const auto* major = std::get_if<MajorPiece>(&piece);
  if (major == nullptr)
    throw Error(ErrorCode::Precondition, "orbifold_euler_char: minor piece has no base data");
  if (degree < 1) throw Error(ErrorCode::Precondition, "orbifold_euler_char: degree must be >= 1");
  return euler_characteristic(major->base, degree);
}

Rational total_slope(const GraphManifold& m, const std::string& v) {
  Rational slope = 0;
  for (EdgeEnd end : incident_ends(m, v)) {
    GluingMatrix a = end_matrix(m, end);
    slope += make_rational(a.delta, a.gamma);
  }
  if (const auto* major = std::get_if<MajorPiece>(&m.piece(v)))
    for (const ConePoint& c : major->base.cones) slope -= make_rational(c.q, c.p);
  return slope;
}

std::optional<Bipartition> bipartition(const GraphManifold& m) {
  if (m.vertices.empty()) return Bipartition{};
  std::map<std::string, int> colour;
  for (const auto& [start, piece] : m.vertices) {
    if (colour.count(start)) continue;
    colour[start] = 0;
    std::vector<std::string> stack{start};
    while (!stack.empty()) {
      std::string v = stack.back();
      stack.pop_back();
      for (EdgeEnd end : incident_ends(m, v)) {
        const std::string& w = far_vertex(m, end);
        auto it = colour.find(w);
        if (it == colour.end()) {
          colour[w] = 1 - colour[v];
          stack.push_back(w);
        } else if (it->second == colour[v]) {
          return std::nullopt;
        }
      }
    }
  }
  Bipartition out;
  for (const auto& [v, c] : colour) (c == 0 ? out.red : out.blue).insert(v);
  return out;
}

GraphManifold fiber_flip(const GraphManifold& m, const std::string& v) {
  m.piece(v);  // throws on unknown vertex
  GraphManifold out = m;
  for (Edge& e : out.edges)
    if ((e.from == v) != (e.to == v)) e.matrix = e.matrix.negated();
  return out;
}

namespace {

// Change of total_slope(v) per unit shift: a cone shift q += p lowers the
// slope by one, a section shift delta += gamma raises it by one.
int slope_sign(const TwistTarget& t) { return std::holds_alternative<ConeTarget>(t) ? -1 : 1; }

void apply_shift(GraphManifold& m, const std::string& v, const TwistTarget& target,
                 const Integer& k) {
  if (const auto* cone = std::get_if<ConeTarget>(&target)) {
    auto& cones = m.major(v).base.cones;
    ConePoint& c = cones.at(cone->index);
    c.q += k * c.p;
    return;
  }
  const auto& end = std::get<EndTarget>(target);
  Edge& e = m.edges[*m.edge_index(end.edge)];
  if (end.side == Side::From) {
    e.matrix = twist_from_side(e.matrix, k);
  } else {
    // delta of the reversed matrix is -alpha; raising it by k*gamma lowers alpha.
    e.matrix = twist_to_side(e.matrix, -k);
  }
}

void check_target(const GraphManifold& m, const std::string& v, const TwistTarget& t) {
  if (const auto* cone = std::get_if<ConeTarget>(&t)) {
    if (cone->index >= m.major(v).base.cones.size())
      throw Error(ErrorCode::Precondition,
                  "twist_move: vertex '" + v + "' has no cone #" + std::to_string(cone->index));
    return;
  }
  const auto& end = std::get<EndTarget>(t);
  auto idx = m.edge_index(end.edge);
  if (!idx) throw Error(ErrorCode::Precondition, "twist_move: unknown edge '" + end.edge + "'");
  if (base_vertex(m, {*idx, end.side}) != v)
    throw Error(ErrorCode::Precondition,
                "twist_move: end of edge '" + end.edge + "' is not based at '" + v + "'");
}

}  // namespace

GraphManifold twist_move(const GraphManifold& m, const std::string& v, const TwistTarget& a,
                         const TwistTarget& b, const Integer& k) {
  m.major(v);
  check_target(m, v, a);
  check_target(m, v, b);
  if (a == b) throw Error(ErrorCode::Precondition, "twist_move: targets must differ");
  GraphManifold out = m;
  apply_shift(out, v, a, k);
  // slope_sign(a) * k + slope_sign(b) * kb == 0
  Integer kb = -slope_sign(a) * slope_sign(b) * k;
  apply_shift(out, v, b, kb);
  return out;
}

namespace {

bool is_power_of(Integer n, const Integer& p) {
  if (n < 1) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

}  // namespace

bool is_residually_p(const SeifertPiece& piece, const Integer& p) {
  if (!is_prime(p)) throw Error(ErrorCode::Precondition, "is_residually_p: " + p.str() + " is not prime");
  const auto* major = std::get_if<MajorPiece>(&piece);
  if (major == nullptr) return p == 2;
  if (p != 2 && !major->base.orientable) return false;
  for (const ConePoint& c : major->base.cones)
    if (!is_power_of(c.p, p)) return false;
  return true;
}

}  // namespace gmprof
