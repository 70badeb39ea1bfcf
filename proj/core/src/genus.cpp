#include "gmprof/genus.hpp"

#include "gmprof/error.hpp"

#include <map>

namespace gmprof {

const char* to_string(RigidityReason reason) {
  switch (reason) {
    case RigidityReason::NonBipartite: return "NON_BIPARTITE";
    case RigidityReason::NonzeroSlope: return "NONZERO_SLOPE";
    case RigidityReason::MinorPiece: return "MINOR_PIECE";
    case RigidityReason::TrivialUnitGroup: return "TRIVIAL_UNIT_GROUP";
    case RigidityReason::GenusCollapse: return "GENUS_COLLAPSE";
    case RigidityReason::NotRigid: return "NOT_RIGID";
  }
  return "UNKNOWN";
}

namespace {

bool has_minor(const GraphManifold& m) {
  for (const auto& [v, piece] : m.vertices)
    if (is_minor(piece)) return true;
  return false;
}

bool slopes_zero(const GraphManifold& m) {
  for (const auto& [v, piece] : m.vertices)
    if (total_slope(m, v) != 0) return false;
  return true;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw Error(ErrorCode::Precondition, "construct_scaled: " + message);
}

}  // namespace

GraphManifold construct_scaled(const GraphManifold& m, const Integer& kappa,
                               const Bipartition& bip) {
  require(!has_minor(m), "manifold has a minor piece");
  for (const Edge& e : m.edges)
    require(bip.red.count(e.from) != bip.red.count(e.to) &&
                bip.blue.count(e.from) != bip.blue.count(e.to),
            "edge '" + e.id + "' does not join the two classes");
  require(slopes_zero(m), "total slopes must all vanish");
  const Integer modulus = kappa_modulus(m, m);
  require(gcd(kappa, modulus) == 1, "kappa " + kappa.str() + " is not a unit mod " + modulus.str());

  // Unit acting on each vertex: kappa on red, kappa^-1 on blue.
  const Integer k = floor_mod(kappa, modulus);
  Integer k_inv = 0;
  if (modulus > 1) {
    auto m64 = to_int64(modulus);
    require(m64.has_value(), "modulus too large");
    k_inv = *inverse_mod(k.convert_to<std::int64_t>(), *m64);
  }
  auto unit_at = [&](const std::string& v) -> const Integer& {
    return bip.red.count(v) ? k : k_inv;
  };

  GraphManifold out = m;
  out.name = m.name + "[kappa=" + k.str() + "]";
  for (auto& [v, piece] : out.vertices)
    for (ConePoint& c : std::get<MajorPiece>(piece).base.cones)
      c.q = floor_mod(unit_at(v) * c.q, c.p);

  std::map<EdgeEnd, Integer> delta;
  for (const auto& [v, piece] : m.vertices) {
    std::vector<EdgeEnd> ends = incident_ends(m, v);
    Rational slope = 0;
    for (EdgeEnd end : ends) {
      GluingMatrix a = end_matrix(m, end);
      Integer d = symmetric_mod(unit_at(v) * a.delta, abs(a.gamma));
      delta[end] = d;
      slope += make_rational(d, a.gamma);
    }
    for (const ConePoint& c : out.major(v).base.cones) slope -= make_rational(c.q, c.p);
    if (denominator(slope) != 1)
      throw Error(ErrorCode::Internal, "construct_scaled: non-integral slope excess at '" + v + "'");
    // Cancel the integral excess on the first end.
    const EdgeEnd first = ends.front();
    delta[first] -= numerator(slope) * m.edges[first.edge].matrix.gamma;
  }

  for (std::size_t i = 0; i < out.edges.size(); ++i) {
    GluingMatrix& a = out.edges[i].matrix;
    a.delta = delta.at({i, Side::From});
    a.alpha = -delta.at({i, Side::To});
    Integer numer = a.alpha * a.delta + 1;
    if (numer % a.gamma != 0)
      throw Error(ErrorCode::Internal, "construct_scaled: non-integral beta on edge '" +
                                           out.edges[i].id + "'");
    a.beta = numer / a.gamma;
  }
  return out;
}

GenusResult profinite_genus(const GraphManifold& m, const SearchLimits& limits) {
  GenusResult result;
  result.representatives.push_back(m);
  result.kappas.push_back(1);
  result.modulus = kappa_modulus(m, m);

  auto bip = bipartition(m);
  if (!bip) {
    result.reason = RigidityReason::NonBipartite;
    return result;
  }
  if (has_minor(m)) {
    result.reason = RigidityReason::MinorPiece;
    return result;
  }
  if (!slopes_zero(m)) {
    result.reason = RigidityReason::NonzeroSlope;
    return result;
  }
  if (result.modulus > limits.max_modulus)
    throw Error(ErrorCode::Budget, "kappa modulus " + result.modulus.str() + " exceeds limit");
  const auto units = kappa_solutions({}, result.modulus.convert_to<std::int64_t>());
  if (units.size() <= 1) {
    result.reason = RigidityReason::TrivialUnitGroup;
    return result;
  }
  for (std::int64_t kappa : units) {
    if (kappa == 1) continue;
    GraphManifold partner = construct_scaled(m, kappa, *bip);
    bool seen = false;
    for (const GraphManifold& rep : result.representatives) {
      if (check_homeomorphic(rep, partner)) {
        seen = true;
        break;
      }
    }
    if (!seen) {
      result.representatives.push_back(std::move(partner));
      result.kappas.push_back(kappa);
    }
  }
  result.rigid = result.representatives.size() == 1;
  result.reason = result.rigid ? RigidityReason::GenusCollapse : RigidityReason::NotRigid;
  return result;
}

std::pair<bool, RigidityReason> is_profinitely_rigid(const GraphManifold& m,
                                                     const SearchLimits& limits) {
  GenusResult g = profinite_genus(m, limits);
  return {g.rigid, g.reason};
}

}  // namespace gmprof
