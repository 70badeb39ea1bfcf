#include "gmprof/decider.hpp"

#include "gmprof/error.hpp"

#include <algorithm>
#include <numeric>

namespace gmprof {

const char* to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Homeomorphic: return "homeomorphic";
    case VerdictKind::Equivalent: return "equivalent";
    case VerdictKind::Distinct: return "distinct";
  }
  return "unknown";
}

namespace {

struct IndexedGraph {
  std::vector<std::string> ids;                 // sorted
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<std::size_t>> multiplicity;  // loops on the diagonal
  std::vector<Signature> signatures;

  explicit IndexedGraph(const GraphManifold& m) {
    for (const auto& [id, piece] : m.vertices) {
      index[id] = ids.size();
      ids.push_back(id);
      signatures.push_back(vertex_signature(m, id));
    }
    multiplicity.assign(ids.size(), std::vector<std::size_t>(ids.size(), 0));
    for (const Edge& e : m.edges) {
      std::size_t u = index.at(e.from), v = index.at(e.to);
      ++multiplicity[u][v];
      if (u != v) ++multiplicity[v][u];
    }
  }
};

class IsoEnumerator {
 public:
  IsoEnumerator(const GraphManifold& m1, const GraphManifold& m2,
                const std::function<bool(const IsoCandidate&)>& visit)
      : m1_(m1), m2_(m2), g1_(m1), g2_(m2), visit_(visit) {}

  void run() {
    if (g1_.ids.size() != g2_.ids.size() || m1_.edges.size() != m2_.edges.size()) return;
    image_.assign(g1_.ids.size(), 0);
    used_.assign(g1_.ids.size(), false);
    assign_vertex(0);
  }

 private:
  bool assign_vertex(std::size_t i) {
    if (i == g1_.ids.size()) return enumerate_edges();
    for (std::size_t j = 0; j < g2_.ids.size(); ++j) {
      if (used_[j] || !(g1_.signatures[i] == g2_.signatures[j])) continue;
      if (g1_.multiplicity[i][i] != g2_.multiplicity[j][j]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k)
        ok = g1_.multiplicity[i][k] == g2_.multiplicity[j][image_[k]];
      if (!ok) continue;
      image_[i] = j;
      used_[j] = true;
      bool keep_going = assign_vertex(i + 1);
      used_[j] = false;
      if (!keep_going) return false;
    }
    return true;
  }

  struct Group {
    std::vector<std::size_t> source;  // first-manifold edges between u and v
    std::vector<std::size_t> target;  // second-manifold edges between phi(u), phi(v)
    bool loops = false;
  };

  bool enumerate_edges() {
    std::map<std::pair<std::size_t, std::size_t>, Group> by_pair;
    for (std::size_t e = 0; e < m1_.edges.size(); ++e) {
      std::size_t u = g1_.index.at(m1_.edges[e].from), v = g1_.index.at(m1_.edges[e].to);
      auto& g = by_pair[{std::min(u, v), std::max(u, v)}];
      g.source.push_back(e);
      g.loops = (u == v);
    }
    for (auto& [key, g] : by_pair) {
      std::size_t a = image_[key.first], b = image_[key.second];
      for (std::size_t f = 0; f < m2_.edges.size(); ++f) {
        std::size_t x = g2_.index.at(m2_.edges[f].from), y = g2_.index.at(m2_.edges[f].to);
        if ((x == a && y == b) || (x == b && y == a)) g.target.push_back(f);
      }
      if (g.target.size() != g.source.size()) return true;
    }
    groups_.clear();
    for (auto& [key, g] : by_pair) groups_.push_back(std::move(g));
    candidate_.vertex_map.clear();
    for (std::size_t i = 0; i < image_.size(); ++i)
      candidate_.vertex_map[g1_.ids[i]] = g2_.ids[image_[i]];
    candidate_.edge_map.assign(m1_.edges.size(), {});
    return enumerate_group(0);
  }

  bool enumerate_group(std::size_t gi) {
    if (gi == groups_.size()) return visit_(candidate_);
    Group g = groups_[gi];
    std::vector<std::size_t> perm = g.target;
    std::sort(perm.begin(), perm.end());
    do {
      if (!g.loops) {
        for (std::size_t k = 0; k < g.source.size(); ++k) {
          const Edge& e1 = m1_.edges[g.source[k]];
          const Edge& e2 = m2_.edges[perm[k]];
          candidate_.edge_map[g.source[k]] = {perm[k],
                                              e2.from != candidate_.vertex_map.at(e1.from)};
        }
        if (!enumerate_group(gi + 1)) return false;
        continue;
      }
      const std::size_t n = g.source.size();
      for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        for (std::size_t k = 0; k < n; ++k)
          candidate_.edge_map[g.source[k]] = {perm[k], ((mask >> k) & 1) != 0};
        if (!enumerate_group(gi + 1)) return false;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
  }

  const GraphManifold& m1_;
  const GraphManifold& m2_;
  IndexedGraph g1_, g2_;
  const std::function<bool(const IsoCandidate&)>& visit_;
  std::vector<std::size_t> image_;
  std::vector<bool> used_;
  std::vector<Group> groups_;
  IsoCandidate candidate_;
};

bool non_orientable_base(const GraphManifold& m, const std::string& v) {
  const auto* major = std::get_if<MajorPiece>(&m.piece(v));
  return major != nullptr && !major->base.orientable;
}

// Gluing of the image edge read in the direction of the source edge.
GluingMatrix image_matrix(const GraphManifold& m2, EdgeImage img) {
  const GluingMatrix& b = m2.edges[img.edge].matrix;
  return img.reversed ? reverse_end(b) : b;
}

struct SignResolution {
  std::map<std::string, int> flip;  // second-manifold vertex -> +1 / -1
  std::vector<int> edge_sign;       // extra per-edge sign (free edges only)
  std::vector<int> ratio;           // gamma(e) / gamma(phi e), = flip product * edge sign
};

// Chooses fibre flips on m2 so that gamma(phi e) == gamma(e) on every edge
// whose ends both have orientable base; the remaining edges absorb the sign.
std::optional<SignResolution> resolve_signs(const GraphManifold& a, const GraphManifold& b,
                                            const IsoCandidate& iso) {
  SignResolution out;
  const std::size_t n = a.edges.size();
  out.ratio.assign(n, 1);
  out.edge_sign.assign(n, 1);
  std::vector<bool> forced(n, false);
  for (std::size_t e = 0; e < n; ++e) {
    const Integer& ga = a.edges[e].matrix.gamma;
    const Integer& gb = b.edges[iso.edge_map[e].edge].matrix.gamma;
    if (ga == gb) out.ratio[e] = 1;
    else if (ga == -gb) out.ratio[e] = -1;
    else return std::nullopt;
    forced[e] = !non_orientable_base(a, a.edges[e].from) && !non_orientable_base(a, a.edges[e].to);
  }
  for (const auto& [v, piece] : b.vertices) {
    if (out.flip.count(v)) continue;
    out.flip[v] = 1;
    std::vector<std::string> stack{v};
    while (!stack.empty()) {
      std::string x = stack.back();
      stack.pop_back();
      for (std::size_t e = 0; e < n; ++e) {
        if (!forced[e]) continue;
        const std::string& u = iso.vertex_map.at(a.edges[e].from);
        const std::string& w = iso.vertex_map.at(a.edges[e].to);
        if (u != x && w != x) continue;
        const std::string& other = (u == x) ? w : u;
        int want = out.ratio[e] * out.flip[x];
        auto it = out.flip.find(other);
        if (it == out.flip.end()) {
          out.flip[other] = want;
          stack.push_back(other);
        } else if (it->second != want) {
          return std::nullopt;
        }
      }
    }
  }
  for (std::size_t e = 0; e < n; ++e) {
    int product = out.flip.at(iso.vertex_map.at(a.edges[e].from)) *
                  out.flip.at(iso.vertex_map.at(a.edges[e].to));
    out.edge_sign[e] = product * out.ratio[e];
    if (forced[e] && out.edge_sign[e] != 1) return std::nullopt;
  }
  return out;
}

std::set<std::string> flipped(const SignResolution& s) {
  std::set<std::string> out;
  for (const auto& [v, f] : s.flip)
    if (f < 0) out.insert(v);
  return out;
}

// Pairs cone i of `from` with a cone of `to` of the same order p whose q
// agrees with scale * q_i mod p. scale is applied as an int64 residue.
std::optional<std::vector<std::size_t>> match_cones(const std::vector<ConePoint>& from,
                                                    const std::vector<ConePoint>& to,
                                                    const std::function<Integer(const ConePoint&)>& scaled) {
  if (from.size() != to.size()) return std::nullopt;
  std::vector<std::size_t> match(from.size());
  std::vector<bool> used(to.size(), false);
  for (std::size_t i = 0; i < from.size(); ++i) {
    Integer want = floor_mod(scaled(from[i]), from[i].p);
    bool found = false;
    for (std::size_t j = 0; j < to.size() && !found; ++j) {
      if (used[j] || to[j].p != from[i].p) continue;
      if (floor_mod(to[j].q, to[j].p) == want) {
        used[j] = true;
        match[i] = j;
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return match;
}

std::optional<HomeoWitness> homeo_for_candidate(const GraphManifold& a, const GraphManifold& b,
                                                const IsoCandidate& iso) {
  auto signs = resolve_signs(a, b, iso);
  if (!signs) return std::nullopt;

  HomeoWitness w;
  w.iso = iso;
  w.flips = flipped(*signs);
  w.edge_signs = signs->edge_sign;
  const std::size_t n = a.edges.size();
  w.twist_from.assign(n, 0);
  w.twist_to.assign(n, 0);
  std::map<std::string, Rational> twist_sum;

  for (std::size_t e = 0; e < n; ++e) {
    const Edge& edge = a.edges[e];
    const GluingMatrix& ma = edge.matrix;
    GluingMatrix mb = image_matrix(b, iso.edge_map[e]);
    if (signs->ratio[e] < 0) mb = mb.negated();
    // mb = (1 r_to; 0 1) ma (1 r_from; 0 1)^-1
    Integer num_from = ma.delta - mb.delta;
    Integer num_to = mb.alpha - ma.alpha;
    if (num_from % ma.gamma != 0 || num_to % ma.gamma != 0) return std::nullopt;
    w.twist_from[e] = num_from / ma.gamma;
    w.twist_to[e] = num_to / ma.gamma;
    if (is_minor(a.piece(edge.from)) && w.twist_from[e] != 0) return std::nullopt;
    if (is_minor(a.piece(edge.to)) && w.twist_to[e] != 0) return std::nullopt;
    twist_sum[edge.from] += w.twist_from[e];
    twist_sum[edge.to] += w.twist_to[e];
  }

  for (const auto& [v, piece] : a.vertices) {
    const auto* pa = std::get_if<MajorPiece>(&piece);
    if (pa == nullptr) continue;
    const auto& pb = std::get<MajorPiece>(b.piece(iso.vertex_map.at(v)));
    auto match = match_cones(pa->base.cones, pb.base.cones, [](const ConePoint& c) { return c.q; });
    if (!match) return std::nullopt;
    Rational excess = 0;
    for (const ConePoint& c : pa->base.cones) excess += make_rational(c.q, c.p);
    for (const ConePoint& c : pb.base.cones) excess -= make_rational(c.q, c.p);
    if (twist_sum[v] != excess) return std::nullopt;
    w.cone_matchings[v] = *match;
  }
  return w;
}

bool all_slopes_zero(const GraphManifold& m) {
  for (const auto& [v, piece] : m.vertices)
    if (total_slope(m, v) != 0) return false;
  return true;
}

Integer power_unit(std::int64_t kappa, int scale, const Integer& p) {
  std::int64_t n = p.convert_to<std::int64_t>();
  if (scale > 0) return floor_mod(kappa, n);
  return *inverse_mod(kappa, n);
}

}  // namespace

void for_each_iso_candidate(const GraphManifold& m1, const GraphManifold& m2,
                            const std::function<bool(const IsoCandidate&)>& visit) {
  IsoEnumerator(m1, m2, visit).run();
}

std::vector<IsoCandidate> iso_candidates(const GraphManifold& m1, const GraphManifold& m2) {
  std::vector<IsoCandidate> out;
  for_each_iso_candidate(m1, m2, [&](const IsoCandidate& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

std::optional<HomeoWitness> check_homeomorphic(const GraphManifold& m1, const GraphManifold& m2) {
  std::optional<HomeoWitness> found;
  for (bool mirrored : {false, true}) {
    const GraphManifold a = mirrored ? mirror(m1) : m1;
    for_each_iso_candidate(a, m2, [&](const IsoCandidate& iso) {
      found = homeo_for_candidate(a, m2, iso);
      return !found.has_value();
    });
    if (found) {
      found->mirrored = mirrored;
      return found;
    }
  }
  return std::nullopt;
}

Integer kappa_modulus(const GraphManifold& m1, const GraphManifold& m2) {
  Integer modulus = 1;
  for (const GraphManifold* m : {&m1, &m2}) {
    for (const auto& [v, piece] : m->vertices)
      if (const auto* major = std::get_if<MajorPiece>(&piece))
        for (const ConePoint& c : major->base.cones) modulus = lcm(modulus, c.p);
    for (const Edge& e : m->edges) modulus = lcm(modulus, e.matrix.gamma);
  }
  return modulus;
}

ProfiniteVerdict check_profinite_iso(const GraphManifold& m1, const GraphManifold& m2,
                                     const SearchLimits& limits) {
  ProfiniteVerdict verdict;
  if (auto homeo = check_homeomorphic(m1, m2)) {
    verdict.kind = VerdictKind::Homeomorphic;
    verdict.homeo = std::move(homeo);
    return verdict;
  }
  auto bip1 = bipartition(m1), bip2 = bipartition(m2);
  if (!bip1 || !bip2 || !all_slopes_zero(m1) || !all_slopes_zero(m2)) return verdict;

  const Integer big_modulus = kappa_modulus(m1, m2);
  if (big_modulus > limits.max_modulus)
    throw Error(ErrorCode::Budget, "kappa modulus " + big_modulus.str() + " exceeds limit " +
                                       std::to_string(limits.max_modulus));
  const std::int64_t modulus = big_modulus.convert_to<std::int64_t>();
  auto scale_of = [&](const std::string& v) { return bip1->red.count(v) ? 1 : -1; };

  // The witness comes from the first candidate, in the search order, that
  // admits a solution; kappa is the least solution for that candidate.
  std::optional<ProfiniteWitness> best;
  for_each_iso_candidate(m1, m2, [&](const IsoCandidate& iso) {
    auto signs = resolve_signs(m1, m2, iso);
    if (!signs) return true;

    std::vector<KappaConstraint> constraints;
    for (std::size_t e = 0; e < m1.edges.size(); ++e) {
      const Edge& edge = m1.edges[e];
      const GluingMatrix& ma = edge.matrix;
      GluingMatrix mb = image_matrix(m2, iso.edge_map[e]);
      if (signs->ratio[e] < 0) mb = mb.negated();
      const std::int64_t n = abs(ma.gamma).convert_to<std::int64_t>();
      if (n == 1) continue;
      // delta is a unit mod gamma because the determinant is -1.
      auto add = [&](const Integer& da, const Integer& db, int scale) {
        std::int64_t inv = *inverse_mod(floor_mod(da, n), n);
        std::int64_t r = mul_mod(floor_mod(db, n), inv, n);
        constraints.push_back({r, n, scale});
      };
      add(ma.delta, mb.delta, scale_of(edge.from));
      add(-ma.alpha, -mb.alpha, scale_of(edge.to));
    }

    for (std::int64_t kappa : kappa_solutions(constraints, modulus)) {
      bool cones_ok = true;
      for (const auto& [v, piece] : m1.vertices) {
        const auto& pa = std::get<MajorPiece>(piece);
        const auto& pb = std::get<MajorPiece>(m2.piece(iso.vertex_map.at(v)));
        const int s = scale_of(v);
        auto scaled = [&](const ConePoint& c) { return c.q * power_unit(kappa, s, c.p); };
        if (!match_cones(pa.base.cones, pb.base.cones, scaled)) {
          cones_ok = false;
          break;
        }
      }
      if (!cones_ok) continue;
      ProfiniteWitness w;
      w.iso = iso;
      w.flips = flipped(*signs);
      w.edge_signs = signs->edge_sign;
      w.kappa = kappa;
      w.modulus = modulus;
      w.red_to_red = bip2->red.count(iso.vertex_map.at(*bip1->red.begin())) > 0;
      best = std::move(w);
      return false;
    }
    return true;
  });

  if (best) {
    verdict.kind = VerdictKind::Equivalent;
    verdict.profinite = std::move(best);
  }
  return verdict;
}

std::vector<std::int64_t> kappa_solutions(const std::vector<KappaConstraint>& constraints,
                                          std::int64_t modulus) {
  if (modulus < 1) throw Error(ErrorCode::Precondition, "kappa_solutions: modulus must be >= 1");
  // Fold everything into a single congruence kappa = c mod step.
  std::int64_t c = 0, step = 1;
  for (const KappaConstraint& k : constraints) {
    if (k.modulus < 1 || modulus % k.modulus != 0)
      throw Error(ErrorCode::Precondition, "kappa_solutions: constraint modulus " +
                                               std::to_string(k.modulus) + " does not divide " +
                                               std::to_string(modulus));
    const std::int64_t n = k.modulus;
    if (n == 1) continue;
    std::int64_t r = floor_mod(k.residue, n);
    if (gcd64(r, n) != 1) return {};
    if (k.scale < 0) r = *inverse_mod(r, n);
    const std::int64_t g = gcd64(step, n);
    if ((r - c) % g != 0) return {};
    const std::int64_t n_g = n / g;
    const std::int64_t t = mul_mod(floor_mod((r - c) / g, n_g), *inverse_mod(step / g, n_g), n_g);
    const std::int64_t next_step = step * n_g;
    c = floor_mod(Integer(c) + Integer(step) * t, next_step);
    step = next_step;
  }
  std::vector<std::int64_t> out;
  for (std::int64_t kappa = c; kappa < modulus; kappa += step)
    if (gcd64(kappa, modulus) == 1) out.push_back(kappa);
  return out;
}

}  // namespace gmprof
