#include "support.hpp"

#include "gmprof/invariants.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#ifndef GMPROF_FIXTURE_DIR
#error "GMPROF_FIXTURE_DIR must be defined"
#endif

namespace gmtest {

namespace {

MajorPiece major(std::vector<ConePoint> cones, int genus = 0, bool orientable = true) {
  return MajorPiece{BaseOrbifold{genus, orientable, std::move(cones)}};
}

GraphManifold two_vertex(const std::string& name, std::vector<ConePoint> x, std::vector<ConePoint> y,
                         GluingMatrix a) {
  GraphManifold m;
  m.name = name;
  m.vertices["x"] = major(std::move(x));
  m.vertices["y"] = major(std::move(y));
  m.edges.push_back({"e", "x", "y", a});
  return m;
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

ConePoint random_cone(Rng& rng, int max_p = 7) {
  const int p = uniform(rng, 2, max_p);
  int q = 0;
  do q = uniform(rng, -p + 1, p - 1);
  while (q == 0 || std::gcd(p, q) != 1);
  return {p, q};
}

// det -1, gamma != 0, entries bounded by `bound`.
GluingMatrix random_matrix(Rng& rng, int bound, bool alpha_nonzero = false,
                           bool delta_nonzero = false) {
  for (;;) {
    const int gamma = uniform(rng, -bound, bound);
    const int delta = uniform(rng, -bound, bound);
    if (gamma == 0 || std::gcd(gamma, delta) != 1) continue;
    if (delta_nonzero && delta == 0) continue;
    std::vector<std::pair<int, int>> choices;
    for (int alpha = -bound; alpha <= bound; ++alpha) {
      if (alpha_nonzero && alpha == 0) continue;
      if ((alpha * delta + 1) % gamma != 0) continue;
      const int beta = (alpha * delta + 1) / gamma;
      if (std::abs(beta) <= bound) choices.push_back({alpha, beta});
    }
    if (choices.empty()) continue;
    auto [alpha, beta] = choices[std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng)];
    return {alpha, beta, gamma, delta};
  }
}

void make_hyperbolic(Rng& rng, GraphManifold& m) {
  for (auto& [v, piece] : m.vertices) {
    auto* maj = std::get_if<MajorPiece>(&piece);
    if (!maj) continue;
    while (euler_characteristic(maj->base, degree(m, v)) >= 0) maj->base.cones.push_back(random_cone(rng));
  }
}

}  // namespace

GraphManifold w1() { return two_vertex("W1", {{5, 1}, {5, 1}}, {{5, -1}, {5, -1}}, {2, 1, 5, 2}); }
GraphManifold n2() { return two_vertex("N2", {{5, 2}, {5, 2}}, {{5, -3}, {5, -3}}, {6, 5, 5, 4}); }
GraphManifold w1_delta3() {
  return two_vertex("W1-delta3", {{5, 1}, {5, 1}}, {{5, -1}, {5, -1}}, {3, 2, 5, 3});
}
GraphManifold unit2() {
  return two_vertex("UNIT2", {{2, 1}, {2, 1}, {2, 1}, {2, 1}}, {{2, -1}, {2, -1}, {2, -1}, {2, -1}},
                    {2, 5, 1, 2});
}

GraphManifold tri() {
  GraphManifold m;
  m.name = "TRI";
  for (const char* v : {"v1", "v2", "v3"}) m.vertices[v] = major({{2, 1}});
  m.edges.push_back({"e12", "v1", "v2", {0, 1, 1, 0}});
  m.edges.push_back({"e23", "v2", "v3", {0, 1, 1, 0}});
  m.edges.push_back({"e31", "v3", "v1", {0, 1, 1, 0}});
  return m;
}

GraphManifold min_fixture() {
  GraphManifold m;
  m.name = "MIN";
  m.vertices["x"] = major({{3, 1}, {3, 1}});
  m.vertices["y"] = MinorPiece{};
  m.edges.push_back({"e", "x", "y", {1, 1, 3, 2}});
  return m;
}

std::string fixture_path(const std::string& file) { return std::string(GMPROF_FIXTURE_DIR) + "/" + file; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GraphManifold random_manifold(Rng& rng, int max_vertices) {
  for (;;) {
    GraphManifold m;
    m.name = "random";
    const int n = uniform(rng, 1, max_vertices);
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back("v" + std::to_string(i));

    // Random spanning tree, then a few extra edges (possibly loops or parallel).
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i < n; ++i) pairs.push_back({uniform(rng, 0, i - 1), i});
    const int extra = n == 1 ? 1 : uniform(rng, 0, 2);
    for (int k = 0; k < extra; ++k) pairs.push_back({uniform(rng, 0, n - 1), uniform(rng, 0, n - 1)});

    std::vector<int> deg(n, 0);
    for (auto [a, b] : pairs) ++deg[a], ++deg[b];
    std::vector<bool> minor(n, false);
    for (int i = 0; i < n; ++i) {
      // A leaf whose neighbour is not a leaf of degree 1 may become minor.
      if (deg[i] == 1 && n > 1 && coin(rng, 0.25)) minor[i] = true;
    }
    for (auto [a, b] : pairs)
      if (minor[a] && minor[b]) minor[b] = false;

    for (int i = 0; i < n; ++i) {
      if (minor[i]) {
        m.vertices[ids[i]] = MinorPiece{};
        continue;
      }
      const bool orientable = !coin(rng, 0.2);
      const int genus = orientable ? (coin(rng, 0.2) ? 1 : 0) : 1;
      std::vector<ConePoint> cones;
      for (int k = uniform(rng, 0, 3); k > 0; --k) cones.push_back(random_cone(rng));
      m.vertices[ids[i]] = major(cones, genus, orientable);
    }
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      auto [a, b] = pairs[k];
      if (coin(rng)) std::swap(a, b);
      m.edges.push_back({"e" + std::to_string(k), ids[a], ids[b],
                         random_matrix(rng, 9, minor[b], minor[a])});
    }
    make_hyperbolic(rng, m);
    if (validate(m).ok) return m;
  }
}

GraphManifold random_zero_slope(Rng& rng, int max_vertices) {
  for (;;) {
    GraphManifold m;
    m.name = "random-zero-slope";
    const int n = uniform(rng, 2, std::max(2, max_vertices));
    std::vector<int> colour(n);
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) {
      ids.push_back("v" + std::to_string(i));
      colour[i] = i == 0 ? 0 : uniform(rng, 0, 1);
    }
    if (std::count(colour.begin(), colour.end(), 0) == n) colour[n - 1] = 1;
    std::vector<int> red, blue;
    for (int i = 0; i < n; ++i) (colour[i] ? blue : red).push_back(i);

    // Spanning tree across the classes: attach each vertex to an earlier one
    // of the other colour, plus an occasional extra red-blue edge.
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> placed{red.front()};
    std::vector<int> pending;
    for (int i : order)
      if (i != red.front()) pending.push_back(i);
    while (!pending.empty()) {
      bool progress = false;
      for (auto it = pending.begin(); it != pending.end(); ++it) {
        std::vector<int> partners;
        for (int p : placed)
          if (colour[p] != colour[*it]) partners.push_back(p);
        if (partners.empty()) continue;
        pairs.push_back({partners[uniform(rng, 0, static_cast<int>(partners.size()) - 1)], *it});
        placed.push_back(*it);
        pending.erase(it);
        progress = true;
        break;
      }
      if (!progress) break;
    }
    if (!pending.empty()) continue;
    if (coin(rng, 0.3)) pairs.push_back({red[uniform(rng, 0, static_cast<int>(red.size()) - 1)],
                                         blue[uniform(rng, 0, static_cast<int>(blue.size()) - 1)]});

    // End residues u at the from-side and v at the to-side with u v = 1 mod
    // gamma; cones (|gamma|, +-residue) cancel each end's contribution exactly.
    std::map<int, std::vector<ConePoint>> cones;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      auto [a, b] = pairs[k];
      if (coin(rng)) std::swap(a, b);
      const int g = uniform(rng, 1, 5) * (coin(rng) ? 1 : -1);
      const int ag = std::abs(g);
      int u = 0, v = 0;
      if (ag > 1) {
        do u = uniform(rng, -ag + 1, ag - 1);
        while (u == 0 || std::gcd(u, ag) != 1);
        for (v = -ag + 1; v < ag; ++v)
          if (v != 0 && (((u * v - 1) % ag) + ag) % ag == 0) break;
        cones[a].push_back({ag, g > 0 ? u : -u});
        cones[b].push_back({ag, g > 0 ? v : -v});
      }
      const int alpha = -v, delta = u;
      const int beta = (alpha * delta + 1) / g;
      m.edges.push_back({"e" + std::to_string(k), ids[a], ids[b], {alpha, beta, g, delta}});
    }
    for (int i = 0; i < n; ++i) {
      if (coin(rng, 0.4)) {
        ConePoint c = random_cone(rng, 7);
        cones[i].push_back(c);
        cones[i].push_back({c.p, -c.q});
      }
      m.vertices[ids[i]] = major(cones[i]);
    }
    for (auto& [v, piece] : m.vertices) {
      BaseOrbifold& base = std::get<MajorPiece>(piece).base;
      while (euler_characteristic(base, degree(m, v)) >= 0) {
        ConePoint c = random_cone(rng, 7);
        base.cones.push_back(c);
        base.cones.push_back({c.p, -c.q});
      }
    }
    if (validate(m).ok) return random_moves(rng, m, 2);
  }
}

GraphManifold random_moves(Rng& rng, const GraphManifold& m, int max_moves) {
  GraphManifold out = m;
  const int moves = uniform(rng, 0, max_moves);
  for (int i = 0; i < moves; ++i) {
    std::vector<std::string> ids;
    for (const auto& [v, piece] : out.vertices) ids.push_back(v);
    const std::string v = ids[uniform(rng, 0, static_cast<int>(ids.size()) - 1)];
    switch (uniform(rng, 0, 2)) {
      case 0: out = fiber_flip(out, v); break;
      case 1: out = mirror(out); break;
      default: {
        if (is_minor(out.piece(v))) break;
        std::vector<TwistTarget> targets;
        for (std::size_t c = 0; c < out.major(v).base.cones.size(); ++c) targets.push_back(ConeTarget{c});
        for (EdgeEnd end : incident_ends(out, v))
          targets.push_back(EndTarget{out.edges[end.edge].id, end.side});
        if (targets.size() < 2) break;
        const int a = uniform(rng, 0, static_cast<int>(targets.size()) - 1);
        int b = uniform(rng, 0, static_cast<int>(targets.size()) - 2);
        if (b >= a) ++b;
        int k = uniform(rng, -2, 2);
        if (k == 0) k = 1;
        out = twist_move(out, v, targets[a], targets[b], k);
      }
    }
  }
  return out;
}

GraphManifold random_relabel(Rng& rng, const GraphManifold& m) {
  std::vector<std::string> ids;
  for (const auto& [v, piece] : m.vertices) ids.push_back(v);
  std::vector<std::string> fresh = ids;
  for (std::string& s : fresh) s = "r" + s;
  std::shuffle(fresh.begin(), fresh.end(), rng);
  std::map<std::string, std::string> rename;
  for (std::size_t i = 0; i < ids.size(); ++i) rename[ids[i]] = fresh[i];

  GraphManifold out;
  out.name = m.name;
  for (const auto& [v, piece] : m.vertices) out.vertices[rename[v]] = piece;
  for (const Edge& e : m.edges) {
    Edge f{"f" + e.id, rename[e.from], rename[e.to], e.matrix};
    if (!e.is_loop() && coin(rng)) {
      std::swap(f.from, f.to);
      f.matrix = reverse_end(f.matrix);
    }
    out.edges.push_back(f);
  }
  std::shuffle(out.edges.begin(), out.edges.end(), rng);
  return out;
}

std::vector<std::int64_t> kappa_oracle(const std::vector<KappaConstraint>& constraints,
                                       std::int64_t modulus) {
  std::vector<std::int64_t> out;
  for (std::int64_t k = 0; k < modulus; ++k) {
    if (std::gcd(k, modulus) != 1 && modulus != 1) continue;
    bool ok = true;
    for (const KappaConstraint& c : constraints) {
      const std::int64_t n = c.modulus;
      const std::int64_t r = ((c.residue % n) + n) % n;
      if (c.scale > 0) ok = ok && k % n == r;
      else ok = ok && (k % n) * r % n == 1 % n;
    }
    if (ok) out.push_back(k);
  }
  return out;
}

namespace {

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
  return out;
}

Permutation invert(const Permutation& a) {
  Permutation out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[a[i]] = static_cast<std::uint32_t>(i);
  return out;
}

Permutation identity(std::size_t n) {
  Permutation out(n);
  std::iota(out.begin(), out.end(), 0u);
  return out;
}

Permutation power(const Permutation& a, Integer e) {
  Permutation base = e < 0 ? invert(a) : a;
  if (e < 0) e = -e;
  Permutation out = identity(a.size());
  while (e > 0) {
    if ((e & 1) != 0) out = compose(out, base);
    base = compose(base, base);
    e >>= 1;
  }
  return out;
}

}  // namespace

std::vector<Permutation> group_elements(const FiniteGroupSpec& spec) {
  std::set<Permutation> seen{identity(spec.degree)};
  std::vector<Permutation> queue{identity(spec.degree)};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const Permutation& g : spec.generators) {
      Permutation next = compose(queue[i], g);
      if (seen.insert(next).second) queue.push_back(next);
    }
  return {seen.begin(), seen.end()};
}

Permutation evaluate(const Relator& r, const std::vector<Permutation>& images, std::size_t degree) {
  Permutation out = identity(degree);
  for (const Power& pw : r) {
    Permutation base = identity(degree);
    for (const Syllable& s : pw.base) base = compose(base, power(images[s.generator], s.exponent));
    out = compose(out, power(base, pw.exponent));
  }
  return out;
}

std::uint64_t hom_oracle(const Presentation& p, const FiniteGroupSpec& target) {
  const std::vector<Permutation> elements = group_elements(target);
  const std::size_t k = p.generators.size();
  std::vector<std::size_t> idx(k, 0);
  std::vector<Permutation> images(k);
  const Permutation id = identity(target.degree);
  std::uint64_t count = 0;
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) images[i] = elements[idx[i]];
    bool ok = true;
    for (const Relator& r : p.relators)
      if (evaluate(r, images, target.degree) != id) {
        ok = false;
        break;
      }
    if (ok) ++count;
    std::size_t i = 0;
    while (i < k && ++idx[i] == elements.size()) idx[i++] = 0;
    if (i == k) break;
  }
  return count;
}

std::uint64_t coset_table_oracle(const Presentation& p, std::size_t n) {
  FiniteGroupSpec sn;
  sn.degree = n;
  std::vector<Permutation> all;
  Permutation perm = identity(n);
  do all.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  const std::size_t k = p.generators.size();
  std::vector<std::size_t> idx(k, 0);
  std::vector<Permutation> images(k);
  const Permutation id = identity(n);
  std::uint64_t count = 0;
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) images[i] = all[idx[i]];
    // Breadth-first labelling from coset 0, scanning x_1, x_1^-1, x_2, ...
    std::vector<std::uint32_t> label(n, UINT32_MAX);
    std::vector<std::uint32_t> queue{0};
    label[0] = 0;
    bool standard = true;
    for (std::size_t head = 0; head < queue.size() && standard; ++head) {
      for (std::size_t g = 0; g < k && standard; ++g) {
        const Permutation inv = invert(images[g]);
        for (const Permutation* img : {static_cast<const Permutation*>(&images[g]), &inv}) {
          const std::uint32_t next = (*img)[queue[head]];
          if (label[next] != UINT32_MAX) continue;
          label[next] = static_cast<std::uint32_t>(queue.size());
          if (label[next] != next) standard = false;
          queue.push_back(next);
        }
      }
    }
    if (standard && queue.size() == n) {
      bool ok = true;
      for (const Relator& r : p.relators)
        if (evaluate(r, images, n) != id) {
          ok = false;
          break;
        }
      if (ok) ++count;
    }
    std::size_t i = 0;
    while (i < k && ++idx[i] == all.size()) idx[i++] = 0;
    if (i == k) break;
  }
  return count;
}

}  // namespace gmtest
